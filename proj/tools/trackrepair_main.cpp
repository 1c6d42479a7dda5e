// Command-line front end: simulate -> learn-weights -> score -> learn-zones ->
// build-triplets -> repair -> evaluate, plus a one-shot pipeline command.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "trackrepair/pipeline.hpp"
#include "trackrepair/repair.hpp"
#include "trackrepair/trajectory_io.hpp"
#include "trackrepair/triplets.hpp"
#include "trackrepair/zone_xml.hpp"

namespace {

using namespace trackrepair;

constexpr std::uint64_t kDefaultSeed = 1;

void writeFileOrThrow(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write '" + path + "'");
    }
    out << content;
}

SceneModel loadScene(const std::string& path) {
    SceneModel scene;
    scene.zones = loadZoneFile(path);
    scene.validate();
    return scene;
}

// Flag > config key > built-in default.
struct Resolver {
    const CLI::App* app;
    const KeyValueConfig* config;

    double real(const std::string& flag, const std::string& key, double flagValue,
                double fallback) const {
        if (app->count(flag) > 0) return flagValue;
        return config->getDouble(key, fallback);
    }
    long integer(const std::string& flag, const std::string& key, long flagValue,
                 long fallback) const {
        if (app->count(flag) > 0) return flagValue;
        return config->getLong(key, fallback);
    }
    std::string text(const std::string& flag, const std::string& key, const std::string& flagValue,
                     const std::string& fallback) const {
        if (app->count(flag) > 0) return flagValue;
        return config->getString(key, fallback);
    }
};

std::vector<Trajectory> loadTrajectoriesFilled(const std::string& path,
                                               const FeatureConfig& featureCfg) {
    auto file = loadTrajectoryFile(path);
    if (!file.hasNeighborCounts) {
        fillNeighborCounts(file.trajectories, featureCfg);
    }
    return file.trajectories;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trajectory repair toolkit: confidence scoring, zone learning and track fusion"};
    app.require_subcommand(1);

    std::string configPath;
    std::uint64_t seedFlag = kDefaultSeed;
    app.add_option("--config", configPath, "key-value config file; flags override its keys")
        ->expected(1);
    app.add_option("--seed", seedFlag, "global seed; stages derive their own streams from it");

    KeyValueConfig config;  // populated after parsing when --config was given

    // ---- simulate ----------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "generate a synthetic scene walk-through");
    std::string simOut = "traj.csv";
    std::string simTruth = "truth.csv";
    std::string simSceneOut;
    simulate->add_option("--out", simOut, "trajectory CSV to write");
    simulate->add_option("--truth", simTruth, "truth CSV to write");
    simulate->add_option("--scene-out", simSceneOut, "also write the manual zones as XML");

    // ---- learn-weights -----------------------------------------------------
    auto* learn = app.add_subcommand("learn-weights", "fit the nine feature weights");
    std::string lwTrain;
    std::string lwGt;
    std::string lwScene;
    std::string lwOut = "weights.json";
    long lwPop = 0;
    long lwGenerations = 0;
    long lwElite = 0;
    long lwTrainCount = 0;
    double lwThreshold = 0.0;
    learn->add_option("--train", lwTrain, "training trajectory CSV")->required();
    learn->add_option("--gt", lwGt, "ground-truth CSV (trajectory_id, gt_value)")->required();
    learn->add_option("--scene", lwScene, "manual zone XML")->required();
    learn->add_option("--out", lwOut, "weights JSON to write");
    learn->add_option("--pop", lwPop, "population size");
    learn->add_option("--generations", lwGenerations, "generation limit");
    learn->add_option("--elite", lwElite, "individuals carried over unchanged");
    learn->add_option("--threshold", lwThreshold, "stop once best fitness drops below this");
    learn->add_option("--train-count", lwTrainCount, "trajectories used for training (0 = all)");

    // ---- score -------------------------------------------------------------
    auto* score = app.add_subcommand("score", "confidence-score trajectories");
    std::string scTrajectories;
    std::string scScene;
    std::string scWeights;
    std::string scOut = "scored.csv";
    score->add_option("--trajectories", scTrajectories, "trajectory CSV")->required();
    score->add_option("--scene", scScene, "zone XML")->required();
    score->add_option("--weights", scWeights, "weights JSON")->required();
    score->add_option("--out", scOut, "scores CSV to write");

    // ---- learn-zones -------------------------------------------------------
    auto* zones = app.add_subcommand("learn-zones", "cluster lost/found points into zones");
    std::string lzTrajectories;
    std::string lzScene;
    std::string lzOut = "learned_zones.xml";
    std::string lzWeights;
    long lzKmax = 0;
    double lzNoiseThreshold = 0.0;
    zones->add_option("--trajectories", lzTrajectories, "trajectory CSV")->required();
    zones->add_option("--scene", lzScene, "manual zone XML")->required();
    zones->add_option("--out", lzOut, "combined zone XML to write");
    zones->add_option("--kmax", lzKmax, "upper bound for the cluster count");
    zones->add_option("--weights", lzWeights,
                      "optional weights JSON; noisy trajectories are dropped before learning");
    zones->add_option("--noise-threshold", lzNoiseThreshold,
                      "confidence below this is noise (with --weights)");

    // ---- build-triplets ----------------------------------------------------
    auto* build = app.add_subcommand("build-triplets", "derive repair templates");
    std::string btTrajectories;
    std::string btScene;
    std::string btWeights;
    std::string btOut = "triplets.csv";
    std::string btWindow;
    double btComplete = 0.0;
    build->add_option("--trajectories", btTrajectories, "trajectory CSV")->required();
    build->add_option("--scene", btScene, "zone XML including learned zones")->required();
    build->add_option("--weights", btWeights, "weights JSON")->required();
    build->add_option("--out", btOut, "triplet table to write");
    build->add_option("--complete-threshold", btComplete, "completeness threshold");
    build->add_option("--window", btWindow, "triplet window: average or minmax");

    // ---- repair ------------------------------------------------------------
    auto* repair = app.add_subcommand("repair", "fuse lost tracks with re-appearing ones");
    std::string rpTrajectories;
    std::string rpScene;
    std::string rpTriplets;
    std::string rpWeights;
    std::string rpOut = "repaired.csv";
    std::string rpReport = "repair_report.txt";
    std::string rpFusions;
    bool rpInterpolate = false;
    repair->add_option("--trajectories", rpTrajectories, "trajectory CSV")->required();
    repair->add_option("--scene", rpScene, "zone XML including learned zones")->required();
    repair->add_option("--triplets", rpTriplets, "triplet table")->required();
    repair->add_option("--weights", rpWeights, "weights JSON")->required();
    repair->add_option("--out", rpOut, "repaired trajectory CSV to write");
    repair->add_option("--report", rpReport, "short repair summary to write");
    repair->add_option("--fusions", rpFusions, "optional per-fusion CSV to write");
    repair->add_flag("--interpolate", rpInterpolate, "fill fused gaps by linear interpolation");

    // ---- evaluate ----------------------------------------------------------
    auto* evaluateCmd = app.add_subcommand("evaluate", "before/after class summary");
    std::string evBefore;
    std::string evAfter;
    std::string evScene;
    std::string evWeights;
    std::string evFusions;
    std::string evOut = "report.txt";
    std::string evCsv;
    evaluateCmd->add_option("--before", evBefore, "trajectory CSV before repair")->required();
    evaluateCmd->add_option("--after", evAfter, "trajectory CSV after repair")->required();
    evaluateCmd->add_option("--scene", evScene, "zone XML")->required();
    evaluateCmd->add_option("--weights", evWeights, "weights JSON")->required();
    evaluateCmd->add_option("--fusions", evFusions, "per-fusion CSV written by repair");
    evaluateCmd->add_option("--out", evOut, "text report to write");
    evaluateCmd->add_option("--csv", evCsv, "CSV report to write");

    // ---- pipeline ----------------------------------------------------------
    auto* pipeline = app.add_subcommand("pipeline", "run every stage on one config");
    std::string plOutDir = "out";
    pipeline->add_option("--out-dir", plOutDir, "directory for all artifacts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!configPath.empty()) {
            config = KeyValueConfig::load(configPath);
        }
        const std::uint64_t seed =
            app.count("--seed") > 0 ? seedFlag
                                    : static_cast<std::uint64_t>(config.getLong("global.seed",
                                                                                 kDefaultSeed));
        const FeatureConfig featureCfg = featureConfigFrom(config);

        if (simulate->parsed()) {
            const SynthConfig synthCfg = synthConfigFrom(config, seed);
            const SynthOutput output = generate(synthCfg);
            writeFileOrThrow(simOut, writeTrajectories(output.trajectories));
            writeFileOrThrow(simTruth, writeTruth(output.truth));
            if (!simSceneOut.empty()) {
                saveZoneFile(simSceneOut, synthCfg.zones);
            }
            std::cout << "wrote " << output.trajectories.size() << " trajectories to " << simOut
                      << "\n";
        } else if (learn->parsed()) {
            const Resolver resolve{learn, &config};
            GaConfig gaCfg = gaConfigFrom(config, seed);
            gaCfg.populationSize =
                static_cast<int>(resolve.integer("--pop", "ga.population", lwPop,
                                                 gaCfg.populationSize));
            gaCfg.maxGenerations =
                static_cast<int>(resolve.integer("--generations", "ga.max_generations",
                                                 lwGenerations, gaCfg.maxGenerations));
            gaCfg.eliteCount = static_cast<int>(resolve.integer("--elite", "ga.elite_count",
                                                                lwElite, gaCfg.eliteCount));
            gaCfg.fitnessThreshold = resolve.real("--threshold", "ga.fitness_threshold",
                                                  lwThreshold, gaCfg.fitnessThreshold);
            const long trainCount =
                resolve.integer("--train-count", "ga.train_count", lwTrainCount, 300);

            const auto scene = loadScene(lwScene);
            const auto trajectories = loadTrajectoriesFilled(lwTrain, featureCfg);
            const auto truth = loadGroundTruthFile(lwGt);
            const auto outcome =
                learnWeights(trajectories, truth, scene, gaCfg, featureCfg, trainCount);
            saveLearnedParams(lwOut, outcome.params);
            std::cout << "best fitness " << outcome.evolve.bestFitness << " after "
                      << outcome.evolve.generations << " generations"
                      << (outcome.evolve.converged ? "" : " (not converged)") << "; wrote " << lwOut
                      << "\n";
        } else if (score->parsed()) {
            const auto scene = loadScene(scScene);
            const auto params = loadLearnedParams(scWeights);
            const auto trajectories = loadTrajectoriesFilled(scTrajectories, featureCfg);
            const auto cvs = scoreTrajectories(trajectories, scene, params, featureCfg);
            writeFileOrThrow(scOut, writeScores(trajectories, cvs));
            std::cout << "scored " << trajectories.size() << " trajectories to " << scOut << "\n";
        } else if (zones->parsed()) {
            const Resolver resolve{zones, &config};
            ZoneLearnConfig zoneCfg = zoneLearnConfigFrom(config, seed);
            zoneCfg.kMax = static_cast<int>(resolve.integer("--kmax", "zones.kmax", lzKmax,
                                                            zoneCfg.kMax));
            const auto scene = loadScene(lzScene);
            auto trajectories = loadTrajectoriesFilled(lzTrajectories, featureCfg);
            if (!lzWeights.empty()) {
                const auto params = loadLearnedParams(lzWeights);
                const double threshold = resolve.real("--noise-threshold",
                                                      "confidence.noise_threshold",
                                                      lzNoiseThreshold, 0.2);
                const auto partition = filterNoise(trajectories, params.weights, params.stats,
                                                   threshold, scene, featureCfg);
                std::vector<Trajectory> kept;
                kept.reserve(partition.kept.size());
                for (const auto& scored : partition.kept) {
                    kept.push_back(*scored.trajectory);
                }
                trajectories = std::move(kept);
            }
            const auto learned = learnZones(trajectories, scene, zoneCfg);
            std::vector<Zone> combined = scene.zones;
            combined.insert(combined.end(), learned.zones.begin(), learned.zones.end());
            saveZoneFile(lzOut, combined);
            std::cout << "learned " << learned.zones.size() << " zones ("
                      << learned.lostClusterCount << " lost, " << learned.foundClusterCount
                      << " found clusters); wrote " << lzOut << "\n";
        } else if (build->parsed()) {
            const Resolver resolve{build, &config};
            const double completeThreshold =
                resolve.real("--complete-threshold", "confidence.complete_threshold", btComplete,
                             0.8);
            const bool useMinMax =
                resolve.text("--window", "triplets.window", btWindow, "average") == "minmax";
            const auto scene = loadScene(btScene);
            const auto params = loadLearnedParams(btWeights);
            const auto trajectories = loadTrajectoriesFilled(btTrajectories, featureCfg);
            const auto cvs = scoreTrajectories(trajectories, scene, params, featureCfg);
            const auto triplets =
                buildTripletsStage(trajectories, cvs, scene, completeThreshold, useMinMax);
            saveTripletFile(btOut, triplets);
            std::cout << "built " << triplets.size() << " triplets; wrote " << btOut << "\n";
        } else if (repair->parsed()) {
            const auto scene = loadScene(rpScene);
            const auto params = loadLearnedParams(rpWeights);
            const auto triplets = loadTripletFile(rpTriplets);
            const auto trajectories = loadTrajectoriesFilled(rpTrajectories, featureCfg);
            RepairConfig repairCfg;
            repairCfg.interpolateGaps = rpInterpolate || config.getBool("repair.interpolate", false);
            repairCfg.features = featureCfg;
            const auto batch = repairBatch(trajectories, scene, triplets, params.weights,
                                           params.stats, repairCfg);
            writeFileOrThrow(rpOut, writeTrajectories(batch.trajectories));
            std::ostringstream summary;
            summary << "fusions: " << batch.report.fusionCount << "\n"
                    << "confidence increased: " << batch.report.cvIncreasedCount << "\n";
            writeFileOrThrow(rpReport, summary.str());
            if (!rpFusions.empty()) {
                writeFileOrThrow(rpFusions, writeFusions(batch.results));
            }
            std::cout << "fused " << batch.report.fusionCount << " track pairs; wrote " << rpOut
                      << "\n";
        } else if (evaluateCmd->parsed()) {
            const auto scene = loadScene(evScene);
            const auto params = loadLearnedParams(evWeights);
            const auto before = loadTrajectoriesFilled(evBefore, featureCfg);
            const auto after = loadTrajectoriesFilled(evAfter, featureCfg);
            const auto cvBefore = scoreTrajectories(before, scene, params, featureCfg);
            const auto cvAfter = scoreTrajectories(after, scene, params, featureCfg);

            std::vector<RepairResult> results;
            if (!evFusions.empty()) {
                // donor/recipient pairs with their cv delta, as written by repair
                std::ifstream in(evFusions, std::ios::binary);
                if (!in) {
                    throw ValidationError("cannot open fusion file '" + evFusions + "'");
                }
                std::string line;
                bool header = true;
                while (std::getline(in, line)) {
                    if (header || line.empty()) {
                        header = false;
                        continue;
                    }
                    RepairResult result;
                    char donor[128];
                    char recipient[128];
                    if (std::sscanf(line.c_str(), "%127[^,],%127[^,],%d,%d,%d,%lf,%lf,%lf", donor,
                                    recipient, &result.tripletUsed.startZone,
                                    &result.tripletUsed.lostZone, &result.tripletUsed.foundZone,
                                    &result.tFused, &result.cvBefore, &result.cvAfter) != 8) {
                        throw ValidationError("malformed fusion record '" + line + "'");
                    }
                    result.donorId = donor;
                    result.recipientId = recipient;
                    results.push_back(result);
                }
            } else if (before.size() >= after.size()) {
                // conservation still holds: infer the count from the totals;
                // cv-increase statistics need --fusions
                results.resize(before.size() - after.size());
            }
            const auto report = evaluate(cvBefore, cvAfter, results);
            writeFileOrThrow(evOut, renderReportText(report));
            if (!evCsv.empty()) {
                writeFileOrThrow(evCsv, renderReportCsv(report));
            }
            std::cout << renderReportText(report);
        } else if (pipeline->parsed()) {
            if (configPath.empty()) {
                throw ValidationError("pipeline needs --config");
            }
            if (app.count("--seed") > 0) {
                config.set("global.seed", std::to_string(seed));
            }
            const auto artifacts = runPipeline(config, plOutDir);
            std::cout << renderReportText(artifacts.report);
            std::cout << "artifacts in " << plOutDir << "/\n";
        }
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
    return 0;
}
