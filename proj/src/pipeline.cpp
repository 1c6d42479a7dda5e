#include "trackrepair/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "trackrepair/repair.hpp"
#include "trackrepair/trajectory_io.hpp"
#include "trackrepair/triplets.hpp"
#include "trackrepair/zone_xml.hpp"

namespace trackrepair {

namespace {

std::string formatReal(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6f", value);
    return buffer;
}

void writeFile(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write '" + path + "'");
    }
    out << content;
}

Zone rectZone(const std::vector<double>& numbers, ZoneKind kind, int ident,
              const std::string& name, const std::string& sourceKey) {
    if (numbers.size() != 4) {
        throw ValidationError("config key '" + sourceKey + "' needs 4 numbers: x0 y0 x1 y1");
    }
    Rect rect{std::min(numbers[0], numbers[2]), std::min(numbers[1], numbers[3]),
              std::max(numbers[0], numbers[2]), std::max(numbers[1], numbers[3])};
    Zone zone;
    zone.ident = ident;
    zone.name = name;
    zone.kind = kind;
    zone.outline = rect.toOutline();
    zone.validate();
    return zone;
}

}  // namespace

FeatureConfig featureConfigFrom(const KeyValueConfig& config) {
    FeatureConfig cfg;
    cfg.sizeChangeRatio = config.getDouble("features.size_change_ratio", cfg.sizeChangeRatio);
    cfg.directionAngleDeg = config.getDouble("features.direction_angle_deg", cfg.directionAngleDeg);
    cfg.minStep = config.getDouble("features.min_step", cfg.minStep);
    cfg.neighborRadius = config.getDouble("features.neighbor_radius", cfg.neighborRadius);
    return cfg;
}

GaConfig gaConfigFrom(const KeyValueConfig& config, std::uint64_t globalSeed) {
    GaConfig cfg;
    cfg.populationSize = static_cast<int>(config.getLong("ga.population", cfg.populationSize));
    cfg.mutationProb = config.getDouble("ga.mutation_prob", cfg.mutationProb);
    cfg.crossoverProb = config.getDouble("ga.crossover_prob", cfg.crossoverProb);
    cfg.fitnessThreshold = config.getDouble("ga.fitness_threshold", cfg.fitnessThreshold);
    cfg.maxGenerations = static_cast<int>(config.getLong("ga.max_generations", cfg.maxGenerations));
    cfg.eliteCount = static_cast<int>(config.getLong("ga.elite_count", cfg.eliteCount));
    cfg.rngSeed = derivedSeed(globalSeed, "ga");
    return cfg;
}

ZoneLearnConfig zoneLearnConfigFrom(const KeyValueConfig& config, std::uint64_t globalSeed) {
    ZoneLearnConfig cfg;
    cfg.kMax = static_cast<int>(config.getLong("zones.kmax", cfg.kMax));
    cfg.marginFraction = config.getDouble("zones.margin_fraction", cfg.marginFraction);
    cfg.minMargin = config.getDouble("zones.min_margin", cfg.minMargin);
    cfg.overlapFraction = config.getDouble("zones.overlap_fraction", cfg.overlapFraction);
    cfg.seed = derivedSeed(globalSeed, "zones");
    return cfg;
}

SynthConfig synthConfigFrom(const KeyValueConfig& config, std::uint64_t globalSeed) {
    SynthConfig cfg;
    cfg.agentCount = static_cast<int>(config.getLong("synth.agent_count", cfg.agentCount));
    cfg.speedMin = config.getDouble("synth.speed_min", cfg.speedMin);
    cfg.speedMax = config.getDouble("synth.speed_max", cfg.speedMax);
    cfg.frameRate = config.getDouble("synth.frame_rate", cfg.frameRate);
    cfg.startInterval = config.getDouble("synth.start_interval", cfg.startInterval);
    cfg.noiseTrackRate = config.getDouble("synth.noise_track_rate", cfg.noiseTrackRate);
    cfg.neighborRadius = config.getDouble("synth.neighbor_radius", cfg.neighborRadius);
    cfg.rngSeed = derivedSeed(globalSeed, "synth");

    if (config.has("synth.zones_file")) {
        cfg.zones = loadZoneFile(config.requireString("synth.zones_file"));
    } else {
        int ident = 1;
        const auto addZones = [&](const char* prefix, ZoneKind kind, const char* nameStem) {
            const std::string key = std::string("synth.") + prefix;
            int index = 0;
            for (const auto& value : config.indexedValues(key)) {
                cfg.zones.push_back(rectZone(parseNumberList(value), kind, ident,
                                             nameStem + std::to_string(index), key));
                ++ident;
                ++index;
            }
        };
        addZones("entry", ZoneKind::Entry, "Entry");
        addZones("exit", ZoneKind::Exit, "Exit");
        addZones("in_out", ZoneKind::InOut, "InOut");
    }

    int index = 0;
    for (const auto& value : config.indexedValues("synth.occluder")) {
        const auto numbers = parseNumberList(value);
        if (numbers.size() != 7) {
            throw ValidationError("config key 'synth.occluder." + std::to_string(index) +
                                  "' needs 7 numbers: x0 y0 x1 y1 p_loss gap_min gap_max");
        }
        Occluder occluder;
        occluder.rect = Rect{std::min(numbers[0], numbers[2]), std::min(numbers[1], numbers[3]),
                             std::max(numbers[0], numbers[2]), std::max(numbers[1], numbers[3])};
        occluder.pLoss = numbers[4];
        occluder.gapMin = numbers[5];
        occluder.gapMax = numbers[6];
        cfg.occluders.push_back(occluder);
        ++index;
    }
    return cfg;
}

std::vector<double> scoreTrajectories(std::span<const Trajectory> trajectories,
                                      const SceneModel& scene, const LearnedParams& params,
                                      const FeatureConfig& featureCfg) {
    std::vector<double> cvs;
    cvs.reserve(trajectories.size());
    for (const auto& trajectory : trajectories) {
        cvs.push_back(confidenceValue(
            normalize(extractRaw(trajectory, scene, featureCfg), params.stats), params.weights));
    }
    return cvs;
}

WeightLearnOutcome learnWeights(std::span<const Trajectory> trajectories,
                                const std::map<std::string, double>& groundTruth,
                                const SceneModel& scene, const GaConfig& gaCfg,
                                const FeatureConfig& featureCfg, long trainCount) {
    std::vector<RawFeatureVector> raws;
    std::vector<double> gts;
    for (const auto& trajectory : trajectories) {
        if (trainCount > 0 && static_cast<long>(raws.size()) >= trainCount) {
            break;
        }
        const auto it = groundTruth.find(trajectory.id);
        if (it == groundTruth.end()) {
            continue;
        }
        raws.push_back(extractRaw(trajectory, scene, featureCfg));
        gts.push_back(it->second);
    }
    if (raws.empty()) {
        throw ValidationError("no trajectory has a ground-truth entry; cannot learn weights");
    }

    WeightLearnOutcome outcome;
    outcome.params.stats = computeStats(raws);
    TrainingSet train;
    train.reserve(raws.size());
    for (std::size_t i = 0; i < raws.size(); ++i) {
        train.push_back(TrainingEntry{normalize(raws[i], outcome.params.stats), gts[i]});
    }
    outcome.evolve = evolve(train, gaCfg);
    outcome.params.weights = outcome.evolve.best;
    return outcome;
}

std::vector<ZoneTriplet> buildTripletsStage(std::span<const Trajectory> trajectories,
                                            std::span<const double> cvs, const SceneModel& scene,
                                            double completeThreshold, bool useMinMaxWindow) {
    std::vector<TraceTuple> tuples;
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
        if (!isComplete(trajectories[i], cvs[i], scene, completeThreshold)) {
            continue;
        }
        if (const auto tuple = traceTriplet(trajectories[i], scene)) {
            tuples.push_back(*tuple);
        }
    }
    return buildTriplets(tuples, useMinMaxWindow);
}

std::string writeScores(std::span<const Trajectory> trajectories, std::span<const double> cvs) {
    std::ostringstream out;
    out << "trajectory_id,cv,class\n";
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
        out << trajectories[i].id << ',' << formatReal(cvs[i]) << ','
            << to_string(classify(cvs[i])) << '\n';
    }
    return out.str();
}

std::string writeFusions(std::span<const RepairResult> results) {
    std::ostringstream out;
    out << "donor_id,recipient_id,start_ident,lost_ident,found_ident,fused_at,cv_before,cv_after\n";
    for (const auto& result : results) {
        out << result.donorId << ',' << result.recipientId << ',' << result.tripletUsed.startZone
            << ',' << result.tripletUsed.lostZone << ',' << result.tripletUsed.foundZone << ','
            << formatReal(result.tFused) << ',' << formatReal(result.cvBefore) << ','
            << formatReal(result.cvAfter) << '\n';
    }
    return out.str();
}

PipelineArtifacts runPipeline(const KeyValueConfig& config, const std::string& outDir) {
    std::filesystem::create_directories(outDir);
    const auto path = [&outDir](const char* name) { return outDir + "/" + name; };
    PipelineArtifacts artifacts;
    const auto emit = [&](const char* name, const std::string& content) {
        const std::string full = path(name);
        writeFile(full, content);
        artifacts.writtenFiles.push_back(full);
    };

    const auto globalSeed = static_cast<std::uint64_t>(config.getLong("global.seed", 1));
    const FeatureConfig featureCfg = featureConfigFrom(config);
    const double noiseThreshold = config.getDouble("confidence.noise_threshold", 0.2);
    const double completeThreshold = config.getDouble("confidence.complete_threshold", 0.8);

    // simulate
    const SynthConfig synthCfg = synthConfigFrom(config, globalSeed);
    const SynthOutput synth = generate(synthCfg);
    emit("traj.csv", writeTrajectories(synth.trajectories));
    emit("truth.csv", writeTruth(synth.truth));
    emit("scene.xml", serializeZones(synthCfg.zones));

    SceneModel manualScene;
    manualScene.zones = synthCfg.zones;
    manualScene.validate();

    // learn-weights
    std::map<std::string, double> groundTruth;
    for (const auto& entry : synth.truth) {
        groundTruth[entry.trajectoryId] = entry.gtValue;
    }
    const GaConfig gaCfg = gaConfigFrom(config, globalSeed);
    const long trainCount = config.getLong("ga.train_count", 300);
    const WeightLearnOutcome learned =
        learnWeights(synth.trajectories, groundTruth, manualScene, gaCfg, featureCfg, trainCount);
    emit("weights.json", serializeLearnedParams(learned.params));

    // score
    const auto cvBefore =
        scoreTrajectories(synth.trajectories, manualScene, learned.params, featureCfg);
    emit("scored.csv", writeScores(synth.trajectories, cvBefore));

    // learn-zones on the noise-filtered set
    std::vector<Trajectory> kept;
    for (std::size_t i = 0; i < synth.trajectories.size(); ++i) {
        if (cvBefore[i] >= noiseThreshold) {
            kept.push_back(synth.trajectories[i]);
        }
    }
    const ZoneLearnConfig zoneCfg = zoneLearnConfigFrom(config, globalSeed);
    const LearnedZones learnedZones = learnZones(kept, manualScene, zoneCfg);
    SceneModel fullScene = manualScene;
    fullScene.zones.insert(fullScene.zones.end(), learnedZones.zones.begin(),
                           learnedZones.zones.end());
    fullScene.validate();
    emit("learned_zones.xml", serializeZones(fullScene.zones));

    // build-triplets from complete trajectories
    const auto keptCvs = scoreTrajectories(kept, manualScene, learned.params, featureCfg);
    const bool useMinMax = config.getString("triplets.window", "average") == "minmax";
    const auto triplets =
        buildTripletsStage(kept, keptCvs, fullScene, completeThreshold, useMinMax);
    emit("triplets.csv", serializeTriplets(triplets));

    // repair
    RepairConfig repairCfg;
    repairCfg.interpolateGaps = config.getBool("repair.interpolate", false);
    repairCfg.features = featureCfg;
    const RepairBatchResult repaired = repairBatch(synth.trajectories, fullScene, triplets,
                                                   learned.params.weights, learned.params.stats,
                                                   repairCfg);
    emit("repaired.csv", writeTrajectories(repaired.trajectories));
    emit("fusions.csv", writeFusions(repaired.results));

    // evaluate: both sides scored against the manual scene and shared stats
    const auto cvAfter =
        scoreTrajectories(repaired.trajectories, manualScene, learned.params, featureCfg);
    emit("scored_after.csv", writeScores(repaired.trajectories, cvAfter));
    artifacts.report = evaluate(cvBefore, cvAfter, repaired.results);
    emit("report.txt", renderReportText(artifacts.report));
    emit("report.csv", renderReportCsv(artifacts.report));
    return artifacts;
}

}  // namespace trackrepair
