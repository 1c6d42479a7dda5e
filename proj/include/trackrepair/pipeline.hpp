#pragma once

#include <map>
#include <string>
#include <vector>

#include "trackrepair/config_file.hpp"
#include "trackrepair/ga.hpp"
#include "trackrepair/report.hpp"
#include "trackrepair/synth.hpp"
#include "trackrepair/weights_io.hpp"
#include "trackrepair/zone_learning.hpp"

namespace trackrepair {

// Config-to-struct adapters shared by the CLI subcommands. Every key lives
// under the section named after its stage; missing keys keep the defaults.
FeatureConfig featureConfigFrom(const KeyValueConfig& config);
GaConfig gaConfigFrom(const KeyValueConfig& config, std::uint64_t globalSeed);
ZoneLearnConfig zoneLearnConfigFrom(const KeyValueConfig& config, std::uint64_t globalSeed);
SynthConfig synthConfigFrom(const KeyValueConfig& config, std::uint64_t globalSeed);

std::vector<double> scoreTrajectories(std::span<const Trajectory> trajectories,
                                      const SceneModel& scene, const LearnedParams& params,
                                      const FeatureConfig& featureCfg);

struct WeightLearnOutcome {
    LearnedParams params;
    EvolveResult evolve;
};

// Extracts features for the first trainCount trajectories (0 = all), attaches
// ground truth by id, computes normalization statistics and runs the GA.
// Trajectories without a ground-truth entry are skipped.
WeightLearnOutcome learnWeights(std::span<const Trajectory> trajectories,
                                const std::map<std::string, double>& groundTruth,
                                const SceneModel& scene, const GaConfig& gaCfg,
                                const FeatureConfig& featureCfg, long trainCount);

// Traces every complete trajectory (cv above the threshold, starting in an
// entry/in-out zone) through the scene and aggregates the triplets.
std::vector<ZoneTriplet> buildTripletsStage(std::span<const Trajectory> trajectories,
                                            std::span<const double> cvs, const SceneModel& scene,
                                            double completeThreshold, bool useMinMaxWindow);

// scored.csv payload: trajectory_id, cv, class.
std::string writeScores(std::span<const Trajectory> trajectories, std::span<const double> cvs);

// fusions.csv payload: donor, recipient, triplet zones, fusion time, cv delta.
std::string writeFusions(std::span<const RepairResult> results);

struct PipelineArtifacts {
    EvaluationReport report;
    std::vector<std::string> writtenFiles;
};

// Runs simulate -> learn-weights -> score -> learn-zones -> build-triplets ->
// repair -> evaluate on one config, writing every artifact under outDir.
// Byte-identical outputs for identical config and seed.
PipelineArtifacts runPipeline(const KeyValueConfig& config, const std::string& outDir);

}  // namespace trackrepair
