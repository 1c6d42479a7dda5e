#pragma once

#include <optional>
#include <span>
#include <vector>

#include "trackrepair/confidence.hpp"
#include "trackrepair/model.hpp"
#include "trackrepair/triplets.hpp"

namespace trackrepair {

// A trajectory whose last lost event has no matching found event, waiting in
// the pool for a re-appearing track to fuse with.
struct LostTrackState {
    Trajectory trajectory;
    int startZone = 0;
    int lostZone = 0;
    double tLost = 0.0;
    double cvBefore = 0.0;  // confidence of the fragment when it was pooled
};

struct RepairResult {
    Trajectory fusedTrajectory;
    std::string donorId;      // the re-appearing fragment
    std::string recipientId;  // the lost trajectory whose id survives
    ZoneTriplet tripletUsed;
    double tFused = 0.0;
    double cvBefore = 0.0;  // of the lost fragment
    double cvAfter = 0.0;   // of the fused trajectory
};

struct RepairReport {
    long fusionCount = 0;
    long cvIncreasedCount = 0;
};

struct RepairConfig {
    // Insert linearly interpolated observations across the fused gap at the
    // median input frame spacing.
    bool interpolateGaps = false;
    FeatureConfig features;
};

// The found(-lost-found) zone a new track abnormally appears in: nothing when
// the first observation lies in an entry/in-out zone, else the lowest-ident
// found zone containing it, else nothing.
std::optional<int> detectAnomalousAppearance(const Trajectory& newTrack, const SceneModel& scene);

// Scans triplets in priority order for one with this found zone and a pooled
// lost track matching its start/lost zones inside the strict (minTime,
// maxTime) window; fuses and removes the earliest-lost match. tNow is the new
// track's first timestamp. Confidence fields other than cvBefore are left for
// the caller to fill.
std::optional<RepairResult> matchAndRepair(const Trajectory& newTrack, int foundZone,
                                           std::vector<LostTrackState>& lostPool,
                                           std::span<const ZoneTriplet> triplets, double tNow,
                                           const RepairConfig& cfg = {});

struct RepairBatchResult {
    std::vector<Trajectory> trajectories;
    std::vector<RepairResult> results;
    RepairReport report;
};

// Replays all trajectories in appearance order, maintaining the lost pool and
// fusing anomalous appearances. Confidence before/after is computed with the
// given weights and statistics.
RepairBatchResult repairBatch(std::span<const Trajectory> trajectories, const SceneModel& scene,
                              std::span<const ZoneTriplet> triplets, const WeightVector& weights,
                              const NormalizationStats& stats, const RepairConfig& cfg = {});

}  // namespace trackrepair
