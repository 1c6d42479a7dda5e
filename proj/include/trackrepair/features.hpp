#pragma once

#include <array>
#include <span>
#include <vector>

#include "trackrepair/model.hpp"

namespace trackrepair {

struct FeatureConfig {
    // Relative change in any of width/height/depth that counts as a size change.
    double sizeChangeRatio = 0.3;
    // Heading change (degrees) between successive displacements that counts as
    // a direction change.
    double directionAngleDeg = 45.0;
    // Displacements shorter than this are skipped when measuring headings.
    double minStep = 0.05;
    // Fallback neighbor search radius when the input carries no neighbor counts.
    double neighborRadius = 2.0;
};

// The nine raw trajectory features:
//   1 entry zone activated        (0/1, first observation in an entry/in-out zone)
//   2 exit zone activated         (0/1, last observation in an exit/in-out zone)
//   3 lifetime                    (seconds)
//   4 spatial length              (ground-plane path length)
//   5 person classifications      (count of observations labelled person)
//   6 times lost                  (count of lost events)
//   7 neighbors at key instants   (sum over first/lost/found/end events)
//   8 size changes                (count of threshold-exceeding consecutive pairs)
//   9 direction changes           (count of threshold-exceeding heading changes)
struct RawFeatureVector {
    std::array<double, 9> values{};

    double& operator[](int feature) { return values[static_cast<std::size_t>(feature - 1)]; }
    double operator[](int feature) const { return values[static_cast<std::size_t>(feature - 1)]; }
};

// Mean and population standard deviation of raw features 3, 4, 6, 7 and 9
// over a training set. Features 1/2 are booleans and 5/8 are normalized by
// lifetime instead, so their slots stay unused.
struct NormalizationStats {
    std::array<double, 9> mu{};
    std::array<double, 9> sigma{};
    long trainedCount = 0;

    static constexpr std::array<int, 5> kZScoredFeatures = {3, 4, 6, 7, 9};

    double muOf(int feature) const { return mu[static_cast<std::size_t>(feature - 1)]; }
    double sigmaOf(int feature) const { return sigma[static_cast<std::size_t>(feature - 1)]; }
};

struct FeatureVector {
    std::array<double, 9> values{};

    double& operator[](int feature) { return values[static_cast<std::size_t>(feature - 1)]; }
    double operator[](int feature) const { return values[static_cast<std::size_t>(feature - 1)]; }
};

RawFeatureVector extractRaw(const Trajectory& trajectory, const SceneModel& scene,
                            const FeatureConfig& cfg = {});

// Throws ValidationError on an empty input.
NormalizationStats computeStats(std::span<const RawFeatureVector> raws);

// f1/f2 pass through, f5/f8 are divided by the lifetime (0 for zero-lifetime
// trajectories), the rest are z-scored (0 where sigma is 0).
FeatureVector normalize(const RawFeatureVector& raw, const NormalizationStats& stats);

// Fallback when the input carries no neighbor counts: for every event of every
// trajectory, counts other trajectories having an observation within
// cfg.neighborRadius and 0.5 s of the event.
void fillNeighborCounts(std::vector<Trajectory>& trajectories, const FeatureConfig& cfg);

}  // namespace trackrepair
