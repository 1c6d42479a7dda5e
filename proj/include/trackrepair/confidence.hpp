#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "trackrepair/features.hpp"
#include "trackrepair/model.hpp"

namespace trackrepair {

// Learned feature weights: non-negative, summing to 1.
struct WeightVector {
    std::array<double, 9> values{};

    double& operator[](int feature) { return values[static_cast<std::size_t>(feature - 1)]; }
    double operator[](int feature) const { return values[static_cast<std::size_t>(feature - 1)]; }

    double sum() const;

    // Throws ValidationError unless all entries are ≥ 0 and the sum is 1 ± 1e-9.
    void validate() const;

    static WeightVector uniform();
};

// Confidence bands, ordered Complete > Incomplete > Unreliable > Noise.
enum class TrajectoryClass { Complete, Incomplete, Unreliable, Noise };

std::string to_string(TrajectoryClass cls);

// Weighted confidence: direct features 1-5 enter as w_i * f_i, inverse
// features 6-9 as w_i * (1 - f_i).
double confidenceValue(const FeatureVector& f, const WeightVector& w);

// Band thresholds 0.8 / 0.5 / 0.2; boundary values belong to the higher class.
TrajectoryClass classify(double cv);

struct ScoredTrajectory {
    const Trajectory* trajectory = nullptr;
    double cv = 0.0;
};

struct NoisePartition {
    std::vector<ScoredTrajectory> kept;
    std::vector<ScoredTrajectory> noise;
};

// Partition by cv < threshold, both sides in input order.
NoisePartition filterNoise(std::span<const Trajectory> trajectories, const WeightVector& weights,
                           const NormalizationStats& stats, double threshold,
                           const SceneModel& scene, const FeatureConfig& cfg = {});

}  // namespace trackrepair
