#include "trackrepair/confidence.hpp"

#include <cmath>
#include <numeric>

namespace trackrepair {

double WeightVector::sum() const {
    return std::accumulate(values.begin(), values.end(), 0.0);
}

void WeightVector::validate() const {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0.0)) {
            throw ValidationError("weight w" + std::to_string(i + 1) + " must be non-negative");
        }
    }
    const double total = sum();
    if (std::abs(total - 1.0) > 1e-9) {
        throw ValidationError("weights must sum to 1, got " + std::to_string(total));
    }
}

WeightVector WeightVector::uniform() {
    WeightVector w;
    w.values.fill(1.0 / 9.0);
    return w;
}

std::string to_string(TrajectoryClass cls) {
    switch (cls) {
        case TrajectoryClass::Complete: return "complete";
        case TrajectoryClass::Incomplete: return "incomplete";
        case TrajectoryClass::Unreliable: return "unreliable";
        case TrajectoryClass::Noise: return "noise";
    }
    return "noise";
}

double confidenceValue(const FeatureVector& f, const WeightVector& w) {
    double cv = 0.0;
    for (int i = 1; i <= 5; ++i) {
        cv += w[i] * f[i];
    }
    for (int i = 6; i <= 9; ++i) {
        cv += w[i] * (1.0 - f[i]);
    }
    return cv;
}

TrajectoryClass classify(double cv) {
    if (cv >= 0.8) return TrajectoryClass::Complete;
    if (cv >= 0.5) return TrajectoryClass::Incomplete;
    if (cv >= 0.2) return TrajectoryClass::Unreliable;
    return TrajectoryClass::Noise;
}

NoisePartition filterNoise(std::span<const Trajectory> trajectories, const WeightVector& weights,
                           const NormalizationStats& stats, double threshold,
                           const SceneModel& scene, const FeatureConfig& cfg) {
    NoisePartition partition;
    for (const auto& trajectory : trajectories) {
        const double cv = confidenceValue(normalize(extractRaw(trajectory, scene, cfg), stats), weights);
        auto& side = cv < threshold ? partition.noise : partition.kept;
        side.push_back(ScoredTrajectory{&trajectory, cv});
    }
    return partition;
}

}  // namespace trackrepair
