#include "trackrepair/features.hpp"

#include <algorithm>
#include <cmath>

namespace trackrepair {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNeighborTimeWindow = 0.5;

bool sizeChanged(const Observation& a, const Observation& b, double ratio) {
    const auto changed = [ratio](double before, double after) {
        const double delta = std::abs(after - before);
        if (before == 0.0) {
            return delta > 0.0;
        }
        return delta / before > ratio;
    };
    return changed(a.width, b.width) || changed(a.height, b.height) || changed(a.depth, b.depth);
}

}  // namespace

RawFeatureVector extractRaw(const Trajectory& trajectory, const SceneModel& scene,
                            const FeatureConfig& cfg) {
    const auto& obs = trajectory.observations;
    RawFeatureVector raw;

    static const std::set<ZoneKind> kStartKinds = {ZoneKind::Entry, ZoneKind::InOut};
    static const std::set<ZoneKind> kExitKinds = {ZoneKind::Exit, ZoneKind::InOut};
    raw[1] = scene.firstZoneContaining(obs.front().position, kStartKinds) ? 1.0 : 0.0;
    raw[2] = scene.firstZoneContaining(obs.back().position, kExitKinds) ? 1.0 : 0.0;

    raw[3] = obs.back().t - obs.front().t;

    double length = 0.0;
    for (std::size_t i = 1; i < obs.size(); ++i) {
        length += distance2d(obs[i - 1].position, obs[i].position);
    }
    raw[4] = length;

    raw[5] = static_cast<double>(
        std::count_if(obs.begin(), obs.end(),
                      [](const Observation& o) { return o.classLabel == ClassLabel::Person; }));

    double lostCount = 0.0;
    double neighborSum = 0.0;
    for (const auto& event : trajectory.events) {
        if (event.kind == EventKind::Lost) {
            lostCount += 1.0;
        }
        neighborSum += static_cast<double>(event.neighborCount);
    }
    raw[6] = lostCount;
    raw[7] = neighborSum;

    double sizeChanges = 0.0;
    for (std::size_t i = 1; i < obs.size(); ++i) {
        if (sizeChanged(obs[i - 1], obs[i], cfg.sizeChangeRatio)) {
            sizeChanges += 1.0;
        }
    }
    raw[8] = sizeChanges;

    // Heading changes between successive displacements, skipping steps shorter
    // than minStep so jitter around a standstill does not count.
    const double angleThreshold = cfg.directionAngleDeg * kPi / 180.0;
    double directionChanges = 0.0;
    double prevDx = 0.0;
    double prevDy = 0.0;
    bool havePrev = false;
    for (std::size_t i = 1; i < obs.size(); ++i) {
        const double dx = obs[i].position.x - obs[i - 1].position.x;
        const double dy = obs[i].position.y - obs[i - 1].position.y;
        if (std::hypot(dx, dy) < cfg.minStep) {
            continue;
        }
        if (havePrev) {
            const double angle =
                std::abs(std::atan2(prevDx * dy - prevDy * dx, prevDx * dx + prevDy * dy));
            if (angle > angleThreshold) {
                directionChanges += 1.0;
            }
        }
        prevDx = dx;
        prevDy = dy;
        havePrev = true;
    }
    raw[9] = directionChanges;

    return raw;
}

NormalizationStats computeStats(std::span<const RawFeatureVector> raws) {
    if (raws.empty()) {
        throw ValidationError("cannot compute normalization statistics from an empty set");
    }
    NormalizationStats stats;
    stats.trainedCount = static_cast<long>(raws.size());
    const double n = static_cast<double>(raws.size());
    for (const int feature : NormalizationStats::kZScoredFeatures) {
        double mean = 0.0;
        for (const auto& raw : raws) {
            mean += raw[feature];
        }
        mean /= n;
        double variance = 0.0;
        for (const auto& raw : raws) {
            const double d = raw[feature] - mean;
            variance += d * d;
        }
        variance /= n;
        stats.mu[static_cast<std::size_t>(feature - 1)] = mean;
        stats.sigma[static_cast<std::size_t>(feature - 1)] = std::sqrt(variance);
    }
    return stats;
}

FeatureVector normalize(const RawFeatureVector& raw, const NormalizationStats& stats) {
    FeatureVector f;
    f[1] = raw[1];
    f[2] = raw[2];
    const double lifetime = raw[3];
    f[5] = lifetime > 0.0 ? raw[5] / lifetime : 0.0;
    f[8] = lifetime > 0.0 ? raw[8] / lifetime : 0.0;
    for (const int feature : NormalizationStats::kZScoredFeatures) {
        const double sigma = stats.sigmaOf(feature);
        f[feature] = sigma > 0.0 ? (raw[feature] - stats.muOf(feature)) / sigma : 0.0;
    }
    return f;
}

void fillNeighborCounts(std::vector<Trajectory>& trajectories, const FeatureConfig& cfg) {
    for (auto& trajectory : trajectories) {
        for (auto& event : trajectory.events) {
            int count = 0;
            for (const auto& other : trajectories) {
                if (other.id == trajectory.id) {
                    continue;
                }
                for (const auto& obs : other.observations) {
                    if (std::abs(obs.t - event.t) <= kNeighborTimeWindow &&
                        distance2d(obs.position, event.position) <= cfg.neighborRadius) {
                        ++count;
                        break;
                    }
                }
            }
            event.neighborCount = count;
        }
    }
}

}  // namespace trackrepair
