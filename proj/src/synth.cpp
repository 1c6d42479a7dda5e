#include "trackrepair/synth.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "trackrepair/features.hpp"
#include "trackrepair/rng.hpp"

namespace trackrepair {

namespace {

constexpr double kSpeedJitter = 0.1;
constexpr double kPi = 3.14159265358979323846;

double gtBandMidpoint(TrajectoryClass cls) {
    switch (cls) {
        case TrajectoryClass::Complete: return 0.9;
        case TrajectoryClass::Incomplete: return 0.65;
        case TrajectoryClass::Unreliable: return 0.35;
        case TrajectoryClass::Noise: return 0.1;
    }
    return 0.1;
}

struct PathSample {
    double t = 0.0;
    GroundPoint position;
};

GroundPoint samplePointInZone(const Zone& zone, Rng& rng) {
    const Rect box = Rect::boundingBox(zone.outline);
    for (int attempt = 0; attempt < 100; ++attempt) {
        const GroundPoint p{rng.uniform(box.minX, box.maxX), rng.uniform(box.minY, box.maxY), 0.0};
        if (zone.contains(p)) {
            return p;
        }
    }
    // Heavily concave outline: fall back to the vertex centroid.
    GroundPoint centroid;
    for (const auto& v : zone.outline) {
        centroid.x += v.x;
        centroid.y += v.y;
    }
    centroid.x /= static_cast<double>(zone.outline.size());
    centroid.y /= static_cast<double>(zone.outline.size());
    return centroid;
}

int occluderContaining(const std::vector<Occluder>& occluders, const GroundPoint& p) {
    for (std::size_t i = 0; i < occluders.size(); ++i) {
        if (occluders[i].rect.contains(p)) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

Observation makeObservation(const PathSample& sample, double frameRate, double width,
                            double height, double depth, ClassLabel label) {
    Observation obs;
    obs.t = sample.t;
    obs.frame = static_cast<std::int64_t>(std::llround(sample.t * frameRate));
    obs.position = sample.position;
    obs.width = width;
    obs.height = height;
    obs.depth = depth;
    obs.classLabel = label;
    return obs;
}

}  // namespace

void SynthConfig::validate() const {
    if (agentCount < 0) {
        throw ValidationError("agent count must be non-negative");
    }
    if (speedMin <= 0.0 || speedMax < speedMin) {
        throw ValidationError("need 0 < speed_min <= speed_max");
    }
    if (frameRate <= 0.0) {
        throw ValidationError("frame rate must be positive");
    }
    if (startInterval <= 0.0) {
        throw ValidationError("start interval must be positive");
    }
    if (noiseTrackRate < 0.0) {
        throw ValidationError("noise track rate must be non-negative");
    }
    for (const auto& occluder : occluders) {
        if (occluder.pLoss < 0.0 || occluder.pLoss > 1.0) {
            throw ValidationError("occluder loss probability must lie in [0,1]");
        }
        if (occluder.gapMin < 0.0 || occluder.gapMax < occluder.gapMin) {
            throw ValidationError("need 0 <= gap_min <= gap_max");
        }
    }
    bool hasStart = false;
    bool hasExit = false;
    for (const auto& zone : zones) {
        hasStart = hasStart || isStartKind(zone.kind);
        hasExit = hasExit || isExitKind(zone.kind);
    }
    if (agentCount > 0 && (!hasStart || !hasExit)) {
        throw ValidationError("scene needs at least one entry and one exit zone");
    }
}

SynthOutput generate(const SynthConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.rngSeed);
    SynthOutput output;

    std::vector<const Zone*> startZones;
    std::vector<const Zone*> exitZones;
    for (const auto& zone : cfg.zones) {
        if (isStartKind(zone.kind)) startZones.push_back(&zone);
        if (isExitKind(zone.kind)) exitZones.push_back(&zone);
    }

    const double dt = 1.0 / cfg.frameRate;

    for (int agent = 0; agent < cfg.agentCount; ++agent) {
        const Zone* startZone = startZones[rng.uniformIndex(startZones.size())];
        const Zone* exitZone = exitZones[rng.uniformIndex(exitZones.size())];
        const GroundPoint start = samplePointInZone(*startZone, rng);
        const GroundPoint goal = samplePointInZone(*exitZone, rng);
        const double distance = distance2d(start, goal);
        const double baseSpeed = rng.uniform(cfg.speedMin, cfg.speedMax);
        const double dirX = distance > 0.0 ? (goal.x - start.x) / distance : 0.0;
        const double dirY = distance > 0.0 ? (goal.y - start.y) / distance : 0.0;

        // Straight walk sampled at the frame rate, with per-step speed jitter.
        std::vector<PathSample> path;
        double t = static_cast<double>(agent) * cfg.startInterval;
        double traveled = 0.0;
        path.push_back({t, start});
        while (traveled < distance) {
            const double step = baseSpeed * (1.0 + kSpeedJitter * rng.uniform(-1.0, 1.0)) * dt;
            traveled = std::min(traveled + step, distance);
            t += dt;
            path.push_back({t, GroundPoint{start.x + dirX * traveled, start.y + dirY * traveled, 0.0}});
        }

        // Cut the path into fragments at occluder entries.
        struct Fragment {
            std::vector<std::size_t> indices;
            bool endsLost = false;
        };
        std::vector<Fragment> fragments;
        Fragment current;
        bool insideOccluder = occluderContaining(cfg.occluders, path.front().position) >= 0;
        std::size_t i = 0;
        while (i < path.size()) {
            const int occluder = occluderContaining(cfg.occluders, path[i].position);
            const bool nowInside = occluder >= 0;
            if (nowInside && !insideOccluder && !current.indices.empty() &&
                rng.bernoulli(cfg.occluders[static_cast<std::size_t>(occluder)].pLoss)) {
                // Lost at the entry edge: the first sample inside the occluder
                // is the fragment's final sighting.
                current.indices.push_back(i);
                current.endsLost = true;
                fragments.push_back(std::move(current));
                current = Fragment{};
                const auto& occ = cfg.occluders[static_cast<std::size_t>(occluder)];
                const double resumeTime = path[i].t + rng.uniform(occ.gapMin, occ.gapMax);
                while (i < path.size() && path[i].t < resumeTime) {
                    ++i;
                }
                if (i < path.size()) {
                    insideOccluder = occluderContaining(cfg.occluders, path[i].position) >= 0;
                }
                continue;
            }
            insideOccluder = nowInside;
            current.indices.push_back(i);
            ++i;
        }
        if (!current.indices.empty()) {
            fragments.push_back(std::move(current));
        }

        const std::string agentId = "agent" + std::to_string(agent);
        for (std::size_t f = 0; f < fragments.size(); ++f) {
            const auto& fragment = fragments[f];
            Trajectory trajectory;
            trajectory.id = "a" + std::to_string(agent) + "f" + std::to_string(f);
            for (const std::size_t index : fragment.indices) {
                trajectory.observations.push_back(
                    makeObservation(path[index], cfg.frameRate, 0.5, 1.7, 0.5, ClassLabel::Person));
            }
            TrackEvent first;
            first.kind = EventKind::FirstDetected;
            first.t = trajectory.observations.front().t;
            first.position = trajectory.observations.front().position;
            trajectory.events.push_back(first);
            if (trajectory.observations.size() > 1) {
                TrackEvent last;
                last.kind = fragment.endsLost ? EventKind::Lost : EventKind::Ended;
                last.t = trajectory.observations.back().t;
                last.position = trajectory.observations.back().position;
                trajectory.events.push_back(last);
            }

            TruthEntry truth;
            truth.trajectoryId = trajectory.id;
            truth.agentId = agentId;
            truth.fragmentIndex = static_cast<int>(f);
            if (fragments.size() == 1) {
                truth.gtClass = TrajectoryClass::Complete;
            } else if (f == 0 || f + 1 == fragments.size()) {
                truth.gtClass = TrajectoryClass::Incomplete;  // one endpoint missing
            } else {
                truth.gtClass = TrajectoryClass::Unreliable;  // both endpoints missing
            }
            truth.gtValue = gtBandMidpoint(truth.gtClass);

            if (f >= 1) {
                output.fragmentToAgent[trajectory.id] = agentId;
            }
            output.trajectories.push_back(std::move(trajectory));
            output.truth.push_back(std::move(truth));
        }
    }

    // Noise tracks: short erratic walks with unstable size, spread over the
    // whole simulation window.
    const int noiseCount = static_cast<int>(std::llround(cfg.noiseTrackRate * cfg.agentCount));
    if (noiseCount > 0) {
        Rect bounds{};
        bool haveBounds = false;
        for (const auto& zone : cfg.zones) {
            const Rect box = Rect::boundingBox(zone.outline);
            bounds = haveBounds ? boundingUnion(bounds, box) : box;
            haveBounds = true;
        }
        for (const auto& occluder : cfg.occluders) {
            bounds = haveBounds ? boundingUnion(bounds, occluder.rect) : occluder.rect;
            haveBounds = true;
        }
        if (!haveBounds) {
            bounds = Rect{-10.0, -10.0, 10.0, 10.0};
        }
        const double horizon = static_cast<double>(cfg.agentCount) * cfg.startInterval;
        for (int n = 0; n < noiseCount; ++n) {
            Trajectory trajectory;
            trajectory.id = "n" + std::to_string(n);
            double t = rng.uniform(0.0, std::max(horizon, 1.0));
            GroundPoint pos{rng.uniform(bounds.minX, bounds.maxX),
                            rng.uniform(bounds.minY, bounds.maxY), 0.0};
            double heading = rng.uniform(0.0, 2.0 * kPi);
            const int steps = 5 + static_cast<int>(rng.uniformIndex(21));
            for (int s = 0; s < steps; ++s) {
                PathSample sample{t, pos};
                trajectory.observations.push_back(
                    makeObservation(sample, cfg.frameRate, rng.uniform(0.2, 1.2),
                                    rng.uniform(0.2, 1.2), rng.uniform(0.2, 1.2),
                                    ClassLabel::Other));
                heading += rng.uniform(-2.0 * kPi / 3.0, 2.0 * kPi / 3.0);
                const double speed = rng.uniform(0.2, 1.0);
                pos.x += std::cos(heading) * speed * dt;
                pos.y += std::sin(heading) * speed * dt;
                t += dt;
            }
            TrackEvent first;
            first.kind = EventKind::FirstDetected;
            first.t = trajectory.observations.front().t;
            first.position = trajectory.observations.front().position;
            trajectory.events.push_back(first);
            TrackEvent last;
            last.kind = EventKind::Ended;
            last.t = trajectory.observations.back().t;
            last.position = trajectory.observations.back().position;
            trajectory.events.push_back(last);

            TruthEntry truth;
            truth.trajectoryId = trajectory.id;
            truth.agentId = "noise";
            truth.fragmentIndex = 0;
            truth.gtClass = TrajectoryClass::Noise;
            truth.gtValue = gtBandMidpoint(truth.gtClass);
            output.trajectories.push_back(std::move(trajectory));
            output.truth.push_back(std::move(truth));
        }
    }

    FeatureConfig neighborCfg;
    neighborCfg.neighborRadius = cfg.neighborRadius;
    fillNeighborCounts(output.trajectories, neighborCfg);

    for (const auto& trajectory : output.trajectories) {
        trajectory.validate();
    }
    return output;
}

std::string writeTruth(const std::vector<TruthEntry>& truth) {
    std::ostringstream out;
    out << "trajectory_id,agent_id,fragment,gt_class,gt_value\n";
    for (const auto& entry : truth) {
        out << entry.trajectoryId << ',' << entry.agentId << ',' << entry.fragmentIndex << ','
            << to_string(entry.gtClass) << ',' << entry.gtValue << '\n';
    }
    return out.str();
}

}  // namespace trackrepair
