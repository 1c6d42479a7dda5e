#include "trackrepair/repair.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace trackrepair {

namespace {

static const std::set<ZoneKind> kStartKinds = {ZoneKind::Entry, ZoneKind::InOut};
static const std::set<ZoneKind> kLostKinds = {ZoneKind::Lost, ZoneKind::LostFound};
static const std::set<ZoneKind> kFoundKinds = {ZoneKind::Found, ZoneKind::LostFound};

// Timestamp of the last lost event with no matching found event, if any.
std::optional<const TrackEvent*> danglingLostEvent(const Trajectory& trajectory) {
    int openLost = 0;
    const TrackEvent* lastLost = nullptr;
    for (const auto& event : trajectory.events) {
        if (event.kind == EventKind::Lost) {
            ++openLost;
            lastLost = &event;
        } else if (event.kind == EventKind::Found) {
            --openLost;
        }
    }
    if (openLost > 0 && lastLost != nullptr) {
        return lastLost;
    }
    return std::nullopt;
}

double medianFrameSpacing(const Trajectory& a, const Trajectory& b) {
    std::vector<double> gaps;
    const auto collect = [&gaps](const Trajectory& t) {
        for (std::size_t i = 1; i < t.observations.size(); ++i) {
            gaps.push_back(t.observations[i].t - t.observations[i - 1].t);
        }
    };
    collect(a);
    collect(b);
    if (gaps.empty()) {
        return 0.0;
    }
    std::sort(gaps.begin(), gaps.end());
    return gaps[gaps.size() / 2];
}

// Joins the lost fragment and the re-appearing fragment: the lost id survives,
// observations are concatenated and the gap is marked by a found event at the
// fusion time. The gap stays empty unless interpolation is requested.
Trajectory fuse(const Trajectory& lost, const Trajectory& donor, double tNow,
                const RepairConfig& cfg) {
    Trajectory fused;
    fused.id = lost.id;
    fused.observations = lost.observations;

    if (cfg.interpolateGaps) {
        const double dt = medianFrameSpacing(lost, donor);
        if (dt > 0.0) {
            const Observation& before = lost.observations.back();
            const Observation& after = donor.observations.front();
            const double gap = after.t - before.t;
            for (double t = before.t + dt; t < after.t - 1e-9; t += dt) {
                const double alpha = (t - before.t) / gap;
                Observation obs = before;
                obs.t = t;
                obs.frame = before.frame + static_cast<std::int64_t>(std::llround((t - before.t) / dt));
                obs.position.x = before.position.x + alpha * (after.position.x - before.position.x);
                obs.position.y = before.position.y + alpha * (after.position.y - before.position.y);
                obs.position.z = before.position.z + alpha * (after.position.z - before.position.z);
                obs.width = before.width + alpha * (after.width - before.width);
                obs.height = before.height + alpha * (after.height - before.height);
                obs.depth = before.depth + alpha * (after.depth - before.depth);
                fused.observations.push_back(obs);
            }
        }
    }
    fused.observations.insert(fused.observations.end(), donor.observations.begin(),
                              donor.observations.end());

    fused.events = lost.events;
    TrackEvent found;
    found.kind = EventKind::Found;
    found.t = tNow;
    found.position = donor.firstObservation().position;
    for (const auto& event : donor.events) {
        if (event.kind == EventKind::FirstDetected) {
            found.neighborCount = event.neighborCount;
            break;
        }
    }
    fused.events.push_back(found);
    for (const auto& event : donor.events) {
        if (event.kind != EventKind::FirstDetected) {
            fused.events.push_back(event);
        }
    }
    return fused;
}

}  // namespace

std::optional<int> detectAnomalousAppearance(const Trajectory& newTrack, const SceneModel& scene) {
    const GroundPoint& first = newTrack.firstObservation().position;
    if (scene.firstZoneContaining(first, kStartKinds)) {
        return std::nullopt;
    }
    return scene.firstZoneContaining(first, kFoundKinds);
}

std::optional<RepairResult> matchAndRepair(const Trajectory& newTrack, int foundZone,
                                           std::vector<LostTrackState>& lostPool,
                                           std::span<const ZoneTriplet> triplets, double tNow,
                                           const RepairConfig& cfg) {
    for (const auto& triplet : triplets) {
        if (triplet.foundZone != foundZone) {
            continue;
        }
        // Earliest-lost eligible state wins; pool order breaks exact ties.
        std::size_t bestIndex = lostPool.size();
        for (std::size_t i = 0; i < lostPool.size(); ++i) {
            const auto& state = lostPool[i];
            if (state.startZone != triplet.startZone || state.lostZone != triplet.lostZone) {
                continue;
            }
            const double elapsed = tNow - state.tLost;
            if (!(elapsed > triplet.minTime && elapsed < triplet.maxTime)) {
                continue;
            }
            if (bestIndex == lostPool.size() || state.tLost < lostPool[bestIndex].tLost) {
                bestIndex = i;
            }
        }
        if (bestIndex == lostPool.size()) {
            continue;
        }

        LostTrackState state = std::move(lostPool[bestIndex]);
        lostPool.erase(lostPool.begin() + static_cast<std::ptrdiff_t>(bestIndex));

        RepairResult result;
        result.fusedTrajectory = fuse(state.trajectory, newTrack, tNow, cfg);
        result.donorId = newTrack.id;
        result.recipientId = state.trajectory.id;
        result.tripletUsed = triplet;
        result.tFused = tNow;
        result.cvBefore = state.cvBefore;
        return result;
    }
    return std::nullopt;
}

RepairBatchResult repairBatch(std::span<const Trajectory> trajectories, const SceneModel& scene,
                              std::span<const ZoneTriplet> triplets, const WeightVector& weights,
                              const NormalizationStats& stats, const RepairConfig& cfg) {
    const auto score = [&](const Trajectory& t) {
        return confidenceValue(normalize(extractRaw(t, scene, cfg.features), stats), weights);
    };

    // Priority order regardless of how the caller stored them.
    std::vector<ZoneTriplet> ordered(triplets.begin(), triplets.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const ZoneTriplet& a, const ZoneTriplet& b) {
        if (a.support != b.support) return a.support > b.support;
        return std::tie(a.startZone, a.lostZone, a.foundZone) <
               std::tie(b.startZone, b.lostZone, b.foundZone);
    });

    // Replay in appearance order; ids break simultaneous-appearance ties.
    std::vector<std::size_t> order(trajectories.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ta = trajectories[a].firstTime();
        const double tb = trajectories[b].firstTime();
        if (ta != tb) return ta < tb;
        return trajectories[a].id < trajectories[b].id;
    });

    RepairBatchResult batch;
    std::vector<LostTrackState> pool;
    std::unordered_map<std::string, std::size_t> slotById;

    const auto poolIfDangling = [&](const Trajectory& trajectory) {
        const auto lost = danglingLostEvent(trajectory);
        if (!lost) {
            return;
        }
        const auto start =
            scene.firstZoneContaining(trajectory.firstObservation().position, kStartKinds);
        const auto lostZone = scene.firstZoneContaining((*lost)->position, kLostKinds);
        if (!start || !lostZone) {
            return;  // can never match a triplet
        }
        LostTrackState state;
        state.trajectory = trajectory;
        state.startZone = *start;
        state.lostZone = *lostZone;
        state.tLost = (*lost)->t;
        state.cvBefore = score(trajectory);
        pool.push_back(std::move(state));
    };

    for (const std::size_t index : order) {
        const Trajectory& incoming = trajectories[index];
        std::optional<RepairResult> result;
        if (const auto foundZone = detectAnomalousAppearance(incoming, scene)) {
            result = matchAndRepair(incoming, *foundZone, pool, ordered, incoming.firstTime(), cfg);
        }
        if (result) {
            result->cvAfter = score(result->fusedTrajectory);
            const std::size_t slot = slotById.at(result->recipientId);
            batch.trajectories[slot] = result->fusedTrajectory;
            poolIfDangling(batch.trajectories[slot]);
            batch.report.fusionCount += 1;
            if (result->cvAfter > result->cvBefore) {
                batch.report.cvIncreasedCount += 1;
            }
            batch.results.push_back(std::move(*result));
        } else {
            slotById[incoming.id] = batch.trajectories.size();
            batch.trajectories.push_back(incoming);
            poolIfDangling(incoming);
        }
    }
    return batch;
}

}  // namespace trackrepair
