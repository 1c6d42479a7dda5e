#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "trackrepair/clustering.hpp"
#include "trackrepair/model.hpp"

namespace trackrepair {

struct ZoneLearnConfig {
    int kMax = 12;
    // Outline margin as a fraction of the cluster bounding-box diagonal.
    double marginFraction = 0.05;
    // Absolute padding applied to degenerate (zero-extent) box dimensions.
    double minMargin = 10.0;
    // A lost/found pair merges into one lost-found zone when their overlap
    // exceeds this fraction of the smaller rectangle.
    double overlapFraction = 0.5;
    std::uint64_t seed = 1;
};

// Positions where the tracker loses or (re)detects objects. kind=Lost yields
// lost-event positions excluding any inside an exit/in-out zone; kind=Found
// yields found-event and first-detection positions excluding any inside an
// entry/in-out zone. First detections count on the found side because a
// re-appearing object surfaces as a brand-new track, and a new detection in
// an abnormal location is exactly what a found zone captures.
std::vector<GroundPoint> collectEventPoints(std::span<const Trajectory> trajectories,
                                            const SceneModel& scene, EventKind kind);

// One rectangular zone per cluster, named ZoneLearning<n> with n starting at
// nameStart and idents from nextIdent. kind must be Lost or Found.
std::vector<Zone> buildZones(const ClusterModel& model, std::span<const GroundPoint> points,
                             ZoneKind kind, int nextIdent, int nameStart,
                             const ZoneLearnConfig& cfg = {});

// Replaces sufficiently overlapping lost/found pairs with a single lost-found
// zone spanning both; unmerged zones pass through. Merged zones get fresh
// idents and names continuing the learned sequence.
std::vector<Zone> mergeLostFound(std::vector<Zone> lostZones, std::vector<Zone> foundZones,
                                 int nextIdent, int nameStart, const ZoneLearnConfig& cfg = {});

struct LearnedZones {
    std::vector<Zone> zones;  // lost, found and merged lost-found zones
    int lostClusterCount = 0;
    int foundClusterCount = 0;
};

// Full learning pass: collect lost/found event points, pick cluster counts,
// cluster, outline, merge. Returns only the learned zones; callers append
// them to the manual scene.
LearnedZones learnZones(std::span<const Trajectory> trajectories, const SceneModel& scene,
                        const ZoneLearnConfig& cfg);

}  // namespace trackrepair
