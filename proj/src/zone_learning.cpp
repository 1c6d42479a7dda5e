#include "trackrepair/zone_learning.hpp"

#include <algorithm>
#include <cmath>

namespace trackrepair {

namespace {

Zone makeRectZone(const Rect& rect, ZoneKind kind, int ident, int nameIndex) {
    Zone zone;
    zone.ident = ident;
    zone.name = "ZoneLearning" + std::to_string(nameIndex);
    zone.planeName = "ground";
    zone.kind = kind;
    zone.outline = rect.toOutline();
    return zone;
}

Rect outlineBounds(const Outline& outline) {
    return Rect::boundingBox(outline);
}

}  // namespace

std::vector<GroundPoint> collectEventPoints(std::span<const Trajectory> trajectories,
                                            const SceneModel& scene, EventKind kind) {
    if (kind != EventKind::Lost && kind != EventKind::Found) {
        throw ValidationError("collectEventPoints expects Lost or Found");
    }
    static const std::set<ZoneKind> kLostExclusions = {ZoneKind::Exit, ZoneKind::InOut};
    static const std::set<ZoneKind> kFoundExclusions = {ZoneKind::Entry, ZoneKind::InOut};
    const auto& exclusions = kind == EventKind::Lost ? kLostExclusions : kFoundExclusions;

    std::vector<GroundPoint> points;
    for (const auto& trajectory : trajectories) {
        for (const auto& event : trajectory.events) {
            const bool wanted = event.kind == kind ||
                                (kind == EventKind::Found && event.kind == EventKind::FirstDetected);
            if (!wanted) {
                continue;
            }
            if (scene.firstZoneContaining(event.position, exclusions)) {
                continue;
            }
            points.push_back(event.position);
        }
    }
    return points;
}

std::vector<Zone> buildZones(const ClusterModel& model, std::span<const GroundPoint> points,
                             ZoneKind kind, int nextIdent, int nameStart,
                             const ZoneLearnConfig& cfg) {
    if (kind != ZoneKind::Lost && kind != ZoneKind::Found) {
        throw ValidationError("buildZones expects Lost or Found");
    }
    std::vector<Zone> zones;
    for (const auto& cluster : model.clusters(points)) {
        if (cluster.empty()) {
            continue;
        }
        Rect rect = Rect::boundingBox(cluster);
        const double diagonal = std::hypot(rect.width(), rect.height());
        const double margin = cfg.marginFraction * diagonal;
        rect.minX -= margin;
        rect.minY -= margin;
        rect.maxX += margin;
        rect.maxY += margin;
        // Degenerate boxes (single point, collinear cluster) get absolute padding.
        if (rect.width() <= 0.0) {
            rect.minX -= cfg.minMargin;
            rect.maxX += cfg.minMargin;
        }
        if (rect.height() <= 0.0) {
            rect.minY -= cfg.minMargin;
            rect.maxY += cfg.minMargin;
        }
        zones.push_back(makeRectZone(rect, kind, nextIdent++, nameStart++));
    }
    return zones;
}

std::vector<Zone> mergeLostFound(std::vector<Zone> lostZones, std::vector<Zone> foundZones,
                                 int nextIdent, int nameStart, const ZoneLearnConfig& cfg) {
    std::vector<bool> foundMerged(foundZones.size(), false);
    std::vector<Zone> merged;
    std::vector<Zone> survivors;

    for (auto& lost : lostZones) {
        const Rect lostRect = outlineBounds(lost.outline);
        bool consumed = false;
        for (std::size_t i = 0; i < foundZones.size(); ++i) {
            if (foundMerged[i]) {
                continue;
            }
            const Rect foundRect = outlineBounds(foundZones[i].outline);
            const double overlap = intersectionArea(lostRect, foundRect);
            const double smaller = std::min(lostRect.area(), foundRect.area());
            if (smaller > 0.0 && overlap > cfg.overlapFraction * smaller) {
                merged.push_back(makeRectZone(boundingUnion(lostRect, foundRect),
                                              ZoneKind::LostFound, nextIdent++, nameStart++));
                foundMerged[i] = true;
                consumed = true;
                break;
            }
        }
        if (!consumed) {
            survivors.push_back(std::move(lost));
        }
    }
    for (std::size_t i = 0; i < foundZones.size(); ++i) {
        if (!foundMerged[i]) {
            survivors.push_back(std::move(foundZones[i]));
        }
    }
    survivors.insert(survivors.end(), merged.begin(), merged.end());
    return survivors;
}

LearnedZones learnZones(std::span<const Trajectory> trajectories, const SceneModel& scene,
                        const ZoneLearnConfig& cfg) {
    LearnedZones learned;
    int nextIdent = scene.maxIdent() + 1;
    int nameIndex = 0;

    const auto lostPoints = collectEventPoints(trajectories, scene, EventKind::Lost);
    std::vector<Zone> lostZones;
    if (!lostPoints.empty()) {
        const int k = selectK(lostPoints, cfg.kMax, derivedSeed(cfg.seed, "zones.lost.k"));
        const auto model = kmeans(lostPoints, k, derivedSeed(cfg.seed, "zones.lost"));
        learned.lostClusterCount = model.k;
        lostZones = buildZones(model, lostPoints, ZoneKind::Lost, nextIdent, nameIndex, cfg);
        nextIdent += static_cast<int>(lostZones.size());
        nameIndex += static_cast<int>(lostZones.size());
    }

    const auto foundPoints = collectEventPoints(trajectories, scene, EventKind::Found);
    std::vector<Zone> foundZones;
    if (!foundPoints.empty()) {
        const int k = selectK(foundPoints, cfg.kMax, derivedSeed(cfg.seed, "zones.found.k"));
        const auto model = kmeans(foundPoints, k, derivedSeed(cfg.seed, "zones.found"));
        learned.foundClusterCount = model.k;
        foundZones = buildZones(model, foundPoints, ZoneKind::Found, nextIdent, nameIndex, cfg);
        nextIdent += static_cast<int>(foundZones.size());
        nameIndex += static_cast<int>(foundZones.size());
    }

    learned.zones =
        mergeLostFound(std::move(lostZones), std::move(foundZones), nextIdent, nameIndex, cfg);
    return learned;
}

}  // namespace trackrepair
