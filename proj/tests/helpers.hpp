#pragma once

#include <string>
#include <vector>

#include "trackrepair/model.hpp"

namespace trackrepair::testing {

inline Zone rectZone(int ident, ZoneKind kind, double x0, double y0, double x1, double y1,
                     const std::string& name = "") {
    Zone zone;
    zone.ident = ident;
    zone.name = name.empty() ? "zone" + std::to_string(ident) : name;
    zone.kind = kind;
    zone.outline = Rect{x0, y0, x1, y1}.toOutline();
    return zone;
}

inline SceneModel sceneWith(std::vector<Zone> zones) {
    SceneModel scene;
    scene.zones = std::move(zones);
    scene.validate();
    return scene;
}

struct TimedPoint {
    double t;
    double x;
    double y;
};

// Trajectory along the given samples with first/end events attached, person
// class and fixed size.
inline Trajectory makeWalk(const std::string& id, const std::vector<TimedPoint>& samples,
                           bool endsLost = false) {
    Trajectory trajectory;
    trajectory.id = id;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        Observation obs;
        obs.t = samples[i].t;
        obs.frame = static_cast<std::int64_t>(i);
        obs.position = {samples[i].x, samples[i].y, 0.0};
        obs.width = 0.5;
        obs.height = 1.7;
        obs.depth = 0.5;
        obs.classLabel = ClassLabel::Person;
        trajectory.observations.push_back(obs);
    }
    TrackEvent first;
    first.kind = EventKind::FirstDetected;
    first.t = trajectory.observations.front().t;
    first.position = trajectory.observations.front().position;
    trajectory.events.push_back(first);
    if (samples.size() > 1) {
        TrackEvent last;
        last.kind = endsLost ? EventKind::Lost : EventKind::Ended;
        last.t = trajectory.observations.back().t;
        last.position = trajectory.observations.back().position;
        trajectory.events.push_back(last);
    }
    trajectory.validate();
    return trajectory;
}

}  // namespace trackrepair::testing
