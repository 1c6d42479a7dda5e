#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "trackrepair/geometry.hpp"

namespace trackrepair {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& message)
        : std::runtime_error("line " + std::to_string(line_) + ": " + message), line(line_) {}
};

enum class ClassLabel { Person, Other, Unknown };

std::string to_string(ClassLabel label);
ClassLabel classLabelFromString(const std::string& text);

struct Observation {
    double t = 0.0;       // seconds
    std::int64_t frame = 0;
    GroundPoint position;
    double width = 0.0;
    double height = 0.0;
    double depth = 0.0;
    ClassLabel classLabel = ClassLabel::Unknown;
};

enum class EventKind { FirstDetected, Lost, Found, Ended };

std::string to_string(EventKind kind);

struct TrackEvent {
    EventKind kind = EventKind::FirstDetected;
    double t = 0.0;
    GroundPoint position;
    int neighborCount = 0;
};

// One tracked object: strictly time-ordered observations plus the tracker's
// first/lost/found/end marks.
struct Trajectory {
    std::string id;
    std::vector<Observation> observations;
    std::vector<TrackEvent> events;

    double firstTime() const { return observations.front().t; }
    double lastTime() const { return observations.back().t; }
    const Observation& firstObservation() const { return observations.front(); }
    const Observation& lastObservation() const { return observations.back(); }

    // Throws ValidationError on: empty observations, non-monotonic timestamps,
    // missing/duplicated FirstDetected, more than one Ended, or a Found event
    // with no preceding unmatched Lost.
    void validate() const;
};

enum class ZoneKind { Entry, Exit, InOut, Lost, Found, LostFound };

std::string to_string(ZoneKind kind);

bool isStartKind(ZoneKind kind);   // Entry or InOut
bool isExitKind(ZoneKind kind);    // Exit or InOut
bool isLostKind(ZoneKind kind);    // Lost or LostFound
bool isFoundKind(ZoneKind kind);   // Found or LostFound

// Named ground-plane polygon. A zone has exactly one kind, which already
// encodes the exclusivity rules (a lost zone is by construction not an exit
// or in/out zone, and symmetrically for found zones).
struct Zone {
    int ident = 0;
    std::string name;
    std::string planeName = "ground";
    ZoneKind kind = ZoneKind::Entry;
    Outline outline;

    bool contains(const GroundPoint& p) const { return outlineContains(outline, p); }

    void validate() const { validateOutline(outline); }
};

struct NormalizationStats;  // features.hpp
struct ZoneTriplet;         // triplets.hpp

// Learned scene context: manual and learned zones. Normalization statistics
// and triplets travel in separate files and are joined by the CLI.
struct SceneModel {
    std::vector<Zone> zones;

    void validate() const;

    const Zone* zoneByIdent(int ident) const;

    // Zones containing p, optionally restricted to a kind set, ident-ascending.
    std::vector<const Zone*> zonesContaining(const GroundPoint& p,
                                             const std::set<ZoneKind>* kindFilter = nullptr) const;

    // Lowest-ident zone of one of the given kinds containing p, if any.
    std::optional<int> firstZoneContaining(const GroundPoint& p,
                                           const std::set<ZoneKind>& kinds) const;

    int maxIdent() const;
};

}  // namespace trackrepair
