#include "trackrepair/model.hpp"

#include <algorithm>

namespace trackrepair {

std::string to_string(ClassLabel label) {
    switch (label) {
        case ClassLabel::Person: return "person";
        case ClassLabel::Other: return "other";
        case ClassLabel::Unknown: return "unknown";
    }
    return "unknown";
}

ClassLabel classLabelFromString(const std::string& text) {
    if (text == "person") return ClassLabel::Person;
    if (text == "other") return ClassLabel::Other;
    if (text == "unknown") return ClassLabel::Unknown;
    throw ValidationError("unknown class label '" + text + "'");
}

std::string to_string(EventKind kind) {
    switch (kind) {
        case EventKind::FirstDetected: return "first";
        case EventKind::Lost: return "lost";
        case EventKind::Found: return "found";
        case EventKind::Ended: return "end";
    }
    return "first";
}

void Trajectory::validate() const {
    if (observations.empty()) {
        throw ValidationError("trajectory '" + id + "' has no observations");
    }
    for (std::size_t i = 0; i < observations.size(); ++i) {
        const auto& o = observations[i];
        if (o.t < 0.0) {
            throw ValidationError("trajectory '" + id + "' has a negative timestamp");
        }
        if (o.width < 0.0 || o.height < 0.0 || o.depth < 0.0) {
            throw ValidationError("trajectory '" + id + "' has a negative dimension");
        }
        if (i > 0 && observations[i - 1].t >= o.t) {
            throw ValidationError("trajectory '" + id +
                                  "' has non-monotonic timestamps at t=" + std::to_string(o.t));
        }
    }
    int firstCount = 0;
    int endCount = 0;
    int openLost = 0;
    double prevT = -1.0;
    for (const auto& e : events) {
        if (e.t < prevT) {
            throw ValidationError("trajectory '" + id + "' has out-of-order events");
        }
        prevT = e.t;
        if (e.neighborCount < 0) {
            throw ValidationError("trajectory '" + id + "' has a negative neighbor count");
        }
        switch (e.kind) {
            case EventKind::FirstDetected:
                ++firstCount;
                break;
            case EventKind::Lost:
                ++openLost;
                break;
            case EventKind::Found:
                if (openLost <= 0) {
                    throw ValidationError("trajectory '" + id +
                                          "' has a found event with no preceding lost");
                }
                --openLost;
                break;
            case EventKind::Ended:
                ++endCount;
                break;
        }
    }
    if (firstCount != 1) {
        throw ValidationError("trajectory '" + id + "' must have exactly one 'first' event, has " +
                              std::to_string(firstCount));
    }
    if (endCount > 1) {
        throw ValidationError("trajectory '" + id + "' has more than one 'end' event");
    }
}

std::string to_string(ZoneKind kind) {
    switch (kind) {
        case ZoneKind::Entry: return "entry";
        case ZoneKind::Exit: return "exit";
        case ZoneKind::InOut: return "in-out";
        case ZoneKind::Lost: return "lost";
        case ZoneKind::Found: return "found";
        case ZoneKind::LostFound: return "lost-found";
    }
    return "entry";
}

bool isStartKind(ZoneKind kind) {
    return kind == ZoneKind::Entry || kind == ZoneKind::InOut;
}

bool isExitKind(ZoneKind kind) {
    return kind == ZoneKind::Exit || kind == ZoneKind::InOut;
}

bool isLostKind(ZoneKind kind) {
    return kind == ZoneKind::Lost || kind == ZoneKind::LostFound;
}

bool isFoundKind(ZoneKind kind) {
    return kind == ZoneKind::Found || kind == ZoneKind::LostFound;
}

void SceneModel::validate() const {
    std::set<int> idents;
    for (const auto& zone : zones) {
        zone.validate();
        if (!idents.insert(zone.ident).second) {
            throw ValidationError("duplicate zone ident " + std::to_string(zone.ident));
        }
    }
}

const Zone* SceneModel::zoneByIdent(int ident) const {
    for (const auto& zone : zones) {
        if (zone.ident == ident) {
            return &zone;
        }
    }
    return nullptr;
}

std::vector<const Zone*> SceneModel::zonesContaining(const GroundPoint& p,
                                                     const std::set<ZoneKind>* kindFilter) const {
    std::vector<const Zone*> hits;
    for (const auto& zone : zones) {
        if (kindFilter && kindFilter->count(zone.kind) == 0) {
            continue;
        }
        if (zone.contains(p)) {
            hits.push_back(&zone);
        }
    }
    std::sort(hits.begin(), hits.end(),
              [](const Zone* a, const Zone* b) { return a->ident < b->ident; });
    return hits;
}

std::optional<int> SceneModel::firstZoneContaining(const GroundPoint& p,
                                                   const std::set<ZoneKind>& kinds) const {
    const auto hits = zonesContaining(p, &kinds);
    if (hits.empty()) {
        return std::nullopt;
    }
    return hits.front()->ident;
}

int SceneModel::maxIdent() const {
    int maxIdent = 0;
    for (const auto& zone : zones) {
        maxIdent = std::max(maxIdent, zone.ident);
    }
    return maxIdent;
}

}  // namespace trackrepair
