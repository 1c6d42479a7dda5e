#include "trackrepair/triplets.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace trackrepair {

namespace {

static const std::set<ZoneKind> kStartKinds = {ZoneKind::Entry, ZoneKind::InOut};
static const std::set<ZoneKind> kLostKinds = {ZoneKind::Lost, ZoneKind::LostFound};
static const std::set<ZoneKind> kFoundKinds = {ZoneKind::Found, ZoneKind::LostFound};

std::string formatReal(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6f", value);
    return buffer;
}

}  // namespace

bool isComplete(const Trajectory& trajectory, double cv, const SceneModel& scene,
                double completeThreshold) {
    if (cv <= completeThreshold) {
        return false;
    }
    return scene.firstZoneContaining(trajectory.firstObservation().position, kStartKinds)
        .has_value();
}

std::optional<TraceTuple> traceTriplet(const Trajectory& trajectory, const SceneModel& scene) {
    const auto& obs = trajectory.observations;
    const auto start = scene.firstZoneContaining(obs.front().position, kStartKinds);
    if (!start) {
        return std::nullopt;
    }

    // First lost(-found) zone with an observation inside it.
    std::optional<int> lostZone;
    std::size_t enterLostIndex = 0;
    for (std::size_t i = 0; i < obs.size() && !lostZone; ++i) {
        lostZone = scene.firstZoneContaining(obs[i].position, kLostKinds);
        enterLostIndex = i;
    }
    if (!lostZone) {
        return std::nullopt;
    }
    const Zone* lost = scene.zoneByIdent(*lostZone);

    // First observation outside the lost zone after entering it.
    std::optional<std::size_t> exitLostIndex;
    for (std::size_t i = enterLostIndex + 1; i < obs.size(); ++i) {
        if (!lost->contains(obs[i].position)) {
            exitLostIndex = i;
            break;
        }
    }
    if (!exitLostIndex) {
        return std::nullopt;
    }

    // First found(-lost-found) zone entered strictly after the exit
    // observation. An entry means the previous observation was outside, so a
    // zone the object already occupied when it left the lost zone does not
    // count until it is left and re-entered.
    std::optional<int> foundZone;
    std::size_t enterFoundIndex = 0;
    for (std::size_t i = *exitLostIndex + 1; i < obs.size() && !foundZone; ++i) {
        const auto hits = scene.zonesContaining(obs[i].position, &kFoundKinds);
        for (const Zone* zone : hits) {
            if (!zone->contains(obs[i - 1].position)) {
                foundZone = zone->ident;
                enterFoundIndex = i;
                break;
            }
        }
    }
    if (!foundZone) {
        return std::nullopt;
    }
    const Zone* found = scene.zoneByIdent(*foundZone);

    // First observation outside the found zone after entering it; a trajectory
    // that ends inside leaves at its last observation.
    double tLeaveFound = obs.back().t;
    for (std::size_t i = enterFoundIndex + 1; i < obs.size(); ++i) {
        if (!found->contains(obs[i].position)) {
            tLeaveFound = obs[i].t;
            break;
        }
    }

    TraceTuple tuple;
    tuple.startZone = *start;
    tuple.lostZone = *lostZone;
    tuple.foundZone = *foundZone;
    tuple.tEnterLost = obs[enterLostIndex].t;
    tuple.tExitLost = obs[*exitLostIndex].t;
    tuple.tEnterFound = obs[enterFoundIndex].t;
    tuple.tLeaveFound = tLeaveFound;
    return tuple;
}

std::vector<ZoneTriplet> buildTriplets(std::span<const TraceTuple> tuples, bool useMinMaxWindow) {
    struct Accumulator {
        double minSum = 0.0;
        double maxSum = 0.0;
        double minOfMins = 0.0;
        double maxOfMaxes = 0.0;
        long count = 0;
    };
    std::map<std::tuple<int, int, int>, Accumulator> groups;
    for (const auto& tuple : tuples) {
        auto& acc = groups[{tuple.startZone, tuple.lostZone, tuple.foundZone}];
        const double minTime = tuple.tEnterFound - tuple.tExitLost;
        const double maxTime = tuple.tLeaveFound - tuple.tEnterLost;
        if (acc.count == 0) {
            acc.minOfMins = minTime;
            acc.maxOfMaxes = maxTime;
        } else {
            acc.minOfMins = std::min(acc.minOfMins, minTime);
            acc.maxOfMaxes = std::max(acc.maxOfMaxes, maxTime);
        }
        acc.minSum += minTime;
        acc.maxSum += maxTime;
        acc.count += 1;
    }

    std::vector<ZoneTriplet> triplets;
    triplets.reserve(groups.size());
    for (const auto& [key, acc] : groups) {
        ZoneTriplet triplet;
        std::tie(triplet.startZone, triplet.lostZone, triplet.foundZone) = key;
        if (useMinMaxWindow) {
            triplet.minTime = acc.minOfMins;
            triplet.maxTime = acc.maxOfMaxes;
        } else {
            triplet.minTime = acc.minSum / static_cast<double>(acc.count);
            triplet.maxTime = acc.maxSum / static_cast<double>(acc.count);
        }
        triplet.support = acc.count;
        triplets.push_back(triplet);
    }
    // Higher support first; the map already orders ties by zone triple.
    std::stable_sort(triplets.begin(), triplets.end(),
                     [](const ZoneTriplet& a, const ZoneTriplet& b) { return a.support > b.support; });
    return triplets;
}

std::string serializeTriplets(std::span<const ZoneTriplet> triplets) {
    std::ostringstream out;
    out << "start_ident,lost_ident,found_ident,min_time,max_time,support\n";
    for (const auto& t : triplets) {
        out << t.startZone << ',' << t.lostZone << ',' << t.foundZone << ','
            << formatReal(t.minTime) << ',' << formatReal(t.maxTime) << ',' << t.support << '\n';
    }
    return out.str();
}

std::vector<ZoneTriplet> parseTriplets(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineNumber = 0;
    bool sawHeader = false;
    std::vector<ZoneTriplet> triplets;
    while (std::getline(in, line)) {
        ++lineNumber;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!sawHeader) {
            if (line != "start_ident,lost_ident,found_ident,min_time,max_time,support") {
                throw ParseError(lineNumber, "unexpected triplet table header");
            }
            sawHeader = true;
            continue;
        }
        ZoneTriplet t;
        char extra = '\0';
        if (std::sscanf(line.c_str(), "%d,%d,%d,%lf,%lf,%ld%c", &t.startZone, &t.lostZone,
                        &t.foundZone, &t.minTime, &t.maxTime, &t.support, &extra) != 6) {
            throw ParseError(lineNumber, "malformed triplet record '" + line + "'");
        }
        if (t.minTime < 0.0 || t.minTime > t.maxTime || t.support < 1) {
            throw ParseError(lineNumber, "triplet record violates 0 <= min <= max, support >= 1");
        }
        triplets.push_back(t);
    }
    return triplets;
}

std::vector<ZoneTriplet> loadTripletFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open triplet file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parseTriplets(buffer.str());
}

void saveTripletFile(const std::string& path, std::span<const ZoneTriplet> triplets) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write triplet file '" + path + "'");
    }
    out << serializeTriplets(triplets);
}

}  // namespace trackrepair
