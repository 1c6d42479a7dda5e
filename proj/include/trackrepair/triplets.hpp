#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trackrepair/model.hpp"

namespace trackrepair {

// Repair template: lost tracks that started in startZone and vanished in
// lostZone typically reappear in foundZone between minTime and maxTime
// seconds later. support counts the complete trajectories behind it.
struct ZoneTriplet {
    int startZone = 0;
    int lostZone = 0;
    int foundZone = 0;
    double minTime = 0.0;
    double maxTime = 0.0;
    long support = 0;
};

// A complete trajectory scores above the threshold and starts in an
// entry/in-out zone; only those are used to build triplets.
bool isComplete(const Trajectory& trajectory, double cv, const SceneModel& scene,
                double completeThreshold);

// Zone sequence and timing of one complete trajectory:
// start zone -> first lost(-found) zone crossed -> first found(-lost-found)
// zone entered strictly after leaving the lost zone.
struct TraceTuple {
    int startZone = 0;
    int lostZone = 0;
    int foundZone = 0;
    double tEnterLost = 0.0;
    double tExitLost = 0.0;
    double tEnterFound = 0.0;
    double tLeaveFound = 0.0;
};

std::optional<TraceTuple> traceTriplet(const Trajectory& trajectory, const SceneModel& scene);

// Groups tuples by zone triple; minTime averages tEnterFound - tExitLost and
// maxTime averages tLeaveFound - tEnterLost over the group. Sorted by support
// descending, ties by (start, lost, found) ascending. With useMinMaxWindow the
// window takes min-of-mins and max-of-maxes instead of the averages.
std::vector<ZoneTriplet> buildTriplets(std::span<const TraceTuple> tuples,
                                       bool useMinMaxWindow = false);

// Text table: start_ident,lost_ident,found_ident,min_time,max_time,support.
std::string serializeTriplets(std::span<const ZoneTriplet> triplets);
std::vector<ZoneTriplet> parseTriplets(const std::string& text);

std::vector<ZoneTriplet> loadTripletFile(const std::string& path);
void saveTripletFile(const std::string& path, std::span<const ZoneTriplet> triplets);

}  // namespace trackrepair
