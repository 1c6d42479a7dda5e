#pragma once

#include <map>
#include <string>
#include <vector>

#include "trackrepair/model.hpp"

namespace trackrepair {

// Result of reading a trajectory CSV. hasNeighborCounts is false when the
// neighbors column was absent; callers may then fill event neighbor counts
// with features::fillNeighborCounts.
struct TrajectoryFile {
    std::vector<Trajectory> trajectories;
    bool hasNeighborCounts = true;
};

// Line-delimited CSV with a mandatory header naming the columns
// trajectory_id, frame, time, x, y, z, width, height, depth, class, event
// and optionally neighbors, in any order. '#'-prefixed lines are comments.
// event is one of none|first|lost|found|end. Records of one trajectory must
// be time-ordered with exactly one 'first' on the earliest record.
TrajectoryFile readTrajectories(const std::string& text);

// Inverse of readTrajectories: events are folded back into per-row flags by
// timestamp. Deterministic formatting (%.6f for reals).
std::string writeTrajectories(const std::vector<Trajectory>& trajectories);

TrajectoryFile loadTrajectoryFile(const std::string& path);
void saveTrajectoryFile(const std::string& path, const std::vector<Trajectory>& trajectories);

// Ground-truth confidence per trajectory id: any CSV with a header containing
// trajectory_id and gt_value columns (the simulator's truth file qualifies).
std::map<std::string, double> readGroundTruth(const std::string& text);
std::map<std::string, double> loadGroundTruthFile(const std::string& path);

}  // namespace trackrepair
