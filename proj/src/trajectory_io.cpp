#include "trackrepair/trajectory_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace trackrepair {

namespace {

std::vector<std::string> splitCsvLine(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        // trim surrounding whitespace
        const auto first = field.find_first_not_of(" \t\r");
        const auto last = field.find_last_not_of(" \t\r");
        fields.push_back(first == std::string::npos ? "" : field.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') {
        fields.push_back("");
    }
    return fields;
}

struct ColumnMap {
    int trajectoryId = -1;
    int frame = -1;
    int time = -1;
    int x = -1;
    int y = -1;
    int z = -1;
    int width = -1;
    int height = -1;
    int depth = -1;
    int classLabel = -1;
    int event = -1;
    int neighbors = -1;
};

ColumnMap mapColumns(const std::vector<std::string>& header, int line) {
    ColumnMap map;
    for (int i = 0; i < static_cast<int>(header.size()); ++i) {
        const std::string& name = header[i];
        if (name == "trajectory_id") map.trajectoryId = i;
        else if (name == "frame") map.frame = i;
        else if (name == "time") map.time = i;
        else if (name == "x") map.x = i;
        else if (name == "y") map.y = i;
        else if (name == "z") map.z = i;
        else if (name == "width") map.width = i;
        else if (name == "height") map.height = i;
        else if (name == "depth") map.depth = i;
        else if (name == "class") map.classLabel = i;
        else if (name == "event") map.event = i;
        else if (name == "neighbors") map.neighbors = i;
        else throw ParseError(line, "unknown trajectory column '" + name + "'");
    }
    const auto require = [line](int index, const char* name) {
        if (index < 0) {
            throw ParseError(line, std::string("missing trajectory column '") + name + "'");
        }
    };
    require(map.trajectoryId, "trajectory_id");
    require(map.frame, "frame");
    require(map.time, "time");
    require(map.x, "x");
    require(map.y, "y");
    require(map.z, "z");
    require(map.width, "width");
    require(map.height, "height");
    require(map.depth, "depth");
    require(map.classLabel, "class");
    require(map.event, "event");
    return map;
}

double parseReal(const std::string& value, int line, const char* what) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument(value);
        }
        return parsed;
    } catch (const std::exception&) {
        throw ParseError(line, std::string(what) + " is not a number: '" + value + "'");
    }
}

long parseInteger(const std::string& value, int line, const char* what) {
    try {
        std::size_t used = 0;
        const long parsed = std::stol(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument(value);
        }
        return parsed;
    } catch (const std::exception&) {
        throw ParseError(line, std::string(what) + " is not an integer: '" + value + "'");
    }
}

struct PendingTrajectory {
    Trajectory trajectory;
    bool sawFirst = false;
};

std::string formatReal(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6f", value);
    return buffer;
}

}  // namespace

TrajectoryFile readTrajectories(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineNumber = 0;

    ColumnMap columns;
    bool sawHeader = false;

    std::vector<std::string> order;  // first-appearance order of ids
    std::unordered_map<std::string, PendingTrajectory> pending;
    bool hasNeighborCounts = false;

    while (std::getline(in, line)) {
        ++lineNumber;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto fields = splitCsvLine(line);
        if (!sawHeader) {
            columns = mapColumns(fields, lineNumber);
            hasNeighborCounts = columns.neighbors >= 0;
            sawHeader = true;
            continue;
        }
        const auto field = [&](int index) -> const std::string& {
            if (index >= static_cast<int>(fields.size())) {
                throw ParseError(lineNumber, "record has too few fields");
            }
            return fields[static_cast<std::size_t>(index)];
        };

        const std::string id = field(columns.trajectoryId);
        Observation obs;
        obs.frame = parseInteger(field(columns.frame), lineNumber, "frame");
        obs.t = parseReal(field(columns.time), lineNumber, "time");
        obs.position.x = parseReal(field(columns.x), lineNumber, "x");
        obs.position.y = parseReal(field(columns.y), lineNumber, "y");
        obs.position.z = parseReal(field(columns.z), lineNumber, "z");
        obs.width = parseReal(field(columns.width), lineNumber, "width");
        obs.height = parseReal(field(columns.height), lineNumber, "height");
        obs.depth = parseReal(field(columns.depth), lineNumber, "depth");
        try {
            obs.classLabel = classLabelFromString(field(columns.classLabel));
        } catch (const ValidationError& error) {
            throw ParseError(lineNumber, error.what());
        }

        int neighborCount = 0;
        if (columns.neighbors >= 0) {
            neighborCount =
                static_cast<int>(parseInteger(field(columns.neighbors), lineNumber, "neighbors"));
            if (neighborCount < 0) {
                throw ParseError(lineNumber, "neighbors must be non-negative");
            }
        }

        auto it = pending.find(id);
        if (it == pending.end()) {
            it = pending.emplace(id, PendingTrajectory{}).first;
            it->second.trajectory.id = id;
            order.push_back(id);
        }
        auto& entry = it->second;
        if (!entry.trajectory.observations.empty() &&
            entry.trajectory.observations.back().t >= obs.t) {
            throw ParseError(lineNumber, "trajectory '" + id + "' has non-monotonic timestamps");
        }
        entry.trajectory.observations.push_back(obs);

        const std::string& flag = field(columns.event);
        if (flag != "none") {
            TrackEvent event;
            event.t = obs.t;
            event.position = obs.position;
            event.neighborCount = neighborCount;
            if (flag == "first") {
                if (entry.sawFirst) {
                    throw ParseError(lineNumber,
                                     "trajectory '" + id + "' has more than one 'first' flag");
                }
                if (entry.trajectory.observations.size() != 1) {
                    throw ParseError(lineNumber, "trajectory '" + id +
                                                     "' has its 'first' flag on a later record");
                }
                entry.sawFirst = true;
                event.kind = EventKind::FirstDetected;
            } else if (flag == "lost") {
                event.kind = EventKind::Lost;
            } else if (flag == "found") {
                event.kind = EventKind::Found;
            } else if (flag == "end") {
                event.kind = EventKind::Ended;
            } else {
                throw ParseError(lineNumber, "unknown event flag '" + flag + "'");
            }
            entry.trajectory.events.push_back(event);
        }
    }

    if (!sawHeader && lineNumber > 0) {
        // File with only comments/blank lines: treat as empty body, no header
        // needed for zero records.
        return TrajectoryFile{{}, true};
    }

    TrajectoryFile result;
    result.hasNeighborCounts = hasNeighborCounts || order.empty();
    result.trajectories.reserve(order.size());
    for (const auto& id : order) {
        auto& entry = pending.at(id);
        if (!entry.sawFirst) {
            throw ValidationError("trajectory '" + id + "' has no 'first' flag");
        }
        entry.trajectory.validate();
        result.trajectories.push_back(std::move(entry.trajectory));
    }
    return result;
}

std::string writeTrajectories(const std::vector<Trajectory>& trajectories) {
    std::ostringstream out;
    out << "trajectory_id,frame,time,x,y,z,width,height,depth,class,event,neighbors\n";
    for (const auto& traj : trajectories) {
        std::size_t nextEvent = 0;
        for (const auto& obs : traj.observations) {
            std::string flag = "none";
            int neighbors = 0;
            // Events coincide with observations by construction; fold the next
            // pending event back into this row when the timestamps match.
            if (nextEvent < traj.events.size() && traj.events[nextEvent].t == obs.t) {
                flag = to_string(traj.events[nextEvent].kind);
                neighbors = traj.events[nextEvent].neighborCount;
                ++nextEvent;
            }
            out << traj.id << ',' << obs.frame << ',' << formatReal(obs.t) << ','
                << formatReal(obs.position.x) << ',' << formatReal(obs.position.y) << ','
                << formatReal(obs.position.z) << ',' << formatReal(obs.width) << ','
                << formatReal(obs.height) << ',' << formatReal(obs.depth) << ','
                << to_string(obs.classLabel) << ',' << flag << ',' << neighbors << '\n';
        }
    }
    return out.str();
}

TrajectoryFile loadTrajectoryFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open trajectory file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return readTrajectories(buffer.str());
}

void saveTrajectoryFile(const std::string& path, const std::vector<Trajectory>& trajectories) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write trajectory file '" + path + "'");
    }
    out << writeTrajectories(trajectories);
}

std::map<std::string, double> readGroundTruth(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineNumber = 0;
    int idColumn = -1;
    int valueColumn = -1;
    bool sawHeader = false;
    std::map<std::string, double> truth;

    while (std::getline(in, line)) {
        ++lineNumber;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto fields = splitCsvLine(line);
        if (!sawHeader) {
            for (int i = 0; i < static_cast<int>(fields.size()); ++i) {
                if (fields[i] == "trajectory_id") idColumn = i;
                if (fields[i] == "gt_value") valueColumn = i;
            }
            if (idColumn < 0 || valueColumn < 0) {
                throw ParseError(lineNumber,
                                 "ground-truth header needs trajectory_id and gt_value columns");
            }
            sawHeader = true;
            continue;
        }
        if (std::max(idColumn, valueColumn) >= static_cast<int>(fields.size())) {
            throw ParseError(lineNumber, "record has too few fields");
        }
        const double value = parseReal(fields[valueColumn], lineNumber, "gt_value");
        if (value < 0.0 || value > 1.0) {
            throw ParseError(lineNumber, "gt_value must lie in [0,1]");
        }
        truth[fields[idColumn]] = value;
    }
    return truth;
}

std::map<std::string, double> loadGroundTruthFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open ground-truth file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return readGroundTruth(buffer.str());
}

}  // namespace trackrepair
