#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "trackrepair/confidence.hpp"
#include "trackrepair/model.hpp"

namespace trackrepair {

// A rectangle where passing tracks are cut with probability pLoss and the
// object resurfaces as a new track after a uniform(gapMin, gapMax) pause.
struct Occluder {
    Rect rect;
    double pLoss = 0.5;
    double gapMin = 1.0;
    double gapMax = 3.0;
};

struct SynthConfig {
    std::vector<Zone> zones;          // manual scene: entry/exit/in-out zones
    std::vector<Occluder> occluders;
    int agentCount = 100;
    double speedMin = 1.0;
    double speedMax = 1.5;
    double frameRate = 10.0;          // observations per second
    double startInterval = 6.0;       // seconds between consecutive agent starts
    double noiseTrackRate = 0.0;      // noise tracks per agent
    double neighborRadius = 3.0;      // for the emitted neighbor counts
    std::uint64_t rngSeed = 1;

    void validate() const;
};

struct TruthEntry {
    std::string trajectoryId;
    std::string agentId;   // "noise" for noise tracks
    int fragmentIndex = 0; // 0-based position of the fragment within its agent
    TrajectoryClass gtClass = TrajectoryClass::Noise;
    double gtValue = 0.0;  // band midpoint of gtClass
};

struct SynthOutput {
    std::vector<Trajectory> trajectories;
    std::vector<TruthEntry> truth;                    // one per trajectory, same order
    std::map<std::string, std::string> fragmentToAgent;  // split fragments only (index >= 1)
};

// Agents walk straight entry->exit lines with per-step speed jitter; crossing
// an occluder may split the track into temporally disjoint fragments. Noise
// tracks are short random walks. Deterministic for a fixed seed.
SynthOutput generate(const SynthConfig& cfg);

std::string writeTruth(const std::vector<TruthEntry>& truth);

}  // namespace trackrepair
