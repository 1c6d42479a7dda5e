#pragma once

#include <string>

#include "trackrepair/confidence.hpp"
#include "trackrepair/features.hpp"

namespace trackrepair {

// Learned parameters needed to score a trajectory: the nine weights plus the
// normalization statistics of the training set they were learned against.
struct LearnedParams {
    WeightVector weights;
    NormalizationStats stats;
};

// JSON document:
//   {
//     "weights": {"w1": ..., ..., "w9": ...},
//     "normalization": {"count": N, "mu": {"f3": ...}, "sigma": {"f3": ...}}
//   }
std::string serializeLearnedParams(const LearnedParams& params);
LearnedParams parseLearnedParams(const std::string& text);

LearnedParams loadLearnedParams(const std::string& path);
void saveLearnedParams(const std::string& path, const LearnedParams& params);

}  // namespace trackrepair
