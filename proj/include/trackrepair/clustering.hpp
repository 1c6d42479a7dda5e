#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "trackrepair/geometry.hpp"
#include "trackrepair/model.hpp"
#include "trackrepair/rng.hpp"

namespace trackrepair {

struct ClusterModel {
    int k = 0;
    std::vector<GroundPoint> centroids;
    std::vector<int> assignments;       // per input point
    double withinSS = 0.0;              // sum of squared distances to assigned centroid
    std::vector<double> withinSSHistory;  // one entry per Lloyd iteration

    std::vector<std::vector<GroundPoint>> clusters(std::span<const GroundPoint> points) const;
};

// Lloyd's algorithm from k-means++ seeds, run to an assignment fixpoint or
// 100 iterations. Deterministic for a fixed seed. Throws ValidationError when
// k exceeds the number of points or the input is empty.
ClusterModel kmeans(std::span<const GroundPoint> points, int k, std::uint64_t seed);

// Number of clusters minimizing the Bayesian information criterion over
// spherical Gaussian mixtures fitted by EM for k = 1..min(kMax, |points|).
int selectK(std::span<const GroundPoint> points, int kMax, std::uint64_t seed);

}  // namespace trackrepair
