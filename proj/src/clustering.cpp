#include "trackrepair/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace trackrepair {

namespace {

constexpr int kMaxLloydIterations = 100;
constexpr int kMaxEmIterations = 50;
constexpr int kEmRestarts = 3;
constexpr double kLog2Pi = 1.8378770664093454835606594728112;

// Variance floor tied to the data's resolution: half the median
// nearest-neighbor distance, squared. Keeps a component from collapsing onto
// a handful of near-coincident points and blowing up the likelihood.
double varianceFloorFor(std::span<const GroundPoint> points) {
    if (points.size() < 2) {
        return 1e-12;
    }
    std::vector<double> nearest(points.size(), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const double dx = points[i].x - points[j].x;
            const double dy = points[i].y - points[j].y;
            const double sq = dx * dx + dy * dy;
            nearest[i] = std::min(nearest[i], sq);
            nearest[j] = std::min(nearest[j], sq);
        }
    }
    std::nth_element(nearest.begin(), nearest.begin() + static_cast<std::ptrdiff_t>(nearest.size() / 2),
                     nearest.end());
    const double medianSq = nearest[nearest.size() / 2];
    return std::max(1e-12, 0.25 * medianSq);
}

double squaredDistance(const GroundPoint& a, const GroundPoint& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// k-means++ seeding: subsequent seeds are drawn proportionally to the squared
// distance from the nearest already chosen seed.
std::vector<GroundPoint> seedCentroids(std::span<const GroundPoint> points, int k, Rng& rng) {
    std::vector<GroundPoint> centroids;
    centroids.reserve(static_cast<std::size_t>(k));
    centroids.push_back(points[rng.uniformIndex(points.size())]);

    std::vector<double> nearestSq(points.size());
    while (static_cast<int>(centroids.size()) < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : centroids) {
                best = std::min(best, squaredDistance(points[i], c));
            }
            nearestSq[i] = best;
            total += best;
        }
        if (total <= 0.0) {
            // All remaining points coincide with a seed; any of them works.
            centroids.push_back(points[rng.uniformIndex(points.size())]);
            continue;
        }
        double target = rng.uniform01() * total;
        std::size_t pick = points.size() - 1;
        for (std::size_t i = 0; i < points.size(); ++i) {
            target -= nearestSq[i];
            if (target <= 0.0) {
                pick = i;
                break;
            }
        }
        centroids.push_back(points[pick]);
    }
    return centroids;
}

struct SphericalGmm {
    std::vector<double> weight;
    std::vector<GroundPoint> mean;
    std::vector<double> variance;
    double logLikelihood = 0.0;
};

double logSumExp(std::span<const double> values) {
    const double maxValue = *std::max_element(values.begin(), values.end());
    if (!std::isfinite(maxValue)) {
        return maxValue;
    }
    double sum = 0.0;
    for (const double v : values) {
        sum += std::exp(v - maxValue);
    }
    return maxValue + std::log(sum);
}

// EM for a 2D spherical Gaussian mixture, initialized from a k-means run.
SphericalGmm fitGmm(std::span<const GroundPoint> points, int k, std::uint64_t seed,
                    double varianceFloor) {
    const std::size_t n = points.size();
    const auto init = kmeans(points, k, seed);

    SphericalGmm gmm;
    gmm.weight.assign(static_cast<std::size_t>(k), 0.0);
    gmm.mean = init.centroids;
    gmm.variance.assign(static_cast<std::size_t>(k), varianceFloor);

    std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < n; ++i) {
        counts[static_cast<std::size_t>(init.assignments[i])]++;
    }
    for (int j = 0; j < k; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        gmm.weight[jj] = std::max(1.0, static_cast<double>(counts[jj])) / static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (init.assignments[i] == j) {
                ss += squaredDistance(points[i], gmm.mean[jj]);
            }
        }
        if (counts[jj] > 0) {
            gmm.variance[jj] = std::max(varianceFloor, ss / (2.0 * static_cast<double>(counts[jj])));
        }
    }
    // Renormalize weights (the max(1, count) guard can push the sum past 1).
    double weightSum = 0.0;
    for (const double w : gmm.weight) weightSum += w;
    for (double& w : gmm.weight) w /= weightSum;

    std::vector<double> logResp(n * static_cast<std::size_t>(k));
    std::vector<double> row(static_cast<std::size_t>(k));
    double previous = -std::numeric_limits<double>::infinity();

    for (int iteration = 0; iteration < kMaxEmIterations; ++iteration) {
        // E step
        double logLikelihood = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (int j = 0; j < k; ++j) {
                const auto jj = static_cast<std::size_t>(j);
                const double var = gmm.variance[jj];
                row[jj] = std::log(gmm.weight[jj]) - kLog2Pi - std::log(var) -
                          squaredDistance(points[i], gmm.mean[jj]) / (2.0 * var);
            }
            const double norm = logSumExp(row);
            logLikelihood += norm;
            for (int j = 0; j < k; ++j) {
                logResp[i * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)] =
                    row[static_cast<std::size_t>(j)] - norm;
            }
        }
        gmm.logLikelihood = logLikelihood;
        if (logLikelihood - previous < 1e-8 * (std::abs(logLikelihood) + 1.0)) {
            break;
        }
        previous = logLikelihood;

        // M step
        for (int j = 0; j < k; ++j) {
            const auto jj = static_cast<std::size_t>(j);
            double resp = 0.0;
            double sumX = 0.0;
            double sumY = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double r = std::exp(logResp[i * static_cast<std::size_t>(k) + jj]);
                resp += r;
                sumX += r * points[i].x;
                sumY += r * points[i].y;
            }
            if (resp < 1e-12) {
                // Dead component: park it with a tiny weight.
                gmm.weight[jj] = 1e-12;
                gmm.variance[jj] = varianceFloor;
                continue;
            }
            gmm.weight[jj] = resp / static_cast<double>(n);
            gmm.mean[jj] = GroundPoint{sumX / resp, sumY / resp, 0.0};
            double ss = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double r = std::exp(logResp[i * static_cast<std::size_t>(k) + jj]);
                ss += r * squaredDistance(points[i], gmm.mean[jj]);
            }
            gmm.variance[jj] = std::max(varianceFloor, ss / (2.0 * resp));
        }
        double sum = 0.0;
        for (const double w : gmm.weight) sum += w;
        for (double& w : gmm.weight) w /= sum;
    }
    return gmm;
}

}  // namespace

std::vector<std::vector<GroundPoint>> ClusterModel::clusters(
    std::span<const GroundPoint> points) const {
    std::vector<std::vector<GroundPoint>> groups(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < points.size(); ++i) {
        groups[static_cast<std::size_t>(assignments[i])].push_back(points[i]);
    }
    return groups;
}

ClusterModel kmeans(std::span<const GroundPoint> points, int k, std::uint64_t seed) {
    if (points.empty()) {
        throw ValidationError("kmeans called with no points");
    }
    if (k < 1 || static_cast<std::size_t>(k) > points.size()) {
        throw ValidationError("kmeans cluster count " + std::to_string(k) +
                              " is out of range for " + std::to_string(points.size()) + " points");
    }
    Rng rng(seed);
    ClusterModel model;
    model.k = k;
    model.centroids = seedCentroids(points, k, rng);
    model.assignments.assign(points.size(), -1);

    for (int iteration = 0; iteration < kMaxLloydIterations; ++iteration) {
        // Assignment step; ties go to the lowest cluster index.
        bool changed = false;
        double withinSS = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            int best = 0;
            double bestSq = squaredDistance(points[i], model.centroids[0]);
            for (int j = 1; j < k; ++j) {
                const double sq = squaredDistance(points[i], model.centroids[static_cast<std::size_t>(j)]);
                if (sq < bestSq) {
                    bestSq = sq;
                    best = j;
                }
            }
            if (model.assignments[i] != best) {
                model.assignments[i] = best;
                changed = true;
            }
            withinSS += bestSq;
        }
        model.withinSS = withinSS;
        model.withinSSHistory.push_back(withinSS);
        if (!changed) {
            break;
        }

        // Update step; empty clusters keep their previous centroid.
        std::vector<double> sumX(static_cast<std::size_t>(k), 0.0);
        std::vector<double> sumY(static_cast<std::size_t>(k), 0.0);
        std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto j = static_cast<std::size_t>(model.assignments[i]);
            sumX[j] += points[i].x;
            sumY[j] += points[i].y;
            counts[j]++;
        }
        for (int j = 0; j < k; ++j) {
            const auto jj = static_cast<std::size_t>(j);
            if (counts[jj] > 0) {
                model.centroids[jj] = GroundPoint{sumX[jj] / static_cast<double>(counts[jj]),
                                                  sumY[jj] / static_cast<double>(counts[jj]), 0.0};
            }
        }
    }
    return model;
}

int selectK(std::span<const GroundPoint> points, int kMax, std::uint64_t seed) {
    if (points.empty()) {
        throw ValidationError("selectK called with no points");
    }
    if (kMax < 1) {
        throw ValidationError("selectK needs kMax >= 1");
    }
    const int upper = std::min<int>(kMax, static_cast<int>(points.size()));
    const double n = static_cast<double>(points.size());
    const double varianceFloor = varianceFloorFor(points);

    int bestK = 1;
    double bestBic = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= upper; ++k) {
        double bestLogL = -std::numeric_limits<double>::infinity();
        for (int restart = 0; restart < kEmRestarts; ++restart) {
            const auto runSeed = splitmix64(seed ^ (static_cast<std::uint64_t>(k) << 32) ^
                                            static_cast<std::uint64_t>(restart));
            bestLogL = std::max(bestLogL, fitGmm(points, k, runSeed, varianceFloor).logLikelihood);
        }
        // Free parameters per component: 2 for the mean, 1 for the variance,
        // plus k-1 mixing proportions.
        const double parameters = 4.0 * k - 1.0;
        const double bic = parameters * std::log(n) - 2.0 * bestLogL;
        if (bic < bestBic) {
            bestBic = bic;
            bestK = k;
        }
    }
    return bestK;
}

}  // namespace trackrepair
