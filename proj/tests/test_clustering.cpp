#include <doctest.h>

#include <cmath>
#include <map>

#include "trackrepair/clustering.hpp"
#include "trackrepair/rng.hpp"

using namespace trackrepair;

namespace {

struct BlobFixture {
    std::vector<GroundPoint> points;
    std::vector<GroundPoint> centers;
    std::vector<int> trueLabels;
};

BlobFixture makeBlobs(const std::vector<GroundPoint>& centers, int pointsPerBlob, double spread,
                      std::uint64_t seed) {
    BlobFixture fixture;
    fixture.centers = centers;
    Rng rng(seed);
    for (std::size_t c = 0; c < centers.size(); ++c) {
        for (int i = 0; i < pointsPerBlob; ++i) {
            fixture.points.push_back({centers[c].x + rng.gaussian(0.0, spread),
                                      centers[c].y + rng.gaussian(0.0, spread), 0.0});
            fixture.trueLabels.push_back(static_cast<int>(c));
        }
    }
    return fixture;
}

int nearestTrueCenter(const BlobFixture& fixture, const GroundPoint& p) {
    int best = 0;
    double bestDistance = distance2d(p, fixture.centers[0]);
    for (std::size_t c = 1; c < fixture.centers.size(); ++c) {
        const double d = distance2d(p, fixture.centers[c]);
        if (d < bestDistance) {
            bestDistance = d;
            best = static_cast<int>(c);
        }
    }
    return best;
}

// Fraction of points whose kmeans assignment agrees with brute-force
// nearest-true-center labeling, up to a relabeling of cluster indices.
double agreementWithTruth(const BlobFixture& fixture, const ClusterModel& model) {
    std::map<int, std::map<int, int>> votes;
    for (std::size_t i = 0; i < fixture.points.size(); ++i) {
        votes[model.assignments[i]][nearestTrueCenter(fixture, fixture.points[i])]++;
    }
    std::map<int, int> relabel;
    for (const auto& [cluster, counts] : votes) {
        int bestLabel = 0;
        int bestVotes = -1;
        for (const auto& [label, count] : counts) {
            if (count > bestVotes) {
                bestVotes = count;
                bestLabel = label;
            }
        }
        relabel[cluster] = bestLabel;
    }
    std::size_t matches = 0;
    for (std::size_t i = 0; i < fixture.points.size(); ++i) {
        if (relabel[model.assignments[i]] == nearestTrueCenter(fixture, fixture.points[i])) {
            ++matches;
        }
    }
    return static_cast<double>(matches) / static_cast<double>(fixture.points.size());
}

// Independent BIC oracle for well-separated blobs: hard-assign points to the
// nearest of k reference centers, fit each cluster's spherical MLE, and score.
double oracleBic(const std::vector<GroundPoint>& points, const std::vector<GroundPoint>& centers) {
    const std::size_t k = centers.size();
    std::vector<std::vector<const GroundPoint*>> groups(k);
    for (const auto& p : points) {
        std::size_t best = 0;
        double bestDistance = distance2d(p, centers[0]);
        for (std::size_t c = 1; c < k; ++c) {
            const double d = distance2d(p, centers[c]);
            if (d < bestDistance) {
                bestDistance = d;
                best = c;
            }
        }
        groups[best].push_back(&p);
    }
    double logL = 0.0;
    const double n = static_cast<double>(points.size());
    for (std::size_t c = 0; c < k; ++c) {
        if (groups[c].empty()) {
            continue;
        }
        const double nc = static_cast<double>(groups[c].size());
        double meanX = 0.0;
        double meanY = 0.0;
        for (const auto* p : groups[c]) {
            meanX += p->x;
            meanY += p->y;
        }
        meanX /= nc;
        meanY /= nc;
        double ss = 0.0;
        for (const auto* p : groups[c]) {
            const double dx = p->x - meanX;
            const double dy = p->y - meanY;
            ss += dx * dx + dy * dy;
        }
        const double variance = std::max(1e-6, ss / (2.0 * nc));
        const double weight = nc / n;
        for (const auto* p : groups[c]) {
            const double dx = p->x - meanX;
            const double dy = p->y - meanY;
            logL += std::log(weight) - std::log(2.0 * 3.14159265358979323846 * variance) -
                    (dx * dx + dy * dy) / (2.0 * variance);
        }
    }
    const double parameters = 4.0 * static_cast<double>(k) - 1.0;
    return parameters * std::log(n) - 2.0 * logL;
}

}  // namespace

TEST_CASE("kmeans trivial cases") {
    SUBCASE("identical points, k=1") {
        std::vector<GroundPoint> points(5, GroundPoint{3, 4, 0});
        const auto model = kmeans(points, 1, 1);
        CHECK(model.centroids.size() == 1);
        CHECK(model.centroids[0].x == doctest::Approx(3.0));
        CHECK(model.centroids[0].y == doctest::Approx(4.0));
        CHECK(model.withinSS == doctest::Approx(0.0));
    }
    SUBCASE("two points, k=2") {
        std::vector<GroundPoint> points = {{0, 0, 0}, {10, 0, 0}};
        const auto model = kmeans(points, 2, 1);
        CHECK(model.withinSS == doctest::Approx(0.0));
        CHECK(model.assignments[0] != model.assignments[1]);
    }
    SUBCASE("k larger than the point count is rejected") {
        std::vector<GroundPoint> points = {{0, 0, 0}};
        CHECK_THROWS_AS(kmeans(points, 2, 1), ValidationError);
        CHECK_THROWS_AS(kmeans(std::vector<GroundPoint>{}, 1, 1), ValidationError);
    }
}

TEST_CASE("kmeans matches nearest-true-center labeling on separated blobs") {
    const auto fixture =
        makeBlobs({{0, 0, 0}, {6, 0, 0}, {0, 7, 0}}, 20, 0.1, 99);
    const auto model = kmeans(fixture.points, 3, 5);
    CHECK(agreementWithTruth(fixture, model) >= 0.99);
}

TEST_CASE("withinSS is non-increasing across Lloyd iterations") {
    Rng rng(17);
    std::vector<GroundPoint> points;
    for (int i = 0; i < 120; ++i) {
        points.push_back({rng.uniform(-10, 10), rng.uniform(-10, 10), 0});
    }
    const auto model = kmeans(points, 5, 42);
    for (std::size_t i = 1; i < model.withinSSHistory.size(); ++i) {
        CHECK(model.withinSSHistory[i] <= model.withinSSHistory[i - 1] + 1e-9);
    }
}

TEST_CASE("final assignments are a fixpoint") {
    Rng rng(71);
    std::vector<GroundPoint> points;
    for (int i = 0; i < 60; ++i) {
        points.push_back({rng.uniform(0, 20), rng.uniform(0, 20), 0});
    }
    const auto model = kmeans(points, 4, 8);
    for (std::size_t i = 0; i < points.size(); ++i) {
        int best = 0;
        double bestDistance = distance2d(points[i], model.centroids[0]);
        for (int c = 1; c < model.k; ++c) {
            const double d = distance2d(points[i], model.centroids[static_cast<std::size_t>(c)]);
            if (d < bestDistance) {
                bestDistance = d;
                best = c;
            }
        }
        CHECK(model.assignments[i] == best);
    }
}

TEST_CASE("kmeans is deterministic for a fixed seed") {
    const auto fixture = makeBlobs({{0, 0, 0}, {8, 3, 0}}, 25, 0.3, 5);
    const auto a = kmeans(fixture.points, 2, 77);
    const auto b = kmeans(fixture.points, 2, 77);
    CHECK(a.assignments == b.assignments);
    CHECK(a.withinSS == b.withinSS);
}

TEST_CASE("selectK trivial cases") {
    std::vector<GroundPoint> identical(12, GroundPoint{1, 1, 0});
    CHECK(selectK(identical, 8, 3) == 1);
    CHECK_THROWS_AS(selectK(std::vector<GroundPoint>{}, 4, 1), ValidationError);
}

TEST_CASE("selectK finds three separated blobs and agrees with the BIC oracle") {
    const std::vector<GroundPoint> centers = {{0, 0, 0}, {6, 0, 0}, {0, 7, 0}};
    const auto fixture = makeBlobs(centers, 20, 0.1, 11);
    CHECK(selectK(fixture.points, 8, 21) == 3);

    // The oracle BIC at the true k must beat a single-component model and a
    // finer split of one blob.
    const double bicTrue = oracleBic(fixture.points, centers);
    const double bicOne = oracleBic(fixture.points, {{2, 2, 0}});
    std::vector<GroundPoint> splitCenters = centers;
    splitCenters.push_back({0.05, 0.05, 0});
    const double bicSplit = oracleBic(fixture.points, splitCenters);
    CHECK(bicTrue < bicOne);
    CHECK(bicTrue < bicSplit);
}

TEST_CASE("selectK can resolve eight blobs") {
    std::vector<GroundPoint> centers;
    for (int i = 0; i < 8; ++i) {
        centers.push_back({static_cast<double>(i % 4) * 7.0, static_cast<double>(i / 4) * 7.0, 0});
    }
    const auto fixture = makeBlobs(centers, 20, 0.1, 123);
    CHECK(selectK(fixture.points, 12, 9) == 8);
}
