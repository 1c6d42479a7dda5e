#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "trackrepair/geometry.hpp"
#include "trackrepair/rng.hpp"

using namespace trackrepair;
using trackrepair::testing::rectZone;
using trackrepair::testing::sceneWith;

namespace {

// Independent oracle: even-odd ray casting along +x with an explicit
// boundary pre-pass, written without reference to the library routine.
bool oracleContains(const Outline& poly, const GroundPoint& p) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % n];
        const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        const double dot = (p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y);
        const double len2 = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
        if (std::abs(cross) < 1e-12 && dot >= -1e-12 && dot <= len2 + 1e-12) {
            return true;
        }
    }
    int crossings = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % n];
        if ((a.y <= p.y && b.y > p.y) || (b.y <= p.y && a.y > p.y)) {
            const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (x > p.x) {
                ++crossings;
            }
        }
    }
    return crossings % 2 == 1;
}

// Half-plane membership for a counter-clockwise convex polygon.
bool halfPlaneContains(const Outline& poly, const GroundPoint& p) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % n];
        const double side = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        if (side < -1e-12) {
            return false;
        }
    }
    return true;
}

const Outline kUnitSquare = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};

}  // namespace

TEST_CASE("unit square containment") {
    CHECK(outlineContains(kUnitSquare, {0.5, 0.5, 0}));
    CHECK_FALSE(outlineContains(kUnitSquare, {2, 2, 0}));
    // Boundary counts as inside; agrees with the ray-casting oracle.
    CHECK(oracleContains(kUnitSquare, {1.0, 0.5, 0}));
    CHECK(outlineContains(kUnitSquare, {1.0, 0.5, 0}));
    CHECK(outlineContains(kUnitSquare, {0.0, 0.0, 0}));  // vertex
}

TEST_CASE("containment is invariant under cyclic rotation of the outline") {
    Outline poly = {{0, 0, 0}, {4, 0, 0}, {4, 2, 0}, {2, 2, 0}, {2, 4, 0}, {0, 4, 0}};  // L-shape
    Rng rng(7);
    for (std::size_t shift = 0; shift < poly.size(); ++shift) {
        Outline rotated;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            rotated.push_back(poly[(i + shift) % poly.size()]);
        }
        for (int trial = 0; trial < 200; ++trial) {
            const GroundPoint p{rng.uniform(-1, 5), rng.uniform(-1, 5), 0};
            CHECK(outlineContains(poly, p) == outlineContains(rotated, p));
        }
    }
}

TEST_CASE("convex polygons agree with the half-plane test") {
    Rng rng(13);
    for (int poly = 0; poly < 10; ++poly) {
        // Regular n-gon, randomly placed and scaled (counter-clockwise).
        const int n = 3 + static_cast<int>(rng.uniformIndex(6));
        const double cx = rng.uniform(-5, 5);
        const double cy = rng.uniform(-5, 5);
        const double r = rng.uniform(0.5, 3.0);
        const double phase = rng.uniform(0, 6.283185307179586);
        Outline outline;
        for (int i = 0; i < n; ++i) {
            const double angle = phase + 6.283185307179586 * i / n;
            outline.push_back({cx + r * std::cos(angle), cy + r * std::sin(angle), 0});
        }
        for (int trial = 0; trial < 100; ++trial) {
            const GroundPoint p{cx + rng.uniform(-4, 4), cy + rng.uniform(-4, 4), 0};
            CHECK(outlineContains(outline, p) == halfPlaneContains(outline, p));
        }
    }
}

TEST_CASE("outline validation") {
    CHECK_THROWS_AS(validateOutline({{0, 0, 0}, {1, 0, 0}}), GeometryError);
    // bowtie self-intersection
    CHECK_THROWS_AS(validateOutline({{0, 0, 0}, {1, 1, 0}, {1, 0, 0}, {0, 1, 0}}), GeometryError);
    // collinear, zero area
    CHECK_THROWS_AS(validateOutline({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}), GeometryError);
    CHECK_NOTHROW(validateOutline(kUnitSquare));
    CHECK(signedArea(kUnitSquare) == doctest::Approx(1.0));
}

TEST_CASE("zonesContaining filters and orders by ident") {
    auto scene = sceneWith({
        rectZone(5, ZoneKind::Lost, 0, 0, 2, 2),
        rectZone(3, ZoneKind::LostFound, 1, 1, 3, 3),
        rectZone(9, ZoneKind::Entry, 10, 10, 12, 12),
    });

    SUBCASE("overlap returns both, ident-ordered") {
        const auto hits = scene.zonesContaining({1.5, 1.5, 0});
        REQUIRE(hits.size() == 2);
        CHECK(hits[0]->ident == 3);
        CHECK(hits[1]->ident == 5);
    }
    SUBCASE("kind filter") {
        const std::set<ZoneKind> entryOnly = {ZoneKind::Entry};
        const auto hits = scene.zonesContaining({11, 11, 0}, &entryOnly);
        REQUIRE(hits.size() == 1);
        CHECK(hits[0]->ident == 9);
    }
    SUBCASE("outside all zones") {
        CHECK(scene.zonesContaining({-5, -5, 0}).empty());
    }
    SUBCASE("ascending ident invariant on random points") {
        Rng rng(3);
        for (int trial = 0; trial < 200; ++trial) {
            const GroundPoint p{rng.uniform(-1, 13), rng.uniform(-1, 13), 0};
            const auto hits = scene.zonesContaining(p);
            for (std::size_t i = 1; i < hits.size(); ++i) {
                CHECK(hits[i - 1]->ident < hits[i]->ident);
            }
        }
    }
}

TEST_CASE("scene validation rejects duplicate idents") {
    SceneModel scene;
    scene.zones = {rectZone(1, ZoneKind::Entry, 0, 0, 1, 1), rectZone(1, ZoneKind::Exit, 2, 2, 3, 3)};
    CHECK_THROWS_AS(scene.validate(), ValidationError);
}

TEST_CASE("rect helpers") {
    const Rect a{0, 0, 2, 2};
    const Rect b{1, 1, 3, 3};
    CHECK(intersectionArea(a, b) == doctest::Approx(1.0));
    CHECK(intersectionArea(a, Rect{5, 5, 6, 6}) == 0.0);
    const Rect u = boundingUnion(a, b);
    CHECK(u.minX == 0.0);
    CHECK(u.maxY == 3.0);
    const Rect box = Rect::boundingBox({{1, 7, 0}, {-2, 3, 0}, {4, 5, 0}});
    CHECK(box.minX == -2.0);
    CHECK(box.maxX == 4.0);
    CHECK(box.minY == 3.0);
    CHECK(box.maxY == 7.0);
}
