#include <doctest.h>

#include "helpers.hpp"
#include "trackrepair/triplets.hpp"

using namespace trackrepair;
using trackrepair::testing::makeWalk;
using trackrepair::testing::rectZone;
using trackrepair::testing::sceneWith;

namespace {

// Corridor along x: entry, a lost zone, a found zone, an exit.
SceneModel tripletScene() {
    return sceneWith({
        rectZone(1, ZoneKind::Entry, 0, -1, 1, 1),
        rectZone(2, ZoneKind::Lost, 5, -1, 6, 1),
        rectZone(3, ZoneKind::Found, 8, -1, 9, 1),
        rectZone(4, ZoneKind::Exit, 12, -1, 13, 1),
    });
}

}  // namespace

TEST_CASE("isComplete requires both the score and the start zone") {
    const auto scene = tripletScene();
    const auto fromEntry = makeWalk("a", {{0, 0.5, 0}, {1, 2, 0}});
    const auto midScene = makeWalk("b", {{0, 3, 0}, {1, 4, 0}});
    CHECK(isComplete(fromEntry, 0.9, scene, 0.8));
    CHECK_FALSE(isComplete(midScene, 0.9, scene, 0.8));
    CHECK_FALSE(isComplete(fromEntry, 0.7, scene, 0.8));
    CHECK_FALSE(isComplete(fromEntry, 0.8, scene, 0.8));  // strictly greater
}

TEST_CASE("traceTriplet on the timing fixture") {
    const auto scene = tripletScene();
    // Timestamps chosen so that the zone transitions are exactly
    // enter-lost 90, exit-lost 100, enter-found 130, leave-found 150.
    const auto traj = makeWalk("t", {{0, 0.5, 0},    // in entry
                                     {90, 5.5, 0},   // enters lost
                                     {100, 7, 0},    // first outside lost
                                     {130, 8.5, 0},  // enters found
                                     {150, 10, 0},   // first outside found
                                     {160, 12.5, 0}});
    const auto tuple = traceTriplet(traj, scene);
    REQUIRE(tuple.has_value());
    CHECK(tuple->startZone == 1);
    CHECK(tuple->lostZone == 2);
    CHECK(tuple->foundZone == 3);
    CHECK(tuple->tEnterLost == doctest::Approx(90.0));
    CHECK(tuple->tExitLost == doctest::Approx(100.0));
    CHECK(tuple->tEnterFound == doctest::Approx(130.0));
    CHECK(tuple->tLeaveFound == doctest::Approx(150.0));
}

TEST_CASE("traceTriplet returns nothing without a lost zone crossing") {
    const auto scene = tripletScene();
    const auto traj = makeWalk("t", {{0, 0.5, 0}, {1, 2, 0}, {2, 3, 0}});
    CHECK_FALSE(traceTriplet(traj, scene).has_value());
}

TEST_CASE("traceTriplet returns nothing when the walk starts mid-scene") {
    const auto scene = tripletScene();
    const auto traj = makeWalk("t", {{0, 3, 0}, {1, 5.5, 0}, {2, 7, 0}, {3, 8.5, 0}, {4, 10, 0}});
    CHECK_FALSE(traceTriplet(traj, scene).has_value());
}

TEST_CASE("a found zone occupied before leaving the lost zone is skipped") {
    // Lost-found overlap: the walk is inside the found zone already when it
    // exits the lost zone, so that occupancy does not count as an entry.
    const auto scene = sceneWith({
        rectZone(1, ZoneKind::Entry, 0, -1, 1, 1),
        rectZone(2, ZoneKind::Lost, 5, -1, 7, 1),
        rectZone(3, ZoneKind::Found, 6, -1, 9, 1),
    });

    SUBCASE("stays inside the overlapping found zone: no triplet") {
        const auto traj = makeWalk("t", {{0, 0.5, 0},
                                         {10, 5.5, 0},   // in lost only
                                         {20, 6.5, 0},   // in lost and found
                                         {30, 7.5, 0},   // exits lost, still in found
                                         {40, 8.5, 0}},  // still in found
                                   false);
        CHECK_FALSE(traceTriplet(traj, scene).has_value());
    }
    SUBCASE("leaves and re-enters the found zone: counted at re-entry") {
        const auto traj = makeWalk("t", {{0, 0.5, 0},
                                         {10, 5.5, 0},
                                         {20, 6.5, 0},
                                         {30, 7.5, 0},   // exits lost inside found
                                         {40, 9.5, 0},   // leaves found
                                         {50, 8.5, 0},   // re-enters found
                                         {60, 9.5, 0}});
        const auto tuple = traceTriplet(traj, scene);
        REQUIRE(tuple.has_value());
        CHECK(tuple->foundZone == 3);
        CHECK(tuple->tEnterFound == doctest::Approx(50.0));
        CHECK(tuple->tLeaveFound == doctest::Approx(60.0));
    }
}

TEST_CASE("a trajectory ending inside the found zone leaves at its last observation") {
    const auto scene = tripletScene();
    const auto traj = makeWalk("t", {{0, 0.5, 0}, {90, 5.5, 0}, {100, 7, 0}, {130, 8.5, 0},
                                     {140, 8.8, 0}});
    const auto tuple = traceTriplet(traj, scene);
    REQUIRE(tuple.has_value());
    CHECK(tuple->tLeaveFound == doctest::Approx(140.0));
}

TEST_CASE("buildTriplets timing and aggregation") {
    SUBCASE("single tuple") {
        TraceTuple tuple{1, 2, 3, 90, 100, 130, 150};
        const auto triplets = buildTriplets(std::vector<TraceTuple>{tuple});
        REQUIRE(triplets.size() == 1);
        CHECK(triplets[0].minTime == 30.0);
        CHECK(triplets[0].maxTime == 60.0);
        CHECK(triplets[0].support == 1);
    }
    SUBCASE("two tuples average to (20, 70)") {
        // per-trajectory windows (30, 60) and (10, 80)
        TraceTuple a{1, 2, 3, 90, 100, 130, 150};
        TraceTuple b{1, 2, 3, 0, 10, 20, 80};
        const auto triplets = buildTriplets(std::vector<TraceTuple>{a, b});
        REQUIRE(triplets.size() == 1);
        CHECK(triplets[0].minTime == 20.0);
        CHECK(triplets[0].maxTime == 70.0);
        CHECK(triplets[0].support == 2);
    }
    SUBCASE("minmax window") {
        TraceTuple a{1, 2, 3, 90, 100, 130, 150};
        TraceTuple b{1, 2, 3, 0, 10, 20, 80};
        const auto triplets = buildTriplets(std::vector<TraceTuple>{a, b}, true);
        REQUIRE(triplets.size() == 1);
        CHECK(triplets[0].minTime == 10.0);
        CHECK(triplets[0].maxTime == 80.0);
    }
    SUBCASE("empty input") {
        CHECK(buildTriplets(std::vector<TraceTuple>{}).empty());
    }
    SUBCASE("ordering by support with zone tie-break") {
        std::vector<TraceTuple> tuples;
        tuples.push_back({1, 2, 3, 0, 10, 20, 30});
        tuples.push_back({1, 2, 4, 0, 10, 20, 30});
        tuples.push_back({1, 2, 4, 5, 15, 25, 35});
        tuples.push_back({0, 2, 3, 0, 10, 20, 30});
        const auto triplets = buildTriplets(tuples);
        REQUIRE(triplets.size() == 3);
        CHECK(triplets[0].foundZone == 4);
        CHECK(triplets[0].support == 2);
        // ties by ascending zone triple
        CHECK(triplets[1].startZone == 0);
        CHECK(triplets[2].startZone == 1);
        long totalSupport = 0;
        for (const auto& t : triplets) {
            totalSupport += t.support;
            CHECK(t.minTime <= t.maxTime);
        }
        CHECK(totalSupport == static_cast<long>(tuples.size()));
        for (std::size_t i = 1; i < triplets.size(); ++i) {
            CHECK(triplets[i - 1].support >= triplets[i].support);
        }
    }
}

TEST_CASE("triplet table round trip") {
    std::vector<ZoneTriplet> triplets;
    triplets.push_back({1, 5, 7, 12.5, 40.0, 9});
    triplets.push_back({2, 6, 7, 3.25, 8.75, 1});
    const auto text = serializeTriplets(triplets);
    const auto reparsed = parseTriplets(text);
    REQUIRE(reparsed.size() == 2);
    CHECK(reparsed[0].startZone == 1);
    CHECK(reparsed[0].minTime == doctest::Approx(12.5));
    CHECK(reparsed[1].support == 1);

    CHECK_THROWS_AS(parseTriplets("bogus header\n1,2,3,0,1,1\n"), ParseError);
    CHECK_THROWS_AS(
        parseTriplets("start_ident,lost_ident,found_ident,min_time,max_time,support\n1,2,3,5,4,1\n"),
        ParseError);
}
