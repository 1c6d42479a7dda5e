#include <doctest.h>

#include "helpers.hpp"
#include "trackrepair/repair.hpp"

using namespace trackrepair;
using trackrepair::testing::makeWalk;
using trackrepair::testing::rectZone;
using trackrepair::testing::sceneWith;

namespace {

SceneModel repairScene() {
    return sceneWith({
        rectZone(1, ZoneKind::Entry, 0, -1, 1, 1),
        rectZone(2, ZoneKind::Lost, 5, -1, 6, 1),
        rectZone(3, ZoneKind::Found, 8, -1, 9, 1),
        rectZone(4, ZoneKind::Exit, 12, -1, 13, 1),
    });
}

LostTrackState makeLostState(const std::string& id, double tLost) {
    LostTrackState state;
    state.trajectory = makeWalk(id, {{tLost - 10, 0.5, 0}, {tLost, 5.5, 0}}, /*endsLost=*/true);
    state.startZone = 1;
    state.lostZone = 2;
    state.tLost = tLost;
    return state;
}

NormalizationStats someStats() {
    NormalizationStats stats;
    for (const int feature : NormalizationStats::kZScoredFeatures) {
        stats.mu[static_cast<std::size_t>(feature - 1)] = 1.0;
        stats.sigma[static_cast<std::size_t>(feature - 1)] = 1.0;
    }
    return stats;
}

}  // namespace

TEST_CASE("detectAnomalousAppearance") {
    const auto scene = repairScene();
    SUBCASE("first point in an entry zone is normal") {
        const auto traj = makeWalk("a", {{0, 0.5, 0}, {1, 2, 0}});
        CHECK_FALSE(detectAnomalousAppearance(traj, scene).has_value());
    }
    SUBCASE("first point in a found zone outside entries is anomalous") {
        const auto traj = makeWalk("a", {{0, 8.5, 0}, {1, 9.5, 0}});
        const auto zone = detectAnomalousAppearance(traj, scene);
        REQUIRE(zone.has_value());
        CHECK(*zone == 3);
    }
    SUBCASE("first point in open space is not anomalous") {
        const auto traj = makeWalk("a", {{0, 3, 0}, {1, 4, 0}});
        CHECK_FALSE(detectAnomalousAppearance(traj, scene).has_value());
    }
    SUBCASE("entry membership wins over found membership") {
        const auto overlapping = sceneWith({
            rectZone(1, ZoneKind::Entry, 0, -1, 2, 1),
            rectZone(2, ZoneKind::Found, 1, -1, 3, 1),
        });
        const auto traj = makeWalk("a", {{0, 1.5, 0}, {1, 2.5, 0}});
        CHECK_FALSE(detectAnomalousAppearance(traj, overlapping).has_value());
    }
    SUBCASE("lowest ident wins among several found zones") {
        const auto overlapping = sceneWith({
            rectZone(9, ZoneKind::Found, 0, -1, 2, 1),
            rectZone(4, ZoneKind::LostFound, 1, -1, 3, 1),
        });
        const auto traj = makeWalk("a", {{0, 1.5, 0}, {1, 2.5, 0}});
        CHECK(detectAnomalousAppearance(traj, overlapping) == 4);
    }
}

TEST_CASE("matchAndRepair window and tie rules") {
    const std::vector<ZoneTriplet> triplets = {{1, 2, 3, 30.0, 60.0, 5}};
    const auto newTrack = makeWalk("new", {{145, 8.5, 0}, {146, 9.5, 0}});

    SUBCASE("single candidate inside the window fuses under the lost id") {
        std::vector<LostTrackState> pool = {makeLostState("lost", 100.0)};
        const auto result = matchAndRepair(newTrack, 3, pool, triplets, 145.0);
        REQUIRE(result.has_value());
        CHECK(result->recipientId == "lost");
        CHECK(result->donorId == "new");
        CHECK(result->fusedTrajectory.id == "lost");
        CHECK(result->fusedTrajectory.observations.size() == 4);  // 2 + 2
        CHECK(pool.empty());
        // the gap is marked by a found event at the fusion time
        bool sawFound = false;
        for (const auto& event : result->fusedTrajectory.events) {
            sawFound = sawFound || (event.kind == EventKind::Found && event.t == 145.0);
        }
        CHECK(sawFound);
        CHECK_NOTHROW(result->fusedTrajectory.validate());
    }
    SUBCASE("elapsed equal to the upper bound does not fuse") {
        std::vector<LostTrackState> pool = {makeLostState("lost", 85.0)};  // elapsed = 60
        CHECK_FALSE(matchAndRepair(newTrack, 3, pool, triplets, 145.0).has_value());
        CHECK(pool.size() == 1);
    }
    SUBCASE("elapsed equal to the lower bound does not fuse") {
        std::vector<LostTrackState> pool = {makeLostState("lost", 115.0)};  // elapsed = 30
        CHECK_FALSE(matchAndRepair(newTrack, 3, pool, triplets, 145.0).has_value());
    }
    SUBCASE("earliest lost wins among eligible states") {
        std::vector<LostTrackState> pool = {makeLostState("later", 110.0),
                                            makeLostState("earlier", 100.0)};
        const auto result = matchAndRepair(newTrack, 3, pool, triplets, 145.0);
        REQUIRE(result.has_value());
        CHECK(result->recipientId == "earlier");
        REQUIRE(pool.size() == 1);
        CHECK(pool[0].trajectory.id == "later");
    }
    SUBCASE("zone mismatch never fuses") {
        auto state = makeLostState("lost", 100.0);
        state.lostZone = 7;
        std::vector<LostTrackState> pool = {state};
        CHECK_FALSE(matchAndRepair(newTrack, 3, pool, triplets, 145.0).has_value());
    }
    SUBCASE("higher priority triplet is tried first") {
        const std::vector<ZoneTriplet> two = {{1, 2, 3, 30.0, 60.0, 9}, {1, 5, 3, 1.0, 200.0, 2}};
        auto inWindowLowPriority = makeLostState("low", 140.0);
        inWindowLowPriority.lostZone = 5;
        std::vector<LostTrackState> pool = {inWindowLowPriority, makeLostState("high", 100.0)};
        const auto result = matchAndRepair(newTrack, 3, pool, two, 145.0);
        REQUIRE(result.has_value());
        CHECK(result->recipientId == "high");
        CHECK(result->tripletUsed.support == 9);
    }
}

TEST_CASE("repairBatch") {
    const auto scene = repairScene();
    const auto weights = WeightVector::uniform();
    const auto stats = someStats();

    SUBCASE("no lost events means no fusions and unchanged output") {
        std::vector<Trajectory> trajs = {makeWalk("a", {{0, 0.5, 0}, {1, 2, 0}}),
                                         makeWalk("b", {{5, 0.5, 0}, {6, 3, 0}})};
        const std::vector<ZoneTriplet> triplets = {{1, 2, 3, 30.0, 60.0, 5}};
        const auto batch = repairBatch(trajs, scene, triplets, weights, stats);
        CHECK(batch.report.fusionCount == 0);
        CHECK(batch.results.empty());
        REQUIRE(batch.trajectories.size() == 2);
        CHECK(batch.trajectories[0].id == "a");
        CHECK(batch.trajectories[1].id == "b");
    }

    SUBCASE("one injected loss with a matching triplet fuses once") {
        std::vector<Trajectory> trajs;
        trajs.push_back(makeWalk("lost", {{0, 0.5, 0}, {10, 5.5, 0}}, /*endsLost=*/true));
        trajs.push_back(makeWalk("cont", {{55, 8.5, 0}, {60, 12.5, 0}}));
        trajs.push_back(makeWalk("bystander", {{20, 0.5, 0}, {30, 12.5, 0}}));
        const std::vector<ZoneTriplet> triplets = {{1, 2, 3, 30.0, 60.0, 5}};
        const auto batch = repairBatch(trajs, scene, triplets, weights, stats);
        CHECK(batch.report.fusionCount == 1);
        REQUIRE(batch.results.size() == 1);
        CHECK(batch.results[0].recipientId == "lost");
        CHECK(batch.results[0].donorId == "cont");
        REQUIRE(batch.trajectories.size() == 2);
        CHECK(batch.trajectories[0].id == "lost");
        CHECK(batch.trajectories[0].observations.size() == 4);
        CHECK(batch.trajectories[1].id == "bystander");

        // observation conservation
        std::size_t inputCount = 0;
        std::size_t outputCount = 0;
        for (const auto& t : trajs) inputCount += t.observations.size();
        for (const auto& t : batch.trajectories) outputCount += t.observations.size();
        CHECK(inputCount == outputCount);

        // the fusion satisfies the window post hoc
        const auto& result = batch.results[0];
        const double elapsed = result.tFused - 10.0;
        CHECK(elapsed > result.tripletUsed.minTime);
        CHECK(elapsed < result.tripletUsed.maxTime);
    }

    SUBCASE("simultaneous losses with conflicting priorities can misassociate") {
        // Two corridors sharing a found zone; the high-priority triplet grabs
        // the re-appearing track of the other corridor.
        const auto twoLanes = sceneWith({
            rectZone(1, ZoneKind::Entry, 0, -1, 1, 1),
            rectZone(2, ZoneKind::Entry, 0, 9, 1, 11),
            rectZone(3, ZoneKind::Lost, 5, -1, 6, 1),
            rectZone(4, ZoneKind::Lost, 5, 9, 6, 11),
            rectZone(5, ZoneKind::Found, 8, 3, 9, 7),
        });
        const std::vector<ZoneTriplet> triplets = {{1, 3, 5, 10.0, 40.0, 9},
                                                   {2, 4, 5, 10.0, 40.0, 2}};
        std::vector<Trajectory> trajs;
        trajs.push_back(makeWalk("laneA", {{0, 0.5, 0}, {100, 5.5, 0}}, true));
        trajs.push_back(makeWalk("laneB", {{0, 0.5, 10}, {100, 5.5, 10}}, true));
        // laneB's continuation appears first; the higher-priority triplet
        // belongs to laneA, so it steals the fragment.
        trajs.push_back(makeWalk("contB", {{120, 8.5, 5}, {125, 12.5, 5}}));
        trajs.push_back(makeWalk("contA", {{122, 8.5, 5.2}, {127, 12.5, 5.2}}));
        const auto batch = repairBatch(trajs, twoLanes, triplets, weights, stats);
        REQUIRE(batch.report.fusionCount == 2);
        CHECK(batch.results[0].donorId == "contB");
        CHECK(batch.results[0].recipientId == "laneA");  // misassociation
        CHECK(batch.results[1].donorId == "contA");
        CHECK(batch.results[1].recipientId == "laneB");
    }

    SUBCASE("a repaired track can be lost again and repaired again") {
        std::vector<Trajectory> trajs;
        trajs.push_back(makeWalk("orig", {{0, 0.5, 0}, {10, 5.5, 0}}, true));
        // first continuation gets lost again inside the lost zone
        auto second = makeWalk("second", {{50, 8.5, 0}, {60, 5.7, 0}}, true);
        trajs.push_back(second);
        trajs.push_back(makeWalk("third", {{100, 8.5, 0}, {110, 12.5, 0}}));
        const std::vector<ZoneTriplet> triplets = {{1, 2, 3, 30.0, 60.0, 5}};
        const auto batch = repairBatch(trajs, scene, triplets, weights, stats);
        CHECK(batch.report.fusionCount == 2);
        REQUIRE(batch.trajectories.size() == 1);
        CHECK(batch.trajectories[0].id == "orig");
        CHECK(batch.trajectories[0].observations.size() == 6);
        CHECK_NOTHROW(batch.trajectories[0].validate());
    }
}

TEST_CASE("gap interpolation is opt-in") {
    const auto scene = repairScene();
    std::vector<Trajectory> trajs;
    trajs.push_back(makeWalk("lost", {{0, 0.5, 0}, {1, 3, 0}, {2, 5.5, 0}}, true));
    trajs.push_back(makeWalk("cont", {{42, 8.5, 0}, {43, 10, 0}, {44, 12.5, 0}}));
    const std::vector<ZoneTriplet> triplets = {{1, 2, 3, 30.0, 60.0, 5}};

    RepairConfig cfg;
    cfg.interpolateGaps = true;
    const auto batch =
        repairBatch(trajs, scene, triplets, WeightVector::uniform(), someStats(), cfg);
    REQUIRE(batch.report.fusionCount == 1);
    const auto& fused = batch.trajectories[0];
    // gap 2..42 at spacing 1 -> 39 interpolated samples between the fragments
    CHECK(fused.observations.size() == 6 + 39);
    CHECK_NOTHROW(fused.validate());
    for (std::size_t i = 1; i < fused.observations.size(); ++i) {
        CHECK(fused.observations[i].t > fused.observations[i - 1].t);
    }
}
