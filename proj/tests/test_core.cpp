#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "netwatch/core.hpp"

using namespace netwatch;
using netwatch::testing::snapshot_from;

namespace {

NetworkSeries series_of(int steps, int n) {
    NetworkSeries s;
    for (int t = 1; t <= steps; ++t) {
        NetworkSnapshot snap;
        snap.t = t;
        snap.n = n;
        snap.counts = CountMat(n);
        s.snapshots.push_back(snap);
    }
    return s;
}

}  // namespace

TEST_CASE("validate_series accepts a constant positive mean") {
    NetworkSeries s = series_of(3, 4);
    s.snapshots[1].counts(0, 1) = 2;
    CHECK_NOTHROW(validate_series(s, MeanModel::homogeneous(0.2)));
    // deterministic and side-effect free: same call twice
    CHECK_NOTHROW(validate_series(s, MeanModel::homogeneous(0.2)));
}

TEST_CASE("distance-linear positivity over the node range") {
    // min lambda = -0.003*134 + 0.90 = 0.498 > 0
    NetworkSeries ok = series_of(2, 135);
    CHECK_NOTHROW(validate_series(ok, MeanModel::distance_linear(-0.003, 0.90)));
    CHECK(MeanModel::distance_linear(-0.003, 0.90).at(0, 134, 1) == doctest::Approx(0.498));

    // -0.003*349 + 0.90 < 0
    NetworkSeries bad = series_of(2, 350);
    CHECK_THROWS_AS(validate_series(bad, MeanModel::distance_linear(-0.003, 0.90)),
                    NonPositiveMean);
}

TEST_CASE("validation failures are specific") {
    SUBCASE("negative count") {
        NetworkSeries s = series_of(1, 3);
        s.snapshots[0].counts(0, 1) = -1;
        CHECK_THROWS_AS(validate_series(s, MeanModel::homogeneous(1.0)), NegativeCount);
    }
    SUBCASE("nonzero diagonal") {
        NetworkSeries s = series_of(1, 3);
        s.snapshots[0].counts(1, 1) = 4;
        CHECK_THROWS_AS(validate_series(s, MeanModel::homogeneous(1.0)), NegativeCount);
    }
    SUBCASE("non-contiguous time") {
        NetworkSeries s = series_of(2, 3);
        s.snapshots[1].t = 3;
        CHECK_THROWS_AS(validate_series(s, MeanModel::homogeneous(1.0)), NonContiguousTime);
    }
    SUBCASE("per-edge series missing t") {
        NetworkSeries s = series_of(2, 3);
        std::vector<Mat> per_t{testing::const_mat(3, 0.5, 0.0)};
        CHECK_THROWS_AS(validate_series(s, MeanModel::per_edge(per_t)), DimensionMismatch);
    }
    SUBCASE("per-edge zero off-diagonal mean") {
        NetworkSeries s = series_of(1, 3);
        std::vector<Mat> per_t{testing::const_mat(3, 0.5, 0.0)};
        per_t[0](0, 2) = 0.0;
        CHECK_THROWS_AS(validate_series(s, MeanModel::per_edge(per_t)), NonPositiveMean);
    }
}

TEST_CASE("team membership and labels") {
    Team t;
    t.add(4);
    t.add(1);
    t.add(4);
    CHECK(t.members == std::vector<int>{1, 4});
    CHECK(t.contains(1));
    CHECK(!t.contains(2));
    CHECK(team_label(t) == "2|5");
    t.leader = 0;
    CHECK(team_label(t) == "L1|2|5");
}

TEST_CASE("plan validation") {
    SurveillancePlan p;
    p.statistic = StatKind::Gewma;
    SUBCASE("alpha domain") {
        p.alpha = 1.2;
        CHECK_THROWS_AS(p.validate(), BadAlpha);
    }
    SUBCASE("negative k") {
        p.k = -0.1;
        CHECK_THROWS_AS(p.validate(), BadK);
    }
    SUBCASE("adaptive scans reject fixed teams") {
        p.statistic = StatKind::Adewma;
        p.team = Team{{1, 2}, {}};
        CHECK_THROWS_AS(p.validate(), BadPlan);
    }
    SUBCASE("gewma without team is a scan") {
        p.team.reset();
        CHECK(p.is_scan());
        CHECK_NOTHROW(p.validate());
        p.team = Team{{0, 1}, {}};
        CHECK(!p.is_scan());
    }
}

TEST_CASE("snapshot validate rejects bad shapes") {
    NetworkSnapshot snap = snapshot_from(1, 2, {0, 1, 2, 0});
    CHECK_NOTHROW(snap.validate());
    snap.n = 3;
    CHECK_THROWS_AS(snap.validate(), DimensionMismatch);
}
