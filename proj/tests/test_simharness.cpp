#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "helpers.hpp"
#include "netwatch/simharness.hpp"

using namespace netwatch;

namespace {

Scenario collab_scenario(int n, double lambda, std::initializer_list<int> team, double delta,
                         int change_t) {
    Scenario sc;
    CollaborativeOutbreak c;
    c.n = n;
    c.lambda = lambda;
    for (int v : team) c.team.add(v);
    c.delta = delta;
    c.change_t = change_t;
    sc.variant = c;
    return sc;
}

double empirical_pair_mean(const Scenario& sc, int i, int j, int t, int draws, uint64_t seed) {
    double sum = 0.0;
    NetworkSnapshot snap;
    for (int d = 0; d < draws; ++d) {
        Rng rng(seed, static_cast<uint64_t>(d));
        ScenarioSampler sampler(sc, false);
        // advance the rng identically to a real stream: draw only step t
        sampler.sample_into(t, rng, snap);
        sum += static_cast<double>(snap.counts(i, j));
    }
    return sum / draws;
}

}  // namespace

TEST_CASE("dominant leader edge sets match the drawn topologies") {
    auto sim1 = dominant_leader_edges(1);
    std::set<std::pair<int, int>> expected1 = {{1, 4}, {3, 0}, {5, 0}, {5, 1},
                                               {5, 2}, {5, 3}, {5, 4}};
    CHECK(std::set<std::pair<int, int>>(sim1.begin(), sim1.end()) == expected1);
    CHECK(sim1.size() == 7);
    CHECK(dominant_leader_edges(2).size() == 10);
    CHECK(dominant_leader_edges(3).size() == 14);
    CHECK(dominant_leader_edges(4).size() == 18);
    CHECK_THROWS_AS(dominant_leader_edges(5), BadSimId);
    CHECK_THROWS_AS(dominant_leader_edges(0), BadSimId);
}

TEST_CASE("leader 6 reaches every team member in every topology") {
    for (int sim = 1; sim <= 4; ++sim) {
        auto edges = dominant_leader_edges(sim);
        std::set<int> reached;
        for (auto [a, b] : edges)
            if (a == 5) reached.insert(b);
        // team grows by one node per simulation: {1..5}, then 7, 8, 9
        CHECK(static_cast<int>(reached.size()) == 4 + sim);
    }
}

TEST_CASE("in-control pair means match lambda (3 sigma)") {
    Scenario sc;
    sc.variant = HomogeneousScenario{6, 0.2};
    const int draws = 10000;
    const double mean = empirical_pair_mean(sc, 0, 1, 3, draws, 99);
    const double sigma = std::sqrt(0.2 / draws);
    CHECK(std::abs(mean - 0.2) < 3.0 * sigma);
}

TEST_CASE("collaborative outbreak lifts only team pairs after the change") {
    Scenario sc = collab_scenario(8, 0.2, {0, 1, 2}, 1.0, 5);
    const int draws = 10000;
    const double team_mean = empirical_pair_mean(sc, 0, 1, 6, draws, 7);
    const double off_mean = empirical_pair_mean(sc, 3, 4, 6, draws, 7);
    CHECK(std::abs(team_mean - 0.4) < 3.0 * std::sqrt(0.4 / draws));
    CHECK(std::abs(off_mean - 0.2) < 3.0 * std::sqrt(0.2 / draws));
    // pre-change the team pairs are still in control
    const double pre_mean = empirical_pair_mean(sc, 0, 1, 5, draws, 7);
    CHECK(std::abs(pre_mean - 0.2) < 3.0 * std::sqrt(0.2 / draws));
}

TEST_CASE("pre-change outbreak streams are bit-identical to homogeneous streams") {
    Scenario outbreak = collab_scenario(10, 0.3, {1, 2, 3}, 2.0, 50);
    Scenario plain;
    plain.variant = HomogeneousScenario{10, 0.3};
    Rng r1(42), r2(42);
    ScenarioSampler s1(outbreak, false), s2(plain, false);
    NetworkSnapshot a, b;
    for (int t = 1; t <= 50; ++t) {
        s1.sample_into(t, r1, a);
        s2.sample_into(t, r2, b);
        CHECK(a.counts == b.counts);
    }
}

TEST_CASE("dominant-leader outbreak shifts only the drawn edges") {
    Scenario sc;
    DominantLeaderOutbreak d;
    d.n = 12;
    d.lambda = 0.2;
    d.sim_id = 1;
    d.delta = 4.0;
    d.change_t = 2;
    sc.variant = d;
    const int draws = 8000;
    // 6 -> 1 is an outbreak edge (0-based 5 -> 0); 1 -> 6 is not
    const double on_edge = empirical_pair_mean(sc, 5, 0, 3, draws, 13);
    const double off_edge = empirical_pair_mean(sc, 0, 5, 3, draws, 13);
    CHECK(std::abs(on_edge - 1.0) < 3.0 * std::sqrt(1.0 / draws));
    CHECK(std::abs(off_edge - 0.2) < 3.0 * std::sqrt(0.2 / draws));
}

TEST_CASE("variable-size scenario: sizes in range, distance-linear rates") {
    Scenario sc;
    HeterogeneousVarSize v;
    v.a = -0.003;
    v.b = 0.90;
    v.m_low = 100;
    v.m_high = 135;
    sc.variant = v;
    MeanModel means = sc.in_control_means();
    CHECK(means.at(0, 1, 1) == doctest::Approx(0.897));
    CHECK(means.at(0, 134, 1) == doctest::Approx(0.498));

    Rng rng(3);
    ScenarioSampler sampler(sc, false);
    NetworkSnapshot snap;
    std::set<int> sizes;
    for (int t = 1; t <= 60; ++t) {
        sampler.sample_into(t, rng, snap);
        CHECK(snap.n >= 100);
        CHECK(snap.n <= 135);
        sizes.insert(snap.n);
    }
    CHECK(sizes.size() > 5);  // the size really varies

    // invalid rate range is rejected
    Scenario bad = sc;
    std::get<HeterogeneousVarSize>(bad.variant).m_high = 350;
    CHECK_THROWS_AS(bad.validate(), NonPositiveMean);
}

TEST_CASE("generator determinism") {
    Scenario sc = collab_scenario(15, 0.4, {0, 1}, 1.5, 10);
    Rng r1(9), r2(9);
    ScenarioSampler s1(sc, false), s2(sc, false);
    NetworkSnapshot a, b;
    for (int t = 1; t <= 30; ++t) {
        s1.sample_into(t, r1, a);
        s2.sample_into(t, r2, b);
        REQUIRE(a.counts == b.counts);
    }
}

TEST_CASE("ats experiment mechanics") {
    Scenario sc = collab_scenario(8, 0.5, {0, 1, 2}, 3.0, 20);
    SurveillancePlan plan;
    plan.statistic = StatKind::Gewma;
    plan.team = Team{{0, 1, 2}, {}};
    plan.threshold = 0.12;

    SUBCASE("signal after the change, censoring accounted") {
        AtsReport rep = run_ats_experiment(sc, plan, 60, 5, 80);
        CHECK(rep.reps == 60);
        CHECK(rep.mean_tts >= 1.0);
        CHECK(rep.mean_tts <= 80.0);
        CHECK(rep.censored <= 60);
    }
    SUBCASE("zero threshold floods warmup false alarms without stopping runs") {
        SurveillancePlan p = plan;
        p.threshold = 0.0;
        AtsReport rep = run_ats_experiment(sc, p, 20, 3, 50);
        CHECK(rep.false_alarms > 0);
        CHECK(rep.mean_tts >= 1.0);
    }
    SUBCASE("errors") {
        Scenario no_change;
        no_change.variant = HomogeneousScenario{8, 0.5};
        CHECK_THROWS_AS(run_ats_experiment(no_change, plan, 10, 3), NoChangePoint);
        CHECK_THROWS_AS(run_ats_experiment(sc, plan, 0, 3), ZeroReps);
    }
}

TEST_CASE("detection accelerates with the outbreak size (3 sigma)") {
    SurveillancePlan plan;
    plan.statistic = StatKind::Gewma;
    plan.team = Team{{0, 1, 2}, {}};
    plan.threshold = 0.25;
    Scenario small = collab_scenario(8, 0.4, {0, 1, 2}, 0.8, 30);
    Scenario big = collab_scenario(8, 0.4, {0, 1, 2}, 3.0, 30);
    AtsReport slow = run_ats_experiment(small, plan, 250, 17, 300);
    AtsReport fast = run_ats_experiment(big, plan, 250, 17, 300);
    CHECK(fast.mean_tts <= slow.mean_tts + 3.0 * (fast.std_error + slow.std_error));
}

TEST_CASE("gen_step matches the sampler and honors the horizon") {
    Scenario sc;
    sc.variant = HomogeneousScenario{5, 0.3};
    sc.horizon = 10;
    Rng rng(77);
    NetworkSnapshot snap = gen_step(sc, 1, rng);
    CHECK(snap.n == 5);
    CHECK(snap.t == 1);
    for (int i = 0; i < 5; ++i) CHECK(snap.counts(i, i) == 0);
    Rng rng2(77);
    CHECK_THROWS_AS(gen_step(sc, 11, rng2), InvalidHorizon);
}
