#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "netwatch/statistics.hpp"

using namespace netwatch;
using netwatch::testing::const_mat;

namespace {

SmootherState state_with(int n, double alpha, const Mat& ytilde, const Mat& ltilde,
                         const Mat& ystar, int t = 1) {
    SmootherState s;
    s.n = n;
    s.alpha = alpha;
    s.t = t;
    s.ytilde = ytilde;
    s.ltilde = ltilde;
    s.ystar = ystar;
    return s;
}

Team team_of(std::initializer_list<int> nodes) {
    Team t;
    for (int v : nodes) t.add(v);
    return t;
}

}  // namespace

TEST_CASE("reflection at the mean: ytilde == ltilde pins the statistic at mu") {
    Mat m = const_mat(3, 0.4, 0.4);
    SmootherState s = state_with(3, 0.075, m, m, m);
    Team team = team_of({0, 1});
    StatState st = gewma_init(s, team);
    for (int step = 0; step < 10; ++step) {
        s.t++;
        st = gewma_step(st, s, team);
        CHECK(st.value == doctest::Approx(st.mu));
    }
}

TEST_CASE("hand-evaluated GEWMA step with self-pairs included") {
    // homogeneous lambda=1, team of 2 -> mu = 4 with self-pairs; team ytilde sum 6
    Mat yt = const_mat(2, 2.0, 1.0);  // off-diag 2+2, diag 1+1 -> sum 6
    Mat lt = const_mat(2, 1.0, 1.0);
    SmootherState s = state_with(2, 0.5, yt, lt, lt, 2);
    Team team = team_of({0, 1});
    SumOptions include{false};
    CHECK(team_sum(s.ytilde, team, include) == doctest::Approx(6.0));
    StatState prev{4.0, 4.0};
    StatState st = gewma_step(prev, s, team, include);
    CHECK(st.mu == doctest::Approx(4.0));
    CHECK(st.value == doctest::Approx(5.0));  // max(0.5*6 + 0.5*4, 4)
}

TEST_CASE("gewma_star sums the reflected matrix") {
    Mat ys = const_mat(2, 1.0, 1.0);
    ys(0, 1) = 1.25;
    Mat lt = const_mat(2, 1.0, 1.0);
    SmootherState s = state_with(2, 0.5, lt, lt, ys);
    Team team = team_of({0, 1});
    SUBCASE("floor state returns mu") {
        CHECK(gewma_star(s, team, {false}) == doctest::Approx(4.25));
        Mat floor_ys = lt;
        s.ystar = floor_ys;
        CHECK(gewma_star(s, team, {false}) ==
              doctest::Approx(team_sum(s.ltilde, team, {false})));
    }
    SUBCASE("empty team") {
        Team empty;
        CHECK_THROWS_AS(gewma_star(s, empty), EmptyTeam);
    }
}

TEST_CASE("gewma_flag hand arithmetic") {
    // n=6, lambda=0.2: mu = (6 sqrt(0.2))^2 = 7.2; sqrt(9) - 6 sqrt(0.2) = 0.3167
    CHECK(gewma_flag(9.0, 7.2, 0.30));
    CHECK(!gewma_flag(9.0, 7.2, 0.32));
    CHECK(!gewma_flag(4.0, 4.0, 0.01));  // zero excess
    CHECK_THROWS_AS(gewma_flag(-1.0, 1.0, 0.1), NegativeInput);
}

TEST_CASE("dewma hand sums and errors") {
    Mat ys = const_mat(4, 0.0, 0.0);
    Mat lt = const_mat(4, 0.0, 0.0);
    const int leader = 2;
    ys(1, leader) = 2.0;
    ys(leader, 1) = 3.0;
    SmootherState s = state_with(4, 0.5, lt, lt, ys);

    Team w = team_of({1});
    Team omega;
    CHECK(dewma(s, leader, w, omega) == doctest::Approx(5.0));
    CHECK(dewma(s, leader, Team{}, Team{}) == doctest::Approx(0.0));

    Team not_subset = team_of({0});
    CHECK_THROWS_AS(dewma(s, leader, w, not_subset), OmegaNotSubset);
    Team with_leader = team_of({1, leader});
    CHECK_THROWS_AS(dewma(s, leader, with_leader, omega), LeaderInTeam);
}

TEST_CASE("dewma_flag hand arithmetic") {
    // homogeneous lambda=0.2, n_W=5, n_Omega=0 -> boundary 2; sqrt(4)-sqrt(2)=0.5858
    CHECK(dewma_flag(4.0, 2.0, 0.5));
    CHECK(!dewma_flag(2.0, 2.0, 0.1));
    CHECK_THROWS_AS(dewma_flag(4.0, -2.0, 0.5), NegativeInput);
}

TEST_CASE("tewma equals gewma on the whole network") {
    SmootherState s = testing::random_smoother(5, 0.6, 0.2, 40, 11);
    Team all = whole_network_team(5);
    StatState via_g = gewma_init(s, all);
    StatState via_t = tewma_init(s);
    for (int i = 0; i < 15; ++i) {
        s.ytilde(1, 2) += 0.1 * i;  // perturb to keep the streams nontrivial
        s.t++;
        via_g = gewma_step(via_g, s, all);
        via_t = tewma_step(via_t, s);
        CHECK(via_t.value == via_g.value);
        CHECK(via_t.mu == via_g.mu);
    }
}

TEST_CASE("hand-evaluated TEWMA with self-pairs included") {
    // n=3, ltilde=1, ytilde=2, alpha=0.5, prev=mu=9 -> max(0.5*18+0.5*9, 9) = 13.5
    Mat yt = const_mat(3, 2.0, 2.0);
    Mat lt = const_mat(3, 1.0, 1.0);
    SmootherState s = state_with(3, 0.5, yt, lt, lt, 2);
    StatState prev{9.0, 9.0};
    StatState st = tewma_step(prev, s, {false});
    CHECK(st.value == doctest::Approx(13.5));
}

TEST_CASE("l_gewma reflects from above") {
    Mat m = const_mat(3, 1.0, 1.0);
    SmootherState s = state_with(3, 0.5, m, m, m, 2);
    Team team = team_of({0, 1});
    SUBCASE("at the mean") {
        StatState st = l_gewma_step(StatState{4.0, 4.0}, s, team, {false});
        CHECK(st.value == doctest::Approx(4.0));
    }
    SUBCASE("hand recursion: S=2, prev=mu=4 -> min(0.5*2+0.5*4, 4) = 3") {
        Mat low = const_mat(3, 0.5, 0.5);
        s.ytilde = low;  // team sum with self-pairs = 4 * 0.5 = 2
        StatState st = l_gewma_step(StatState{4.0, 4.0}, s, team, {false});
        CHECK(st.value == doctest::Approx(3.0));
    }
}

TEST_CASE("ordering: L-GEWMA <= mu <= GEWMA on a shared stream") {
    const int n = 4;
    Mat lam = const_mat(n, 0.8, 0.0);
    SmootherState s = init_state(lam, 0.1);
    Team team = team_of({0, 1, 2});
    Rng rng(21);
    StatState hi, lo;
    NetworkSnapshot snap;
    snap.n = n;
    snap.counts = CountMat(n);
    for (int t = 1; t <= 80; ++t) {
        snap.t = t;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) snap.counts(i, j) = i == j ? 0 : rng.poisson(0.8);
        step_inplace(s, snap, lam);
        if (t == 1) {
            hi = gewma_init(s, team);
            lo = l_gewma_init(s, team);
        } else {
            hi = gewma_step(hi, s, team);
            lo = l_gewma_step(lo, s, team);
        }
        if (t >= 2) {
            CHECK(hi.value >= hi.mu - 1e-12);
            CHECK(lo.value <= lo.mu + 1e-12);
            CHECK(lo.value <= hi.value + 1e-12);
        }
    }
}

TEST_CASE("l_gewma_flag mirrors the upper rule") {
    CHECK(l_gewma_flag(3.0, 4.0, 0.2));   // sqrt(4)-sqrt(3) = 0.268
    CHECK(!l_gewma_flag(3.0, 4.0, 0.3));
    CHECK_THROWS_AS(l_gewma_flag(3.0, -1.0, 0.1), NegativeInput);
}

TEST_CASE("flag predicates are monotone in value and antitone in h") {
    for (double v : {5.0, 6.0, 7.0})
        CHECK(gewma_flag(v + 1.0, 4.0, 0.3) >= gewma_flag(v, 4.0, 0.3));
    CHECK(gewma_flag(9.0, 7.2, 0.30) >= gewma_flag(9.0, 7.2, 0.32));
}

TEST_CASE("square-root transform stabilizes Poisson variance") {
    // sample variance of sqrt(Y) over 1e5 draws within [0.20, 0.30]
    for (double lambda : {5.0, 10.0, 20.0}) {
        Rng rng(static_cast<uint64_t>(lambda * 1000 + 17));
        const int N = 100000;
        double mean = 0.0, m2 = 0.0;
        for (int i = 1; i <= N; ++i) {
            const double x = std::sqrt(static_cast<double>(rng.poisson(lambda)));
            const double d = x - mean;
            mean += d / i;
            m2 += d * (x - mean);
        }
        const double var = m2 / (N - 1);
        CHECK(var >= 0.20);
        CHECK(var <= 0.30);
    }
}
