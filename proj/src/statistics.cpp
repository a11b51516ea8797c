#include "netwatch/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace netwatch {

namespace {

void require_nonempty(const Team& team) {
    if (team.members.empty()) throw EmptyTeam("team statistic over empty team");
}

double pair_sum(const Mat& mat, const std::vector<int>& nodes, bool exclude_self) {
    double sum = 0.0;
    for (int i : nodes) {
        const double* row = mat.data() + static_cast<size_t>(i) * mat.n();
        for (int j : nodes) sum += row[j];
        if (exclude_self) sum -= mat(i, i);
    }
    return sum;
}

}  // namespace

double team_sum(const Mat& mat, const Team& team, const SumOptions& opts) {
    require_nonempty(team);
    return pair_sum(mat, team.members, opts.exclude_self_pairs);
}

StatState gewma_init(const SmootherState& s, const Team& team, const SumOptions& opts) {
    StatState st;
    st.value = team_sum(s.ytilde, team, opts);
    st.mu = team_sum(s.ltilde, team, opts);
    return st;
}

StatState gewma_step(const StatState& prev, const SmootherState& s, const Team& team,
                     const SumOptions& opts) {
    const double sum_y = team_sum(s.ytilde, team, opts);
    const double mu = team_sum(s.ltilde, team, opts);
    StatState st;
    st.mu = mu;
    st.value = std::max(s.alpha * sum_y + (1.0 - s.alpha) * prev.value, mu);
    return st;
}

double gewma_star(const SmootherState& s, const Team& team, const SumOptions& opts) {
    return team_sum(s.ystar, team, opts);
}

bool gewma_flag(double stat_value, double mu, double h) {
    if (stat_value < 0.0 || mu < 0.0 || h < 0.0)
        throw NegativeInput("gewma_flag inputs must be nonnegative");
    return std::sqrt(stat_value) - std::sqrt(mu) > h;
}

double dewma(const SmootherState& s, int leader, const Team& w, const Team& omega,
             const SumOptions& opts) {
    if (w.contains(leader)) throw LeaderInTeam("leader is a member of W");
    for (int i : omega.members)
        if (!w.contains(i)) throw OmegaNotSubset("Omega contains node outside W");
    double sum = 0.0;
    for (int i : w.members) sum += s.ystar(i, leader) + s.ystar(leader, i);
    if (!omega.members.empty()) sum += pair_sum(s.ystar, omega.members, opts.exclude_self_pairs);
    return sum;
}

double dewma_boundary(const SmootherState& s, int leader, const Team& w, const Team& omega,
                      const SumOptions& opts) {
    if (w.contains(leader)) throw LeaderInTeam("leader is a member of W");
    double sum = 0.0;
    for (int i : w.members) sum += s.ltilde(i, leader) + s.ltilde(leader, i);
    if (!omega.members.empty()) sum += pair_sum(s.ltilde, omega.members, opts.exclude_self_pairs);
    return sum;
}

bool dewma_flag(double stat_value, double boundary_sum, double h) {
    if (stat_value < 0.0 || boundary_sum < 0.0 || h < 0.0)
        throw NegativeInput("dewma_flag inputs must be nonnegative");
    return std::sqrt(stat_value) - std::sqrt(boundary_sum) > h;
}

Team whole_network_team(int n) {
    Team t;
    t.members.resize(n);
    std::iota(t.members.begin(), t.members.end(), 0);
    return t;
}

StatState tewma_init(const SmootherState& s, const SumOptions& opts) {
    return gewma_init(s, whole_network_team(s.n), opts);
}

StatState tewma_step(const StatState& prev, const SmootherState& s, const SumOptions& opts) {
    return gewma_step(prev, s, whole_network_team(s.n), opts);
}

double tewma_star(const SmootherState& s, const SumOptions& opts) {
    return gewma_star(s, whole_network_team(s.n), opts);
}

StatState l_gewma_init(const SmootherState& s, const Team& team, const SumOptions& opts) {
    return gewma_init(s, team, opts);
}

StatState l_gewma_step(const StatState& prev, const SmootherState& s, const Team& team,
                       const SumOptions& opts) {
    const double sum_y = team_sum(s.ytilde, team, opts);
    const double mu = team_sum(s.ltilde, team, opts);
    StatState st;
    st.mu = mu;
    st.value = std::min(s.alpha * sum_y + (1.0 - s.alpha) * prev.value, mu);
    return st;
}

bool l_gewma_flag(double stat_value, double mu, double h) {
    if (stat_value < 0.0 || mu < 0.0 || h < 0.0)
        throw NegativeInput("l_gewma_flag inputs must be nonnegative");
    return std::sqrt(mu) - std::sqrt(stat_value) > h;
}

}  // namespace netwatch
