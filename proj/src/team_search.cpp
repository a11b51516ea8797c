#include "netwatch/team_search.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace netwatch {

namespace {

long g_pair_score_evals = 0;

inline bool score_exceeds(double ystar, double ltilde, double k) {
    ++g_pair_score_evals;
    return std::sqrt(ystar) - std::sqrt(ltilde) > k;
}

void require_k(double k) {
    if (k < 0.0) throw BadK("k must be >= 0, got " + std::to_string(k));
}

}  // namespace

long pair_score_evals() { return g_pair_score_evals; }
void reset_pair_score_evals() { g_pair_score_evals = 0; }

Team collab_candidate(const SmootherState& s, int center, double k) {
    require_k(k);
    Team team;
    for (int i = 0; i < s.n; ++i) {
        if (i == center) continue;
        if (score_exceeds(s.ystar(i, center), s.ltilde(i, center), k) ||
            score_exceeds(s.ystar(center, i), s.ltilde(center, i), k)) {
            team.members.push_back(i);
        }
    }
    team.add(center);
    return team;
}

Team leader_neighborhood(const SmootherState& s, int leader, double k) {
    require_k(k);
    Team w;
    for (int i = 0; i < s.n; ++i) {
        if (i == leader) continue;
        if (score_exceeds(s.ystar(leader, i) + s.ystar(i, leader),
                          s.ltilde(leader, i) + s.ltilde(i, leader), k)) {
            w.members.push_back(i);
        }
    }
    return w;
}

Team refine_leader_team(const SmootherState& s, const Team& w, double k) {
    require_k(k);
    Team omega;
    const auto& m = w.members;
    std::vector<bool> in(m.size(), false);
    for (size_t a = 0; a < m.size(); ++a) {
        for (size_t b = a + 1; b < m.size(); ++b) {
            if (in[a] && in[b]) continue;
            const int i = m[a], j = m[b];
            if (score_exceeds(s.ystar(i, j), s.ltilde(i, j), k) ||
                score_exceeds(s.ystar(j, i), s.ltilde(j, i), k)) {
                in[a] = in[b] = true;
            }
        }
    }
    for (size_t a = 0; a < m.size(); ++a)
        if (in[a]) omega.members.push_back(m[a]);
    return omega;
}

std::pair<Team, double> local_gewma_star(const SmootherState& s, int center, double k,
                                         const SumOptions& opts) {
    Team team = collab_candidate(s, center, k);
    return {team, gewma_star(s, team, opts)};
}

LocalDewma local_dewma_star(const SmootherState& s, int leader, double k,
                            const SumOptions& opts) {
    LocalDewma out;
    out.w = leader_neighborhood(s, leader, k);
    out.omega = refine_leader_team(s, out.w, k);
    out.value = out.w.members.empty() && out.omega.members.empty()
                    ? 0.0
                    : dewma(s, leader, out.w, out.omega, opts);
    return out;
}

HotPairs HotPairs::build(const SmootherState& s, double k) {
    require_k(k);
    HotPairs hot;
    hot.n = s.n;
    hot.neighbors.assign(s.n, {});
    for (int i = 0; i < s.n; ++i) {
        for (int j = i + 1; j < s.n; ++j) {
            if (score_exceeds(s.ystar(i, j), s.ltilde(i, j), k) ||
                score_exceeds(s.ystar(j, i), s.ltilde(j, i), k)) {
                hot.neighbors[i].push_back(j);
                hot.neighbors[j].push_back(i);
            }
        }
    }
    return hot;
}

Team collab_candidate_from(const HotPairs& hot, int center) {
    Team team;
    team.members = hot.neighbors[center];
    team.add(center);
    return team;
}

std::vector<FlagEvent> agewma_scan(const SmootherState& s, const ScanOptions& opts,
                                   ThresholdCache& hg) {
    if (hg.model().kind != SurrogateModel::Kind::HgRecip)
        throw SurrogateKindMismatch("agewma_scan needs an HG_RECIP surrogate");
    std::vector<FlagEvent> events;
    HotPairs hot = HotPairs::build(s, opts.k);
    for (int center = 0; center < s.n; ++center) {
        Team team = collab_candidate_from(hot, center);
        const int m = team.size();
        if (m < 2) continue;
        double stat = 0.0, boundary = 0.0;
        for (int i : team.members) {
            for (int j : team.members) {
                if (opts.sums.exclude_self_pairs && i == j) continue;
                const double h = hg.at(s.ltilde(i, j), m);
                stat += s.ystar(i, j) / (h * h);
                boundary += s.ltilde(i, j) / (h * h);
            }
        }
        FlagEvent ev;
        ev.t = s.t;
        ev.statistic = "agewma";
        ev.target = team_label(team);
        ev.value = stat;
        ev.boundary = boundary;
        ev.flagged = std::sqrt(stat) - std::sqrt(boundary) > opts.boundary_rhs;
        events.push_back(std::move(ev));
    }
    return events;
}

std::vector<FlagEvent> adewma_scan(const SmootherState& s, const ScanOptions& opts,
                                   ThresholdCache& hd) {
    if (hd.model().kind != SurrogateModel::Kind::HdLog)
        throw SurrogateKindMismatch("adewma_scan needs an HD_LOG surrogate");
    std::vector<FlagEvent> events;
    for (int leader = 0; leader < s.n; ++leader) {
        Team w = leader_neighborhood(s, leader, opts.k);
        if (w.members.empty()) continue;
        Team omega = refine_leader_team(s, w, opts.k);
        const int m = std::max(omega.size(), 2);
        double stat = 0.0, boundary = 0.0;
        for (int i : w.members) {
            const double h_in = hd.at(s.ltilde(i, leader), m);
            const double h_out = hd.at(s.ltilde(leader, i), m);
            stat += s.ystar(i, leader) / h_in + s.ystar(leader, i) / h_out;
            boundary += s.ltilde(i, leader) / h_in + s.ltilde(leader, i) / h_out;
        }
        for (int i : omega.members) {
            for (int j : omega.members) {
                if (opts.sums.exclude_self_pairs && i == j) continue;
                const double h = hd.at(s.ltilde(i, j), m);
                stat += s.ystar(i, j) / h;
                boundary += s.ltilde(i, j) / h;
            }
        }
        Team labeled = w;
        labeled.leader = leader;
        FlagEvent ev;
        ev.t = s.t;
        ev.statistic = "adewma";
        ev.target = team_label(labeled);
        ev.value = stat;
        ev.boundary = boundary;
        ev.flagged = std::sqrt(stat) - std::sqrt(boundary) > opts.boundary_rhs;
        events.push_back(std::move(ev));
    }
    return events;
}

}  // namespace netwatch
