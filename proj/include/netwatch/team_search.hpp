#pragma once

#include <utility>
#include <vector>

#include "netwatch/core.hpp"
#include "netwatch/smoothing.hpp"
#include "netwatch/statistics.hpp"
#include "netwatch/surrogate.hpp"

namespace netwatch {

/// Counts pair-score evaluations since the last reset; used by tests to
/// assert the O(n^2) scan cost bound.
long pair_score_evals();
void reset_pair_score_evals();

/// Hub candidate around `center`: nodes whose reflected count beats the
/// smoothed mean by k in either direction, plus the center itself.
///   { i : sqrt(ystar_{i,c}) - sqrt(ltilde_{i,c}) > k  or  same for (c,i) }
Team collab_candidate(const SmootherState& s, int center, double k);

/// W_nu: nodes with a significant combined interaction with the leader.
///   { i != nu : sqrt(ystar_{nu,i}+ystar_{i,nu}) - sqrt(ltilde_{nu,i}+ltilde_{i,nu}) > k }
Team leader_neighborhood(const SmootherState& s, int leader, double k);

/// Omega: endpoints of pairs inside W that interact significantly in either
/// direction. |W| <= 1 yields the empty team.
Team refine_leader_team(const SmootherState& s, const Team& w, double k);

/// Candidate team and its reflected statistic sum.
std::pair<Team, double> local_gewma_star(const SmootherState& s, int center, double k,
                                         const SumOptions& opts = {});

struct LocalDewma {
    Team w;
    Team omega;
    double value = 0.0;
};
LocalDewma local_dewma_star(const SmootherState& s, int leader, double k,
                            const SumOptions& opts = {});

/// Shared adjacency of score-significant directed pairs, built once per step
/// and reused by every center; keeps a full scan at <= 2 n^2 score evaluations.
struct HotPairs {
    int n = 0;
    std::vector<std::vector<int>> neighbors;  // per node, sorted unique

    static HotPairs build(const SmootherState& s, double k);
};

Team collab_candidate_from(const HotPairs& hot, int center);

struct ScanOptions {
    double k = 0.5;
    SumOptions sums;
    double boundary_rhs = 1.0;  // flag when sqrt(stat) - sqrt(boundary) > boundary_rhs
};

/// Adaptive collaborative scan (per-edge 1/h_G^2 weights, HG_RECIP surrogate).
/// Emits one FlagEvent per candidate team of size >= 2, in center order.
std::vector<FlagEvent> agewma_scan(const SmootherState& s, const ScanOptions& opts,
                                   ThresholdCache& hg);

/// Adaptive dominant-leader scan (per-edge 1/h_D weights, HD_LOG surrogate).
/// Emits one FlagEvent per leader with a nonempty neighborhood, in leader order.
std::vector<FlagEvent> adewma_scan(const SmootherState& s, const ScanOptions& opts,
                                   ThresholdCache& hd);

}  // namespace netwatch
