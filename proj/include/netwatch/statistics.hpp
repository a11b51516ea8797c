#pragma once

#include "netwatch/core.hpp"
#include "netwatch/smoothing.hpp"

namespace netwatch {

/// Current value of a team statistic together with its reflection boundary
/// mu (the ltilde team sum recomputed every step).
struct StatState {
    double value = 0.0;
    double mu = 0.0;
};

/// Options shared by the team-sum statistics. The paper's double sums run
/// over all ordered pairs including i==j; executable plans default to
/// excluding self-pairs so the floor matches the in-control mean of the
/// summed process (structural zero diagonal).
struct SumOptions {
    bool exclude_self_pairs = true;
};

/// Sum of mat over ordered pairs (i, j) in team x team.
double team_sum(const Mat& mat, const Team& team, const SumOptions& opts = {});

/// Seeds GEWMA_1 = team sum of ytilde at the smoother's current t.
StatState gewma_init(const SmootherState& s, const Team& team, const SumOptions& opts = {});

/// GEWMA_t = max(alpha * sum ytilde + (1-alpha) * prev, mu_t).
StatState gewma_step(const StatState& prev, const SmootherState& s, const Team& team,
                     const SumOptions& opts = {});

/// Reflected statistic: sum of ystar over the team.
double gewma_star(const SmootherState& s, const Team& team, const SumOptions& opts = {});

/// Flag rule sqrt(value) - sqrt(mu) > h (homogeneous and heterogeneous
/// forms coincide once mu is the lambda-weighted team sum).
bool gewma_flag(double stat_value, double mu, double h);

/// DEWMA = sum_{i in W} (ystar_{i,nu} + ystar_{nu,i}) + sum_{i,j in Omega} ystar.
double dewma(const SmootherState& s, int leader, const Team& w, const Team& omega,
             const SumOptions& opts = {});

/// The ltilde analogue of dewma(); the boundary of the heterogeneous flag rule.
double dewma_boundary(const SmootherState& s, int leader, const Team& w, const Team& omega,
                      const SumOptions& opts = {});

bool dewma_flag(double stat_value, double boundary_sum, double h);

/// TEWMA is GEWMA with the team fixed to all active nodes.
Team whole_network_team(int n);
StatState tewma_init(const SmootherState& s, const SumOptions& opts = {});
StatState tewma_step(const StatState& prev, const SmootherState& s, const SumOptions& opts = {});
double tewma_star(const SmootherState& s, const SumOptions& opts = {});

/// Lower one-sided chart: L-GEWMA_t = min(alpha * sum ytilde + (1-alpha) * prev, mu_t).
StatState l_gewma_init(const SmootherState& s, const Team& team, const SumOptions& opts = {});
StatState l_gewma_step(const StatState& prev, const SmootherState& s, const Team& team,
                       const SumOptions& opts = {});

/// Mirror of the upper rule: flag when sqrt(mu) - sqrt(value) > h.
bool l_gewma_flag(double stat_value, double mu, double h);

}  // namespace netwatch
