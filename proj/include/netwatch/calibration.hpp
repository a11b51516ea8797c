#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "netwatch/core.hpp"
#include "netwatch/simharness.hpp"
#include "netwatch/surrogate.hpp"

namespace netwatch {

struct CalibrationGrid {
    std::vector<int> n_values;
    std::vector<double> lambda_values;
    double alpha = 0.10;
    double target_ats = 100.0;
    double tol_frac = 0.10;
    int reps = 500;
    int horizon = 2000;
    uint64_t seed = 1;

    void validate() const;
};

struct CalibrationResult {
    ThresholdSpec threshold;   // fixed h, scan-shape model, or RHS adjustment
    AtsReport achieved;
    int probes = 0;
};

/// Monotone threshold search: geometric bracketing then bisection, with
/// common random numbers across probes. Known-team plans return a fixed h;
/// GEWMA/DEWMA candidate scans fit a per-team-size threshold profile from an
/// in-control run and calibrate its additive offset; AGEWMA/ADEWMA calibrate
/// the flag-rule RHS (threshold adjustment).
CalibrationResult calibrate_threshold(const SurveillancePlan& plan, const Scenario& scenario,
                                      double target_ats, double tol_frac, int reps,
                                      uint64_t seed);

/// Which chart backs a calibration-grid cell.
enum class ChartKind {
    GewmaRecursion,  // known-team GEWMA recursion; collapses to a univariate
                     // Poisson-sum kernel by linearity of the EWMA
    GewmaStarTeam,   // known-team reflected statistic, per-pair simulation
    DewmaStarTeam,   // known dominant-leader team, W = members, Omega refined
};

/// In-control ATS of a known-team chart of size n at mean lambda under a
/// fixed threshold h. k enters only the DEWMA refinement step.
double known_team_ats(ChartKind chart, int n, double lambda, double alpha, double k_eff,
                      double h, int reps, int horizon, uint64_t seed);

/// Calibrated threshold for one grid cell (bisection over known_team_ats).
double calibrate_known_team_h(ChartKind chart, int n, double lambda, double alpha, double k_eff,
                              double target_ats, double tol_frac, int reps, int horizon,
                              uint64_t seed);

/// Runs the whole grid, producing surrogate fit samples.
std::vector<FitSample> run_calibration_grid(const CalibrationGrid& grid, ChartKind chart,
                                            double k_eff = 0.0);

}  // namespace netwatch
