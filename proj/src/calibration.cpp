#include "netwatch/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "netwatch/monitor.hpp"
#include "netwatch/rng.hpp"
#include "netwatch/statistics.hpp"

namespace netwatch {

void CalibrationGrid::validate() const {
    if (n_values.empty() || lambda_values.empty())
        throw BadPlan("calibration grid needs n and lambda values");
    if (reps < 1) throw ZeroReps("grid reps must be >= 1");
    if (horizon < target_ats) throw InvalidHorizon("grid horizon must be >= target ATS");
    for (double l : lambda_values)
        if (!(l > 0.0)) throw NonPositiveMean("grid lambda must be > 0");
    for (int n : n_values)
        if (n < 2) throw BadPlan("grid n must be >= 2");
}

namespace {

struct BisectOutcome {
    double value = 0.0;
    double ats = 0.0;
    int probes = 0;
};

/// Geometric bracketing then bisection of a monotone-nondecreasing ATS(x).
BisectOutcome bisect_monotone(const std::function<double(double)>& ats_fn, double target,
                              double tol_frac, int budget) {
    BisectOutcome out;
    auto probe = [&](double x) {
        ++out.probes;
        if (out.probes > budget)
            throw BudgetExhausted("threshold search exceeded " + std::to_string(budget) +
                                  " probes");
        return ats_fn(x);
    };
    const double lo_band = target * (1.0 - tol_frac);
    const double hi_band = target * (1.0 + tol_frac);

    double a0 = probe(0.0);
    if (a0 >= lo_band && a0 <= hi_band) {
        out.value = 0.0;
        out.ats = a0;
        return out;
    }
    if (a0 > hi_band)
        throw NoBracket("in-control ATS at threshold 0 is already " + std::to_string(a0) +
                        " > target " + std::to_string(target));

    double lo = 0.0, hi = 0.05, a_hi = probe(hi);
    while (a_hi < target) {
        lo = hi;
        hi *= 2.0;
        a_hi = probe(hi);
    }
    for (;;) {
        const double mid = 0.5 * (lo + hi);
        const double a = probe(mid);
        if (a >= lo_band && a <= hi_band) {
            out.value = mid;
            out.ats = a;
            return out;
        }
        if (a < target) lo = mid;
        else hi = mid;
    }
}

/// Univariate kernel: known-team GEWMA recursion over p i.i.d. Poisson(p*lambda)
/// sums (linearity of the EWMA collapses the per-pair matrices).
double gewma_recursion_ats(int team_size, double lambda, double alpha, double h, int reps,
                           int horizon, uint64_t seed) {
    const int p = team_size * (team_size - 1);
    const double mu = p * lambda;
    const double lim = (std::sqrt(mu) + h) * (std::sqrt(mu) + h);
    double total = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
        Rng rng(seed, static_cast<uint64_t>(rep));
        double ewma_sum = mu;
        double g = mu;
        int tts = horizon;
        for (int t = 1; t <= horizon; ++t) {
            const double s = static_cast<double>(rng.poisson(mu));
            ewma_sum = alpha * s + (1.0 - alpha) * ewma_sum;
            g = t == 1 ? ewma_sum : std::max(alpha * ewma_sum + (1.0 - alpha) * g, mu);
            if (g > lim) {
                tts = t;
                break;
            }
        }
        total += tts;
    }
    return total / reps;
}

/// Per-pair kernel for the reflected team statistics.
double star_team_ats(ChartKind chart, int n, double lambda, double alpha, double k_eff, double h,
                     int reps, int horizon, uint64_t seed) {
    const bool dl = chart == ChartKind::DewmaStarTeam;
    // members pairs: ordered (i != j); dominant-leader adds 2n leader pairs
    const int member_pairs = n * (n - 1);
    const int leader_pairs = dl ? 2 * n : 0;
    const int np = member_pairs + leader_pairs;
    std::vector<double> yt(np), ys(np);
    double total = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
        Rng rng(seed, static_cast<uint64_t>(rep));
        std::fill(yt.begin(), yt.end(), lambda);
        std::fill(ys.begin(), ys.end(), lambda);
        int tts = horizon;
        for (int t = 1; t <= horizon; ++t) {
            for (int i = 0; i < np; ++i) {
                const double y = static_cast<double>(rng.poisson(lambda));
                yt[i] = alpha * y + (1.0 - alpha) * yt[i];
                const double cand = alpha * yt[i] + (1.0 - alpha) * ys[i];
                ys[i] = cand > lambda ? cand : lambda;
            }
            double value = 0.0, boundary = 0.0;
            if (!dl) {
                for (int i = 0; i < np; ++i) value += ys[i];
                boundary = member_pairs * lambda;
            } else {
                // leader pairs are the first 2n streams
                for (int i = 0; i < leader_pairs; ++i) value += ys[i];
                boundary = 2.0 * n * lambda;
                // ordered member pair (a,b), row-major skipping the diagonal
                auto stream = [&](int a, int b) {
                    return leader_pairs + a * (n - 1) + (b < a ? b : b - 1);
                };
                std::vector<bool> in(n, false);
                for (int a = 0; a < n; ++a) {
                    for (int b = a + 1; b < n; ++b) {
                        if (std::sqrt(ys[stream(a, b)]) - std::sqrt(lambda) > k_eff ||
                            std::sqrt(ys[stream(b, a)]) - std::sqrt(lambda) > k_eff) {
                            in[a] = in[b] = true;
                        }
                    }
                }
                int in_omega_pairs = 0;
                for (int a = 0; a < n; ++a) {
                    if (!in[a]) continue;
                    for (int b = 0; b < n; ++b) {
                        if (a == b || !in[b]) continue;
                        value += ys[stream(a, b)];
                        ++in_omega_pairs;
                    }
                }
                boundary += in_omega_pairs * lambda;
            }
            if (std::sqrt(value) - std::sqrt(boundary) > h) {
                tts = t;
                break;
            }
        }
        total += tts;
    }
    return total / reps;
}

}  // namespace

double known_team_ats(ChartKind chart, int n, double lambda, double alpha, double k_eff,
                      double h, int reps, int horizon, uint64_t seed) {
    if (reps < 1) throw ZeroReps("reps must be >= 1");
    if (n < 2) throw BadPlan("team size must be >= 2");
    if (chart == ChartKind::GewmaRecursion)
        return gewma_recursion_ats(n, lambda, alpha, h, reps, horizon, seed);
    return star_team_ats(chart, n, lambda, alpha, k_eff, h, reps, horizon, seed);
}

double calibrate_known_team_h(ChartKind chart, int n, double lambda, double alpha, double k_eff,
                              double target_ats, double tol_frac, int reps, int horizon,
                              uint64_t seed) {
    auto ats_fn = [&](double h) {
        return known_team_ats(chart, n, lambda, alpha, k_eff, h, reps, horizon, seed);
    };
    return bisect_monotone(ats_fn, target_ats, tol_frac, 64).value;
}

std::vector<FitSample> run_calibration_grid(const CalibrationGrid& grid, ChartKind chart,
                                            double k_eff) {
    grid.validate();
    std::vector<FitSample> samples;
    samples.reserve(grid.n_values.size() * grid.lambda_values.size());
    uint64_t cell = 0;
    for (int n : grid.n_values) {
        for (double lambda : grid.lambda_values) {
            const double h =
                calibrate_known_team_h(chart, n, lambda, grid.alpha, k_eff, grid.target_ats,
                                       grid.tol_frac, grid.reps, grid.horizon, grid.seed + cell);
            samples.push_back({n, lambda, h});
            ++cell;
        }
    }
    return samples;
}

namespace {

/// Per-size median excess profile from in-control scan runs; weighted linear fit.
std::pair<double, double> fit_scan_profile(const SurveillancePlan& plan,
                                           const Scenario& scenario, int reps, int horizon,
                                           uint64_t seed) {
    std::vector<std::pair<int, double>> sink;
    const MeanModel means = scenario.in_control_means();
    const int max_n = scenario.max_n();
    NetworkSnapshot snap;
    for (int rep = 0; rep < reps; ++rep) {
        Rng rng(seed, static_cast<uint64_t>(rep) + 0x5CA1AB1EULL);
        ScenarioSampler sampler(scenario, /*in_control_only=*/true);
        Monitor monitor(plan, means, max_n);
        monitor.set_excess_sink(&sink);
        for (int t = 1; t <= horizon; ++t) {
            sampler.sample_into(t, rng, snap);
            monitor.step(snap);
        }
    }
    std::map<int, std::vector<double>> by_size;
    for (auto& [m, ex] : sink) by_size[m].push_back(ex);

    std::vector<double> xs, ys, ws;
    for (auto& [m, v] : by_size) {
        if (v.size() < 40) continue;
        auto mid = v.begin() + v.size() / 2;
        std::nth_element(v.begin(), mid, v.end());
        xs.push_back(m);
        ys.push_back(*mid);
        ws.push_back(std::sqrt(static_cast<double>(v.size())));
    }
    if (xs.size() < 2)
        throw NoBracket("scan produced too few candidate-team sizes to fit a threshold profile; "
                        "k may be too large for this scenario");
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sw += ws[i];
        sx += ws[i] * xs[i];
        sy += ws[i] * ys[i];
        sxx += ws[i] * xs[i] * xs[i];
        sxy += ws[i] * xs[i] * ys[i];
    }
    const double det = sw * sxx - sx * sx;
    const double slope = (sw * sxy - sx * sy) / det;
    const double intercept = (sxx * sy - sx * sxy) / det;
    return {intercept, slope};
}

}  // namespace

CalibrationResult calibrate_threshold(const SurveillancePlan& plan, const Scenario& scenario,
                                      double target_ats, double tol_frac, int reps,
                                      uint64_t seed) {
    if (!(target_ats >= 2.0)) throw BadPlan("target ATS must be >= 2");
    if (!(tol_frac > 0.0 && tol_frac <= 0.5)) throw BadPlan("tol_frac must lie in (0, 0.5]");
    if (reps < 1) throw ZeroReps("reps must be >= 1");

    const int horizon = static_cast<int>(20.0 * target_ats);
    CalibrationResult result;

    const bool adaptive =
        plan.statistic == StatKind::Agewma || plan.statistic == StatKind::Adewma;
    if (adaptive) {
        // calibrate the flag-rule RHS (threshold adjustment)
        auto ats_fn = [&](double rhs) {
            SurveillancePlan p = plan;
            p.threshold_adjustment = rhs;
            return estimate_in_control_ats(p, scenario, reps, horizon, seed).mean_tts;
        };
        BisectOutcome out = bisect_monotone(ats_fn, target_ats, tol_frac, 48);
        result.threshold = out.value;
        result.probes = out.probes;
        SurveillancePlan p = plan;
        p.threshold_adjustment = out.value;
        result.achieved = estimate_in_control_ats(p, scenario, reps, horizon, seed);
        return result;
    }

    if (plan.is_scan()) {
        const int profile_reps = std::max(16, reps / 8);
        const int profile_horizon = std::max(300, static_cast<int>(2.0 * target_ats));
        auto [c0, c1] = fit_scan_profile(plan, scenario, profile_reps, profile_horizon, seed);
        auto shape_with_offset = [&](double off) {
            SurrogateModel m;
            m.kind = SurrogateModel::Kind::ScanShape;
            m.coefficients = {c0 + off, c1};
            return m;
        };
        auto ats_fn = [&](double off) {
            SurveillancePlan p = plan;
            p.threshold = shape_with_offset(off);
            return estimate_in_control_ats(p, scenario, reps, horizon, seed).mean_tts;
        };
        BisectOutcome out = bisect_monotone(ats_fn, target_ats, tol_frac, 48);
        SurrogateModel model = shape_with_offset(out.value);
        SurveillancePlan p = plan;
        p.threshold = model;
        result.threshold = model;
        result.probes = out.probes;
        result.achieved = estimate_in_control_ats(p, scenario, reps, horizon, seed);
        return result;
    }

    // known-team plans: fixed h
    auto ats_fn = [&](double h) {
        SurveillancePlan p = plan;
        p.threshold = h;
        return estimate_in_control_ats(p, scenario, reps, horizon, seed).mean_tts;
    };
    BisectOutcome out = bisect_monotone(ats_fn, target_ats, tol_frac, 48);
    result.threshold = out.value;
    result.probes = out.probes;
    SurveillancePlan p = plan;
    p.threshold = out.value;
    result.achieved = estimate_in_control_ats(p, scenario, reps, horizon, seed);
    return result;
}

}  // namespace netwatch
