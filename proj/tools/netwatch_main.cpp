// Command-line front end: monitor a series, simulate scenarios, measure ATS,
// calibrate thresholds, fit/evaluate threshold surrogates.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "netwatch/calibration.hpp"
#include "netwatch/csv_io.hpp"
#include "netwatch/json_config.hpp"
#include "netwatch/monitor.hpp"
#include "netwatch/simharness.hpp"
#include "netwatch/svg_chart.hpp"

namespace {

using namespace netwatch;

Team parse_team_arg(const std::string& arg) {
    Team team;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        team.add(std::stoi(cur) - 1);
        cur.clear();
    };
    for (char c : arg) {
        if (c == ',') flush();
        else cur.push_back(c);
    }
    flush();
    if (team.members.empty()) throw BadPlan("--team needs at least one node id");
    return team;
}

struct MonitorArgs {
    std::string series_path;
    std::string means_path;
    std::optional<double> lambda;
    std::string dist_linear;
    std::string stat = "gewma";
    double alpha = 0.075;
    double k = 0.5;
    std::optional<double> threshold;
    std::optional<double> lower_threshold;
    std::string surrogate_path;
    std::string team;
    int leader = 0;
    std::string out_flags;
    std::string out_chart;
    bool two_sided = false;
};

MeanModel means_from_args(const MonitorArgs& a) {
    int sources = (!a.means_path.empty()) + a.lambda.has_value() + (!a.dist_linear.empty());
    if (sources != 1)
        throw BadPlan("exactly one of --means, --lambda, --dist-linear is required");
    if (a.lambda) return MeanModel::homogeneous(*a.lambda);
    if (!a.dist_linear.empty()) {
        auto comma = a.dist_linear.find(',');
        if (comma == std::string::npos) throw BadPlan("--dist-linear expects 'a,b'");
        return MeanModel::distance_linear(std::stod(a.dist_linear.substr(0, comma)),
                                          std::stod(a.dist_linear.substr(comma + 1)));
    }
    return parse_means(a.means_path);
}

int run_monitor(const MonitorArgs& args) {
    NetworkSeries series = parse_series(args.series_path);
    MeanModel means = means_from_args(args);
    validate_series(series, means);
    const int n = series.max_n();

    SurveillancePlan plan;
    plan.statistic = stat_kind_from_string(args.stat);
    plan.alpha = args.alpha;
    plan.k = args.k;
    if (!args.team.empty()) plan.team = parse_team_arg(args.team);
    if (args.leader > 0) plan.leader = args.leader - 1;
    if (args.threshold) plan.threshold = *args.threshold;
    else if (!args.surrogate_path.empty()) plan.threshold = load_surrogate(args.surrogate_path);

    std::vector<FlagEvent> all_events;
    std::vector<ChartPoint> chart;

    if (args.two_sided) {
        if (!plan.team) throw BadPlan("--two-sided needs --team");
        SurveillancePlan upper = plan;
        upper.statistic = StatKind::Gewma;
        SurveillancePlan lower = plan;
        lower.statistic = StatKind::LGewma;
        const double h_up = args.threshold.value_or(0.0);
        const double h_lo = args.lower_threshold.value_or(h_up);
        upper.threshold = h_up;
        lower.threshold = h_lo;
        Monitor mon_up(upper, means, n, /*collect_events=*/true);
        Monitor mon_lo(lower, means, n, /*collect_events=*/true);
        for (const auto& snap : series.snapshots) {
            mon_up.step(snap);
            mon_lo.step(snap);
            for (const auto& ev : mon_up.events()) all_events.push_back(ev);
            for (const auto& ev : mon_lo.events()) all_events.push_back(ev);
            const auto& u = mon_up.events().front();
            const auto& l = mon_lo.events().front();
            ChartPoint pt;
            pt.t = snap.t;
            pt.upper = u.value;
            pt.lower = l.value;
            const double su = std::sqrt(u.boundary) + h_up;
            const double sl = std::max(0.0, std::sqrt(l.boundary) - h_lo);
            pt.upper_limit = su * su;
            pt.lower_limit = sl * sl;
            chart.push_back(pt);
        }
    } else {
        Monitor monitor(plan, means, n, /*collect_events=*/true);
        for (const auto& snap : series.snapshots) {
            monitor.step(snap);
            for (const auto& ev : monitor.events()) all_events.push_back(ev);
        }
    }

    if (!args.out_flags.empty()) write_flags(all_events, args.out_flags);
    if (!args.out_chart.empty()) {
        if (!args.two_sided) throw BadPlan("--out-chart requires --two-sided");
        render_chart(chart, args.out_chart);
    }
    int flagged = 0;
    for (const auto& ev : all_events) flagged += ev.flagged;
    std::cout << "steps=" << series.size_t_steps() << " events=" << all_events.size()
              << " flagged=" << flagged << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"communication-outbreak monitoring for dynamic count networks"};
    app.require_subcommand(1);

    MonitorArgs margs;
    auto* monitor = app.add_subcommand("monitor", "run a surveillance plan over a series");
    monitor->add_option("--series", margs.series_path, "input CSV t,src,dst,count")->required();
    monitor->add_option("--means", margs.means_path, "per-edge means CSV t,src,dst,lambda");
    monitor->add_option("--lambda", margs.lambda, "homogeneous mean");
    monitor->add_option("--dist-linear", margs.dist_linear, "a,b for lambda=a|i-j|+b");
    monitor->add_option("--stat", margs.stat,
                        "gewma|gewma_star|dewma|tewma|tewma_star|l_gewma|agewma|adewma");
    monitor->add_option("--alpha", margs.alpha, "smoothing weight");
    monitor->add_option("--k", margs.k, "team-identification cut");
    monitor->add_option("--threshold", margs.threshold, "fixed flag threshold h");
    monitor->add_option("--lower-threshold", margs.lower_threshold,
                        "lower-chart threshold (two-sided; defaults to --threshold)");
    monitor->add_option("--surrogate", margs.surrogate_path, "surrogate model JSON");
    monitor->add_option("--team", margs.team, "1-based ids, comma separated");
    monitor->add_option("--leader", margs.leader, "1-based leader id");
    monitor->add_option("--out-flags", margs.out_flags, "flag events CSV");
    monitor->add_option("--out-chart", margs.out_chart, "two-sided chart SVG");
    monitor->add_flag("--two-sided", margs.two_sided, "run GEWMA and L-GEWMA together");

    std::string scenario_path, plan_path, out_path, kind_str = "hg", chart_str, model_path;
    uint64_t seed = 1;
    int reps = 1000;
    double target_ats = 100.0, tol = 0.10, q_lambda = 0.2;
    int q_n = 6;

    auto* simulate = app.add_subcommand("simulate", "generate a series from a scenario");
    simulate->add_option("--scenario", scenario_path, "scenario JSON")->required();
    simulate->add_option("--seed", seed, "RNG seed");
    simulate->add_option("--out", out_path, "output series CSV")->required();

    auto* ats = app.add_subcommand("ats", "measure ATS for a plan on a scenario");
    ats->add_option("--scenario", scenario_path)->required();
    ats->add_option("--plan", plan_path)->required();
    ats->add_option("--reps", reps);
    ats->add_option("--seed", seed);

    auto* calibrate = app.add_subcommand("calibrate", "search the threshold for a target ATS");
    calibrate->add_option("--scenario", scenario_path)->required();
    calibrate->add_option("--plan", plan_path)->required();
    calibrate->add_option("--target-ats", target_ats);
    calibrate->add_option("--tol", tol, "relative tolerance on the achieved ATS");
    calibrate->add_option("--reps", reps);
    calibrate->add_option("--seed", seed);
    calibrate->add_option("--out", out_path, "calibrated plan JSON");

    auto* surrogate = app.add_subcommand("surrogate", "fit or evaluate threshold surrogates");
    surrogate->require_subcommand(1);
    auto* fit = surrogate->add_subcommand("fit", "calibrate a grid and fit the model");
    fit->add_option("--grid", scenario_path, "grid JSON")->required();
    fit->add_option("--kind", kind_str, "hd|hg");
    fit->add_option("--chart", chart_str, "gewma|gewma_star|dewma_star (default by kind)");
    fit->add_option("--out", out_path, "model JSON")->required();
    auto* predict = surrogate->add_subcommand("predict", "evaluate a fitted model");
    predict->add_option("--model", model_path, "model JSON")->required();
    predict->add_option("--lambda", q_lambda)->required();
    predict->add_option("--n", q_n)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        using namespace netwatch;
        if (monitor->parsed()) return run_monitor(margs);

        if (simulate->parsed()) {
            Scenario sc = load_scenario(scenario_path);
            Rng rng(seed ? seed : sc.seed);
            ScenarioSampler sampler(sc, /*in_control_only=*/false);
            NetworkSeries series;
            NetworkSnapshot snap;
            for (int t = 1; t <= sc.horizon; ++t) {
                sampler.sample_into(t, rng, snap);
                series.snapshots.push_back(snap);
            }
            write_series(series, out_path);
            std::cout << "wrote " << sc.horizon << " snapshots to " << out_path << "\n";
            return 0;
        }

        if (ats->parsed()) {
            Scenario sc = load_scenario(scenario_path);
            SurveillancePlan plan = load_plan(plan_path);
            AtsReport rep;
            if (sc.change_t()) {
                rep = run_ats_experiment(sc, plan, reps, seed);
            } else {
                const int horizon = static_cast<int>(20.0 * plan.target_ats);
                rep = estimate_in_control_ats(plan, sc, reps, horizon, seed);
            }
            std::cout << ats_report_to_json(rep);
            return 0;
        }

        if (calibrate->parsed()) {
            Scenario sc = load_scenario(scenario_path);
            SurveillancePlan plan = load_plan(plan_path);
            CalibrationResult res = calibrate_threshold(plan, sc, target_ats, tol, reps, seed);
            if (plan.statistic == StatKind::Agewma || plan.statistic == StatKind::Adewma)
                plan.threshold_adjustment = std::get<double>(res.threshold);
            else
                plan.threshold = res.threshold;
            if (!out_path.empty()) save_plan(plan, out_path);
            std::cout << ats_report_to_json(res.achieved);
            return 0;
        }

        if (fit->parsed()) {
            CalibrationGrid grid = load_grid(scenario_path);
            const bool hd = kind_str == "hd";
            if (!hd && kind_str != "hg") throw BadPlan("--kind must be hd or hg");
            ChartKind chart = hd ? ChartKind::DewmaStarTeam : ChartKind::GewmaRecursion;
            if (chart_str == "gewma") chart = ChartKind::GewmaRecursion;
            else if (chart_str == "gewma_star") chart = ChartKind::GewmaStarTeam;
            else if (chart_str == "dewma_star") chart = ChartKind::DewmaStarTeam;
            else if (!chart_str.empty()) throw BadPlan("unknown --chart '" + chart_str + "'");
            const double k_eff = 0.45 * noise_scale(grid.alpha);
            auto samples = run_calibration_grid(grid, chart, k_eff);
            SurrogateModel model = hd ? fit_hd_surrogate(samples) : fit_hg_surrogate(samples);
            save_surrogate(model, out_path, &grid, grid.seed);
            std::cout << "fit " << samples.size() << " cells, residual_se=" << model.residual_se
                      << " correlation=" << model.fit_correlation << "\n";
            return 0;
        }

        if (predict->parsed()) {
            SurrogateModel model = load_surrogate(model_path);
            std::cout << predict_threshold(model, q_lambda, q_n) << "\n";
            return 0;
        }
    } catch (const netwatch::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const netwatch::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
