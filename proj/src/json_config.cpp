#include "netwatch/json_config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace netwatch {

using nlohmann::json;

namespace {

json team_to_json(const Team& t) {
    json j = json::array();
    for (int m : t.members) j.push_back(m + 1);
    return j;
}

Team team_from_json(const json& j) {
    Team t;
    for (const auto& v : j) t.add(v.get<int>() - 1);
    return t;
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

std::string scenario_to_json(const Scenario& s) {
    json j;
    j["horizon"] = s.horizon;
    j["seed"] = s.seed;
    if (const auto* h = std::get_if<HomogeneousScenario>(&s.variant)) {
        j["variant"] = "homogeneous";
        j["n"] = h->n;
        j["lambda"] = h->lambda;
    } else if (const auto* c = std::get_if<CollaborativeOutbreak>(&s.variant)) {
        j["variant"] = "collaborative_outbreak";
        j["n"] = c->n;
        j["lambda"] = c->lambda;
        j["team"] = team_to_json(c->team);
        j["delta"] = c->delta;
        j["change_t"] = c->change_t;
    } else if (const auto* d = std::get_if<DominantLeaderOutbreak>(&s.variant)) {
        j["variant"] = "dominant_leader_outbreak";
        j["n"] = d->n;
        j["lambda"] = d->lambda;
        j["sim_id"] = d->sim_id;
        j["delta"] = d->delta;
        j["change_t"] = d->change_t;
    } else {
        const auto& v = std::get<HeterogeneousVarSize>(s.variant);
        j["variant"] = "heterogeneous_varsize";
        j["a"] = v.a;
        j["b"] = v.b;
        j["m_low"] = v.m_low;
        j["m_high"] = v.m_high;
    }
    return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
    json j = json::parse(text);
    Scenario s;
    s.horizon = j.value("horizon", 600);
    s.seed = j.value("seed", uint64_t{0});
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "homogeneous") {
        s.variant = HomogeneousScenario{j.at("n").get<int>(), j.at("lambda").get<double>()};
    } else if (variant == "collaborative_outbreak") {
        CollaborativeOutbreak c;
        c.n = j.at("n").get<int>();
        c.lambda = j.at("lambda").get<double>();
        c.team = team_from_json(j.at("team"));
        c.delta = j.at("delta").get<double>();
        c.change_t = j.value("change_t", 100);
        s.variant = c;
    } else if (variant == "dominant_leader_outbreak") {
        DominantLeaderOutbreak d;
        d.n = j.at("n").get<int>();
        d.lambda = j.at("lambda").get<double>();
        d.sim_id = j.at("sim_id").get<int>();
        d.delta = j.at("delta").get<double>();
        d.change_t = j.value("change_t", 100);
        s.variant = d;
    } else if (variant == "heterogeneous_varsize") {
        HeterogeneousVarSize v;
        v.a = j.at("a").get<double>();
        v.b = j.value("b", 0.90);
        v.m_low = j.at("m_low").get<int>();
        v.m_high = j.at("m_high").get<int>();
        s.variant = v;
    } else {
        throw BadPlan("unknown scenario variant '" + variant + "'");
    }
    s.validate();
    return s;
}

Scenario load_scenario(const std::string& path) { return scenario_from_json(read_text_file(path)); }

std::string plan_to_json(const SurveillancePlan& p) {
    json j;
    j["statistic"] = to_string(p.statistic);
    j["alpha"] = p.alpha;
    j["k"] = p.k;
    j["target_ats"] = p.target_ats;
    j["exclude_self_pairs"] = p.exclude_self_pairs;
    j["k_noise_normalized"] = p.k_noise_normalized;
    j["threshold_adjustment"] = p.threshold_adjustment;
    if (p.team) j["team"] = team_to_json(*p.team);
    if (p.leader) j["leader"] = *p.leader + 1;
    if (const auto* h = std::get_if<double>(&p.threshold)) {
        j["threshold"] = *h;
    } else {
        const auto& m = std::get<SurrogateModel>(p.threshold);
        j["surrogate"] = json::parse(surrogate_to_json(m));
    }
    return j.dump(2) + "\n";
}

SurveillancePlan plan_from_json(const std::string& text) {
    json j = json::parse(text);
    SurveillancePlan p;
    p.statistic = stat_kind_from_string(j.at("statistic").get<std::string>());
    p.alpha = j.value("alpha", 0.075);
    p.k = j.value("k", p.statistic == StatKind::Dewma || p.statistic == StatKind::Adewma ? 0.45
                                                                                         : 0.5);
    p.target_ats = j.value("target_ats", 100.0);
    p.exclude_self_pairs = j.value("exclude_self_pairs", true);
    p.k_noise_normalized = j.value("k_noise_normalized", true);
    p.threshold_adjustment = j.value("threshold_adjustment", 1.0);
    if (j.contains("team")) p.team = team_from_json(j.at("team"));
    if (j.contains("leader")) p.leader = j.at("leader").get<int>() - 1;
    if (j.contains("surrogate")) {
        p.threshold = surrogate_from_json(j.at("surrogate").dump());
    } else {
        p.threshold = j.value("threshold", 0.0);
    }
    p.validate();
    return p;
}

SurveillancePlan load_plan(const std::string& path) { return plan_from_json(read_text_file(path)); }

void save_plan(const SurveillancePlan& p, const std::string& path) {
    write_text_file(path, plan_to_json(p));
}

namespace {

const char* basis_description(SurrogateModel::Kind k) {
    switch (k) {
        case SurrogateModel::Kind::HdLog:
            return "log(h) ~ 1, n, n^2, n^3, l, l^2, I(l<0.95), I(l<0.95)*l, log(l), n*log(l), "
                   "n*l, n*l^2";
        case SurrogateModel::Kind::HgRecip:
            return "1/h ~ 1, log(l), n, n^2, n^3, l, l^2, l^3, log(n), n*log(l), n^2*log(l), "
                   "n^3*log(l), n*l, n^2*l, n^3*l, l^4, l*log(n), l^5, l^2*log(n), l^3*log(n)";
        case SurrogateModel::Kind::ScanShape:
            return "h ~ 1, n";
    }
    return "";
}

}  // namespace

std::string surrogate_to_json(const SurrogateModel& m, const CalibrationGrid* grid,
                              uint64_t seed) {
    json j;
    j["kind"] = to_string(m.kind);
    j["basis"] = basis_description(m.kind);
    j["coefficients"] = m.coefficients;
    j["diagnostics"] = {{"residual_se", m.residual_se},
                        {"fit_correlation", m.fit_correlation}};
    if (grid) {
        j["grid"] = {{"n_values", grid->n_values},
                     {"lambda_values", grid->lambda_values},
                     {"alpha", grid->alpha},
                     {"target_ats", grid->target_ats},
                     {"reps", grid->reps},
                     {"horizon", grid->horizon}};
        j["seed"] = grid->seed;
    } else {
        j["grid"] = nullptr;
        j["seed"] = seed;
    }
    return j.dump(2) + "\n";
}

SurrogateModel surrogate_from_json(const std::string& text) {
    json j = json::parse(text);
    SurrogateModel m;
    m.kind = surrogate_kind_from_string(j.at("kind").get<std::string>());
    m.coefficients = j.at("coefficients").get<std::vector<double>>();
    if (static_cast<int>(m.coefficients.size()) != SurrogateModel::basis_size(m.kind))
        throw SurrogateKindMismatch("coefficient count does not match surrogate kind");
    if (j.contains("diagnostics") && j["diagnostics"].is_object()) {
        m.residual_se = j["diagnostics"].value("residual_se", 0.0);
        m.fit_correlation = j["diagnostics"].value("fit_correlation", 0.0);
    }
    return m;
}

SurrogateModel load_surrogate(const std::string& path) {
    return surrogate_from_json(read_text_file(path));
}

void save_surrogate(const SurrogateModel& m, const std::string& path,
                    const CalibrationGrid* grid, uint64_t seed) {
    write_text_file(path, surrogate_to_json(m, grid, seed));
}

CalibrationGrid grid_from_json(const std::string& text) {
    json j = json::parse(text);
    CalibrationGrid g;
    g.n_values = j.at("n_values").get<std::vector<int>>();
    g.lambda_values = j.at("lambda_values").get<std::vector<double>>();
    g.alpha = j.value("alpha", 0.10);
    g.target_ats = j.value("target_ats", 100.0);
    g.tol_frac = j.value("tol_frac", 0.10);
    g.reps = j.value("reps", 500);
    g.horizon = j.value("horizon", 2000);
    g.seed = j.value("seed", uint64_t{1});
    g.validate();
    return g;
}

CalibrationGrid load_grid(const std::string& path) { return grid_from_json(read_text_file(path)); }

std::string ats_report_to_json(const AtsReport& r) {
    json j;
    j["reps"] = r.reps;
    j["mean_tts"] = r.mean_tts;
    j["std_error"] = r.std_error;
    j["censored"] = r.censored;
    j["false_alarms"] = r.false_alarms;
    return j.dump(2) + "\n";
}

}  // namespace netwatch
