#include "netwatch/simharness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netwatch/monitor.hpp"

namespace netwatch {

int Scenario::max_n() const {
    if (const auto* h = std::get_if<HomogeneousScenario>(&variant)) return h->n;
    if (const auto* c = std::get_if<CollaborativeOutbreak>(&variant)) return c->n;
    if (const auto* d = std::get_if<DominantLeaderOutbreak>(&variant)) return d->n;
    return std::get<HeterogeneousVarSize>(variant).m_high;
}

std::optional<int> Scenario::change_t() const {
    if (const auto* c = std::get_if<CollaborativeOutbreak>(&variant)) return c->change_t;
    if (const auto* d = std::get_if<DominantLeaderOutbreak>(&variant)) return d->change_t;
    return std::nullopt;
}

MeanModel Scenario::in_control_means() const {
    if (const auto* h = std::get_if<HomogeneousScenario>(&variant))
        return MeanModel::homogeneous(h->lambda);
    if (const auto* c = std::get_if<CollaborativeOutbreak>(&variant))
        return MeanModel::homogeneous(c->lambda);
    if (const auto* d = std::get_if<DominantLeaderOutbreak>(&variant))
        return MeanModel::homogeneous(d->lambda);
    const auto& v = std::get<HeterogeneousVarSize>(variant);
    return MeanModel::distance_linear(v.a, v.b);
}

void Scenario::validate() const {
    if (horizon < 1) throw InvalidHorizon("scenario horizon must be >= 1");
    if (const auto* c = std::get_if<CollaborativeOutbreak>(&variant)) {
        if (!(c->delta > 0.0)) throw BadPlan("outbreak delta must be > 0");
        if (c->change_t < 1) throw NoChangePoint("change_t must be >= 1");
        if (!(c->lambda > 0.0)) throw NonPositiveMean("lambda must be > 0");
        for (int i : c->team.members)
            if (i < 0 || i >= c->n) throw BadPlan("team member outside [n]");
    } else if (const auto* d = std::get_if<DominantLeaderOutbreak>(&variant)) {
        if (!(d->delta > 0.0)) throw BadPlan("outbreak delta must be > 0");
        if (d->change_t < 1) throw NoChangePoint("change_t must be >= 1");
        dominant_leader_edges(d->sim_id);
    } else if (const auto* v = std::get_if<HeterogeneousVarSize>(&variant)) {
        if (v->m_low > v->m_high) throw BadPlan("m_low must be <= m_high");
        double min_rate = v->a * (v->m_high - 1) + v->b;
        if (!(std::min(min_rate, v->a + v->b) > 0.0))
            throw NonPositiveMean("a|i-j|+b is not positive over the largest network");
    } else {
        const auto& h = std::get<HomogeneousScenario>(variant);
        if (!(h.lambda > 0.0)) throw NonPositiveMean("lambda must be > 0");
    }
}

std::vector<std::pair<int, int>> dominant_leader_edges(int sim_id) {
    if (sim_id < 1 || sim_id > 4)
        throw BadSimId("sim_id must be 1..4, got " + std::to_string(sim_id));
    // 1-based node labels as drawn; converted to 0-based below.
    static const std::vector<std::vector<std::pair<int, int>>> cumulative = {
        // simulation 1, team {1..6}, leader 6
        {{2, 5}, {4, 1}, {6, 1}, {6, 2}, {6, 3}, {6, 4}, {6, 5}},
        // simulation 2 adds node 7
        {{7, 5}, {4, 7}, {6, 7}},
        // simulation 3 adds node 8
        {{6, 8}, {7, 8}, {4, 8}, {1, 8}},
        // simulation 4 adds node 9
        {{6, 9}, {3, 9}, {9, 2}, {8, 9}},
    };
    std::vector<std::pair<int, int>> edges;
    for (int s = 0; s < sim_id; ++s)
        for (auto [a, b] : cumulative[s]) edges.emplace_back(a - 1, b - 1);
    return edges;
}

ScenarioSampler::ScenarioSampler(const Scenario& scenario, bool in_control_only)
    : scenario_(scenario), in_control_only_(in_control_only), max_n_(scenario.max_n()) {
    scenario.validate();
    if (const auto* v = std::get_if<HeterogeneousVarSize>(&scenario_.variant)) {
        rate_row_.resize(max_n_);
        for (int d = 0; d < max_n_; ++d) rate_row_[d] = v->a * d + v->b;
    }
    if (!in_control_only_) {
        if (const auto* c = std::get_if<CollaborativeOutbreak>(&scenario_.variant)) {
            outbreak_mask_.assign(static_cast<size_t>(max_n_) * max_n_, 0);
            for (int i : c->team.members)
                for (int j : c->team.members)
                    if (i != j) outbreak_mask_[static_cast<size_t>(i) * max_n_ + j] = 1;
        } else if (const auto* d = std::get_if<DominantLeaderOutbreak>(&scenario_.variant)) {
            outbreak_mask_.assign(static_cast<size_t>(max_n_) * max_n_, 0);
            for (auto [a, b] : dominant_leader_edges(d->sim_id))
                outbreak_mask_[static_cast<size_t>(a) * max_n_ + b] = 1;
        }
    }
}

void ScenarioSampler::sample_into(int t, Rng& rng, NetworkSnapshot& snap) {
    if (const auto* v = std::get_if<HeterogeneousVarSize>(&scenario_.variant)) {
        const int n_t = rng.uniform_int(v->m_low, v->m_high);
        snap.t = t;
        snap.n = n_t;
        if (snap.counts.n() != n_t) snap.counts = CountMat(n_t);
        for (int i = 0; i < n_t; ++i) {
            long* row = snap.counts.data() + static_cast<size_t>(i) * n_t;
            for (int j = 0; j < n_t; ++j)
                row[j] = i == j ? 0 : rng.poisson(rate_row_[std::abs(i - j)]);
        }
        return;
    }

    double lambda = 0.0;
    double shifted = 0.0;
    int change = 0;
    if (const auto* h = std::get_if<HomogeneousScenario>(&scenario_.variant)) {
        lambda = h->lambda;
    } else if (const auto* c = std::get_if<CollaborativeOutbreak>(&scenario_.variant)) {
        lambda = c->lambda;
        shifted = (1.0 + c->delta) * c->lambda;
        change = c->change_t;
    } else {
        const auto& d = std::get<DominantLeaderOutbreak>(scenario_.variant);
        lambda = d.lambda;
        shifted = (1.0 + d.delta) * d.lambda;
        change = d.change_t;
    }

    snap.t = t;
    snap.n = max_n_;
    if (snap.counts.n() != max_n_) snap.counts = CountMat(max_n_);
    const bool outbreak_on = !in_control_only_ && !outbreak_mask_.empty() && t > change;
    for (int i = 0; i < max_n_; ++i) {
        long* row = snap.counts.data() + static_cast<size_t>(i) * max_n_;
        const char* mask =
            outbreak_on ? outbreak_mask_.data() + static_cast<size_t>(i) * max_n_ : nullptr;
        for (int j = 0; j < max_n_; ++j) {
            if (i == j) {
                row[j] = 0;
                continue;
            }
            row[j] = rng.poisson(mask && mask[j] ? shifted : lambda);
        }
    }
}

NetworkSnapshot gen_step(const Scenario& scenario, int t, Rng& rng, bool in_control_only) {
    if (t < 1 || t > scenario.horizon)
        throw InvalidHorizon("t=" + std::to_string(t) + " outside [1, horizon]");
    ScenarioSampler sampler(scenario, in_control_only);
    NetworkSnapshot snap;
    sampler.sample_into(t, rng, snap);
    return snap;
}

namespace {

struct RunStats {
    std::vector<double> tts;
    int censored = 0;
    int false_alarms = 0;
};

AtsReport reduce(const RunStats& rs) {
    AtsReport rep;
    rep.reps = static_cast<int>(rs.tts.size());
    rep.censored = rs.censored;
    rep.false_alarms = rs.false_alarms;
    double sum = 0.0;
    for (double v : rs.tts) sum += v;
    rep.mean_tts = rep.reps > 0 ? sum / rep.reps : 0.0;
    double ss = 0.0;
    for (double v : rs.tts) ss += (v - rep.mean_tts) * (v - rep.mean_tts);
    rep.std_error = rep.reps > 1 ? std::sqrt(ss / (rep.reps - 1) / rep.reps) : 0.0;
    return rep;
}

}  // namespace

AtsReport run_ats_experiment(const Scenario& scenario, const SurveillancePlan& plan, int reps,
                             uint64_t seed, int post_horizon) {
    if (reps < 1) throw ZeroReps("reps must be >= 1");
    auto change = scenario.change_t();
    if (!change) throw NoChangePoint("scenario has no change point");
    if (post_horizon < 1) throw InvalidHorizon("post-change horizon must be >= 1");

    RunStats rs;
    rs.tts.reserve(reps);
    const MeanModel means = scenario.in_control_means();
    const int max_n = scenario.max_n();
    NetworkSnapshot snap;
    for (int rep = 0; rep < reps; ++rep) {
        Rng rng(seed, static_cast<uint64_t>(rep));
        ScenarioSampler sampler(scenario, /*in_control_only=*/false);
        Monitor monitor(plan, means, max_n);
        double tts = post_horizon;
        bool censored = true;
        for (int t = 1; t <= *change + post_horizon; ++t) {
            sampler.sample_into(t, rng, snap);
            monitor.step(snap);
            if (monitor.flagged_any()) {
                if (t <= *change) {
                    ++rs.false_alarms;
                } else {
                    tts = t - *change;
                    censored = false;
                    break;
                }
            }
        }
        rs.tts.push_back(tts);
        if (censored) ++rs.censored;
    }
    return reduce(rs);
}

AtsReport estimate_in_control_ats(const SurveillancePlan& plan, const Scenario& scenario,
                                  int reps, int horizon, uint64_t seed) {
    if (reps < 1) throw ZeroReps("reps must be >= 1");
    if (horizon < 1) throw InvalidHorizon("horizon must be >= 1");

    RunStats rs;
    rs.tts.reserve(reps);
    const MeanModel means = scenario.in_control_means();
    const int max_n = scenario.max_n();
    NetworkSnapshot snap;
    for (int rep = 0; rep < reps; ++rep) {
        Rng rng(seed, static_cast<uint64_t>(rep));
        ScenarioSampler sampler(scenario, /*in_control_only=*/true);
        Monitor monitor(plan, means, max_n);
        double tts = horizon;
        bool censored = true;
        for (int t = 1; t <= horizon; ++t) {
            sampler.sample_into(t, rng, snap);
            monitor.step(snap);
            if (monitor.flagged_any()) {
                tts = t;
                censored = false;
                break;
            }
        }
        rs.tts.push_back(tts);
        if (censored) ++rs.censored;
    }
    return reduce(rs);
}

}  // namespace netwatch
