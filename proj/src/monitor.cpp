#include "netwatch/monitor.hpp"

#include <algorithm>
#include <cmath>

namespace netwatch {

namespace {

// Per-size score sums for one candidate team: value = sum ystar, mu = sum ltilde.
struct TeamSums {
    double value = 0.0;
    double mu = 0.0;
};

TeamSums candidate_sums(const SmootherState& s, const std::vector<int>& members,
                        bool exclude_self) {
    TeamSums out;
    for (int i : members) {
        const double* ys = s.ystar.data() + static_cast<size_t>(i) * s.n;
        const double* lt = s.ltilde.data() + static_cast<size_t>(i) * s.n;
        for (int j : members) {
            out.value += ys[j];
            out.mu += lt[j];
        }
        if (exclude_self) {
            out.value -= s.ystar(i, i);
            out.mu -= s.ltilde(i, i);
        }
    }
    return out;
}

}  // namespace

Monitor::Monitor(SurveillancePlan plan, MeanModel means, int max_n, bool collect_events)
    : plan_(std::move(plan)), means_(std::move(means)), max_n_(max_n),
      collect_events_(collect_events) {
    plan_.validate();
    if (const auto* model = std::get_if<SurrogateModel>(&plan_.threshold)) {
        cache_.emplace(*model);
        if (plan_.statistic == StatKind::Agewma &&
            model->kind != SurrogateModel::Kind::HgRecip)
            throw SurrogateKindMismatch("AGEWMA needs an HG_RECIP surrogate threshold");
        if (plan_.statistic == StatKind::Adewma && model->kind != SurrogateModel::Kind::HdLog)
            throw SurrogateKindMismatch("ADEWMA needs an HD_LOG surrogate threshold");
    } else if (plan_.statistic == StatKind::Agewma || plan_.statistic == StatKind::Adewma) {
        throw SurrogateMissing("adaptive scans need a surrogate threshold model");
    }
    means_.fill(1, max_n_, lambda_buf_);
    state_ = init_state(lambda_buf_, plan_.alpha);
}

double Monitor::resolve_threshold(double lambda_bar, int n_team) {
    if (const auto* h = std::get_if<double>(&plan_.threshold)) return *h;
    return cache_->at(lambda_bar, n_team);
}

void Monitor::emit(const std::string& stat, const std::string& target, double value,
                   double boundary, bool flagged) {
    if (flagged) flagged_any_ = true;
    if (!collect_events_) return;
    FlagEvent ev;
    ev.t = state_.t;
    ev.statistic = stat;
    ev.target = target;
    ev.value = value;
    ev.boundary = boundary;
    ev.flagged = flagged;
    events_.push_back(std::move(ev));
}

void Monitor::step(const NetworkSnapshot& snap) {
    flagged_any_ = false;
    events_.clear();
    means_.fill(snap.t, max_n_, lambda_buf_);
    if (snap.n == max_n_) {
        step_inplace(state_, snap, lambda_buf_);
    } else {
        step_prefix_inplace(state_, snap, lambda_buf_, snap.n);
    }

    const int active_n = snap.n;
    switch (plan_.statistic) {
        case StatKind::Gewma:
        case StatKind::GewmaStar:
            if (plan_.team) run_known_team(snap);
            else run_gewma_scan(active_n);
            break;
        case StatKind::LGewma:
        case StatKind::Tewma:
        case StatKind::TewmaStar:
            run_known_team(snap);
            break;
        case StatKind::Dewma:
            if (plan_.leader) run_known_team(snap);
            else run_dewma_scan(active_n);
            break;
        case StatKind::Agewma:
        case StatKind::Adewma:
            run_adaptive_scan(active_n);
            break;
    }
}

void Monitor::run_known_team(const NetworkSnapshot& snap) {
    SumOptions sums{plan_.exclude_self_pairs};
    const bool first = state_.t == 1;
    Team team;
    if (plan_.statistic == StatKind::Tewma || plan_.statistic == StatKind::TewmaStar)
        team = whole_network_team(snap.n);
    else
        team = *plan_.team;

    switch (plan_.statistic) {
        case StatKind::Gewma:
        case StatKind::Tewma: {
            stat_ = first || !stat_ ? gewma_init(state_, team, sums)
                                    : gewma_step(*stat_, state_, team, sums);
            const int npairs = std::max(1, team.size() * (team.size() - 1));
            const double h = resolve_threshold(stat_->mu / npairs, team.size());
            emit(to_string(plan_.statistic), team_label(team), stat_->value, stat_->mu,
                 gewma_flag(stat_->value, stat_->mu, h));
            break;
        }
        case StatKind::GewmaStar:
        case StatKind::TewmaStar: {
            const double v = gewma_star(state_, team, sums);
            const double mu = team_sum(state_.ltilde, team, sums);
            const int npairs = std::max(1, team.size() * (team.size() - 1));
            const double h = resolve_threshold(mu / npairs, team.size());
            emit(to_string(plan_.statistic), team_label(team), v, mu, gewma_flag(v, mu, h));
            break;
        }
        case StatKind::LGewma: {
            stat_ = first || !stat_ ? l_gewma_init(state_, team, sums)
                                    : l_gewma_step(*stat_, state_, team, sums);
            const int npairs = std::max(1, team.size() * (team.size() - 1));
            const double h = resolve_threshold(stat_->mu / npairs, team.size());
            emit("l_gewma", team_label(team), stat_->value, stat_->mu,
                 l_gewma_flag(stat_->value, stat_->mu, h));
            break;
        }
        case StatKind::Dewma: {
            const int nu = *plan_.leader;
            const double k_eff = plan_.k_effective();
            Team w = *plan_.team;
            Team omega = refine_leader_team(state_, w, k_eff);
            const double v = dewma(state_, nu, w, omega, sums);
            const double b = dewma_boundary(state_, nu, w, omega, sums);
            const int m = std::max(omega.size(), 2);
            const double h = resolve_threshold(b / std::max(1, 2 * w.size()), m);
            Team labeled = w;
            labeled.leader = nu;
            emit("dewma", team_label(labeled), v, b, dewma_flag(v, b, h));
            break;
        }
        default: break;
    }
}

void Monitor::run_gewma_scan(int active_n) {
    const double k_eff = plan_.k_effective();
    const bool exclude = plan_.exclude_self_pairs;
    // shared hot-pair pass, then per-center teams
    std::vector<std::vector<int>> nbr(active_n);
    for (int i = 0; i < active_n; ++i) {
        const double* ys = state_.ystar.data() + static_cast<size_t>(i) * state_.n;
        const double* lt = state_.ltilde.data() + static_cast<size_t>(i) * state_.n;
        for (int j = i + 1; j < active_n; ++j) {
            const bool hot = std::sqrt(ys[j]) - std::sqrt(lt[j]) > k_eff ||
                             std::sqrt(state_.ystar(j, i)) - std::sqrt(state_.ltilde(j, i)) > k_eff;
            if (hot) {
                nbr[i].push_back(j);
                nbr[j].push_back(i);
            }
        }
    }
    std::vector<int> team;
    for (int center = 0; center < active_n; ++center) {
        if (nbr[center].empty()) continue;
        team = nbr[center];
        team.insert(std::lower_bound(team.begin(), team.end(), center), center);
        const int m = static_cast<int>(team.size());
        TeamSums sums = candidate_sums(state_, team, exclude);
        const double excess = std::sqrt(sums.value) - std::sqrt(sums.mu);
        if (excess_sink_) {
            excess_sink_->emplace_back(m, excess);
            continue;
        }
        const int npairs = std::max(1, m * (m - 1));
        const double h = resolve_threshold(sums.mu / npairs, m) + plan_.threshold_adjustment - 1.0;
        const bool flagged = excess > h;
        if (flagged || collect_events_) {
            Team t;
            t.members = team;
            emit("gewma_scan", team_label(t), sums.value, sums.mu, flagged);
            if (flagged && !collect_events_) return;
        }
    }
}

void Monitor::run_dewma_scan(int active_n) {
    const double k_eff = plan_.k_effective();
    SumOptions sums{plan_.exclude_self_pairs};
    for (int nu = 0; nu < active_n; ++nu) {
        Team w;
        for (int i = 0; i < active_n; ++i) {
            if (i == nu) continue;
            const double ys = state_.ystar(nu, i) + state_.ystar(i, nu);
            const double lt = state_.ltilde(nu, i) + state_.ltilde(i, nu);
            if (std::sqrt(ys) - std::sqrt(lt) > k_eff) w.members.push_back(i);
        }
        if (w.members.empty()) continue;
        Team omega = refine_leader_team(state_, w, k_eff);
        const double v = dewma(state_, nu, w, omega, sums);
        const double b = dewma_boundary(state_, nu, w, omega, sums);
        const int size_proxy = w.size() + omega.size();
        const double excess = std::sqrt(v) - std::sqrt(b);
        if (excess_sink_) {
            excess_sink_->emplace_back(size_proxy, excess);
            continue;
        }
        const double h =
            resolve_threshold(b / std::max(1, 2 * w.size()), size_proxy) +
            plan_.threshold_adjustment - 1.0;
        const bool flagged = excess > h;
        if (flagged || collect_events_) {
            Team labeled = w;
            labeled.leader = nu;
            emit("dewma_scan", team_label(labeled), v, b, flagged);
            if (flagged && !collect_events_) return;
        }
    }
}

void Monitor::run_adaptive_scan(int active_n) {
    ScanOptions opts;
    opts.k = plan_.k_effective();
    opts.sums.exclude_self_pairs = plan_.exclude_self_pairs;
    opts.boundary_rhs = plan_.threshold_adjustment;
    const bool exclude = plan_.exclude_self_pairs;

    if (plan_.statistic == StatKind::Agewma) {
        std::vector<std::vector<int>> nbr(active_n);
        for (int i = 0; i < active_n; ++i)
            for (int j = i + 1; j < active_n; ++j) {
                const bool hot =
                    std::sqrt(state_.ystar(i, j)) - std::sqrt(state_.ltilde(i, j)) > opts.k ||
                    std::sqrt(state_.ystar(j, i)) - std::sqrt(state_.ltilde(j, i)) > opts.k;
                if (hot) {
                    nbr[i].push_back(j);
                    nbr[j].push_back(i);
                }
            }
        for (int center = 0; center < active_n; ++center) {
            if (nbr[center].empty()) continue;
            std::vector<int> team = nbr[center];
            team.insert(std::lower_bound(team.begin(), team.end(), center), center);
            const int m = static_cast<int>(team.size());
            double stat = 0.0, boundary = 0.0;
            for (int i : team)
                for (int j : team) {
                    if (exclude && i == j) continue;
                    const double h = cache_->at(state_.ltilde(i, j), m);
                    stat += state_.ystar(i, j) / (h * h);
                    boundary += state_.ltilde(i, j) / (h * h);
                }
            const bool flagged = std::sqrt(stat) - std::sqrt(boundary) > opts.boundary_rhs;
            if (flagged || collect_events_) {
                Team t;
                t.members = team;
                emit("agewma", team_label(t), stat, boundary, flagged);
                if (flagged && !collect_events_) return;
            }
        }
        return;
    }

    // ADEWMA
    for (int nu = 0; nu < active_n; ++nu) {
        Team w;
        for (int i = 0; i < active_n; ++i) {
            if (i == nu) continue;
            const double ys = state_.ystar(nu, i) + state_.ystar(i, nu);
            const double lt = state_.ltilde(nu, i) + state_.ltilde(i, nu);
            if (std::sqrt(ys) - std::sqrt(lt) > opts.k) w.members.push_back(i);
        }
        if (w.members.empty()) continue;
        Team omega = refine_leader_team(state_, w, opts.k);
        const int m = std::max(omega.size(), 2);
        double stat = 0.0, boundary = 0.0;
        for (int i : w.members) {
            const double h_in = cache_->at(state_.ltilde(i, nu), m);
            const double h_out = cache_->at(state_.ltilde(nu, i), m);
            stat += state_.ystar(i, nu) / h_in + state_.ystar(nu, i) / h_out;
            boundary += state_.ltilde(i, nu) / h_in + state_.ltilde(nu, i) / h_out;
        }
        for (int i : omega.members)
            for (int j : omega.members) {
                if (exclude && i == j) continue;
                const double h = cache_->at(state_.ltilde(i, j), m);
                stat += state_.ystar(i, j) / h;
                boundary += state_.ltilde(i, j) / h;
            }
        const bool flagged = std::sqrt(stat) - std::sqrt(boundary) > opts.boundary_rhs;
        if (flagged || collect_events_) {
            Team labeled = w;
            labeled.leader = nu;
            emit("adewma", team_label(labeled), stat, boundary, flagged);
            if (flagged && !collect_events_) return;
        }
    }
}

}  // namespace netwatch
