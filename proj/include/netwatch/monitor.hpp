#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "netwatch/core.hpp"
#include "netwatch/smoothing.hpp"
#include "netwatch/statistics.hpp"
#include "netwatch/surrogate.hpp"
#include "netwatch/team_search.hpp"

namespace netwatch {

/// Drives one SurveillancePlan over a snapshot stream: smoothing, statistic
/// updates, candidate-team scans and flag decisions. Collecting FlagEvents is
/// optional; Monte Carlo drivers leave it off and read flagged_any().
class Monitor {
public:
    Monitor(SurveillancePlan plan, MeanModel means, int max_n, bool collect_events = false);

    /// Consumes the snapshot for t = current + 1. Snapshots smaller than
    /// max_n follow the prefix-active convention: inactive pairs are frozen
    /// and excluded from sums and search.
    void step(const NetworkSnapshot& snap);

    bool flagged_any() const { return flagged_any_; }
    const std::vector<FlagEvent>& events() const { return events_; }
    const SmootherState& smoother() const { return state_; }
    const SurveillancePlan& plan() const { return plan_; }
    int t() const { return state_.t; }

    /// Profiling hook for scan calibration: when set, candidate scans record
    /// every evaluated team's (size, sqrt(value) - sqrt(boundary)) into the
    /// sink and never flag.
    void set_excess_sink(std::vector<std::pair<int, double>>* sink) { excess_sink_ = sink; }

private:
    double resolve_threshold(double lambda_bar, int n_team);
    void run_known_team(const NetworkSnapshot& snap);
    void run_gewma_scan(int active_n);
    void run_dewma_scan(int active_n);
    void run_adaptive_scan(int active_n);
    void emit(const std::string& stat, const std::string& target, double value, double boundary,
              bool flagged);

    SurveillancePlan plan_;
    MeanModel means_;
    int max_n_;
    bool collect_events_;
    SmootherState state_;
    Mat lambda_buf_;
    std::optional<StatState> stat_;
    std::optional<ThresholdCache> cache_;
    bool flagged_any_ = false;
    std::vector<FlagEvent> events_;
    std::vector<std::pair<int, double>>* excess_sink_ = nullptr;
};

}  // namespace netwatch
