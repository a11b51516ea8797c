#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "netwatch/core.hpp"
#include "netwatch/rng.hpp"

namespace netwatch {

struct HomogeneousScenario {
    int n = 100;
    double lambda = 0.2;
};

/// All ordered pairs inside the team shift to (1+delta)*lambda after change_t.
struct CollaborativeOutbreak {
    int n = 100;
    double lambda = 0.2;
    Team team;
    double delta = 1.0;
    int change_t = 100;
};

/// Outbreak only on the fixed directed edge set of the chosen simulation
/// topology (node 6 is the dominant leader in all four).
struct DominantLeaderOutbreak {
    int n = 100;
    double lambda = 0.2;
    int sim_id = 1;
    double delta = 1.0;
    int change_t = 100;
};

/// No outbreak; n_t drawn uniformly from {m_low..m_high} each step and
/// lambda_{i,j} = a*|i-j| + b over the active prefix.
struct HeterogeneousVarSize {
    double a = -0.003;
    double b = 0.90;
    int m_low = 100;
    int m_high = 135;
};

struct Scenario {
    using Variant = std::variant<HomogeneousScenario, CollaborativeOutbreak,
                                 DominantLeaderOutbreak, HeterogeneousVarSize>;
    Variant variant;
    int horizon = 600;
    uint64_t seed = 0;

    int max_n() const;
    std::optional<int> change_t() const;
    MeanModel in_control_means() const;
    void validate() const;
};

/// Directed outbreak edges (0-based) for dominant-leader simulations 1..4.
std::vector<std::pair<int, int>> dominant_leader_edges(int sim_id);

/// Stateless draw of the snapshot at time t. `in_control_only` suppresses the
/// outbreak shift (used by in-control ATS estimation on outbreak scenarios).
/// Variable-size scenarios draw n_t from the rng first, then the counts.
NetworkSnapshot gen_step(const Scenario& scenario, int t, Rng& rng, bool in_control_only = false);

/// Buffer-reusing sampler for Monte Carlo loops; one instance per replication.
class ScenarioSampler {
public:
    ScenarioSampler(const Scenario& scenario, bool in_control_only);

    /// Fills snap for time t, drawing from rng.
    void sample_into(int t, Rng& rng, NetworkSnapshot& snap);

private:
    const Scenario& scenario_;
    bool in_control_only_;
    int max_n_;
    std::vector<double> rate_row_;      // per |i-j| for distance-linear
    std::vector<char> outbreak_mask_;   // per pair, row-major, for outbreak variants
};

/// Streams `reps` replications of the scenario through the plan: warmup to
/// the change point, then up to 500 post-change steps. Signals during warmup
/// count as false alarms and do not stop the run; time to signal is the
/// first flagged step after the change, censored at the post-change horizon.
AtsReport run_ats_experiment(const Scenario& scenario, const SurveillancePlan& plan, int reps,
                             uint64_t seed, int post_horizon = 500);

/// In-control ATS: `reps` no-outbreak streams, time to first signal, censored
/// at `horizon` (censored runs counted at horizon).
AtsReport estimate_in_control_ats(const SurveillancePlan& plan, const Scenario& scenario,
                                  int reps, int horizon, uint64_t seed);

}  // namespace netwatch
