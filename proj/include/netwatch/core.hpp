#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "netwatch/errors.hpp"
#include "netwatch/grid.hpp"

namespace netwatch {

/// One time step of the dynamic network: directed communication counts.
/// Node ids are 0-based in memory; all file formats and CLI output use 1-based ids.
struct NetworkSnapshot {
    int t = 0;           // time index, 1-based
    int n = 0;           // active node count at this step
    CountMat counts;     // n x n, counts(i,j) = messages i -> j, diagonal 0

    void validate() const;
};

struct NetworkSeries {
    std::vector<NetworkSnapshot> snapshots;

    int size_t_steps() const { return static_cast<int>(snapshots.size()); }
    int max_n() const;
    void validate() const;  // contiguous t from 1, n within bounds, diag zero
};

/// Expected-count specification lambda_{i,j,t}.
struct HomogeneousMean {
    double lambda = 0.0;
};
struct PerEdgeSeriesMean {
    std::vector<Mat> per_t;  // per_t[t-1] is the n x n rate matrix at time t
};
/// lambda_{i,j} = a*|i-j| + b, constant over time (variable-size scenarios
/// evaluate it over the active prefix).
struct DistanceLinearMean {
    double a = 0.0;
    double b = 0.90;
};

class MeanModel {
public:
    using Variant = std::variant<HomogeneousMean, PerEdgeSeriesMean, DistanceLinearMean>;

    MeanModel() : v_(HomogeneousMean{1.0}) {}
    explicit MeanModel(Variant v) : v_(std::move(v)) {}

    static MeanModel homogeneous(double lambda) { return MeanModel(HomogeneousMean{lambda}); }
    static MeanModel per_edge(std::vector<Mat> per_t) {
        return MeanModel(PerEdgeSeriesMean{std::move(per_t)});
    }
    static MeanModel distance_linear(double a, double b = 0.90) {
        return MeanModel(DistanceLinearMean{a, b});
    }

    double at(int i, int j, int t) const;
    /// Fills an n x n rate matrix for time t. Diagonal entries carry the
    /// model value (Homogeneous/DistanceLinear) or whatever the series holds.
    void fill(int t, int n, Mat& out) const;

    const Variant& variant() const { return v_; }
    /// Smallest off-diagonal rate over node indices 0..n-1 (time-constant models).
    double min_offdiag_rate(int n) const;

private:
    Variant v_;
};

/// Validates a series against its mean model: matching dimensions at every t,
/// nonnegative counts, strictly positive off-diagonal means, contiguous time.
/// Throws DimensionMismatch / NonPositiveMean / NonContiguousTime.
void validate_series(const NetworkSeries& series, const MeanModel& means);

struct Team {
    std::vector<int> members;        // sorted, 0-based, excludes the leader
    std::optional<int> leader;

    int size() const { return static_cast<int>(members.size()); }
    bool contains(int node) const;
    void add(int node);              // keeps members sorted/unique

    bool operator==(const Team&) const = default;
};

enum class StatKind {
    Gewma,
    GewmaStar,
    Dewma,
    Tewma,
    TewmaStar,
    LGewma,
    Agewma,
    Adewma,
};

std::string to_string(StatKind k);
StatKind stat_kind_from_string(const std::string& s);

/// Regression surrogate for a calibrated threshold function h(lambda, n).
/// HdLog:    log(h) on the 12-term basis, h = exp(x.beta)
/// HgRecip:  1/h on the 20-term basis,    h = 1/(x.beta)
/// ScanShape: h = c0 + c1*n, identity link; produced by scan-level calibration.
struct SurrogateModel {
    enum class Kind { HdLog, HgRecip, ScanShape };

    Kind kind = Kind::HdLog;
    std::vector<double> coefficients;
    double residual_se = 0.0;
    double fit_correlation = 0.0;

    static int basis_size(Kind k);
};

std::string to_string(SurrogateModel::Kind k);
SurrogateModel::Kind surrogate_kind_from_string(const std::string& s);

/// Threshold specification: a fixed value or a fitted surrogate h(lambda, n).
using ThresholdSpec = std::variant<double, SurrogateModel>;

/// Everything needed to run one monitoring plan over a stream.
struct SurveillancePlan {
    StatKind statistic = StatKind::Gewma;
    double alpha = 0.075;
    double k = 0.5;                   // team-identification cut (scans only)
    ThresholdSpec threshold = 0.0;
    std::optional<Team> team;         // required for known-team statistics
    std::optional<int> leader;        // known-leader plans (Dewma)
    double target_ats = 100.0;

    // Executable-plan conventions (see README): double sums skip i==j by
    // default so the reflection floor coincides with the in-control mean.
    bool exclude_self_pairs = true;
    // Scan membership scores are (sqrt(y*) - sqrt(ltilde)) / sqrt(alpha/(2-alpha))
    // when set; the raw spec-form score when cleared.
    bool k_noise_normalized = true;
    // RHS of the adaptive flag rules (Table-13 style adjustment), and an
    // additive adjustment for scan thresholds.
    double threshold_adjustment = 1.0;

    bool is_scan() const;
    double k_effective() const;
    void validate() const;
};

struct FlagEvent {
    int t = 0;
    std::string statistic;
    std::string target;       // team as |-joined 1-based ids, or leader id
    double value = 0.0;
    double boundary = 0.0;
    bool flagged = false;
};

struct AtsReport {
    int reps = 0;
    double mean_tts = 0.0;
    double std_error = 0.0;
    int censored = 0;
    int false_alarms = 0;
};

/// Renders a team as sorted 1-based ids joined by '|' (leader prefixed "L").
std::string team_label(const Team& team);

inline double noise_scale(double alpha) { return std::sqrt(alpha / (2.0 - alpha)); }

}  // namespace netwatch
