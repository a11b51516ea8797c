#include "netwatch/core.hpp"

#include <algorithm>
#include <sstream>

namespace netwatch {

void NetworkSnapshot::validate() const {
    if (n < 2) throw DimensionMismatch("snapshot at t=" + std::to_string(t) + ": n must be >= 2");
    if (counts.n() != n)
        throw DimensionMismatch("snapshot at t=" + std::to_string(t) + ": count matrix is " +
                                std::to_string(counts.n()) + "x" + std::to_string(counts.n()) +
                                ", expected n=" + std::to_string(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            long c = counts(i, j);
            if (c < 0)
                throw NegativeCount("negative count at (t=" + std::to_string(t) + ", " +
                                    std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
            if (i == j && c != 0)
                throw NegativeCount("nonzero self-count at (t=" + std::to_string(t) + ", node " +
                                    std::to_string(i + 1) + ")");
        }
    }
}

int NetworkSeries::max_n() const {
    int m = 0;
    for (const auto& s : snapshots) m = std::max(m, s.n);
    return m;
}

void NetworkSeries::validate() const {
    if (snapshots.empty()) throw EmptySeries("series has no snapshots");
    for (int idx = 0; idx < static_cast<int>(snapshots.size()); ++idx) {
        const auto& s = snapshots[idx];
        if (s.t != idx + 1)
            throw NonContiguousTime("expected t=" + std::to_string(idx + 1) + ", found t=" +
                                    std::to_string(s.t));
        s.validate();
    }
}

double MeanModel::at(int i, int j, int t) const {
    if (const auto* h = std::get_if<HomogeneousMean>(&v_)) return h->lambda;
    if (const auto* d = std::get_if<DistanceLinearMean>(&v_))
        return d->a * std::abs(i - j) + d->b;
    const auto& per_t = std::get<PerEdgeSeriesMean>(v_).per_t;
    if (t < 1 || t > static_cast<int>(per_t.size()))
        throw DimensionMismatch("mean series has no entry for t=" + std::to_string(t));
    return per_t[t - 1](i, j);
}

void MeanModel::fill(int t, int n, Mat& out) const {
    if (out.n() != n) out = Mat(n);
    if (const auto* h = std::get_if<HomogeneousMean>(&v_)) {
        out.fill(h->lambda);
        return;
    }
    if (const auto* d = std::get_if<DistanceLinearMean>(&v_)) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out(i, j) = d->a * std::abs(i - j) + d->b;
        return;
    }
    const auto& per_t = std::get<PerEdgeSeriesMean>(v_).per_t;
    if (t < 1 || t > static_cast<int>(per_t.size()))
        throw DimensionMismatch("mean series has no entry for t=" + std::to_string(t));
    const Mat& src = per_t[t - 1];
    if (src.n() != n)
        throw DimensionMismatch("mean matrix at t=" + std::to_string(t) + " is " +
                                std::to_string(src.n()) + "x" + std::to_string(src.n()) +
                                ", expected " + std::to_string(n));
    out = src;
}

double MeanModel::min_offdiag_rate(int n) const {
    if (const auto* h = std::get_if<HomogeneousMean>(&v_)) return h->lambda;
    if (const auto* d = std::get_if<DistanceLinearMean>(&v_)) {
        // extremes occur at |i-j| = 1 or n-1
        return std::min(d->a * 1 + d->b, d->a * (n - 1) + d->b);
    }
    double m = std::numeric_limits<double>::infinity();
    for (const auto& mat : std::get<PerEdgeSeriesMean>(v_).per_t)
        for (int i = 0; i < mat.n(); ++i)
            for (int j = 0; j < mat.n(); ++j)
                if (i != j) m = std::min(m, mat(i, j));
    return m;
}

void validate_series(const NetworkSeries& series, const MeanModel& means) {
    series.validate();
    for (const auto& snap : series.snapshots) {
        for (int i = 0; i < snap.n; ++i) {
            for (int j = 0; j < snap.n; ++j) {
                if (i == j) continue;
                double lam = means.at(i, j, snap.t);
                if (!(lam > 0.0))
                    throw NonPositiveMean("mean lambda(" + std::to_string(i + 1) + "," +
                                          std::to_string(j + 1) + ",t=" + std::to_string(snap.t) +
                                          ") = " + std::to_string(lam) + " is not positive");
            }
        }
    }
}

bool Team::contains(int node) const {
    return std::binary_search(members.begin(), members.end(), node);
}

void Team::add(int node) {
    auto it = std::lower_bound(members.begin(), members.end(), node);
    if (it == members.end() || *it != node) members.insert(it, node);
}

std::string to_string(StatKind k) {
    switch (k) {
        case StatKind::Gewma: return "gewma";
        case StatKind::GewmaStar: return "gewma_star";
        case StatKind::Dewma: return "dewma";
        case StatKind::Tewma: return "tewma";
        case StatKind::TewmaStar: return "tewma_star";
        case StatKind::LGewma: return "l_gewma";
        case StatKind::Agewma: return "agewma";
        case StatKind::Adewma: return "adewma";
    }
    return "?";
}

StatKind stat_kind_from_string(const std::string& s) {
    if (s == "gewma") return StatKind::Gewma;
    if (s == "gewma_star") return StatKind::GewmaStar;
    if (s == "dewma") return StatKind::Dewma;
    if (s == "tewma") return StatKind::Tewma;
    if (s == "tewma_star") return StatKind::TewmaStar;
    if (s == "l_gewma") return StatKind::LGewma;
    if (s == "agewma") return StatKind::Agewma;
    if (s == "adewma") return StatKind::Adewma;
    throw BadPlan("unknown statistic '" + s + "'");
}

int SurrogateModel::basis_size(Kind k) {
    switch (k) {
        case Kind::HdLog: return 12;
        case Kind::HgRecip: return 20;
        case Kind::ScanShape: return 2;
    }
    return 0;
}

std::string to_string(SurrogateModel::Kind k) {
    switch (k) {
        case SurrogateModel::Kind::HdLog: return "hd_log";
        case SurrogateModel::Kind::HgRecip: return "hg_recip";
        case SurrogateModel::Kind::ScanShape: return "scan_shape";
    }
    return "?";
}

SurrogateModel::Kind surrogate_kind_from_string(const std::string& s) {
    if (s == "hd_log") return SurrogateModel::Kind::HdLog;
    if (s == "hg_recip") return SurrogateModel::Kind::HgRecip;
    if (s == "scan_shape") return SurrogateModel::Kind::ScanShape;
    throw BadPlan("unknown surrogate kind '" + s + "'");
}

bool SurveillancePlan::is_scan() const {
    if (statistic == StatKind::Agewma || statistic == StatKind::Adewma) return true;
    // GEWMA/DEWMA run as candidate-team scans when no team is given.
    if ((statistic == StatKind::Gewma || statistic == StatKind::GewmaStar) && !team) return true;
    if (statistic == StatKind::Dewma && !team && !leader) return true;
    return false;
}

double SurveillancePlan::k_effective() const {
    return k_noise_normalized ? k * noise_scale(alpha) : k;
}

void SurveillancePlan::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw BadAlpha("alpha must lie in [0,1]");
    if (k < 0.0) throw BadK("k must be >= 0");
    if (const auto* h = std::get_if<double>(&threshold)) {
        if (*h < 0.0) throw BadPlan("threshold must be >= 0");
    }
    bool known_team = statistic == StatKind::Gewma || statistic == StatKind::GewmaStar ||
                      statistic == StatKind::LGewma;
    if (known_team && !team && !is_scan())
        throw BadPlan("statistic " + to_string(statistic) + " requires a team");
    if ((statistic == StatKind::Agewma || statistic == StatKind::Adewma) && team)
        throw BadPlan("adaptive scans do not take a fixed team");
    if (statistic == StatKind::Dewma && team && !leader)
        throw BadPlan("known-team DEWMA requires a leader");
    if (!(target_ats > 0.0)) throw BadPlan("target_ats must be positive");
}

std::string team_label(const Team& team) {
    std::ostringstream out;
    if (team.leader) out << "L" << (*team.leader + 1);
    for (size_t i = 0; i < team.members.size(); ++i) {
        if (i > 0 || team.leader) out << "|";
        out << team.members[i] + 1;
    }
    return out.str();
}

}  // namespace netwatch
