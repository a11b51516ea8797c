#pragma once

#include <unordered_map>
#include <vector>

#include "netwatch/core.hpp"

namespace netwatch {

/// One calibrated grid point for a surrogate fit.
struct FitSample {
    int n = 0;
    double lambda = 0.0;
    double h = 0.0;
};

/// Basis expansion for a surrogate kind, evaluated at (lambda, n).
std::vector<double> surrogate_basis(SurrogateModel::Kind kind, double lambda, int n);

/// log(h_D) on the 12-term basis
/// {1, n, n^2, n^3, l, l^2, I(l<0.95), I(l<0.95)l, log l, n log l, n l, n l^2}.
SurrogateModel fit_hd_surrogate(const std::vector<FitSample>& samples);

/// 1/h_G on the 20-term basis
/// {1, log l, n, n^2, n^3, l, l^2, l^3, log n, n log l, n^2 log l, n^3 log l,
///  n l, n^2 l, n^3 l, l^4, l log n, l^5, l^2 log n, l^3 log n}.
SurrogateModel fit_hg_surrogate(const std::vector<FitSample>& samples);

/// Identity-link linear shape h = c0 + c1*n; used for scan-calibrated
/// per-team-size threshold profiles.
SurrogateModel fit_scan_shape(const std::vector<FitSample>& samples);

/// Evaluates the surrogate at (lambda, n). HdLog -> exp(x.b); HgRecip -> 1/(x.b),
/// throwing NonPositivePrediction when the denominator is <= 0; ScanShape -> x.b.
double predict_threshold(const SurrogateModel& model, double lambda, int n);

/// Memoizing wrapper around predict_threshold for scan inner loops where the
/// same (lambda, n) pairs recur every step.
class ThresholdCache {
public:
    explicit ThresholdCache(const SurrogateModel& model) : model_(&model) {}

    double at(double lambda, int n) {
        uint64_t bits;
        static_assert(sizeof(bits) == sizeof(lambda));
        __builtin_memcpy(&bits, &lambda, sizeof(bits));
        uint64_t key = bits * 31 + static_cast<uint64_t>(n);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        double h = predict_threshold(*model_, lambda, n);
        cache_.emplace(key, h);
        return h;
    }

    const SurrogateModel& model() const { return *model_; }

private:
    const SurrogateModel* model_;
    std::unordered_map<uint64_t, double> cache_;
};

}  // namespace netwatch
