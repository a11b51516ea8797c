#include "netwatch/smoothing.hpp"

#include <cassert>
#include <string>

namespace netwatch {

void SmootherState::check_floor() const {
    const double* ys = ystar.data();
    const double* lt = ltilde.data();
    for (size_t idx = 0; idx < ystar.size(); ++idx) {
        assert(ys[idx] >= lt[idx] - 1e-12);
        (void)ys;
        (void)lt;
    }
}

SmootherState init_state(const Mat& lambda_1, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw BadAlpha("alpha = " + std::to_string(alpha) + " outside [0,1]");
    const int n = lambda_1.n();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double lam = lambda_1(i, j);
            if (i != j && !(lam > 0.0))
                throw NonPositiveMean("lambda_1(" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + ") = " + std::to_string(lam));
            if (lam < 0.0)
                throw NonPositiveMean("negative diagonal rate at node " + std::to_string(i + 1));
        }
    }
    SmootherState s;
    s.n = n;
    s.alpha = alpha;
    s.t = 0;
    s.ytilde = lambda_1;
    s.ltilde = lambda_1;
    s.ystar = lambda_1;
    return s;
}

void step_inplace(SmootherState& state, const NetworkSnapshot& y_t, const Mat& lambda_t) {
    if (y_t.t != state.t + 1)
        throw TimeSkew("smoother at t=" + std::to_string(state.t) + " fed snapshot t=" +
                       std::to_string(y_t.t));
    if (y_t.n != state.n || lambda_t.n() != state.n)
        throw DimensionMismatch("snapshot/rate dimensions do not match smoother n=" +
                                std::to_string(state.n));
    const double a = state.alpha;
    const double b = 1.0 - a;
    const long* y = y_t.counts.data();
    const double* lam = lambda_t.data();
    double* yt = state.ytilde.data();
    double* lt = state.ltilde.data();
    double* ys = state.ystar.data();
    const size_t m = state.ytilde.size();
    for (size_t i = 0; i < m; ++i) {
        yt[i] = a * static_cast<double>(y[i]) + b * yt[i];
        lt[i] = a * lam[i] + b * lt[i];
        double cand = a * yt[i] + b * ys[i];
        ys[i] = cand > lt[i] ? cand : lt[i];
    }
    ++state.t;
}

void step_prefix_inplace(SmootherState& state, const NetworkSnapshot& y_t, const Mat& lambda_t,
                         int active_n) {
    if (y_t.t != state.t + 1)
        throw TimeSkew("smoother at t=" + std::to_string(state.t) + " fed snapshot t=" +
                       std::to_string(y_t.t));
    if (y_t.n != active_n || active_n > state.n || lambda_t.n() != state.n)
        throw DimensionMismatch("prefix step: active_n=" + std::to_string(active_n) +
                                " incompatible with state n=" + std::to_string(state.n));
    const double a = state.alpha;
    const double b = 1.0 - a;
    for (int i = 0; i < active_n; ++i) {
        for (int j = 0; j < active_n; ++j) {
            const double y = static_cast<double>(y_t.counts(i, j));
            double& yt = state.ytilde(i, j);
            double& lt = state.ltilde(i, j);
            double& ys = state.ystar(i, j);
            yt = a * y + b * yt;
            lt = a * lambda_t(i, j) + b * lt;
            const double cand = a * yt + b * ys;
            ys = cand > lt ? cand : lt;
        }
    }
    ++state.t;
}

SmootherState step(const SmootherState& state, const NetworkSnapshot& y_t, const Mat& lambda_t) {
    SmootherState next = state;
    step_inplace(next, y_t, lambda_t);
    return next;
}

}  // namespace netwatch
