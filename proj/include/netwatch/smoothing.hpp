#pragma once

#include "netwatch/core.hpp"

namespace netwatch {

/// Streaming state of the three smoothed matrices:
///   ytilde_t = alpha*y_t      + (1-alpha)*ytilde_{t-1}
///   ltilde_t = alpha*lambda_t + (1-alpha)*ltilde_{t-1}
///   ystar_t  = max(alpha*ytilde_t + (1-alpha)*ystar_{t-1}, ltilde_t)
/// seeded at t=0 with ytilde = ltilde = ystar = lambda_1.
///
/// Invariant after every step: ystar >= ltilde entrywise.
struct SmootherState {
    int n = 0;
    double alpha = 0.075;
    int t = 0;
    Mat ytilde;
    Mat ltilde;
    Mat ystar;

    void check_floor() const;  // asserts the reflection-floor invariant
};

/// Seeds the state from lambda_1. Off-diagonal rates must be strictly
/// positive; diagonal rates may be zero (structurally silent self-pairs).
SmootherState init_state(const Mat& lambda_1, double alpha);

/// Pure step: consumes Y_t and lambda_t, returns the advanced state.
SmootherState step(const SmootherState& state, const NetworkSnapshot& y_t, const Mat& lambda_t);

/// In-place step for hot loops; identical arithmetic to step().
void step_inplace(SmootherState& state, const NetworkSnapshot& y_t, const Mat& lambda_t);

/// Variable-size step: only the active_n x active_n prefix advances, the
/// rest of the state is frozen. The snapshot is active_n-sized; lambda_t is
/// full-sized. Prefix-active convention for varying network size.
void step_prefix_inplace(SmootherState& state, const NetworkSnapshot& y_t, const Mat& lambda_t,
                         int active_n);

}  // namespace netwatch
