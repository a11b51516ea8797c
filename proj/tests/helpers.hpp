#pragma once

#include <vector>

#include "netwatch/rng.hpp"
#include "netwatch/simharness.hpp"
#include "netwatch/smoothing.hpp"

namespace netwatch::testing {

inline NetworkSnapshot snapshot_from(int t, int n, const std::vector<long>& counts) {
    NetworkSnapshot snap;
    snap.t = t;
    snap.n = n;
    snap.counts = CountMat(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) snap.counts(i, j) = counts[i * n + j];
    return snap;
}

inline Mat const_mat(int n, double v, double diag) {
    Mat m(n, v);
    for (int i = 0; i < n; ++i) m(i, i) = diag;
    return m;
}

/// Runs `steps` random Poisson snapshots through the smoother; returns the state.
inline SmootherState random_smoother(int n, double lambda, double alpha, int steps,
                                     uint64_t seed) {
    Mat lam = const_mat(n, lambda, 0.0);
    SmootherState s = init_state(lam, alpha);
    Rng rng(seed);
    NetworkSnapshot snap;
    snap.n = n;
    snap.counts = CountMat(n);
    for (int t = 1; t <= steps; ++t) {
        snap.t = t;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                snap.counts(i, j) = i == j ? 0 : rng.poisson(lambda);
        step_inplace(s, snap, lam);
    }
    return s;
}

}  // namespace netwatch::testing
