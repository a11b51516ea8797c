#pragma once

#include <cstddef>
#include <vector>

namespace netwatch {

/// Dense square matrix, row-major. Small value type used for count and
/// rate matrices throughout; no view machinery, just contiguous storage.
template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(int n, T fill = T{}) : n_(n), v_(static_cast<size_t>(n) * n, fill) {}

    int n() const { return n_; }
    bool empty() const { return n_ == 0; }

    T& operator()(int i, int j) { return v_[static_cast<size_t>(i) * n_ + j]; }
    const T& operator()(int i, int j) const { return v_[static_cast<size_t>(i) * n_ + j]; }

    T* data() { return v_.data(); }
    const T* data() const { return v_.data(); }
    size_t size() const { return v_.size(); }

    void fill(T x) { std::fill(v_.begin(), v_.end(), x); }

    bool operator==(const Grid&) const = default;

private:
    int n_ = 0;
    std::vector<T> v_;
};

using Mat = Grid<double>;
using CountMat = Grid<long>;

}  // namespace netwatch
