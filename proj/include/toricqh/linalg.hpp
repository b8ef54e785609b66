#ifndef TORICQH_LINALG_HPP
#define TORICQH_LINALG_HPP

#include <cstdlib>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace toricqh::linalg {

using IntVec = std::vector<long>;
using IntMatrix = std::vector<IntVec>;
using RatVec = std::vector<Rat>;
using RatMatrix = std::vector<RatVec>;

inline RatMatrix to_rat(const IntMatrix& m) {
    RatMatrix out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (long v : m[i]) out[i].emplace_back(v);
    return out;
}

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& a) {
    std::vector<std::size_t> pivots;
    if (a.empty()) return pivots;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        Rat inv = 1 / a[r][c];
        for (auto& v : a[r]) v *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(RatMatrix a) { return rref(a).size(); }

/// Solves the square system a x = b; nullopt when a is singular.
inline std::optional<RatVec> solve(const RatMatrix& a, const RatVec& b) {
    const std::size_t n = a.size();
    RatMatrix aug(n);
    for (std::size_t i = 0; i < n; ++i) {
        aug[i] = a[i];
        aug[i].push_back(b[i]);
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv.back() >= n) return std::nullopt;
    RatVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n];
    return x;
}

/// Basis of {x : a x = 0} over Q.
inline RatMatrix nullspace(RatMatrix a, std::size_t cols) {
    if (a.empty()) {
        RatMatrix id(cols, RatVec(cols, Rat(0)));
        for (std::size_t i = 0; i < cols; ++i) id[i][i] = 1;
        return id;
    }
    auto piv = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : piv) is_pivot[c] = true;
    RatMatrix basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RatVec v(cols, Rat(0));
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Rat det(RatMatrix a) {
    const std::size_t n = a.size();
    Rat d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            d = -d;
        }
        d *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            Rat f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return d;
}

inline long content(const IntVec& v) {
    long g = 0;
    for (long x : v) g = std::gcd(g, std::labs(x));
    return g;
}

/// Integer basis of the kernel lattice {a in Z^cols : m a = 0}, by unimodular
/// column reduction of m (Hermite normal form style) tracking the transform.
inline IntMatrix integer_kernel(const IntMatrix& m, std::size_t cols) {
    // Work on the transpose: rows are the columns of m, augmented by the identity.
    const std::size_t rows = m.size();
    std::vector<IntVec> work(cols), trans(cols, IntVec(cols, 0));
    for (std::size_t j = 0; j < cols; ++j) {
        work[j].resize(rows);
        for (std::size_t i = 0; i < rows; ++i) work[j][i] = m[i][j];
        trans[j][j] = 1;
    }
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < rows && pivot_row < cols; ++c) {
        // Euclid on column c among rows pivot_row.. until one nonzero remains.
        while (true) {
            std::size_t best = cols;
            for (std::size_t r = pivot_row; r < cols; ++r)
                if (work[r][c] != 0 && (best == cols || std::labs(work[r][c]) < std::labs(work[best][c]))) best = r;
            if (best == cols) break;
            std::swap(work[best], work[pivot_row]);
            std::swap(trans[best], trans[pivot_row]);
            bool done = true;
            for (std::size_t r = pivot_row + 1; r < cols; ++r) {
                if (work[r][c] == 0) continue;
                long f = work[r][c] / work[pivot_row][c];
                for (std::size_t k = 0; k < rows; ++k) work[r][k] -= f * work[pivot_row][k];
                for (std::size_t k = 0; k < cols; ++k) trans[r][k] -= f * trans[pivot_row][k];
                if (work[r][c] != 0) done = false;
            }
            if (done) {
                ++pivot_row;
                break;
            }
        }
    }
    IntMatrix kernel;
    for (std::size_t r = pivot_row; r < cols; ++r) kernel.push_back(trans[r]);
    return kernel;
}

} // namespace toricqh::linalg

#endif
