#pragma once

// Integer matrices and Smith normal form with unimodular transforms,
// plus the exact linear solver built on it.

#include <cstdlib>
#include <optional>
#include <vector>

#include "mw_expr.hpp" // Int

namespace mwk {

struct IntMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> a;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
};

inline IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix r(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t l = 0; l < a.cols; ++l) {
            if (a.at(i, l) == 0) continue;
            for (std::size_t j = 0; j < b.cols; ++j)
                r.at(i, j) += a.at(i, l) * b.at(l, j);
        }
    return r;
}

inline std::vector<Int> mat_vec(const IntMatrix& a, const std::vector<Int>& v) {
    std::vector<Int> r(a.rows, 0);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            if (a.at(i, j) != 0) r[i] += a.at(i, j) * v[j];
    return r;
}

// fraction-free determinant (Bareiss); used by the tests to certify
// unimodularity of the transforms
inline Int mat_det(const IntMatrix& m) {
    if (m.rows != m.cols) throw Error("det: square matrices only");
    std::size_t n = m.rows;
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a.at(k, j), a.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) =
                    (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

struct SnfResult {
    IntMatrix s;            // rows x rows, unimodular
    IntMatrix t;            // cols x cols, unimodular
    std::vector<Int> diag;  // d_1 | d_2 | ..., nonnegative, length min(r,c)
};

// S * m * T = diag, with a full divisibility chain.
inline SnfResult smith_normal_form(const IntMatrix& m) {
    std::size_t r = m.rows, c = m.cols;
    IntMatrix a = m;
    IntMatrix s = IntMatrix::identity(r);
    IntMatrix t = IntMatrix::identity(c);

    auto row_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t l = 0; l < c; ++l) std::swap(a.at(i, l), a.at(j, l));
        for (std::size_t l = 0; l < r; ++l) std::swap(s.at(i, l), s.at(j, l));
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t l = 0; l < r; ++l) std::swap(a.at(l, i), a.at(l, j));
        for (std::size_t l = 0; l < c; ++l) std::swap(t.at(l, i), t.at(l, j));
    };
    auto row_add = [&](std::size_t dst, std::size_t src, const Int& k) {
        if (k == 0) return;
        for (std::size_t l = 0; l < c; ++l) a.at(dst, l) += k * a.at(src, l);
        for (std::size_t l = 0; l < r; ++l) s.at(dst, l) += k * s.at(src, l);
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const Int& k) {
        if (k == 0) return;
        for (std::size_t l = 0; l < r; ++l) a.at(l, dst) += k * a.at(l, src);
        for (std::size_t l = 0; l < c; ++l) t.at(l, dst) += k * t.at(l, src);
    };
    auto row_negate = [&](std::size_t i) {
        for (std::size_t l = 0; l < c; ++l) a.at(i, l) = -a.at(i, l);
        for (std::size_t l = 0; l < r; ++l) s.at(i, l) = -s.at(i, l);
    };

    std::size_t n = std::min(r, c);
    for (std::size_t p = 0; p < n; ++p) {
        // pivot: entry of least absolute value in the remaining block
        std::size_t pi = p, pj = p;
        bool found = false;
        Int best = 0;
        for (std::size_t i = p; i < r; ++i)
            for (std::size_t j = p; j < c; ++j) {
                if (a.at(i, j) == 0) continue;
                Int v = abs(a.at(i, j));
                if (!found || v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;
        row_swap(p, pi);
        col_swap(p, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = p + 1; i < r; ++i) {
                if (a.at(i, p) == 0) continue;
                Int q = a.at(i, p) / a.at(p, p);
                row_add(i, p, -q);
                if (a.at(i, p) != 0) {
                    // remainder is smaller than the pivot: promote it
                    row_swap(p, i);
                    clean = false;
                }
            }
            if (!clean) continue;
            for (std::size_t j = p + 1; j < c; ++j) {
                if (a.at(p, j) == 0) continue;
                Int q = a.at(p, j) / a.at(p, p);
                col_add(j, p, -q);
                if (a.at(p, j) != 0) {
                    col_swap(p, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // divisibility: pivot must divide the rest of the block
            for (std::size_t i = p + 1; i < r && clean; ++i)
                for (std::size_t j = p + 1; j < c && clean; ++j)
                    if (a.at(i, j) % a.at(p, p) != 0) {
                        row_add(p, i, 1);
                        clean = false;
                    }
        }
        if (a.at(p, p) < 0) row_negate(p);
    }
    SnfResult res;
    res.s = std::move(s);
    res.t = std::move(t);
    res.diag.resize(n);
    for (std::size_t p = 0; p < n; ++p) res.diag[p] = a.at(p, p);
    return res;
}

// Solves m x = b over the integers; returns one solution (free coordinates
// zero) or nullopt.
inline std::optional<std::vector<Int>> solve_integer(const IntMatrix& m,
                                                     const std::vector<Int>& b) {
    if (b.size() != m.rows) throw Error("solve_integer: dimension mismatch");
    SnfResult snf = smith_normal_form(m);
    std::vector<Int> sb = mat_vec(snf.s, b);
    std::size_t n = snf.diag.size();
    std::vector<Int> y(m.cols, 0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        Int d = i < n ? snf.diag[i] : Int(0);
        if (d == 0) {
            if (sb[i] != 0) return std::nullopt;
        } else {
            if (sb[i] % d != 0) return std::nullopt;
            if (i < m.cols) y[i] = sb[i] / d;
        }
    }
    return mat_vec(snf.t, y);
}

} // namespace mwk
