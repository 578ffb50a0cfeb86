#pragma once

#include <cassert>
#include <optional>
#include <vector>

#include "nbcqi/errors.hpp"
#include "nbcqi/intpoly.hpp"
#include "nbcqi/numberfield.hpp"
#include "nbcqi/rational.hpp"

namespace nbcqi {

template <class E>
using Mat = std::vector<std::vector<E>>;
template <class E>
using Vec = std::vector<E>;

using QMat = Mat<Rat>;
using QVec = Vec<Rat>;

template <class F>
Mat<typename F::Elem> mat_identity(const F& f, std::size_t n) {
    Mat<typename F::Elem> m(n, Vec<typename F::Elem>(n, f.zero()));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = f.one();
    return m;
}

template <class F>
Mat<typename F::Elem> mat_mul(const F& f, const Mat<typename F::Elem>& a,
                              const Mat<typename F::Elem>& b) {
    const std::size_t n = a.size(), m = b[0].size(), k = b.size();
    Mat<typename F::Elem> r(n, Vec<typename F::Elem>(m, f.zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            for (std::size_t j = 0; j < m; ++j)
                r[i][j] = f.add(r[i][j], f.mul(a[i][l], b[l][j]));
    return r;
}

template <class F>
Vec<typename F::Elem> mat_vec(const F& f, const Mat<typename F::Elem>& a,
                              const Vec<typename F::Elem>& v) {
    Vec<typename F::Elem> r(a.size(), f.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r[i] = f.add(r[i], f.mul(a[i][j], v[j]));
    return r;
}

template <class F>
Mat<typename F::Elem> mat_sub(const F& f, const Mat<typename F::Elem>& a,
                              const Mat<typename F::Elem>& b) {
    Mat<typename F::Elem> r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) r[i][j] = f.sub(a[i][j], b[i][j]);
    return r;
}

/// Row-reduce in place; returns pivot column indices. Rows below/above
/// pivots are fully eliminated (reduced row echelon form).
template <class F>
std::vector<std::size_t> rref(const F& f, Mat<typename F::Elem>& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (!f.is_zero(m[i][c])) {
                sel = i;
                break;
            }
        if (sel == rows) continue;
        std::swap(m[r], m[sel]);
        auto inv = f.inv(m[r][c]);
        for (std::size_t j = c; j < cols; ++j) m[r][j] = f.mul(m[r][j], inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || f.is_zero(m[i][c])) continue;
            auto factor = m[i][c];
            for (std::size_t j = c; j < cols; ++j)
                m[i][j] = f.sub(m[i][j], f.mul(factor, m[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class F>
std::size_t mat_rank(const F& f, Mat<typename F::Elem> m) {
    return rref(f, m).size();
}

/// Basis (as rows) of the null space of m.
template <class F>
Mat<typename F::Elem> nullspace(const F& f, Mat<typename F::Elem> m) {
    if (m.empty()) return {};
    const std::size_t cols = m[0].size();
    auto pivots = rref(f, m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    Mat<typename F::Elem> basis;
    for (std::size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        Vec<typename F::Elem> v(cols, f.zero());
        v[free_c] = f.one();
        for (std::size_t pi = 0; pi < pivots.size(); ++pi)
            v[pivots[pi]] = f.neg(m[pi][free_c]);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solve A x = b; nullopt when inconsistent. A need not be square.
template <class F>
std::optional<Vec<typename F::Elem>> solve(const F& f, Mat<typename F::Elem> a,
                                           const Vec<typename F::Elem>& b) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
    auto pivots = rref(f, a);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;  // pivot in rhs
    Vec<typename F::Elem> x(cols, f.zero());
    for (std::size_t pi = 0; pi < pivots.size(); ++pi) x[pivots[pi]] = a[pi][cols];
    return x;
}

/// Membership of v in the row span of basis (exact).
template <class F>
bool in_span(const F& f, const Mat<typename F::Elem>& basis, const Vec<typename F::Elem>& v) {
    if (basis.empty()) {
        for (const auto& e : v)
            if (!f.is_zero(e)) return false;
        return true;
    }
    // transpose: columns are basis vectors, solve for coefficients
    const std::size_t n = v.size();
    Mat<typename F::Elem> a(n, Vec<typename F::Elem>(basis.size(), f.zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) a[i][j] = basis[j][i];
    return solve(f, std::move(a), v).has_value();
}

/// Canonical rref basis of a row span (deterministic representative).
template <class F>
Mat<typename F::Elem> span_basis(const F& f, Mat<typename F::Elem> rows) {
    if (rows.empty()) return {};
    auto pivots = rref(f, rows);
    rows.resize(pivots.size());
    return rows;
}

template <class F>
bool same_span(const F& f, const Mat<typename F::Elem>& a, const Mat<typename F::Elem>& b) {
    return span_basis(f, a) == span_basis(f, b);
}

// ---- rational-only helpers ----

Rat det(QMat m);
QMat mat_inverse(const QMat& m);  // throws on singular
QMat mat_pow(const QMat& m, unsigned k);

/// Exact monic characteristic polynomial det(xI - M), rational coefficients
/// low-degree first (Faddeev-LeVerrier).
std::vector<Rat> char_poly_rat(const QMat& m);

/// Characteristic polynomial as a primitive integer polynomial with the
/// same roots (denominators cleared).
IntPoly char_poly(const QMat& m);

QMat parse_matrix(const std::vector<std::vector<std::string>>& rows);

}  // namespace nbcqi
