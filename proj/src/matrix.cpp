#include "nbcqi/matrix.hpp"

namespace nbcqi {

Rat det(QMat m) {
    const std::size_t n = m.size();
    if (n == 0) return Rat(1);
    Rat result(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = n;
        for (std::size_t i = c; i < n; ++i)
            if (m[i][c] != 0) {
                sel = i;
                break;
            }
        if (sel == n) return Rat(0);
        if (sel != c) {
            std::swap(m[sel], m[c]);
            result = -result;
        }
        result *= m[c][c];
        Rat inv = Rat(1) / m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c] * inv;
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return result;
}

QMat mat_inverse(const QMat& m) {
    const std::size_t n = m.size();
    RatField f;
    QMat aug = m;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i].push_back(i == j ? Rat(1) : Rat(0));
    }
    auto pivots = rref(f, aug);
    if (pivots.size() != n || pivots.back() != n - 1) throw Error("mat_inverse: singular matrix");
    QMat out(n, QVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
    return out;
}

QMat mat_pow(const QMat& m, unsigned k) {
    RatField f;
    QMat result = mat_identity(f, m.size());
    QMat base = m;
    while (k) {
        if (k & 1u) result = mat_mul(f, result, base);
        base = mat_mul(f, base, base);
        k >>= 1u;
    }
    return result;
}

std::vector<Rat> char_poly_rat(const QMat& m) {
    // Faddeev-LeVerrier: exact over Q.
    const std::size_t n = m.size();
    RatField f;
    QMat a = m;
    std::vector<Rat> c(n + 1, Rat(0));
    c[n] = Rat(1);
    QMat ak = m;
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            QMat shifted = ak;
            for (std::size_t i = 0; i < n; ++i) shifted[i][i] += c[n - k + 1];
            ak = mat_mul(f, a, shifted);
        }
        Rat tr(0);
        for (std::size_t i = 0; i < n; ++i) tr += ak[i][i];
        c[n - k] = -tr / Rat(Int(k));
    }
    return c;
}

IntPoly char_poly(const QMat& m) { return from_rat_coeffs(char_poly_rat(m)); }

QMat parse_matrix(const std::vector<std::vector<std::string>>& rows) {
    QMat out;
    for (const auto& r : rows) {
        QVec v;
        for (const auto& s : r) v.push_back(parse_rational(s));
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace nbcqi
