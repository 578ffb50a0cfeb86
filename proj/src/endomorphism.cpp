#include "nbcqi/endomorphism.hpp"

#include "nbcqi/errors.hpp"

namespace nbcqi {

HomomorphismCheck is_homomorphism(const Endomorphism& e) {
    const std::size_t n = e.dim();
    RatField f;
    const auto& sc = e.algebra.sc();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            QVec lhs = mat_vec(f, e.matrix, sc.basis_bracket(i, j));
            QVec col_i(n), col_j(n);
            for (std::size_t r = 0; r < n; ++r) {
                col_i[r] = e.matrix[r][i];
                col_j[r] = e.matrix[r][j];
            }
            QVec rhs = bracket(col_i, col_j, sc);
            if (lhs != rhs) return {false, std::make_pair(i + 1, j + 1)};
        }
    return {true, std::nullopt};
}

bool weakly_preserves_grading(const Endomorphism& e) {
    RatField f;
    const std::size_t n = e.dim();
    for (unsigned j = 2; j <= e.algebra.nilpotency_class(); ++j) {
        QMat tail = e.algebra.tail_basis(j);
        for (std::size_t k = 0; k < n; ++k) {
            if (e.algebra.weights()[k] < j) continue;
            QVec col(n);
            for (std::size_t r = 0; r < n; ++r) col[r] = e.matrix[r][k];
            if (!in_span(f, tail, col)) return false;
        }
    }
    return true;
}

bool is_injective(const Endomorphism& e) { return det(e.matrix) != 0; }

bool is_unipotent_free(const QMat& mat) {
    IntPoly p = char_poly(mat).squarefree_part();
    if (p.sign_at(Rat(1)) == 0 || p.sign_at(Rat(-1)) == 0) return false;
    // reciprocal-pair part: roots lambda of p with 1/lambda also a root
    IntPoly g = IntPoly::gcd(p, p.reverse().primitive());
    if (g.degree() <= 0) return true;
    // g is self-reciprocal with g(+-1) != 0, hence of even degree 2m and
    // expressible as x^m h(x + 1/x) with deg h = m
    const int m2 = g.degree();
    if (m2 % 2 != 0) throw Error("unipotent-free check: unexpected odd reciprocal part");
    const int m = m2 / 2;
    // build h by peeling off leading terms: maintain g(x) = x^? * (h(y) terms)
    // using the basis p_k(y) = x^k + x^{-k} with p_k = y p_{k-1} - p_{k-2}
    std::vector<IntPoly> pk(m + 1);  // p_k(y)
    pk[0] = IntPoly::constant(Int(2));
    if (m >= 1) pk[1] = IntPoly::x();
    for (int k = 2; k <= m; ++k) pk[k] = pk[k - 1] * IntPoly::x() - pk[k - 2];
    // g(x)/x^m = sum_{k=0..m} a_k (x^k + x^{-k}) with a_0 halved; collect
    IntPoly h;
    std::vector<Int> c = g.coeffs();  // degree 2m
    for (int k = m; k >= 1; --k) {
        Int a = c[m + k];
        if (a != 0) {
            h = h + pk[k] * a;
            // subtract a*(x^{m+k} + x^{m-k}) from c
            c[m + k] -= a;
            c[m - k] -= a;
        }
    }
    h = h + IntPoly::constant(c[m]);  // remaining center term: a_0 * 1 (p_0/2 * 2)
    // g is palindromic here (an anti-palindromic part would vanish at 1,
    // which the p(+-1) test already excluded), so peeling must consume
    // every coefficient except the center
    for (int idx = 0; idx <= m2; ++idx)
        if (idx != m && c[idx] != 0)
            throw Error("unipotent-free check: reciprocal part is not palindromic");
    // real roots of h in (-2, 2) correspond to unit-circle conjugate pairs
    IntPoly hs = h.squarefree_part();
    if (hs.degree() < 1) return true;
    Rat lo(-2), hi(2);
    // endpoints +-2 correspond to roots +-1, already excluded
    if (hs.sign_at(lo) == 0 || hs.sign_at(hi) == 0)
        throw Error("unipotent-free check: unexpected root at y = +-2");
    return hs.count_roots(lo, hi) == 0;
}

Endomorphism carnot_complete(const GradedAlgebra& g, const QMat& base_action) {
    RatField f;
    auto cert = is_carnot(g);
    if (!cert.is_carnot) throw Error("carnot_complete: algebra is not Carnot");
    const std::size_t n = g.dim();
    auto v1 = g.grade_indices(1);
    if (base_action.size() != v1.size())
        throw Error("carnot_complete: base action has wrong dimension");

    QMat m(n, QVec(n, Rat(0)));
    for (std::size_t a = 0; a < v1.size(); ++a)
        for (std::size_t b = 0; b < v1.size(); ++b) m[v1[a]][v1[b]] = base_action[a][b];

    // extend grade by grade: solve e_k = sum c_ab [e_a, e_b] with a in V1,
    // b in V_{j-1}, then apply phi to both sides
    for (unsigned j = 2; j <= g.nilpotency_class(); ++j) {
        auto vj = g.grade_indices(j);
        auto vprev = g.grade_indices(j - 1);
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        QMat cols;  // bracket vectors as columns of the solve
        for (auto a : v1)
            for (auto b : vprev) {
                QVec br = g.sc().basis_bracket(a, b);
                bool nonzero = false;
                for (const auto& v : br)
                    if (v != 0) nonzero = true;
                if (nonzero) {
                    pairs.emplace_back(a, b);
                    cols.push_back(std::move(br));
                }
            }
        for (auto k : vj) {
            QVec ek(n, Rat(0));
            ek[k] = 1;
            // transpose cols into a system
            QMat sys(n, QVec(pairs.size(), Rat(0)));
            for (std::size_t c = 0; c < pairs.size(); ++c)
                for (std::size_t r = 0; r < n; ++r) sys[r][c] = cols[c][r];
            auto sol = solve(f, sys, ek);
            if (!sol) throw Error("carnot_complete: grade not generated (not Carnot?)");
            QVec img(n, Rat(0));
            for (std::size_t c = 0; c < pairs.size(); ++c) {
                if ((*sol)[c] == 0) continue;
                auto [a, b] = pairs[c];
                QVec pa(n), pb(n);
                for (std::size_t r = 0; r < n; ++r) {
                    pa[r] = m[r][a];
                    pb[r] = m[r][b];
                }
                QVec br = bracket(pa, pb, g.sc());
                for (std::size_t r = 0; r < n; ++r) img[r] += (*sol)[c] * br[r];
            }
            for (std::size_t r = 0; r < n; ++r) m[r][k] = img[r];
        }
    }

    Endomorphism e{g, std::move(m)};
    auto check = is_homomorphism(e);
    if (!check.ok) {
        auto [i, j] = *check.violation;
        throw InconsistentExtensionError(
            "carnot_complete: bracket expressions disagree at pair (" + std::to_string(i) + ", " +
            std::to_string(j) + ")");
    }
    return e;
}

Int tree_valence(const Endomorphism& e) {
    Rat d = det(e.matrix);
    if (d == 0) throw NonIntegerIndexError("tree_valence: determinant is zero");
    Rat ad = d < 0 ? -d : d;
    if (!is_integer(ad))
        throw NonIntegerIndexError("tree_valence: |det| = " + format_rational(ad) +
                                   " is not an integer");
    return numerator(ad);
}

}  // namespace nbcqi
