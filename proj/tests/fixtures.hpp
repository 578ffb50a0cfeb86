#pragma once

// Shared corpus fixtures for the test suites.

#include <string>
#include <vector>

#include "nbcqi/endomorphism.hpp"

namespace nbcqi::fixtures {

// Heisenberg algebra in (x, y, z) order: [e1, e2] = e3.
inline StructureConstants heisenberg_sc() {
    StructureConstants sc(3);
    sc.set_bracket(0, 1, {{2, Rat(1)}});
    return sc;
}

inline GradedAlgebra heisenberg() { return GradedAlgebra::build(heisenberg_sc()); }

// The three-Heisenberg product in (a1..a9) order:
// [a1,a2]=a3, [a4,a5]=a6, [a7,a8]=a9.
inline StructureConstants h3_sc() {
    StructureConstants sc(9);
    sc.set_bracket(0, 1, {{2, Rat(1)}});
    sc.set_bracket(3, 4, {{5, Rat(1)}});
    sc.set_bracket(6, 7, {{8, Rat(1)}});
    return sc;
}

inline GradedAlgebra h3() { return GradedAlgebra::build(h3_sc()); }

// Canonical order of h3 is (a1,a2,a4,a5,a7,a8 | a3,a6,a9); this maps the
// input label (0-based) to the canonical slot.
inline std::vector<std::size_t> h3_slot_of_label() { return {0, 1, 6, 2, 3, 7, 4, 5, 8}; }

// Diagonal endomorphism of h3 from the 9-tuple of dyadic growth exponents
// (n_i): k_i = 2^{n_i} on grade-1 generators, 2^{2 n_i} on a3, a6, a9.
inline Endomorphism h3_diag(const std::vector<unsigned>& n) {
    GradedAlgebra g = h3();
    QMat m(9, QVec(9, Rat(0)));
    auto slot = h3_slot_of_label();
    for (std::size_t i = 0; i < 9; ++i) {
        unsigned e = (i == 2 || i == 5 || i == 8) ? 2 * n[i] : n[i];
        m[slot[i]][slot[i]] = Rat(pow_int(Int(2), e));
    }
    return Endomorphism{g, std::move(m)};
}

// Four-step algebra in (x,y,z,a,b,c,p,q,r,s,t) order. Extending the table
// with [z,c] = t or [r,r] = t is impossible: [r,r] is forced to zero by
// antisymmetry, and [z,c] = t contradicts the Jacobi identity on (x,y,c)
// when [x,c] = [y,c] = 0 (see fourstep_overdetermined_sc and the matching
// validate test). Without them t is still reached through [p,s] and [q,s],
// so the algebra stays four-step Carnot with the same weights.
inline StructureConstants fourstep_sc() {
    StructureConstants sc(11);
    sc.set_bracket(0, 1, {{2, Rat(1)}});   // [x,y] = z
    sc.set_bracket(3, 4, {{5, Rat(1)}});   // [a,b] = c
    sc.set_bracket(6, 7, {{8, Rat(1)}});   // [p,q] = r
    sc.set_bracket(6, 8, {{9, Rat(1)}});   // [p,r] = s
    sc.set_bracket(7, 8, {{9, Rat(1)}});   // [q,r] = s
    sc.set_bracket(6, 9, {{10, Rat(1)}});  // [p,s] = t
    sc.set_bracket(7, 9, {{10, Rat(1)}});  // [q,s] = t
    return sc;
}

// The over-determined variant including [z,c] = t; kept to pin down the
// Jacobi failure it carries.
inline StructureConstants fourstep_overdetermined_sc() {
    StructureConstants sc = fourstep_sc();
    sc.set_bracket(2, 5, {{10, Rat(1)}});  // [z,c] = t
    return sc;
}

inline GradedAlgebra fourstep() { return GradedAlgebra::build(fourstep_sc()); }

// Canonical order of the four-step algebra: (x,y,a,b,p,q | z,c,r | s | t);
// input label (0-based) -> canonical slot.
inline std::vector<std::size_t> fourstep_slot_of_label() {
    return {0, 1, 6, 2, 3, 7, 4, 5, 8, 9, 10};
}

// Diagonal endomorphism of the four-step algebra from the 6-tuple
// (n_x, n_y, n_z, n_a, n_b, n_c) with n = 3 on p, q, r, s, t.
inline Endomorphism fourstep_diag(const std::vector<unsigned>& n6) {
    GradedAlgebra g = fourstep();
    auto slot = fourstep_slot_of_label();
    std::vector<unsigned> weight_of_label = {1, 1, 2, 1, 1, 2, 1, 1, 2, 3, 4};
    std::vector<unsigned> n_of_label = {n6[0], n6[1], n6[2], n6[3], n6[4], n6[5], 3, 3, 3, 3, 3};
    QMat m(11, QVec(11, Rat(0)));
    for (std::size_t i = 0; i < 11; ++i)
        m[slot[i]][slot[i]] = Rat(pow_int(Int(2), n_of_label[i] * weight_of_label[i]));
    return Endomorphism{g, std::move(m)};
}

// The worked Heisenberg endomorphism: phi(x) = x^3 y z, phi(y) = x^-1 y,
// phi(z) = z^4 (columns are images).
inline Endomorphism heisenberg_phi() {
    GradedAlgebra g = heisenberg();
    QMat m = parse_matrix({{"3", "-1", "0"}, {"1", "1", "0"}, {"1", "0", "4"}});
    return Endomorphism{g, std::move(m)};
}

// Abelian six-dimensional algebra carrying the formal weights (1,2,3,1,1,2);
// any matrix over it is a homomorphism, which is exactly what the 6x6
// permuted-form examples need.
inline GradedAlgebra formal6() {
    StructureConstants sc(6);
    return GradedAlgebra::build(sc, {1, 2, 3, 1, 1, 2});
}

// Jordan-type matrix with chains e1 -> e2 -> e3 (eigenvalue 2, weights
// 1,2,3) and e4 -> e5 -> e6 (eigenvalue 3, weights 1,1,2), columns as
// images; the nilpotent part pushes each chain vector to the next one.
inline Endomorphism formal6_chained() {
    GradedAlgebra g = formal6();
    QMat m = parse_matrix({
        {"2", "0", "0", "0", "0", "0"},
        {"1", "2", "0", "0", "0", "0"},
        {"0", "1", "2", "0", "0", "0"},
        {"0", "0", "0", "3", "0", "0"},
        {"0", "0", "0", "1", "3", "0"},
        {"0", "0", "0", "0", "1", "3"},
    });
    // canonical order of formal6 is (e1, e4, e5 | e2, e6 | e3): permute
    std::vector<std::size_t> slot = {0, 3, 5, 1, 2, 4};
    QMat cm(6, QVec(6, Rat(0)));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) cm[slot[i]][slot[j]] = m[i][j];
    return Endomorphism{g, std::move(cm)};
}

// Same algebra with the first chain split: blocks J_2(2) on (e1, e2),
// J_1(2) on e3, J_3(3) on (e4, e5, e6): chain weights (1,2), (3), (1,1,2).
inline Endomorphism formal6_split() {
    GradedAlgebra g = formal6();
    QMat m = parse_matrix({
        {"2", "0", "0", "0", "0", "0"},
        {"1", "2", "0", "0", "0", "0"},
        {"0", "0", "2", "0", "0", "0"},
        {"0", "0", "0", "3", "0", "0"},
        {"0", "0", "0", "1", "3", "0"},
        {"0", "0", "0", "0", "1", "3"},
    });
    std::vector<std::size_t> slot = {0, 3, 5, 1, 2, 4};
    QMat cm(6, QVec(6, Rat(0)));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) cm[slot[i]][slot[j]] = m[i][j];
    return Endomorphism{g, std::move(cm)};
}

}  // namespace nbcqi::fixtures
