#pragma once

#include "nbcqi/algebraic.hpp"
#include "nbcqi/matrix.hpp"

namespace nbcqi {

/// One Jordan block of the real Jordan form. A complex pair J_size(a, b)
/// stands for the conjugate blocks J_size(a + bi), J_size(a - bi); its total
/// real dimension is 2 * size.
struct JordanBlockData {
    enum class Kind { Real, ComplexPair };
    Kind kind = Kind::Real;
    AlgebraicReal eigenvalue;  // signed, Real only
    AlgebraicReal pair_re, pair_im;  // ComplexPair only, pair_im > 0
    unsigned size = 1;

    unsigned real_dimension() const { return kind == Kind::Real ? size : 2 * size; }
};

struct RealJordanData {
    std::vector<JordanBlockData> blocks;
    IntPoly characteristic;  // primitive integer polynomial, roots of det(xI - M)
};

/// Default bound on the algebraic degree of supported eigenvalues.
inline constexpr unsigned kDefaultDegreeBound = 8;

/// Exact block structure from rank chains of (M - lambda I)^k; the basis is
/// the business of the pajf module. Throws UnsupportedEigenvalueError when a
/// root exceeds the degree bound or a complex pair cannot be isolated.
RealJordanData jordan_structure(const QMat& m, unsigned degree_bound = kDefaultDegreeBound);

struct AbsBlock {
    AlgebraicReal modulus;  // >= 0
    unsigned size = 1;
    bool operator==(const AbsBlock& o) const {
        return size == o.size && alg_eq(modulus, o.modulus);
    }
};

/// Absolute Jordan form data: real block (lambda, n) -> (|lambda|, n); a
/// complex pair contributes two copies of (sqrt(a^2 + b^2), size).
/// Canonically sorted: modulus ascending, then size ascending.
std::vector<AbsBlock> absolute_jordan_form(const RealJordanData& d);

// ---- shared root-finding helpers (also used by pajf) ----

/// A root of the characteristic polynomial with the data needed to compute
/// over Q(lambda): rational fast path, or a defining squarefree polynomial.
struct EigenRoot {
    bool complex_pair = false;
    AlgebraicReal value;             // real root (signed); unset for pairs
    AlgebraicReal pair_re, pair_im;  // for complex pairs (pair_im > 0)
    IntPoly field_poly;              // defining polynomial of Q(lambda)
    unsigned multiplicity = 0;       // algebraic multiplicity (pairs: per conjugate)
};

/// All roots of p (for pairs, one entry per conjugate pair).
std::vector<EigenRoot> eigen_roots(const IntPoly& p, unsigned degree_bound);

}  // namespace nbcqi
