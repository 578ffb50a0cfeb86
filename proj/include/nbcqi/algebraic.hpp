#pragma once

#include <optional>
#include <string>

#include "nbcqi/intpoly.hpp"
#include "nbcqi/rational.hpp"

namespace nbcqi {

/// A real algebraic number, either an exact rational or the unique root of a
/// squarefree, content-1 integer polynomial inside an open isolating interval
/// with rational endpoints. Rational values are always recognized and stored
/// in rational form, so the polynomial branch is reserved for irrationals.
///
/// Values are immutable; interval refinement happens on local copies inside
/// the comparison routines, so shared instances are safe to read concurrently.
class AlgebraicReal {
public:
    AlgebraicReal() : rat_(0), is_rat_(true) {}
    AlgebraicReal(const Rat& r) : rat_(r), is_rat_(true) {}
    AlgebraicReal(int v) : rat_(v), is_rat_(true) {}

    /// The unique root of `poly` in (lo, hi). `poly` may be reducible but must
    /// be squarefree with exactly one root in the interval; rational roots are
    /// detected and returned in rational form.
    static AlgebraicReal from_poly_interval(IntPoly poly, Rat lo, Rat hi);

    bool is_rational() const { return is_rat_; }
    const Rat& rational_value() const { return rat_; }
    /// Defining polynomial: for rationals this is denominator*x - numerator.
    IntPoly defining_poly() const;
    Rat lower() const { return is_rat_ ? rat_ : lo_; }
    Rat upper() const { return is_rat_ ? rat_ : hi_; }

    int sign() const;
    bool is_zero() const { return is_rat_ && rat_ == 0; }
    bool is_one() const { return is_rat_ && rat_ == 1; }

    /// One bisection step (returns a refined copy; the value is unchanged).
    AlgebraicReal refined() const;
    AlgebraicReal refined_below(const Rat& width) const;

    AlgebraicReal neg() const;
    AlgebraicReal abs() const;
    AlgebraicReal reciprocal() const;  // value must be nonzero
    AlgebraicReal pow(unsigned k) const;
    AlgebraicReal add(const AlgebraicReal& o) const;
    AlgebraicReal mul(const AlgebraicReal& o) const;
    /// Square root; the value must be >= 0. Throws UnsupportedEigenvalueError
    /// for irrational radicands (not needed for any supported input).
    AlgebraicReal sqrt() const;

    double to_double() const;
    std::string str() const;

private:
    friend Ordering alg_compare(const AlgebraicReal& a, const AlgebraicReal& b);
    Rat rat_;
    bool is_rat_ = true;
    IntPoly poly_;
    Rat lo_, hi_;
};

/// Exact total-order comparison.
Ordering alg_compare(const AlgebraicReal& a, const AlgebraicReal& b);

/// Ordering of l1^(1/w1) vs l2^(1/w2) for positive values, decided exactly by
/// comparing the integer powers l1^w2 vs l2^w1.
Ordering alg_pow_compare(const AlgebraicReal& l1, unsigned w1, const AlgebraicReal& l2,
                         unsigned w2);

inline bool alg_eq(const AlgebraicReal& a, const AlgebraicReal& b) {
    return alg_compare(a, b) == Ordering::EQ;
}
inline bool alg_lt(const AlgebraicReal& a, const AlgebraicReal& b) {
    return alg_compare(a, b) == Ordering::LT;
}

}  // namespace nbcqi
