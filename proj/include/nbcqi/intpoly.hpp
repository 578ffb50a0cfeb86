#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nbcqi/rational.hpp"

namespace nbcqi {

/// Dense univariate polynomial with arbitrary-precision integer coefficients,
/// stored low degree first with no trailing zero coefficients.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
    static IntPoly constant(Int v) { return IntPoly({std::move(v)}); }
    static IntPoly x() { return IntPoly({Int(0), Int(1)}); }
    /// b*x - a, the defining polynomial of the rational a/b.
    static IntPoly linear_root(const Rat& r);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const Int& lead() const { return c_.back(); }
    const Int& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<Int>& coeffs() const { return c_; }

    Rat eval(const Rat& x) const;
    Int eval_int(const Int& x) const;
    /// Sign of p(a/b), computed exactly without rational division.
    int sign_at(const Rat& x) const;
    double eval_double(double x) const;

    IntPoly derivative() const;
    /// p(-x)
    IntPoly negate_arg() const;
    /// x^deg * p(1/x)
    IntPoly reverse() const;
    Int content() const;  // gcd of coefficients, >= 0
    /// Divide by content; sign chosen so the leading coefficient is positive.
    IntPoly primitive() const;

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator*(const Int& k) const;
    bool operator==(const IntPoly& o) const { return c_ == o.c_; }

    /// Exact division; throws if not divisible over Q.
    IntPoly exact_div(const IntPoly& d) const;

    /// Primitive gcd (leading coefficient positive).
    static IntPoly gcd(const IntPoly& a, const IntPoly& b);
    /// p / gcd(p, p'), primitive.
    IntPoly squarefree_part() const;

    /// Cauchy bound: every real root lies in (-B, B).
    Rat root_bound() const;

    /// Number of distinct real roots in the open interval (lo, hi).
    /// Requires p(lo) != 0 and p(hi) != 0; p need not be squarefree.
    int count_roots(const Rat& lo, const Rat& hi) const;
    int count_real_roots() const;

    std::string str() const;

private:
    void trim();
    std::vector<Int> c_;
};

/// Rational-coefficient helpers used internally (division, remainder).
std::pair<std::vector<Rat>, std::vector<Rat>> rat_divmod(const std::vector<Rat>& a,
                                                         const std::vector<Rat>& b);
IntPoly from_rat_coeffs(const std::vector<Rat>& c);  // clears denominators, primitive

/// Resultant of two integer polynomials (exact, fraction-free).
Int resultant(const IntPoly& a, const IntPoly& b);

/// Polynomial vanishing on {alpha + beta} for roots alpha of p, beta of q.
IntPoly roots_sum_poly(const IntPoly& p, const IntPoly& q);
/// Polynomial vanishing on {alpha - beta}.
IntPoly roots_diff_poly(const IntPoly& p, const IntPoly& q);
/// Polynomial vanishing on {alpha * beta}. Requires q(0) != 0 or p(0) != 0.
IntPoly roots_prod_poly(const IntPoly& p, const IntPoly& q);
/// Polynomial vanishing on {alpha^k}, k >= 1.
IntPoly roots_pow_poly(const IntPoly& p, unsigned k);

/// Isolating intervals (lo, hi) for every distinct real root of p
/// (p squarefree). Endpoints are non-roots and sign(p(lo)) != sign(p(hi)).
struct IsolatedRoot {
    Rat lo, hi;
};
std::vector<IsolatedRoot> isolate_real_roots(const IntPoly& squarefree);

}  // namespace nbcqi
