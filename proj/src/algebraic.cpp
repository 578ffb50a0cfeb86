#include "nbcqi/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "nbcqi/errors.hpp"

namespace nbcqi {

namespace {

// Rational roots of an integer polynomial have denominator dividing the
// leading coefficient. Refine the isolating interval until it holds at most
// one multiple of 1/lead, then test that candidate exactly.
std::optional<Rat> snap_rational(const IntPoly& p, Rat& lo, Rat& hi) {
    const Int L = boost::multiprecision::abs(p.lead());
    while (true) {
        // candidates k/L with lo < k/L < hi
        Int klo = numerator(lo * Rat(L)) / denominator(lo * Rat(L));  // floor for positive...
        // exact floor of lo*L
        Rat x = lo * Rat(L);
        Int fl = numerator(x) / denominator(x);
        if (Rat(fl) > x) fl -= 1;  // fix toward -inf
        Int cl = fl + 1;  // smallest integer > lo*L (when lo*L not integral)
        if (Rat(fl) == x) cl = fl + 1;
        Rat y = hi * Rat(L);
        Int fh = numerator(y) / denominator(y);
        if (Rat(fh) > y) fh -= 1;
        Int ch = fh;  // largest integer < hi*L (adjust if exact)
        if (Rat(fh) == y) ch = fh - 1;
        (void)klo;
        if (cl > ch) return std::nullopt;          // no candidate
        if (cl == ch) {                            // single candidate
            Rat cand(cl, L);
            if (p.sign_at(cand) == 0) return cand;
            // candidate is not a root; the value is irrational, but the
            // interval may still contain the candidate; that is fine.
            return std::nullopt;
        }
        // several candidates: bisect
        Rat mid = (lo + hi) / 2;
        if (p.sign_at(mid) == 0) return mid;
        if (p.sign_at(lo) * p.sign_at(mid) < 0)
            hi = mid;
        else
            lo = mid;
    }
}

}  // namespace

AlgebraicReal AlgebraicReal::from_poly_interval(IntPoly poly, Rat lo, Rat hi) {
    if (poly.degree() < 1) throw Error("AlgebraicReal: constant polynomial");
    IntPoly p = poly.squarefree_part();
    if (p.sign_at(lo) == 0 || p.sign_at(hi) == 0)
        throw Error("AlgebraicReal: interval endpoint is a root");
    if (p.count_roots(lo, hi) != 1)
        throw Error("AlgebraicReal: interval does not isolate exactly one root");
    // ensure a sign change so later refinement is plain bisection
    if (p.sign_at(lo) * p.sign_at(hi) > 0) throw Error("AlgebraicReal: no sign change");
    if (auto r = snap_rational(p, lo, hi)) return AlgebraicReal(*r);
    AlgebraicReal a;
    a.is_rat_ = false;
    a.rat_ = 0;
    a.poly_ = std::move(p);
    a.lo_ = std::move(lo);
    a.hi_ = std::move(hi);
    return a;
}

IntPoly AlgebraicReal::defining_poly() const {
    if (is_rat_) return IntPoly::linear_root(rat_);
    return poly_;
}

int AlgebraicReal::sign() const {
    if (is_rat_) return rat_.sign();
    if (lo_ >= 0) return 1;
    if (hi_ <= 0) return -1;
    // irrational, so nonzero: refine a copy until decided
    AlgebraicReal c = *this;
    while (c.lo_ < 0 && c.hi_ > 0) c = c.refined();
    return c.lo_ >= 0 ? 1 : -1;
}

AlgebraicReal AlgebraicReal::refined() const {
    if (is_rat_) return *this;
    AlgebraicReal c = *this;
    Rat mid = (c.lo_ + c.hi_) / 2;
    // the value is irrational, so mid is never the root
    if (c.poly_.sign_at(c.lo_) * c.poly_.sign_at(mid) < 0)
        c.hi_ = mid;
    else
        c.lo_ = mid;
    return c;
}

AlgebraicReal AlgebraicReal::refined_below(const Rat& width) const {
    AlgebraicReal c = *this;
    while (!c.is_rat_ && c.hi_ - c.lo_ >= width) c = c.refined();
    return c;
}

AlgebraicReal AlgebraicReal::neg() const {
    if (is_rat_) return AlgebraicReal(-rat_);
    AlgebraicReal c = *this;
    c.poly_ = poly_.negate_arg().primitive();
    c.lo_ = -hi_;
    c.hi_ = -lo_;
    return c;
}

AlgebraicReal AlgebraicReal::abs() const { return sign() >= 0 ? *this : neg(); }

AlgebraicReal AlgebraicReal::reciprocal() const {
    if (is_rat_) {
        if (rat_ == 0) throw Error("reciprocal of zero");
        return AlgebraicReal(Rat(1) / rat_);
    }
    IntPoly p = poly_;
    while (p[0] == 0) p = p.exact_div(IntPoly::x());  // drop the root at 0 (not ours)
    IntPoly rev = p.reverse().primitive();
    // refine until the interval is sign-definite, then invert the endpoints
    AlgebraicReal c = *this;
    while (!(c.lo_ > 0 || c.hi_ < 0)) c = c.refined();
    return from_poly_interval(rev, Rat(1) / c.hi_, Rat(1) / c.lo_);
}

namespace {

// Certified interval for a composed value: refine the operand intervals until
// the interval-arithmetic enclosure isolates exactly one root of `poly`.
AlgebraicReal certify(const IntPoly& poly_in,
                      const std::function<std::pair<Rat, Rat>()>& enclosure,
                      const std::function<void()>& refine_operands) {
    IntPoly p = poly_in.squarefree_part();
    for (int rounds = 0; rounds < 4096; ++rounds) {
        auto [lo, hi] = enclosure();
        if (lo == hi) {
            // exact rational value (operands were rational)
            return AlgebraicReal(lo);
        }
        if (p.sign_at(lo) != 0 && p.sign_at(hi) != 0 && p.count_roots(lo, hi) == 1)
            return AlgebraicReal::from_poly_interval(p, lo, hi);
        refine_operands();
    }
    throw Error("algebraic arithmetic failed to certify enclosure");
}

}  // namespace

AlgebraicReal AlgebraicReal::pow(unsigned k) const {
    if (k == 0) return AlgebraicReal(1);
    if (k == 1) return *this;
    if (is_rat_) return AlgebraicReal(pow_rat(rat_, k));
    IntPoly pk = roots_pow_poly(poly_, k);
    AlgebraicReal a = *this;
    // sign-definite interval first so the power maps the interval monotonically
    while (!(a.lo_ > 0 || a.hi_ < 0)) a = a.refined();
    auto enclosure = [&]() -> std::pair<Rat, Rat> {
        Rat pl = pow_rat(a.lo_, k), ph = pow_rat(a.hi_, k);
        if (pl > ph) std::swap(pl, ph);
        return {pl, ph};
    };
    auto refine = [&]() { a = a.refined(); };
    return certify(pk, enclosure, refine);
}

AlgebraicReal AlgebraicReal::add(const AlgebraicReal& o) const {
    if (is_rat_ && o.is_rat_) return AlgebraicReal(rat_ + o.rat_);
    IntPoly p = roots_sum_poly(defining_poly(), o.defining_poly());
    AlgebraicReal a = *this, b = o;
    auto enclosure = [&]() -> std::pair<Rat, Rat> {
        return {a.lower() + b.lower(), a.upper() + b.upper()};
    };
    auto refine = [&]() {
        a = a.refined();
        b = b.refined();
    };
    return certify(p, enclosure, refine);
}

AlgebraicReal AlgebraicReal::mul(const AlgebraicReal& o) const {
    if (is_rat_ && o.is_rat_) return AlgebraicReal(rat_ * o.rat_);
    if (is_zero() || o.is_zero()) return AlgebraicReal(0);
    IntPoly p = roots_prod_poly(defining_poly(), o.defining_poly());
    AlgebraicReal a = *this, b = o;
    auto enclosure = [&]() -> std::pair<Rat, Rat> {
        Rat c1 = a.lower() * b.lower(), c2 = a.lower() * b.upper();
        Rat c3 = a.upper() * b.lower(), c4 = a.upper() * b.upper();
        Rat lo = std::min(std::min(c1, c2), std::min(c3, c4));
        Rat hi = std::max(std::max(c1, c2), std::max(c3, c4));
        return {lo, hi};
    };
    auto refine = [&]() {
        a = a.refined();
        b = b.refined();
    };
    return certify(p, enclosure, refine);
}

AlgebraicReal AlgebraicReal::sqrt() const {
    if (sign() < 0) throw Error("sqrt of negative value");
    if (!is_rat_)
        throw UnsupportedEigenvalueError("sqrt of an irrational algebraic value is unsupported");
    if (rat_ == 0) return AlgebraicReal(0);
    Int n = numerator(rat_), d = denominator(rat_);
    Int sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
    if (sn * sn == n && sd * sd == d) return AlgebraicReal(Rat(sn, sd));
    IntPoly p({-n, Int(0), d});  // d x^2 - n
    Rat hi = std::max(Rat(1), rat_) + 1;
    return from_poly_interval(p, Rat(0), hi);
}

double AlgebraicReal::to_double() const {
    if (is_rat_) return nbcqi::to_double(rat_);
    AlgebraicReal c = *this;
    // 64 bisections past the integer scale is far below double precision
    for (int i = 0; i < 80 && !c.is_rat_; ++i) c = c.refined();
    return nbcqi::to_double((c.lower() + c.upper()) / 2);
}

std::string AlgebraicReal::str() const {
    if (is_rat_) return format_rational(rat_);
    return "root of " + poly_.str() + " in (" + format_rational(lo_) + ", " +
           format_rational(hi_) + ")";
}

Ordering alg_compare(const AlgebraicReal& a, const AlgebraicReal& b) {
    if (a.is_rat_ && b.is_rat_) return compare(a.rat_, b.rat_);
    if (a.is_rat_ || b.is_rat_) {
        // rational vs irrational: one Sturm count decides
        AlgebraicReal alg = a.is_rat_ ? b : a;
        const Rat& r = a.is_rat_ ? a.rat_ : b.rat_;
        Ordering alg_vs_r;
        if (r <= alg.lo_)
            alg_vs_r = Ordering::GT;
        else if (r >= alg.hi_)
            alg_vs_r = Ordering::LT;
        else if (alg.poly_.sign_at(r) == 0) {
            // r is a different root of the (reducible) defining polynomial;
            // shrink the isolating interval until r falls outside it
            while (alg.lo_ < r && r < alg.hi_) alg = alg.refined();
            alg_vs_r = (r <= alg.lo_) ? Ordering::GT : Ordering::LT;
        } else if (alg.poly_.count_roots(alg.lo_, r) == 1)
            alg_vs_r = Ordering::LT;  // the root lies below r
        else
            alg_vs_r = Ordering::GT;
        if (a.is_rat_) return alg_vs_r == Ordering::LT ? Ordering::GT : Ordering::LT;
        return alg_vs_r;
    }
    AlgebraicReal x = a, y = b;
    IntPoly g = IntPoly::gcd(x.poly_, y.poly_);
    const bool may_be_equal = g.degree() >= 1;
    while (true) {
        if (x.hi_ <= y.lo_) return Ordering::LT;
        if (y.hi_ <= x.lo_) return Ordering::GT;
        if (may_be_equal) {
            // overlap: equal iff the gcd has a root in the intersection
            Rat lo = std::max(x.lo_, y.lo_), hi = std::min(x.hi_, y.hi_);
            if (lo < hi && g.sign_at(lo) != 0 && g.sign_at(hi) != 0 &&
                g.count_roots(lo, hi) >= 1)
                return Ordering::EQ;
        }
        x = x.refined();
        y = y.refined();
    }
}

Ordering alg_pow_compare(const AlgebraicReal& l1, unsigned w1, const AlgebraicReal& l2,
                         unsigned w2) {
    if (l1.sign() <= 0 || l2.sign() <= 0) throw Error("alg_pow_compare requires positive values");
    // l1^(1/w1) vs l2^(1/w2)  <=>  l1^w2 vs l2^w1
    return alg_compare(l1.pow(w2), l2.pow(w1));
}

}  // namespace nbcqi
