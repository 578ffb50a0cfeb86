#include "nbcqi/intpoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nbcqi/errors.hpp"

namespace nbcqi {

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::linear_root(const Rat& r) {
    return IntPoly({-numerator(r), denominator(r)});
}

Rat IntPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rat(*it);
    return acc;
}

Int IntPoly::eval_int(const Int& x) const {
    Int acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int IntPoly::sign_at(const Rat& x) const {
    // sum c_i n^i d^(deg-i) with x = n/d keeps everything integral
    if (c_.empty()) return 0;
    const Int n = numerator(x), d = denominator(x);
    Int acc(0), dp(1);
    // Horner in n, multiplying by d each step: acc = sum_{i} c_i n^i d^{deg-i}
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * n + *it * dp, dp *= d;
    // dp overshoots by one factor of d; harmless since only the sign is used
    return acc.sign();
}

double IntPoly::eval_double(double x) const {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->convert_to<double>();
    return acc;
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<Int> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Int(i);
    return IntPoly(std::move(d));
}

IntPoly IntPoly::negate_arg() const {
    std::vector<Int> d = c_;
    for (std::size_t i = 1; i < d.size(); i += 2) d[i] = -d[i];
    return IntPoly(std::move(d));
}

IntPoly IntPoly::reverse() const {
    std::vector<Int> d(c_.rbegin(), c_.rend());
    return IntPoly(std::move(d));
}

Int IntPoly::content() const {
    Int g(0);
    for (const auto& v : c_) g = boost::multiprecision::gcd(g, v);
    return g;
}

IntPoly IntPoly::primitive() const {
    if (c_.empty()) return IntPoly();
    Int g = content();
    if (lead() < 0) g = -g;
    std::vector<Int> d(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) d[i] = c_[i] / g;
    return IntPoly(std::move(d));
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<Int> d(std::max(c_.size(), o.c_.size()), Int(0));
    for (std::size_t i = 0; i < c_.size(); ++i) d[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) d[i] += o.c_[i];
    return IntPoly(std::move(d));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<Int> d(std::max(c_.size(), o.c_.size()), Int(0));
    for (std::size_t i = 0; i < c_.size(); ++i) d[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) d[i] -= o.c_[i];
    return IntPoly(std::move(d));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (c_.empty() || o.c_.empty()) return IntPoly();
    std::vector<Int> d(c_.size() + o.c_.size() - 1, Int(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) d[i + j] += c_[i] * o.c_[j];
    return IntPoly(std::move(d));
}

IntPoly IntPoly::operator*(const Int& k) const {
    std::vector<Int> d = c_;
    for (auto& v : d) v *= k;
    return IntPoly(std::move(d));
}

std::pair<std::vector<Rat>, std::vector<Rat>> rat_divmod(const std::vector<Rat>& a,
                                                         const std::vector<Rat>& b) {
    std::vector<Rat> r = a, q;
    while (!b.empty() && r.size() >= b.size()) {
        Rat f = r.back() / b.back();
        std::size_t shift = r.size() - b.size();
        if (q.size() < shift + 1) q.resize(shift + 1, Rat(0));
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= f * b[i];
        while (!r.empty() && r.back() == 0) r.pop_back();
    }
    return {q, r};
}

IntPoly from_rat_coeffs(const std::vector<Rat>& c) {
    Int lcm(1);
    for (const auto& v : c) lcm = boost::multiprecision::lcm(lcm, denominator(v));
    std::vector<Int> d(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        d[i] = numerator(c[i]) * (lcm / denominator(c[i]));
    IntPoly p(std::move(d));
    return p.is_zero() ? p : p.primitive();
}

namespace {
std::vector<Rat> to_rat(const IntPoly& p) {
    std::vector<Rat> c(p.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = Rat(p.coeffs()[i]);
    return c;
}
}  // namespace

IntPoly IntPoly::exact_div(const IntPoly& d) const {
    auto [q, r] = rat_divmod(to_rat(*this), to_rat(d));
    if (!r.empty()) throw Error("exact_div: not divisible");
    Int lcm(1);
    for (const auto& v : q) lcm = boost::multiprecision::lcm(lcm, denominator(v));
    std::vector<Int> qi(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) qi[i] = numerator(q[i]) * (lcm / denominator(q[i]));
    if (lcm != 1) throw Error("exact_div: quotient not integral");
    return IntPoly(std::move(qi));
}

IntPoly IntPoly::gcd(const IntPoly& a, const IntPoly& b) {
    std::vector<Rat> x = to_rat(a), y = to_rat(b);
    while (!y.empty()) {
        auto [q, r] = rat_divmod(x, y);
        (void)q;
        x = std::move(y);
        y = std::move(r);
    }
    IntPoly g = from_rat_coeffs(x);
    return g;
}

IntPoly IntPoly::squarefree_part() const {
    if (degree() <= 1) return primitive();
    IntPoly g = gcd(*this, derivative());
    if (g.degree() == 0) return primitive();
    return exact_div(g).primitive();
}

Rat IntPoly::root_bound() const {
    if (c_.empty()) return Rat(1);
    Int maxc(0);
    for (std::size_t i = 0; i + 1 < c_.size(); ++i) maxc = std::max(maxc, Int(abs(c_[i])));
    return Rat(1) + Rat(maxc, Int(abs(lead())));
}

namespace {

// Sturm chain of the squarefree part; signs are what matter, so each
// remainder is scaled to a primitive integer polynomial (positive scale).
std::vector<IntPoly> sturm_chain(const IntPoly& p) {
    std::vector<IntPoly> chain;
    IntPoly a = p.primitive();
    if (a.is_zero()) return chain;
    chain.push_back(a);
    IntPoly b = a.derivative();
    while (!b.is_zero()) {
        chain.push_back(b);
        auto [q, r] = rat_divmod(to_rat(a), to_rat(b));
        (void)q;
        if (r.empty()) break;
        // next element is -rem, scaled to integers by a positive factor only
        Int lcm(1);
        for (const auto& v : r) lcm = boost::multiprecision::lcm(lcm, denominator(v));
        std::vector<Int> d(r.size());
        for (std::size_t i = 0; i < r.size(); ++i)
            d[i] = -numerator(r[i]) * (lcm / denominator(r[i]));
        IntPoly rp(std::move(d));
        Int cont = rp.content();
        std::vector<Int> e(rp.coeffs().size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = rp.coeffs()[i] / cont;
        a = std::move(b);
        b = IntPoly(std::move(e));
    }
    return chain;
}

int sign_variations(const std::vector<IntPoly>& chain, const Rat& x) {
    int var = 0, prev = 0;
    for (const auto& p : chain) {
        int s = p.sign_at(x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

}  // namespace

int IntPoly::count_roots(const Rat& lo, const Rat& hi) const {
    if (is_zero() || degree() == 0) return 0;
    IntPoly sf = squarefree_part();
    if (sf.sign_at(lo) == 0 || sf.sign_at(hi) == 0)
        throw Error("count_roots: endpoint is a root");
    auto chain = sturm_chain(sf);
    return sign_variations(chain, lo) - sign_variations(chain, hi);
}

int IntPoly::count_real_roots() const {
    if (is_zero() || degree() == 0) return 0;
    Rat b = root_bound();
    return count_roots(-b, b);
}

std::string IntPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Int& v = c_[i];
        if (v == 0) continue;
        if (!first) os << (v > 0 ? " + " : " - ");
        else if (v < 0) os << "-";
        Int a = abs(v);
        if (a != 1 || i == 0) os << a.str();
        if (i > 0) os << "x";
        if (i > 1) os << "^" << i;
        first = false;
    }
    return os.str();
}

namespace {

// Fraction-free Bareiss determinant of an integer matrix (destructive).
Int bareiss_det(std::vector<std::vector<Int>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return Int(1);
    Int prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return Int(0);
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

// Sylvester-matrix resultant of integer polynomials.
Int sylvester_resultant(const IntPoly& a, const IntPoly& b) {
    const int m = a.degree(), n = b.degree();
    if (m < 0 || n < 0) return Int(0);
    if (m == 0) return pow_int(a.lead(), n);
    if (n == 0) return pow_int(b.lead(), m);
    const std::size_t sz = m + n;
    std::vector<std::vector<Int>> s(sz, std::vector<Int>(sz, Int(0)));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) s[r][r + (m - i)] = a[i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) s[n + r][r + (n - i)] = b[i];
    return bareiss_det(s);
}

// Lagrange interpolation through integer sample points; result scaled to
// an integer polynomial (the true values are integers, so this is exact).
IntPoly interpolate(const std::vector<Int>& xs, const std::vector<Int>& ys) {
    const std::size_t n = xs.size();
    std::vector<Rat> acc(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
        // basis poly prod_{j != i} (x - x_j) / (x_i - x_j)
        std::vector<Rat> basis{Rat(1)};
        Rat denom(1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            std::vector<Rat> next(basis.size() + 1, Rat(0));
            for (std::size_t k = 0; k < basis.size(); ++k) {
                next[k + 1] += basis[k];
                next[k] -= basis[k] * Rat(xs[j]);
            }
            basis = std::move(next);
            denom *= Rat(xs[i] - xs[j]);
        }
        Rat w = Rat(ys[i]) / denom;
        if (acc.size() < basis.size()) acc.resize(basis.size(), Rat(0));
        for (std::size_t k = 0; k < basis.size(); ++k) acc[k] += basis[k] * w;
    }
    while (!acc.empty() && acc.back() == 0) acc.pop_back();
    std::vector<Int> out(acc.size());
    for (std::size_t k = 0; k < acc.size(); ++k) {
        if (denominator(acc[k]) != 1) throw Error("interpolate: non-integer coefficient");
        out[k] = numerator(acc[k]);
    }
    return IntPoly(std::move(out));
}

// Taylor shift: q(t - y) as a polynomial in y, for integer t.
IntPoly shift_then_negate(const IntPoly& q, const Int& t) {
    // q(t - y) = sum q_i (t - y)^i; expand iteratively
    std::vector<Int> acc{Int(0)};
    std::vector<Int> pw{Int(1)};  // (t - y)^i
    for (int i = 0; i <= q.degree(); ++i) {
        if (acc.size() < pw.size()) acc.resize(pw.size(), Int(0));
        for (std::size_t k = 0; k < pw.size(); ++k) acc[k] += q[i] * pw[k];
        // pw *= (t - y)
        std::vector<Int> nx(pw.size() + 1, Int(0));
        for (std::size_t k = 0; k < pw.size(); ++k) {
            nx[k] += pw[k] * t;
            nx[k + 1] -= pw[k];
        }
        pw = std::move(nx);
    }
    return IntPoly(std::move(acc));
}

}  // namespace

Int resultant(const IntPoly& a, const IntPoly& b) { return sylvester_resultant(a, b); }

IntPoly roots_diff_poly(const IntPoly& p, const IntPoly& q) {
    // R(x) = Res_y(p(y), q(y - x)) vanishes at alpha - beta.
    // The y-leading coefficient of q(y - x) is lead(q), independent of x,
    // so interpolation over integer sample points is sound.
    const int bound = p.degree() * q.degree();
    std::vector<Int> xs, ys;
    for (int t = 0; static_cast<int>(xs.size()) < bound + 1; ++t) {
        Int tt = (t % 2 == 0) ? Int(t / 2) : Int(-(t / 2 + 1));
        // q(y - tt) as poly in y: substitute y -> y, shift arg by -tt
        std::vector<Int> acc{Int(0)}, pw{Int(1)};  // (y - tt)^i
        for (int i = 0; i <= q.degree(); ++i) {
            if (acc.size() < pw.size()) acc.resize(pw.size(), Int(0));
            for (std::size_t k = 0; k < pw.size(); ++k) acc[k] += q[i] * pw[k];
            std::vector<Int> nx(pw.size() + 1, Int(0));
            for (std::size_t k = 0; k < pw.size(); ++k) {
                nx[k] -= pw[k] * tt;
                nx[k + 1] += pw[k];
            }
            pw = std::move(nx);
        }
        xs.push_back(tt);
        ys.push_back(sylvester_resultant(p, IntPoly(std::move(acc))));
    }
    return interpolate(xs, ys).primitive();
}

IntPoly roots_sum_poly(const IntPoly& p, const IntPoly& q) {
    // R(x) = Res_y(p(y), q(x - y)) vanishes at alpha + beta.
    const int bound = p.degree() * q.degree();
    std::vector<Int> xs, ys;
    for (int t = 0; static_cast<int>(xs.size()) < bound + 1; ++t) {
        Int tt = (t % 2 == 0) ? Int(t / 2) : Int(-(t / 2 + 1));
        xs.push_back(tt);
        ys.push_back(sylvester_resultant(p, shift_then_negate(q, tt)));
    }
    return interpolate(xs, ys).primitive();
}

IntPoly roots_prod_poly(const IntPoly& p, const IntPoly& q) {
    // R(x) = Res_y(p(y), y^n q(x/y)) vanishes at alpha * beta.
    // Strip zero roots first so the homogenized form keeps full y-degree.
    IntPoly pp = p, qq = q;
    bool zero_root = false;
    while (!pp.is_zero() && pp[0] == 0) {
        pp = pp.exact_div(IntPoly::x());
        zero_root = true;
    }
    while (!qq.is_zero() && qq[0] == 0) {
        qq = qq.exact_div(IntPoly::x());
        zero_root = true;
    }
    const int n = qq.degree();
    const int bound = pp.degree() * qq.degree();
    std::vector<Int> xs, ys;
    for (int t = 0; static_cast<int>(xs.size()) < bound + 1; ++t) {
        Int tt = (t % 2 == 0) ? Int(t / 2) : Int(-(t / 2 + 1));
        // y^n q(tt/y) = sum_i q_i tt^i y^(n-i)
        std::vector<Int> acc(n + 1, Int(0));
        Int tp(1);
        for (int i = 0; i <= n; ++i) {
            acc[n - i] = qq[i] * tp;
            tp *= tt;
        }
        xs.push_back(tt);
        ys.push_back(sylvester_resultant(pp, IntPoly(std::move(acc))));
    }
    IntPoly r = interpolate(xs, ys).primitive();
    if (zero_root) r = r * IntPoly::x();
    return r;
}

IntPoly roots_pow_poly(const IntPoly& p, unsigned k) {
    if (k == 1) return p.primitive();
    const int bound = p.degree();
    std::vector<Int> xs, ys;
    for (int t = 0; static_cast<int>(xs.size()) < bound + 1; ++t) {
        Int tt = (t % 2 == 0) ? Int(t / 2) : Int(-(t / 2 + 1));
        // Res_y(p(y), tt - y^k)
        std::vector<Int> acc(k + 1, Int(0));
        acc[0] = tt;
        acc[k] = Int(-1);
        xs.push_back(tt);
        ys.push_back(sylvester_resultant(p, IntPoly(std::move(acc))));
    }
    return interpolate(xs, ys).primitive();
}

std::vector<IsolatedRoot> isolate_real_roots(const IntPoly& squarefree) {
    std::vector<IsolatedRoot> out;
    const IntPoly& p = squarefree;
    if (p.degree() <= 0) return out;
    Rat b = p.root_bound();
    auto chain = sturm_chain(p);
    auto count = [&](const Rat& lo, const Rat& hi) {
        return sign_variations(chain, lo) - sign_variations(chain, hi);
    };
    struct Seg {
        Rat lo, hi;
        int n;
    };
    std::vector<Seg> stack{{-b, b, count(-b, b)}};
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.n == 0) continue;
        if (s.n == 1 && p.sign_at(s.lo) * p.sign_at(s.hi) < 0) {
            out.push_back({s.lo, s.hi});
            continue;
        }
        Rat mid = (s.lo + s.hi) / 2;
        while (p.sign_at(mid) == 0) mid = (s.lo + mid) / 2;  // nudge off a root
        int nl = count(s.lo, mid);
        stack.push_back({s.lo, mid, nl});
        stack.push_back({mid, s.hi, s.n - nl});
    }
    std::sort(out.begin(), out.end(), [](const IsolatedRoot& a, const IsolatedRoot& b2) {
        return a.lo < b2.lo;
    });
    return out;
}

}  // namespace nbcqi
