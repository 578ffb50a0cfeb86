#include "nbcqi/numberfield.hpp"

#include "nbcqi/errors.hpp"

namespace nbcqi {

NumberField::NumberField(IntPoly modulus) : mod_(std::move(modulus)) {
    if (mod_.degree() < 1) throw Error("NumberField: modulus must have degree >= 1");
    mod_rat_.resize(mod_.coeffs().size());
    for (std::size_t i = 0; i < mod_rat_.size(); ++i) mod_rat_[i] = Rat(mod_.coeffs()[i]);
}

NFElem NumberField::one() const { return NFElem{Rat(1)}; }

NFElem NumberField::from_rat(const Rat& r) const {
    if (r == 0) return {};
    return NFElem{r};
}

NFElem NumberField::generator() const {
    if (degree() == 1) {
        // x == -c0/c1 in Q[x]/(c1 x + c0)
        return from_rat(Rat(-mod_.coeffs()[0], mod_.coeffs()[1]));
    }
    return NFElem{Rat(0), Rat(1)};
}

NFElem NumberField::reduce(std::vector<Rat> c) const {
    auto [q, r] = rat_divmod(c, mod_rat_);
    (void)q;
    return r;
}

bool NumberField::is_zero(const NFElem& a) const {
    if (a.empty()) return true;
    // a is nonzero as a residue; if it shares a factor with the modulus it is
    // a zero divisor and we cannot answer until the modulus is split.
    IntPoly ap = from_rat_coeffs(a);
    IntPoly g = IntPoly::gcd(ap, mod_);
    if (g.degree() >= 1 && g.degree() < mod_.degree()) throw ModulusSplit{g};
    if (g.degree() == mod_.degree()) return true;  // modulus divides a
    return false;
}

NFElem NumberField::add(const NFElem& a, const NFElem& b) const {
    NFElem r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

NFElem NumberField::sub(const NFElem& a, const NFElem& b) const {
    NFElem r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

NFElem NumberField::neg(const NFElem& a) const {
    NFElem r = a;
    for (auto& v : r) v = -v;
    return r;
}

NFElem NumberField::mul(const NFElem& a, const NFElem& b) const {
    if (a.empty() || b.empty()) return {};
    std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return reduce(std::move(r));
}

NFElem NumberField::mul_rat(const NFElem& a, const Rat& r) const {
    if (r == 0) return {};
    NFElem out = a;
    for (auto& v : out) v *= r;
    return out;
}

NFElem NumberField::inv(const NFElem& a) const {
    if (is_zero(a)) throw Error("NumberField::inv of zero");
    // extended Euclid over Q[x]: s*a + t*mod = g
    std::vector<Rat> r0 = mod_rat_, r1 = a;
    std::vector<Rat> s0{}, s1{Rat(1)};
    while (!r1.empty()) {
        auto [q, r2] = rat_divmod(r0, r1);
        // s2 = s0 - q*s1
        std::vector<Rat> qs1;
        if (!q.empty() && !s1.empty()) {
            qs1.assign(q.size() + s1.size() - 1, Rat(0));
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t j = 0; j < s1.size(); ++j) qs1[i + j] += q[i] * s1[j];
        }
        std::vector<Rat> s2(std::max(s0.size(), qs1.size()), Rat(0));
        for (std::size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
        for (std::size_t i = 0; i < qs1.size(); ++i) s2[i] -= qs1[i];
        while (!s2.empty() && s2.back() == 0) s2.pop_back();
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 = gcd(a, mod); invertible iff constant
    if (r0.size() != 1) {
        IntPoly g = from_rat_coeffs(r0);
        throw ModulusSplit{g};
    }
    Rat inv_g = Rat(1) / r0[0];
    for (auto& v : s0) v *= inv_g;
    while (!s0.empty() && s0.back() == 0) s0.pop_back();
    return reduce(std::move(s0));
}

double NumberField::eval_double(const NFElem& a, double root) const {
    double acc = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * root + to_double(*it);
    return acc;
}

}  // namespace nbcqi
