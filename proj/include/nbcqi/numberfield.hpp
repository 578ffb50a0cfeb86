#pragma once

#include <memory>
#include <vector>

#include "nbcqi/intpoly.hpp"
#include "nbcqi/rational.hpp"

namespace nbcqi {

/// Raised when a zero-divisor is met in Q[x]/(m) with m reducible.
/// The thrower has found a nontrivial factor of the modulus; the caller
/// picks the factor containing its root and restarts the computation.
struct ModulusSplit {
    IntPoly factor;
};

/// Element of Q[x]/(modulus), coefficients low-degree first, size < deg(modulus).
using NFElem = std::vector<Rat>;

/// The quotient ring Q[x]/(m) for a squarefree primitive m. For irreducible m
/// this is the number field Q(alpha); reducible moduli are handled lazily:
/// zero-tests and inversions that cannot be decided throw ModulusSplit.
class NumberField {
public:
    explicit NumberField(IntPoly modulus);

    const IntPoly& modulus() const { return mod_; }
    int degree() const { return mod_.degree(); }

    NFElem zero() const { return NFElem{}; }
    NFElem one() const;
    NFElem from_rat(const Rat& r) const;
    NFElem generator() const;  // the class of x

    bool is_zero(const NFElem& a) const;  // may throw ModulusSplit
    NFElem add(const NFElem& a, const NFElem& b) const;
    NFElem sub(const NFElem& a, const NFElem& b) const;
    NFElem neg(const NFElem& a) const;
    NFElem mul(const NFElem& a, const NFElem& b) const;
    NFElem inv(const NFElem& a) const;  // may throw ModulusSplit
    NFElem mul_rat(const NFElem& a, const Rat& r) const;

    /// Evaluate the representative polynomial at a double approximation of
    /// the generator (used only by the numeric oracle / display).
    double eval_double(const NFElem& a, double root) const;

private:
    NFElem reduce(std::vector<Rat> c) const;
    IntPoly mod_;
    std::vector<Rat> mod_rat_;
};

/// Field tag for plain rationals, mirroring the NumberField surface so the
/// linear algebra below can be written once.
struct RatField {
    using Elem = Rat;
    Rat zero() const { return Rat(0); }
    Rat one() const { return Rat(1); }
    bool is_zero(const Rat& a) const { return a == 0; }
    Rat add(const Rat& a, const Rat& b) const { return a + b; }
    Rat sub(const Rat& a, const Rat& b) const { return a - b; }
    Rat neg(const Rat& a) const { return -a; }
    Rat mul(const Rat& a, const Rat& b) const { return a * b; }
    Rat inv(const Rat& a) const { return Rat(1) / a; }
};

struct NFFieldRef {
    using Elem = NFElem;
    const NumberField* nf;
    NFElem zero() const { return nf->zero(); }
    NFElem one() const { return nf->one(); }
    bool is_zero(const NFElem& a) const { return nf->is_zero(a); }
    NFElem add(const NFElem& a, const NFElem& b) const { return nf->add(a, b); }
    NFElem sub(const NFElem& a, const NFElem& b) const { return nf->sub(a, b); }
    NFElem neg(const NFElem& a) const { return nf->neg(a); }
    NFElem mul(const NFElem& a, const NFElem& b) const { return nf->mul(a, b); }
    NFElem inv(const NFElem& a) const { return nf->inv(a); }
};

}  // namespace nbcqi
