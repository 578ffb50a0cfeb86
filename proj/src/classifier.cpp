#include "nbcqi/classifier.hpp"

#include "nbcqi/errors.hpp"

namespace nbcqi {

AssumptionReport check_standing_assumptions(const Endomorphism& e) {
    AssumptionReport r;
    r.homomorphism = is_homomorphism(e).ok;
    Rat d = det(e.matrix);
    r.injective = d != 0;
    Rat ad = d < 0 ? -d : d;
    r.det_abs = format_rational(ad);
    r.nonsurjective = is_integer(ad) && numerator(ad) > 1;
    if (!r.nonsurjective && r.injective) {
        r.notes = is_integer(ad) ? (ad == 1 ? "|det| = 1: surjective (polycyclic case)"
                                            : "|det| < 1: not a lattice self-map")
                                 : "|det| is not an integer";
    }
    r.unipotent_free = r.injective ? is_unipotent_free(e) : false;
    r.carnot = is_carnot(e.algebra).is_carnot;
    return r;
}

namespace {

std::string describe(const AssumptionReport& r) {
    auto mark = [](bool b) { return b ? std::string("ok") : std::string("FAIL"); };
    return "homomorphism=" + mark(r.homomorphism) + " injective=" + mark(r.injective) +
           " nonsurjective=" + mark(r.nonsurjective) + " (|det|=" + r.det_abs + ")" +
           " unipotent_free=" + mark(r.unipotent_free) + " carnot=" + mark(r.carnot);
}

}  // namespace

Verdict classify(const Endomorphism& e1, const Endomorphism& e2, unsigned power_bound) {
    Verdict v;
    v.outcome = Verdict::Outcome::Unknown;

    if (!(e1.algebra == e2.algebra))
        throw AssumptionViolationError(
            "the two endomorphisms act on different graded algebras (canonical "
            "structure constants differ)");
    AssumptionReport r1 = check_standing_assumptions(e1);
    AssumptionReport r2 = check_standing_assumptions(e2);
    v.evidence.push_back({"standing_assumptions_1", r1.all_ok() ? "pass" : "fail", describe(r1)});
    v.evidence.push_back({"standing_assumptions_2", r2.all_ok() ? "pass" : "fail", describe(r2)});
    if (!r1.all_ok() || !r2.all_ok())
        throw AssumptionViolationError("standing assumptions violated: [" + describe(r1) +
                                       "] / [" + describe(r2) + "]");

    AdaptedBasis b1 = adapted_jordan_basis(e1);
    AdaptedBasis b2 = adapted_jordan_basis(e2);

    // (1) sufficiency: equal permuted absolute Jordan forms up to powers
    Pajf p1 = compute_pajf(b1);
    Pajf p2 = compute_pajf(b2);
    PowerEquivalence pe = pajf_power_equivalent(p1, p2, power_bound);
    switch (pe.kind) {
        case PowerEquivalence::Kind::Equivalent:
            v.evidence.push_back({"pajf_power_equivalent", "equivalent",
                                  "r1=" + std::to_string(pe.r1) + " r2=" + std::to_string(pe.r2)});
            v.outcome = Verdict::Outcome::QuasiIsometric;
            v.r1 = pe.r1;
            v.r2 = pe.r2;
            return v;
        case PowerEquivalence::Kind::NotEquivalent:
            v.evidence.push_back({"pajf_power_equivalent", "not_equivalent", pe.witness});
            break;
        case PowerEquivalence::Kind::Undecided:
            v.evidence.push_back({"pajf_power_equivalent", "undecided", pe.witness});
            break;
    }

    // (2) necessity: divergence-rate multisets up to a single power
    auto d1 = basis_rates(b1, Direction::Forward).multiset();
    auto d2 = basis_rates(b2, Direction::Forward).multiset();
    MultisetMatch mm = multiset_equal_up_to_power(d1, d2, power_bound);
    switch (mm.kind) {
        case MultisetMatch::Kind::Equal:
            v.evidence.push_back({"divergence_multisets", "equal",
                                  "s=" + std::to_string(mm.p) + "/" + std::to_string(mm.q)});
            break;
        case MultisetMatch::Kind::NotEqual:
            v.evidence.push_back({"divergence_multisets", "not_equal", mm.witness});
            v.outcome = Verdict::Outcome::NotQuasiIsometric;
            v.witness = "divergence multisets: " + mm.witness;
            return v;
        case MultisetMatch::Kind::Undecided:
            v.evidence.push_back({"divergence_multisets", "undecided", mm.witness});
            break;
    }

    // (3) necessity: growth-filtration fingerprints
    GrowthFiltration f1 = growth_filtration(e1, b1);
    GrowthFiltration f2 = growth_filtration(e2, b2);
    auto mismatch = filtration_mismatch(f1, f2);
    if (mismatch) {
        v.evidence.push_back({"growth_filtration", "not_equivalent", mismatch->detail});
        v.outcome = Verdict::Outcome::NotQuasiIsometric;
        v.witness = "growth filtration: " + mismatch->detail;
        return v;
    }
    v.evidence.push_back({"growth_filtration", "equivalent", ""});

    v.outcome = Verdict::Outcome::Unknown;
    return v;
}

}  // namespace nbcqi
