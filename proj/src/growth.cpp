#include "nbcqi/growth.hpp"

#include <algorithm>

#include "nbcqi/errors.hpp"

namespace nbcqi {

Ordering rate_compare(const GrowthRate& a, const GrowthRate& b) {
    Ordering base = alg_pow_compare(a.lam, a.w, b.lam, b.w);
    if (base != Ordering::EQ) return base;
    return compare(Rat(Int(a.k), Int(a.w)), Rat(Int(b.k), Int(b.w)));
}

std::vector<GrowthRate> DivergenceData::multiset() const {
    std::vector<GrowthRate> out;
    for (const auto& e : entries) out.push_back(e.rate);
    std::sort(out.begin(), out.end(), [](const GrowthRate& a, const GrowthRate& b) {
        return rate_compare(a, b) == Ordering::LT;
    });
    return out;
}

DivergenceData basis_rates(const AdaptedBasis& basis, Direction dir) {
    DivergenceData out;
    for (std::size_t bi = 0; bi < basis.blocks.size(); ++bi) {
        const auto& b = basis.blocks[bi];
        if (b.modulus.is_zero()) throw Error("basis_rates: zero modulus (singular map)");
        AlgebraicReal lam = dir == Direction::Forward ? b.modulus : b.modulus.reciprocal();
        const auto& sig = b.chain.weight_sig;
        const auto& max_sig = b.chain.weight_max_sig;
        const unsigned copies = b.block.kind == JordanBlockData::Kind::ComplexPair ? 2 : 1;
        for (unsigned pos = 0; pos < b.block.size; ++pos) {
            // best rate over the chain slots reachable toward the eigenvector;
            // per slot only the extreme support weights can dominate (the
            // shallowest when the coordinate grows, the deepest when it decays)
            GrowthRate best{lam, 0, sig[pos]};
            for (unsigned s = pos; s < b.block.size; ++s) {
                for (unsigned w : {sig[s], max_sig[s]}) {
                    GrowthRate cand{lam, s - pos, w};
                    if (rate_compare(cand, best) == Ordering::GT) best = cand;
                }
            }
            for (unsigned c = 0; c < copies; ++c) out.entries.push_back({bi, pos, best});
        }
    }
    return out;
}

MultisetMatch multiset_equal_up_to_power(std::vector<GrowthRate> d1, std::vector<GrowthRate> d2,
                                         unsigned bound) {
    if (d1.size() != d2.size())
        return {MultisetMatch::Kind::NotEqual, 0, 0, "multiset sizes differ"};
    auto less = [](const GrowthRate& a, const GrowthRate& b) {
        return rate_compare(a, b) == Ordering::LT;
    };
    std::sort(d1.begin(), d1.end(), less);
    std::sort(d2.begin(), d2.end(), less);
    const std::size_t n = d1.size();

    // polynomial degrees are invariant under the rescaling
    for (std::size_t i = 0; i < n; ++i)
        if (Rat(Int(d1[i].k), Int(d1[i].w)) != Rat(Int(d2[i].k), Int(d2[i].w)))
            return {MultisetMatch::Kind::NotEqual, 0, 0,
                    "polynomial degree differs at sorted position " + std::to_string(i + 1)};

    auto base_cmp = [](const GrowthRate& a, const GrowthRate& b) {
        return alg_pow_compare(a.lam, a.w, b.lam, b.w);
    };
    // base order/equality profiles must match (x -> x^s is strictly monotone)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (base_cmp(d1[i], d1[j]) != base_cmp(d2[i], d2[j]))
                return {MultisetMatch::Kind::NotEqual, 0, 0,
                        "base order profile differs at positions (" + std::to_string(i + 1) +
                            ", " + std::to_string(j + 1) + ")"};

    // base_i^p == base'_i^q  <=>  lam_i^(p * w'_i) == lam'_i^(q * w_i)
    auto matches = [&](unsigned p, unsigned q) {
        for (std::size_t i = 0; i < n; ++i)
            if (alg_compare(d1[i].lam.pow(p * d2[i].w), d2[i].lam.pow(q * d1[i].w)) !=
                Ordering::EQ)
                return false;
        return true;
    };

    if (matches(1, 1)) return {MultisetMatch::Kind::Equal, 1, 1, ""};
    bool any_equal = false;
    for (std::size_t i = 0; i < n && !any_equal; ++i)
        if (alg_pow_compare(d1[i].lam, d1[i].w, d2[i].lam, d2[i].w) == Ordering::EQ)
            any_equal = true;
    if (any_equal)
        return {MultisetMatch::Kind::NotEqual, 0, 0,
                "a shared base forces s = 1, but the multisets differ"};
    for (unsigned total = 3; total <= 2 * bound; ++total)
        for (unsigned p = 1; p < total && p <= bound; ++p) {
            unsigned q = total - p;
            if (q < 1 || q > bound) continue;
            if (boost::multiprecision::gcd(Int(p), Int(q)) != 1) continue;
            if (matches(p, q)) return {MultisetMatch::Kind::Equal, p, q, ""};
        }
    return {MultisetMatch::Kind::Undecided, 0, 0,
            "no rescaling power within bound " + std::to_string(bound)};
}

namespace {

// Rational real spanning vectors of each adapted slot (complex pairs yield
// two rational vectors spanning the invariant plane).
struct SlotVectors {
    std::vector<QVec> vectors;                            // per expanded slot
    std::vector<std::pair<std::size_t, unsigned>> which;  // (block, chain_pos)
};

SlotVectors rational_slot_vectors(const AdaptedBasis& basis) {
    SlotVectors out;
    const std::size_t n = basis.dim();
    for (std::size_t bi = 0; bi < basis.blocks.size(); ++bi) {
        const auto& b = basis.blocks[bi];
        const bool pair = b.block.kind == JordanBlockData::Kind::ComplexPair;
        if (!pair && b.field_poly.degree() > 1)
            throw UnsupportedEigenvalueError(
                "growth spaces require a rational spectrum (or rational complex pairs)");
        if (pair && !b.block.pair_re.is_rational())
            throw UnsupportedEigenvalueError("growth spaces require rational complex pairs");
        for (unsigned pos = 0; pos < b.block.size; ++pos) {
            const auto& v = b.chain.vectors[pos];
            if (!pair) {
                QVec q(n, Rat(0));
                for (std::size_t k = 0; k < n; ++k)
                    if (!v[k].empty()) q[k] = v[k][0];
                out.vectors.push_back(std::move(q));
                out.which.emplace_back(bi, pos);
            } else {
                // coords u + v*x over Q[x]/(quadratic): the invariant plane is
                // spanned rationally by (u + re*v) and v
                const Rat re = b.block.pair_re.rational_value();
                QVec q1(n, Rat(0)), q2(n, Rat(0));
                for (std::size_t k = 0; k < n; ++k) {
                    Rat u = v[k].size() > 0 ? v[k][0] : Rat(0);
                    Rat w = v[k].size() > 1 ? v[k][1] : Rat(0);
                    q1[k] = u + re * w;
                    q2[k] = w;
                }
                out.vectors.push_back(std::move(q1));
                out.which.emplace_back(bi, pos);
                out.vectors.push_back(std::move(q2));
                out.which.emplace_back(bi, pos);
            }
        }
    }
    return out;
}

}  // namespace

Fingerprint span_fingerprint(const QMat& span_rows, const StructureConstants& ambient,
                             const std::vector<unsigned>& ambient_weights) {
    (void)ambient_weights;
    RatField f;
    Fingerprint fp;
    QMat basis = span_basis(f, span_rows);
    fp.dim = static_cast<unsigned>(basis.size());

    // lower central series of the subalgebra, by exact span closure
    std::vector<QMat> series{basis};
    while (!series.back().empty()) {
        QMat rows;
        for (const auto& s : basis)
            for (const auto& u : series.back()) {
                QVec b = bracket(s, u, ambient);
                bool nonzero = false;
                for (const auto& x : b)
                    if (x != 0) nonzero = true;
                if (nonzero) rows.push_back(std::move(b));
            }
        QMat next = span_basis(f, rows);
        if (!series.back().empty() && next.size() >= series.back().size() &&
            series.size() > basis.size() + 1)
            throw Error("span_fingerprint: series does not terminate");
        series.push_back(next);
        if (series.back().empty()) break;
    }
    for (const auto& s : series) fp.lcs_dims.push_back(static_cast<unsigned>(s.size()));
    for (std::size_t i = 0; i + 1 < series.size(); ++i)
        fp.graded_dims.push_back(static_cast<unsigned>(series[i].size() - series[i + 1].size()));
    fp.abelianization_dim = fp.dim - (series.size() > 1 ? fp.lcs_dims[1] : 0);

    // center: combinations c of the basis with [sum c_r basis_r, basis_s] = 0
    // for every s; stack the bracket maps and take the kernel
    QMat stacked;  // rows indexed by (s, ambient coordinate), cols by r
    const std::size_t m = basis.size();
    const std::size_t n = ambient.dim();
    for (std::size_t s = 0; s < m; ++s) {
        for (std::size_t coord = 0; coord < n; ++coord) stacked.push_back(QVec(m, Rat(0)));
        for (std::size_t r = 0; r < m; ++r) {
            QVec b = bracket(basis[r], basis[s], ambient);
            for (std::size_t coord = 0; coord < n; ++coord)
                stacked[stacked.size() - n + coord][r] = b[coord];
        }
    }
    fp.center_dim = m == 0 ? 0 : static_cast<unsigned>(nullspace(f, stacked).size());
    return fp;
}

GrowthFiltration growth_filtration(const Endomorphism& e, const AdaptedBasis& basis) {
    RatField f;
    auto slot_vecs = rational_slot_vectors(basis);
    auto rates = basis_rates(basis, Direction::Forward);

    // expanded slot order of basis_rates matches rational_slot_vectors:
    // both enumerate blocks then chain positions (pairs twice)
    if (rates.entries.size() != slot_vecs.vectors.size())
        throw Error("growth_filtration: slot enumeration mismatch");

    // distinct exponential bases, ascending
    std::vector<GrowthRate> bases;
    for (const auto& en : rates.entries) bases.push_back({en.rate.lam, 0, en.rate.w});
    std::sort(bases.begin(), bases.end(), [](const GrowthRate& a, const GrowthRate& b) {
        return rate_compare(a, b) == Ordering::LT;
    });
    bases.erase(std::unique(bases.begin(), bases.end(),
                            [](const GrowthRate& a, const GrowthRate& b) {
                                return rate_compare(a, b) == Ordering::EQ;
                            }),
                bases.end());

    GrowthFiltration out;
    for (const auto& threshold : bases) {
        GrowthSpace space;
        space.base_lam = threshold.lam;
        space.base_w = threshold.w;
        QMat rows;
        for (std::size_t s = 0; s < rates.entries.size(); ++s) {
            GrowthRate slot_base{rates.entries[s].rate.lam, 0, rates.entries[s].rate.w};
            if (rate_compare(slot_base, threshold) != Ordering::GT) {
                space.member_slots.push_back(s);
                rows.push_back(slot_vecs.vectors[s]);
            }
        }
        space.span = span_basis(f, rows);
        // exact bracket closure (growth spaces are subalgebras)
        for (std::size_t i = 0; i < space.span.size(); ++i)
            for (std::size_t j = i + 1; j < space.span.size(); ++j) {
                QVec b = bracket(space.span[i], space.span[j], e.algebra.sc());
                if (!in_span(f, space.span, b))
                    throw SubalgebraClosureError(
                        "growth space at threshold position " +
                        std::to_string(out.spaces.size() + 1) + " is not bracket-closed");
            }
        space.fingerprint = span_fingerprint(space.span, e.algebra.sc(), e.algebra.weights());
        out.spaces.push_back(std::move(space));
    }
    return out;
}

std::optional<FiltrationMismatch> filtration_mismatch(const GrowthFiltration& f1,
                                                      const GrowthFiltration& f2) {
    if (f1.spaces.size() != f2.spaces.size())
        return FiltrationMismatch{0, "threshold counts differ (" +
                                         std::to_string(f1.spaces.size()) + " vs " +
                                         std::to_string(f2.spaces.size()) + ")"};
    for (std::size_t i = 0; i < f1.spaces.size(); ++i) {
        if (!(f1.spaces[i].fingerprint == f2.spaces[i].fingerprint)) {
            std::string d = "fingerprints differ at threshold position " + std::to_string(i + 1);
            return FiltrationMismatch{i + 1, std::move(d)};
        }
    }
    return std::nullopt;
}

}  // namespace nbcqi
