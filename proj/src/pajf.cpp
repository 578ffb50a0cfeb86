#include "nbcqi/pajf.hpp"

#include <algorithm>
#include <numeric>

#include "nbcqi/errors.hpp"

namespace nbcqi {

std::size_t AdaptedBasis::dim() const { return weights.size(); }

namespace {

template <class F>
using M = Mat<typename F::Elem>;
template <class F>
using V = Vec<typename F::Elem>;

// Basis rows of the intersection of span(rows) with the coordinate subspace
// {x : x_k = 0 for all k with w_k < grade}.
template <class F>
M<F> intersect_with_tail(const F& f, const M<F>& rows, const std::vector<unsigned>& w,
                         unsigned grade) {
    if (rows.empty()) return {};
    std::vector<std::size_t> shallow;
    for (std::size_t k = 0; k < w.size(); ++k)
        if (w[k] < grade) shallow.push_back(k);
    if (shallow.empty()) return rows;
    // constraints on combination coefficients c: sum_r c_r rows[r][k] = 0
    M<F> cons(shallow.size(), V<F>(rows.size(), f.zero()));
    for (std::size_t s = 0; s < shallow.size(); ++s)
        for (std::size_t r = 0; r < rows.size(); ++r) cons[s][r] = rows[r][shallow[s]];
    M<F> coeffs = nullspace(f, cons);
    M<F> out;
    for (const auto& c : coeffs) {
        V<F> x(w.size(), f.zero());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t k = 0; k < w.size(); ++k)
                x[k] = f.add(x[k], f.mul(c[r], rows[r][k]));
        out.push_back(std::move(x));
    }
    return out;
}

template <class F>
std::pair<unsigned, unsigned> vector_weight_range(const F& f, const V<F>& v,
                                                  const std::vector<unsigned>& w) {
    unsigned lo = 0, hi = 0;
    bool found = false;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!f.is_zero(v[k])) {
            if (!found) {
                lo = hi = w[k];
            } else {
                lo = std::min(lo, w[k]);
                hi = std::max(hi, w[k]);
            }
            found = true;
        }
    }
    if (!found) throw Error("vector_weight of zero vector");
    return {lo, hi};
}

template <class F>
struct ChainsResult {
    std::vector<std::vector<V<F>>> chains;  // each shallow -> deep
    std::vector<std::vector<unsigned>> sigs;
    std::vector<std::vector<unsigned>> max_sigs;
};

// Jordan chains of the nilpotent operator nmat restricted to its root space,
// with chain tops chosen greedily inside the deepest weight tail available.
// The result is verified against the exact tail dimensions of the root space.
template <class F>
ChainsResult<F> adapted_chains(const F& f, const M<F>& nmat, const std::vector<unsigned>& w) {
    const std::size_t n = nmat.size();
    const unsigned max_grade = *std::max_element(w.begin(), w.end());

    // kernels K_j = ker(nmat^j), j = 1..p
    std::vector<M<F>> kernels{{}};  // K_0 = 0
    M<F> power = nmat;
    while (true) {
        M<F> ker = nullspace(f, power);
        if (ker.size() == kernels.back().size()) break;
        kernels.push_back(span_basis(f, ker));
        power = mat_mul(f, power, nmat);
        if (kernels.size() > n + 1) throw Error("adapted_chains: kernel chain runaway");
    }
    const std::size_t p = kernels.size() - 1;

    struct Chain {
        V<F> top;
        std::size_t len;
    };
    std::vector<Chain> chains;

    for (std::size_t m = p; m >= 1; --m) {
        const std::size_t want = kernels[m].size() - kernels[m - 1].size();
        // level-m vectors of the longer chains already chosen
        M<F> spanned = kernels[m - 1];
        for (const auto& c : chains) {
            V<F> v = c.top;
            for (std::size_t i = 0; i < c.len - m; ++i) v = mat_vec(f, nmat, v);
            spanned.push_back(std::move(v));
        }
        std::size_t need = want - (spanned.size() - kernels[m - 1].size());
        // greedy: prefer candidates lying in the deepest weight tail
        for (unsigned grade = max_grade; grade >= 1 && need > 0; --grade) {
            M<F> candidates = intersect_with_tail(f, kernels[m], w, grade);
            for (const auto& cand : candidates) {
                if (need == 0) break;
                if (in_span(f, spanned, cand)) continue;
                chains.push_back({cand, m});
                spanned.push_back(cand);
                --need;
            }
        }
        if (need != 0) throw Error("adapted_chains: chain top selection failed");
        if (m == 1) break;
    }

    ChainsResult<F> out;
    for (const auto& c : chains) {
        std::vector<V<F>> vecs{c.top};
        for (std::size_t i = 1; i < c.len; ++i) vecs.push_back(mat_vec(f, nmat, vecs.back()));
        std::vector<unsigned> sig, max_sig;
        for (const auto& v : vecs) {
            auto [lo, hi] = vector_weight_range(f, v, w);
            sig.push_back(lo);
            max_sig.push_back(hi);
        }
        for (std::size_t i = 1; i < sig.size(); ++i)
            if (sig[i] < sig[i - 1])
                throw AdaptedBasisError("chain weights decrease along a chain");
        out.chains.push_back(std::move(vecs));
        out.sigs.push_back(std::move(sig));
        out.max_sigs.push_back(std::move(max_sig));
    }

    // adaptedness: for every grade, the chain vectors inside the tail must
    // span the intersection of the root space with that tail
    const M<F>& root_space = kernels[p];
    for (unsigned grade = 2; grade <= max_grade; ++grade) {
        std::size_t expect = intersect_with_tail(f, root_space, w, grade).size();
        std::size_t got = 0;
        for (const auto& sig : out.sigs)
            for (unsigned sw : sig)
                if (sw >= grade) ++got;
        if (got != expect)
            throw AdaptedBasisError(
                "greedy chains are not filtration-adapted at grade " + std::to_string(grade) +
                " (got " + std::to_string(got) + ", expected " + std::to_string(expect) + ")");
    }
    return out;
}

// Run fn over Q(root) with D5 modulus refinement for real irrational roots.
template <class Fn>
void with_number_field(IntPoly field_poly, AlgebraicReal* real_root, Fn&& fn) {
    for (int attempts = 0; attempts < 64; ++attempts) {
        try {
            NumberField nf(field_poly);
            fn(nf);
            return;
        } catch (const ModulusSplit& split) {
            if (real_root == nullptr)
                throw Error("unexpected modulus split over a complex quadratic");
            IntPoly f1 = split.factor.primitive();
            IntPoly f2 = field_poly.exact_div(f1).primitive();
            Rat lo = real_root->lower(), hi = real_root->upper();
            IntPoly keep =
                (f1.degree() >= 1 && f1.sign_at(lo) != 0 && f1.sign_at(hi) != 0 &&
                 f1.count_roots(lo, hi) == 1)
                    ? f1
                    : f2;
            field_poly = keep;
            *real_root = AlgebraicReal::from_poly_interval(field_poly, lo, hi);
        }
    }
    throw Error("number field refinement did not converge");
}

}  // namespace

AdaptedBasis adapted_jordan_basis(const QMat& m, const std::vector<unsigned>& weights,
                                  unsigned degree_bound) {
    const std::size_t n = m.size();
    if (weights.size() != n) throw Error("adapted_jordan_basis: weights/matrix mismatch");
    IntPoly cp = char_poly(m);
    AdaptedBasis out;
    out.weights = weights;

    for (auto& root : eigen_roots(cp, degree_bound)) {
        std::vector<AdaptedBlock> blocks;
        if (!root.complex_pair && root.value.is_rational()) {
            RatField f;
            QMat nm = m;
            const Rat lam = root.value.rational_value();
            for (std::size_t i = 0; i < n; ++i) nm[i][i] -= lam;
            auto res = adapted_chains(f, nm, weights);
            NumberField lin(root.field_poly);
            for (std::size_t c = 0; c < res.chains.size(); ++c) {
                AdaptedBlock b;
                b.block.kind = JordanBlockData::Kind::Real;
                b.block.eigenvalue = root.value;
                b.block.size = static_cast<unsigned>(res.chains[c].size());
                b.modulus = root.value.abs();
                b.field_poly = root.field_poly;
                b.root_approx = root.value.to_double();
                for (const auto& v : res.chains[c]) {
                    Vec<NFElem> nv(n);
                    for (std::size_t k = 0; k < n; ++k) nv[k] = lin.from_rat(v[k]);
                    b.chain.vectors.push_back(std::move(nv));
                }
                b.chain.weight_sig = res.sigs[c];
                b.chain.weight_max_sig = res.max_sigs[c];
                blocks.push_back(std::move(b));
            }
        } else {
            AlgebraicReal* real_ptr = root.complex_pair ? nullptr : &root.value;
            with_number_field(root.field_poly, real_ptr, [&](const NumberField& nf) {
                NFFieldRef f{&nf};
                Mat<NFElem> nm(n, Vec<NFElem>(n));
                NFElem lam = nf.generator();
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) {
                        nm[i][j] = nf.from_rat(m[i][j]);
                        if (i == j) nm[i][j] = nf.sub(nm[i][j], lam);
                    }
                auto res = adapted_chains(f, nm, weights);
                std::vector<AdaptedBlock> got;
                for (std::size_t c = 0; c < res.chains.size(); ++c) {
                    AdaptedBlock b;
                    b.block.size = static_cast<unsigned>(res.chains[c].size());
                    b.field_poly = nf.modulus();
                    if (root.complex_pair) {
                        b.block.kind = JordanBlockData::Kind::ComplexPair;
                        b.block.pair_re = root.pair_re;
                        b.block.pair_im = root.pair_im;
                        b.modulus = root.pair_re.mul(root.pair_re)
                                        .add(root.pair_im.mul(root.pair_im))
                                        .sqrt();
                        b.root_approx = root.pair_re.to_double();
                        b.imag_approx = root.pair_im.to_double();
                    } else {
                        b.block.kind = JordanBlockData::Kind::Real;
                        b.block.eigenvalue = root.value;
                        b.modulus = root.value.abs();
                        b.root_approx = root.value.to_double();
                    }
                    b.chain.vectors = std::move(res.chains[c]);
                    b.chain.weight_sig = res.sigs[c];
                    b.chain.weight_max_sig = res.max_sigs[c];
                    got.push_back(std::move(b));
                }
                blocks = std::move(got);
            });
        }
        for (auto& b : blocks) out.blocks.push_back(std::move(b));
    }

    // canonical block order: modulus asc, size asc, weight signature lex asc
    std::stable_sort(out.blocks.begin(), out.blocks.end(),
                     [](const AdaptedBlock& a, const AdaptedBlock& b) {
                         Ordering o = alg_compare(a.modulus, b.modulus);
                         if (o != Ordering::EQ) return o == Ordering::LT;
                         if (a.block.size != b.block.size) return a.block.size < b.block.size;
                         return a.chain.weight_sig < b.chain.weight_sig;
                     });

    std::size_t total = 0;
    for (const auto& b : out.blocks)
        total += b.chain.vectors.size() *
                 (b.block.kind == JordanBlockData::Kind::ComplexPair ? 2 : 1);
    if (total != n) throw Error("adapted_jordan_basis: chain dimensions do not sum to n");
    return out;
}

AdaptedBasis adapted_jordan_basis(const Endomorphism& e, unsigned degree_bound) {
    auto check = is_homomorphism(e);
    if (!check.ok) throw Error("adapted_jordan_basis: endomorphism is not a homomorphism");
    if (!weakly_preserves_grading(e))
        throw Error("adapted_jordan_basis: endomorphism does not weakly preserve the grading");
    return adapted_jordan_basis(e.matrix, e.algebra.weights(), degree_bound);
}

Pajf compute_pajf(const AdaptedBasis& basis, bool weight_ascending) {
    Pajf out;
    out.weight_ascending = weight_ascending;

    // expand complex pairs into two identical absolute entries
    struct SlotRef {
        std::size_t block;
        unsigned pos;
        unsigned weight;
    };
    std::vector<SlotRef> original;  // canonical original slot order
    for (std::size_t bi = 0; bi < basis.blocks.size(); ++bi) {
        const auto& b = basis.blocks[bi];
        const unsigned copies = b.block.kind == JordanBlockData::Kind::ComplexPair ? 2 : 1;
        for (unsigned c = 0; c < copies; ++c) {
            out.blocks.push_back({b.modulus, b.block.size, b.chain.weight_sig});
            for (unsigned pos = 0; pos < b.block.size; ++pos)
                original.push_back({out.blocks.size() - 1, pos, b.chain.weight_sig[pos]});
        }
    }

    const std::size_t n = original.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (original[a].weight != original[b].weight)
            return weight_ascending ? original[a].weight < original[b].weight
                                    : original[a].weight > original[b].weight;
        return false;  // stable within equal weight: original index order
    });
    out.sigma.assign(n, 0);
    for (std::size_t s = 0; s < n; ++s) out.sigma[order[s]] = s;

    // slots in output order, with chain links mapped through sigma
    std::vector<std::size_t> slot_of_chain_pos(n);  // original slot index lookup
    out.slots.resize(n);
    for (std::size_t orig = 0; orig < n; ++orig) {
        const auto& ref = original[orig];
        PajfSlot slot;
        slot.weight = ref.weight;
        slot.modulus = out.blocks[ref.block].modulus;
        slot.block = ref.block;
        slot.chain_pos = ref.pos;
        out.slots[out.sigma[orig]] = std::move(slot);
    }
    for (std::size_t orig = 0; orig < n; ++orig) {
        const auto& ref = original[orig];
        if (ref.pos + 1 < out.blocks[ref.block].size)
            out.slots[out.sigma[orig]].link_next = out.sigma[orig + 1];
    }
    return out;
}

Pajf compute_pajf(const Endomorphism& e, bool weight_ascending, unsigned degree_bound) {
    return compute_pajf(adapted_jordan_basis(e, degree_bound), weight_ascending);
}

std::vector<std::vector<AlgebraicReal>> pajf_matrix(const Pajf& p) {
    const std::size_t n = p.slots.size();
    std::vector<std::vector<AlgebraicReal>> m(n, std::vector<AlgebraicReal>(n, AlgebraicReal(0)));
    for (std::size_t s = 0; s < n; ++s) {
        m[s][s] = p.slots[s].modulus;
        if (p.slots[s].link_next) m[s][*p.slots[s].link_next] = AlgebraicReal(1);
    }
    return m;
}

bool pajf_equal(const Pajf& a, const Pajf& b) {
    if (a.weight_ascending != b.weight_ascending)
        throw Error("pajf_equal: mixed weight-order conventions");
    if (a.slots.size() != b.slots.size()) return false;
    for (std::size_t s = 0; s < a.slots.size(); ++s) {
        const auto& x = a.slots[s];
        const auto& y = b.slots[s];
        if (x.weight != y.weight || x.link_next != y.link_next) return false;
        if (!alg_eq(x.modulus, y.modulus)) return false;
    }
    return true;
}

PowerEquivalence pajf_power_equivalent(const Pajf& p1, const Pajf& p2, unsigned bound) {
    if (p1.weight_ascending != p2.weight_ascending)
        throw Error("pajf_power_equivalent: mixed weight-order conventions");
    if (p1.slots.size() != p2.slots.size())
        return {PowerEquivalence::Kind::NotEquivalent, 0, 0, "dimension mismatch"};
    const std::size_t n = p1.slots.size();
    // structure: weights and chain topology must agree slot-for-slot
    for (std::size_t s = 0; s < n; ++s) {
        if (p1.slots[s].weight != p2.slots[s].weight ||
            p1.slots[s].link_next != p2.slots[s].link_next)
            return {PowerEquivalence::Kind::NotEquivalent, 0, 0,
                    "block structure differs at slot " + std::to_string(s + 1)};
    }
    // powers preserve order and equality of positive moduli, so the pairwise
    // comparison profile must match
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Ordering o1 = alg_compare(p1.slots[i].modulus, p1.slots[j].modulus);
            Ordering o2 = alg_compare(p2.slots[i].modulus, p2.slots[j].modulus);
            if (o1 != o2)
                return {PowerEquivalence::Kind::NotEquivalent, 0, 0,
                        "modulus order profile differs at slots (" + std::to_string(i + 1) + ", " +
                            std::to_string(j + 1) + ")"};
        }
    bool all_equal = true;
    bool any_equal = false;
    std::size_t unequal_slot = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (alg_eq(p1.slots[s].modulus, p2.slots[s].modulus))
            any_equal = true;
        else {
            all_equal = false;
            unequal_slot = s;
        }
    }
    if (all_equal) return {PowerEquivalence::Kind::Equivalent, 1, 1, ""};
    if (any_equal)
        // some slot forces r1 = r2, but then every modulus pair must already
        // be equal, and one is not: proven negative
        return {PowerEquivalence::Kind::NotEquivalent, 0, 0,
                "a shared modulus forces equal exponents, but slot " +
                    std::to_string(unequal_slot + 1) + " differs"};
    for (unsigned total = 2; total <= 2 * bound; ++total)
        for (unsigned r1 = 1; r1 < total && r1 <= bound; ++r1) {
            unsigned r2 = total - r1;
            if (r2 < 1 || r2 > bound) continue;
            bool ok = true;
            for (std::size_t s = 0; s < n && ok; ++s)
                if (alg_compare(p1.slots[s].modulus.pow(r1), p2.slots[s].modulus.pow(r2)) !=
                    Ordering::EQ)
                    ok = false;
            if (ok) return {PowerEquivalence::Kind::Equivalent, r1, r2, ""};
        }
    return {PowerEquivalence::Kind::Undecided, 0, 0,
            "no exponent pair within bound " + std::to_string(bound)};
}

}  // namespace nbcqi
