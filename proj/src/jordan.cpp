#include "nbcqi/jordan.hpp"

#include <algorithm>

#include "nbcqi/errors.hpp"

namespace nbcqi {

namespace {

// Multiplicity of a rational root by repeated exact division.
unsigned rational_multiplicity(IntPoly p, const Rat& r) {
    unsigned m = 0;
    IntPoly lin = IntPoly::linear_root(r);
    while (!p.is_zero() && p.sign_at(r) == 0) {
        p = p.exact_div(lin);
        ++m;
    }
    return m;
}

// Is the algebraic number a root of g?
bool is_root_of(const IntPoly& g, const AlgebraicReal& a) {
    if (a.is_rational()) return g.sign_at(a.rational_value()) == 0;
    IntPoly c = IntPoly::gcd(g, a.defining_poly());
    if (c.degree() < 1) return false;
    Rat lo = a.lower(), hi = a.upper();
    // c divides a's defining polynomial, whose interval endpoints are non-roots
    return c.count_roots(lo, hi) >= 1;
}

// Multiplicity of an irrational root via the gcd-derivative chain: a root of
// multiplicity m in p remains a root of the first m-1 repeated gcds.
unsigned algebraic_multiplicity(const IntPoly& p, const AlgebraicReal& a) {
    IntPoly g = p;
    unsigned m = 0;
    while (g.degree() >= 1 && is_root_of(g, a)) {
        ++m;
        g = IntPoly::gcd(g, g.derivative());
    }
    return m;
}

// Multiplicity of an irreducible factor (used for complex quadratic pairs).
unsigned factor_multiplicity(const IntPoly& p, const IntPoly& factor) {
    IntPoly q = p;
    unsigned mult = 0;
    while (true) {
        IntPoly g = IntPoly::gcd(q, factor);
        if (g.degree() != factor.degree()) break;
        q = q.exact_div(factor);
        ++mult;
    }
    if (mult == 0) throw Error("multiplicity: factor does not divide polynomial");
    return mult;
}

}  // namespace

std::vector<EigenRoot> eigen_roots(const IntPoly& p, unsigned degree_bound) {
    std::vector<EigenRoot> out;
    IntPoly sf = p.squarefree_part();

    // rational roots first: they split off exactly
    IntPoly rem = sf;
    std::vector<Rat> rational_roots;
    for (const auto& iso : isolate_real_roots(sf)) {
        AlgebraicReal a = AlgebraicReal::from_poly_interval(sf, iso.lo, iso.hi);
        if (a.is_rational()) rational_roots.push_back(a.rational_value());
    }
    for (const auto& r : rational_roots) {
        rem = rem.exact_div(IntPoly::linear_root(r));
        EigenRoot er;
        er.value = AlgebraicReal(r);
        er.field_poly = IntPoly::linear_root(r);
        er.multiplicity = rational_multiplicity(p, r);
        out.push_back(std::move(er));
    }

    if (rem.degree() >= 1) {
        auto irrational = isolate_real_roots(rem);
        const int n_complex = rem.degree() - static_cast<int>(irrational.size());
        if (static_cast<unsigned>(rem.degree()) > degree_bound)
            throw UnsupportedEigenvalueError("eigenvalue degree " + std::to_string(rem.degree()) +
                                             " exceeds the configured bound " +
                                             std::to_string(degree_bound));
        for (const auto& iso : irrational) {
            EigenRoot er;
            er.value = AlgebraicReal::from_poly_interval(rem, iso.lo, iso.hi);
            er.field_poly = rem;
            er.multiplicity = algebraic_multiplicity(p, er.value);
            if (er.multiplicity == 0) throw Error("eigen_roots: internal multiplicity failure");
            out.push_back(std::move(er));
        }
        if (n_complex > 0) {
            if (rem.degree() == 2 && irrational.empty()) {
                // a x^2 + b x + c with negative discriminant
                Rat a(rem[2]), b(rem[1]), c(rem[0]);
                Rat re = -b / (2 * a);
                Rat im_sq = c / a - re * re;
                EigenRoot er;
                er.complex_pair = true;
                er.pair_re = AlgebraicReal(re);
                er.pair_im = AlgebraicReal(im_sq).sqrt();
                er.field_poly = rem;
                er.multiplicity = factor_multiplicity(p, rem);
                out.push_back(std::move(er));
            } else {
                throw UnsupportedEigenvalueError(
                    "complex eigenvalue pairs are supported only as roots of an isolated "
                    "quadratic factor");
            }
        }
    }
    return out;
}

namespace {

// Rank of (M - lambda I)^k over the field of lambda, for k = 1.. until the
// rank stabilizes. Returns ranks r_0 = n, r_1, ..., r_p (stable).
template <class F>
std::vector<std::size_t> rank_chain(const F& f, const Mat<typename F::Elem>& n_mat) {
    const std::size_t n = n_mat.size();
    std::vector<std::size_t> ranks{n};
    Mat<typename F::Elem> power = n_mat;
    while (true) {
        std::size_t r = mat_rank(f, power);
        ranks.push_back(r);
        if (r == ranks[ranks.size() - 2]) break;
        power = mat_mul(f, power, n_mat);
    }
    ranks.pop_back();  // drop the duplicated stable entry
    return ranks;
}

// Block sizes from a rank chain: #blocks of size >= k = r_{k-1} - r_k.
std::vector<unsigned> sizes_from_ranks(const std::vector<std::size_t>& ranks) {
    std::vector<unsigned> at_least;  // index k-1: #blocks of size >= k
    for (std::size_t k = 1; k < ranks.size(); ++k)
        at_least.push_back(static_cast<unsigned>(ranks[k - 1] - ranks[k]));
    std::vector<unsigned> sizes;
    for (std::size_t k = 0; k < at_least.size(); ++k) {
        unsigned next = (k + 1 < at_least.size()) ? at_least[k + 1] : 0;
        for (unsigned c = 0; c < at_least[k] - next; ++c)
            sizes.push_back(static_cast<unsigned>(k + 1));
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

}  // namespace

RealJordanData jordan_structure(const QMat& m, unsigned degree_bound) {
    RealJordanData data;
    data.characteristic = char_poly(m);
    const std::size_t n = m.size();

    for (auto& root : eigen_roots(data.characteristic, degree_bound)) {
        std::vector<unsigned> sizes;
        if (!root.complex_pair && root.value.is_rational()) {
            RatField f;
            QMat nm = m;
            const Rat lam = root.value.rational_value();
            for (std::size_t i = 0; i < n; ++i) nm[i][i] -= lam;
            sizes = sizes_from_ranks(rank_chain(f, nm));
        } else {
            // work in Q[x]/(field_poly); a ModulusSplit refines the defining
            // polynomial of this root and restarts
            IntPoly fp = root.field_poly;
            AlgebraicReal val = root.value;
            for (int attempts = 0; attempts < 64; ++attempts) {
                try {
                    NumberField nf(fp);
                    NFFieldRef f{&nf};
                    Mat<NFElem> nm(n, Vec<NFElem>(n));
                    NFElem lam = nf.generator();
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < n; ++j) {
                            nm[i][j] = nf.from_rat(m[i][j]);
                            if (i == j) nm[i][j] = nf.sub(nm[i][j], lam);
                        }
                    sizes = sizes_from_ranks(rank_chain(f, nm));
                    break;
                } catch (const ModulusSplit& split) {
                    if (root.complex_pair)
                        throw Error("jordan_structure: unexpected split of a complex quadratic");
                    // keep the factor that contains our root
                    IntPoly f1 = split.factor.primitive();
                    IntPoly f2 = fp.exact_div(f1).primitive();
                    Rat lo = val.lower(), hi = val.upper();
                    IntPoly keep =
                        (f1.sign_at(lo) != 0 && f1.sign_at(hi) != 0 && f1.count_roots(lo, hi) == 1)
                            ? f1
                            : f2;
                    fp = keep;
                    val = AlgebraicReal::from_poly_interval(fp, lo, hi);
                }
            }
            if (sizes.empty()) throw Error("jordan_structure: rank chain did not converge");
            root.field_poly = fp;
            if (!root.complex_pair) root.value = val;
        }

        unsigned total = 0;
        for (auto s : sizes) total += s;
        if (total != root.multiplicity)
            throw Error("jordan_structure: block sizes disagree with multiplicity");

        for (auto s : sizes) {
            JordanBlockData b;
            b.size = s;
            if (root.complex_pair) {
                b.kind = JordanBlockData::Kind::ComplexPair;
                b.pair_re = root.pair_re;
                b.pair_im = root.pair_im;
            } else {
                b.kind = JordanBlockData::Kind::Real;
                b.eigenvalue = root.value;
            }
            data.blocks.push_back(std::move(b));
        }
    }

    // deterministic order: eigenvalue ascending (pairs by real part), size asc
    std::stable_sort(data.blocks.begin(), data.blocks.end(),
                     [](const JordanBlockData& a, const JordanBlockData& b) {
                         const AlgebraicReal& va =
                             a.kind == JordanBlockData::Kind::Real ? a.eigenvalue : a.pair_re;
                         const AlgebraicReal& vb =
                             b.kind == JordanBlockData::Kind::Real ? b.eigenvalue : b.pair_re;
                         Ordering o = alg_compare(va, vb);
                         if (o != Ordering::EQ) return o == Ordering::LT;
                         return a.size < b.size;
                     });

    unsigned dim_total = 0;
    for (const auto& b : data.blocks) dim_total += b.real_dimension();
    if (dim_total != n) throw Error("jordan_structure: block dimensions do not sum to n");
    return data;
}

std::vector<AbsBlock> absolute_jordan_form(const RealJordanData& d) {
    std::vector<AbsBlock> out;
    for (const auto& b : d.blocks) {
        if (b.kind == JordanBlockData::Kind::Real) {
            out.push_back({b.eigenvalue.abs(), b.size});
        } else {
            AlgebraicReal mod =
                b.pair_re.mul(b.pair_re).add(b.pair_im.mul(b.pair_im)).sqrt();
            out.push_back({mod, b.size});
            out.push_back({mod, b.size});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const AbsBlock& a, const AbsBlock& b) {
        Ordering o = alg_compare(a.modulus, b.modulus);
        if (o != Ordering::EQ) return o == Ordering::LT;
        return a.size < b.size;
    });
    return out;
}

}  // namespace nbcqi
