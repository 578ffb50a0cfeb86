#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "nbcqi/errors.hpp"
#include "nbcqi/growth.hpp"

using namespace nbcqi;
namespace fx = nbcqi::fixtures;

namespace {

GrowthRate gr(int lam, unsigned k, unsigned w) { return {AlgebraicReal(lam), k, w}; }

bool multisets_match(std::vector<GrowthRate> a, std::vector<GrowthRate> b) {
    if (a.size() != b.size()) return false;
    auto less = [](const GrowthRate& x, const GrowthRate& y) {
        return rate_compare(x, y) == Ordering::LT;
    };
    std::sort(a.begin(), a.end(), less);
    std::sort(b.begin(), b.end(), less);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!rate_eq(a[i], b[i])) return false;
    return true;
}

}  // namespace

TEST_CASE("rate_compare worked examples") {
    // (3^t)^(1/2) < t 2^t since sqrt(3) < 2
    CHECK(rate_compare(gr(3, 0, 2), gr(2, 1, 1)) == Ordering::LT);
    // (4^t)^(1/2) == 2^t as classes
    CHECK(rate_compare(gr(4, 0, 2), gr(2, 0, 1)) == Ordering::EQ);
    // (t^2 2^t)^(1/2) < t 2^t since sqrt(2) < 2
    CHECK(rate_compare(gr(2, 2, 2), gr(2, 1, 1)) == Ordering::LT);
    // same base: polynomial degree decides
    CHECK(rate_compare(gr(2, 1, 1), gr(2, 0, 1)) == Ordering::GT);
    CHECK(rate_compare(gr(4, 2, 2), gr(2, 1, 1)) == Ordering::EQ);
}

TEST_CASE("rate_compare is a total order, cross-checked numerically") {
    std::mt19937_64 rng(20250811);
    std::uniform_int_distribution<int> lam(2, 9);
    std::uniform_int_distribution<unsigned> kk(0, 4);
    std::uniform_int_distribution<unsigned> ww(1, 4);
    auto random_rate = [&]() { return gr(lam(rng), kk(rng), ww(rng)); };
    auto log_value = [](const GrowthRate& r, double t) {
        return (static_cast<double>(r.k) * std::log(t) + t * std::log(r.lam.to_double())) /
               static_cast<double>(r.w);
    };
    for (int iter = 0; iter < 1000; ++iter) {
        GrowthRate a = random_rate(), b = random_rate(), c = random_rate();
        Ordering ab = rate_compare(a, b);
        CHECK(static_cast<int>(ab) == -static_cast<int>(rate_compare(b, a)));
        Ordering bc = rate_compare(b, c), ac = rate_compare(a, c);
        if (ab == Ordering::LT && bc == Ordering::LT) CHECK(ac == Ordering::LT);
        if (ab == Ordering::EQ && bc == Ordering::EQ) CHECK(ac == Ordering::EQ);
        // dominance agrees with evaluation at t = 1e6 whenever the
        // exponential parts separate there
        if (ab != Ordering::EQ) {
            double v6 = log_value(a, 1e6) - log_value(b, 1e6);
            if (std::fabs(v6) > 1e-6) CHECK((v6 > 0) == (ab == Ordering::GT));
        }
    }
}

TEST_CASE("basis_rates on the worked heisenberg endomorphism") {
    AdaptedBasis b = adapted_jordan_basis(fx::heisenberg_phi());
    SUBCASE("forward: { t 2^t, 2^t, (4^t)^(1/2) }") {
        auto d = basis_rates(b, Direction::Forward);
        REQUIRE(d.entries.size() == 3);
        CHECK(multisets_match(d.multiset(), {gr(2, 1, 1), gr(2, 0, 1), gr(4, 0, 2)}));
        // the z-direction rate is (4^t)^(1/2), equivalently 2^t as a class
        bool found = false;
        for (const auto& en : d.entries)
            if (en.rate.w == 2) {
                CHECK(alg_eq(en.rate.lam, AlgebraicReal(4)));
                CHECK(en.rate.k == 0);
                CHECK(rate_eq(en.rate, gr(2, 0, 1)));
                found = true;
            }
        CHECK(found);
    }
    SUBCASE("backward uses reciprocal moduli and the deepest supported weight") {
        // the eigenvalue-2 chain vectors carry nonzero center coordinates;
        // in the decaying direction the center component |.|^(1/2) dominates
        auto d = basis_rates(b, Direction::Backward);
        std::vector<GrowthRate> expect = {
            {AlgebraicReal(Rat(1, 2)), 1, 2},
            {AlgebraicReal(Rat(1, 2)), 0, 2},
            {AlgebraicReal(Rat(1, 4)), 0, 2},
        };
        CHECK(multisets_match(d.multiset(), expect));
    }
}

TEST_CASE("basis_rates on a one-dimensional scaling") {
    StructureConstants sc(1);
    GradedAlgebra line = GradedAlgebra::build(sc);
    Endomorphism e{line, parse_matrix({{"2"}})};
    auto d = basis_rates(adapted_jordan_basis(e), Direction::Forward);
    REQUIRE(d.entries.size() == 1);
    CHECK(rate_eq(d.entries[0].rate, gr(2, 0, 1)));
}

TEST_CASE("basis_rates of the nine-dimensional example") {
    auto d = basis_rates(adapted_jordan_basis(fx::h3_diag({1, 11, 6, 3, 15, 9, 7, 9, 8})),
                         Direction::Forward);
    // effective bases are 2^n for n in {1,11,6,3,15,9,7,9,8}; all degrees 0
    std::vector<GrowthRate> expect;
    for (unsigned n : {1u, 11u, 3u, 15u, 7u, 9u})
        expect.push_back({AlgebraicReal(Rat(pow_int(Int(2), n))), 0, 1});
    for (unsigned n : {6u, 9u, 8u})
        expect.push_back({AlgebraicReal(Rat(pow_int(Int(2), 2 * n))), 0, 2});
    CHECK(multisets_match(d.multiset(), expect));
}

TEST_CASE("mixed-weight chains pick the dominant reachable slot") {
    // chain weights (1,2,3) at modulus 2 and (1,1,2) at modulus 3
    AdaptedBasis b = adapted_jordan_basis(fx::formal6_chained());
    auto d = basis_rates(b, Direction::Forward);
    std::vector<GrowthRate> expect = {
        gr(2, 0, 1), gr(2, 0, 2), gr(2, 0, 3),  // 2-chain: 2^t, (2^t)^(1/2), (2^t)^(1/3)
        gr(3, 1, 1), gr(3, 0, 1), gr(3, 0, 2),  // 3-chain: t 3^t, 3^t, (3^t)^(1/2)
    };
    CHECK(multisets_match(d.multiset(), expect));
}

TEST_CASE("every divergence multiset contains a pure exponential class") {
    std::vector<Endomorphism> corpus = {
        fx::heisenberg_phi(),
        fx::formal6_chained(),
        fx::formal6_split(),
        fx::h3_diag({1, 11, 6, 3, 15, 9, 7, 9, 8}),
        fx::fourstep_diag({1, 5, 3, 2, 4, 3}),
        fx::fourstep_diag({1, 3, 2, 3, 5, 4}),
    };
    for (const auto& e : corpus) {
        REQUIRE(is_unipotent_free(e));
        auto d = basis_rates(adapted_jordan_basis(e), Direction::Forward);
        bool pure = false;
        for (const auto& en : d.entries)
            if (en.rate.k == 0) pure = true;
        CHECK(pure);
    }
}

TEST_CASE("rates are invariant under re-basing inside root spaces") {
    // the four-step diagonal has a three-dimensional eigenvalue-64 root space
    // spanned by chain vectors of equal weight; any invertible recombination
    // is another valid adapted basis and must give the same multiset
    Endomorphism e = fx::fourstep_diag({1, 5, 3, 2, 4, 3});
    AdaptedBasis basis = adapted_jordan_basis(e);
    auto reference = basis_rates(basis, Direction::Forward).multiset();
    std::mt19937_64 rng(59);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int iter = 0; iter < 20; ++iter) {
        AdaptedBasis rebased = basis;
        // collect the size-1 blocks with modulus 64 (weight-2 slots z, c, r)
        std::vector<std::size_t> slots;
        for (std::size_t bi = 0; bi < rebased.blocks.size(); ++bi)
            if (alg_eq(rebased.blocks[bi].modulus, AlgebraicReal(64))) slots.push_back(bi);
        REQUIRE(slots.size() == 3);
        QMat mix(3, QVec(3));
        for (auto& row : mix)
            for (auto& v : row) v = c(rng);
        if (det(mix) == 0) continue;
        std::vector<Vec<NFElem>> old;
        for (auto bi : slots) old.push_back(rebased.blocks[bi].chain.vectors[0]);
        for (std::size_t r = 0; r < 3; ++r) {
            Vec<NFElem> nv(e.dim());
            for (std::size_t k = 0; k < e.dim(); ++k) {
                Rat acc(0);
                for (std::size_t s = 0; s < 3; ++s)
                    if (!old[s][k].empty()) acc += mix[r][s] * old[s][k][0];
                nv[k] = acc == 0 ? NFElem{} : NFElem{acc};
            }
            rebased.blocks[slots[r]].chain.vectors[0] = nv;
            // recompute the weight range of the recombined vector
            unsigned lo = 0, hi = 0;
            bool found = false;
            for (std::size_t k = 0; k < e.dim(); ++k)
                if (!nv[k].empty()) {
                    unsigned w = e.algebra.weights()[k];
                    lo = found ? std::min(lo, w) : w;
                    hi = found ? std::max(hi, w) : w;
                    found = true;
                }
            rebased.blocks[slots[r]].chain.weight_sig = {lo};
            rebased.blocks[slots[r]].chain.weight_max_sig = {hi};
        }
        CHECK(multisets_match(basis_rates(rebased, Direction::Forward).multiset(), reference));
    }
}

TEST_CASE("multiset_equal_up_to_power") {
    auto d_phi = basis_rates(adapted_jordan_basis(fx::h3_diag({1, 11, 6, 3, 15, 9, 7, 9, 8})),
                             Direction::Forward)
                     .multiset();
    SUBCASE("a multiset equals itself at s = 1") {
        auto m = multiset_equal_up_to_power(d_phi, d_phi, 12);
        CHECK(m.kind == MultisetMatch::Kind::Equal);
        CHECK(m.p == 1);
        CHECK(m.q == 1);
    }
    SUBCASE("the nine-dimensional pair agrees at s = 1") {
        auto d_theta =
            basis_rates(adapted_jordan_basis(fx::h3_diag({7, 11, 9, 1, 15, 8, 3, 9, 6})),
                        Direction::Forward)
                .multiset();
        auto m = multiset_equal_up_to_power(d_phi, d_theta, 12);
        CHECK(m.kind == MultisetMatch::Kind::Equal);
        CHECK(m.p == 1);
        CHECK(m.q == 1);
    }
    SUBCASE("squaring every base is recovered as s = 2") {
        std::vector<GrowthRate> squared;
        for (const auto& r : d_phi) squared.push_back({r.lam.pow(2), r.k, r.w});
        auto m = multiset_equal_up_to_power(d_phi, squared, 12);
        CHECK(m.kind == MultisetMatch::Kind::Equal);
        CHECK(m.p == 2);
        CHECK(m.q == 1);
    }
    SUBCASE("four-step pair: equal at s = 1") {
        auto a = basis_rates(adapted_jordan_basis(fx::fourstep_diag({1, 5, 3, 2, 4, 3})),
                             Direction::Forward)
                     .multiset();
        auto b = basis_rates(adapted_jordan_basis(fx::fourstep_diag({1, 3, 2, 3, 5, 4})),
                             Direction::Forward)
                     .multiset();
        auto m = multiset_equal_up_to_power(a, b, 12);
        CHECK(m.kind == MultisetMatch::Kind::Equal);
        CHECK(m.p == 1);
        CHECK(m.q == 1);
    }
    SUBCASE("a genuinely different multiset is a proven negative") {
        auto variant =
            basis_rates(adapted_jordan_basis(fx::h3_diag({1, 11, 6, 3, 15, 9, 11, 9, 10})),
                        Direction::Forward)
                .multiset();
        auto m = multiset_equal_up_to_power(d_phi, variant, 12);
        CHECK(m.kind == MultisetMatch::Kind::NotEqual);
    }
    SUBCASE("polynomial degrees must match exactly") {
        std::vector<GrowthRate> a = {gr(2, 0, 1), gr(2, 1, 1)};
        std::vector<GrowthRate> b = {gr(2, 0, 1), gr(2, 2, 1)};
        auto m = multiset_equal_up_to_power(a, b, 12);
        CHECK(m.kind == MultisetMatch::Kind::NotEqual);
    }
    SUBCASE("incommensurable bases are undecided within the bound") {
        std::vector<GrowthRate> a = {gr(2, 0, 1)};
        std::vector<GrowthRate> b = {gr(3, 0, 1)};
        auto m = multiset_equal_up_to_power(a, b, 12);
        CHECK(m.kind == MultisetMatch::Kind::Undecided);
    }
}

TEST_CASE("growth filtration of the nine-dimensional examples") {
    Endomorphism phi = fx::h3_diag({1, 11, 6, 3, 15, 9, 7, 9, 8});
    AdaptedBasis basis = adapted_jordan_basis(phi);
    GrowthFiltration f = growth_filtration(phi, basis);
    REQUIRE(f.spaces.size() == 8);
    RatField ff;
    auto slot = fx::h3_slot_of_label();

    auto coord_span = [&](const std::vector<std::size_t>& labels) {
        QMat rows;
        for (auto l : labels) {
            QVec v(9, Rat(0));
            v[slot[l]] = 1;
            rows.push_back(std::move(v));
        }
        return rows;
    };
    // thresholds 2^1, 2^3, 2^6, 2^7, 2^8, 2^9, 2^11, 2^15 with spans
    // (a1), (a1,a4), +a3, +a7, +a9, +a6+a8, +a2, everything (0-based labels)
    CHECK(same_span(ff, f.spaces[0].span, coord_span({0})));
    CHECK(same_span(ff, f.spaces[1].span, coord_span({0, 3})));
    CHECK(same_span(ff, f.spaces[2].span, coord_span({0, 3, 2})));
    CHECK(same_span(ff, f.spaces[3].span, coord_span({0, 3, 2, 6})));
    CHECK(same_span(ff, f.spaces[4].span, coord_span({0, 3, 2, 6, 8})));
    CHECK(same_span(ff, f.spaces[5].span, coord_span({0, 3, 2, 6, 8, 5, 7})));
    CHECK(same_span(ff, f.spaces[6].span, coord_span({0, 3, 2, 6, 8, 5, 7, 1})));
    CHECK(same_span(ff, f.spaces[7].span, coord_span({0, 1, 2, 3, 4, 5, 6, 7, 8})));

    // monotone nesting
    for (std::size_t i = 0; i + 1 < f.spaces.size(); ++i)
        for (const auto& row : f.spaces[i].span) CHECK(in_span(ff, f.spaces[i + 1].span, row));

    // fingerprint of the 2^8 space: abelian of dimension 5
    const Fingerprint& fp8 = f.spaces[4].fingerprint;
    CHECK(fp8.dim == 5);
    CHECK(fp8.lcs_dims == std::vector<unsigned>{5, 0});
    CHECK(fp8.graded_dims == std::vector<unsigned>{5});
    CHECK(fp8.center_dim == 5);
    CHECK(fp8.abelianization_dim == 5);
    // top space is the full product of three heisenberg algebras
    const Fingerprint& top = f.spaces[7].fingerprint;
    CHECK(top.dim == 9);
    CHECK(top.lcs_dims == std::vector<unsigned>{9, 3, 0});
    CHECK(top.graded_dims == std::vector<unsigned>{6, 3});
    CHECK(top.center_dim == 3);
    CHECK(top.abelianization_dim == 6);

    SUBCASE("filtrations of the pair are equivalent") {
        Endomorphism theta = fx::h3_diag({7, 11, 9, 1, 15, 8, 3, 9, 6});
        GrowthFiltration f2 = growth_filtration(theta, adapted_jordan_basis(theta));
        CHECK(filtration_equivalent(f, f2));
    }
}

TEST_CASE("abelian algebra with distinct diagonal gives nested coordinate spaces") {
    StructureConstants sc(4);
    GradedAlgebra g = GradedAlgebra::build(sc);
    Endomorphism e{g, parse_matrix({{"2", "0", "0", "0"},
                                    {"0", "3", "0", "0"},
                                    {"0", "0", "5", "0"},
                                    {"0", "0", "0", "7"}})};
    GrowthFiltration f = growth_filtration(e, adapted_jordan_basis(e));
    REQUIRE(f.spaces.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(f.spaces[i].span.size() == i + 1);
}

TEST_CASE("fingerprints separate the heisenberg algebra from R^3") {
    QMat full = {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}};
    Fingerprint h = span_fingerprint(full, fx::heisenberg_sc(), {1, 1, 2});
    Fingerprint r3 = span_fingerprint(full, StructureConstants(3), {1, 1, 1});
    CHECK(h.lcs_dims == std::vector<unsigned>{3, 1, 0});
    CHECK(r3.lcs_dims == std::vector<unsigned>{3, 0});
    CHECK(!(h == r3));
}

TEST_CASE("four-step pair: filtrations differ at the third threshold") {
    // the 2^3 space of the first tuple spans (x, a, z, c, p, q, r, s, t)
    // with derived subalgebra {r, s, t}; the second spans
    // (x, y, z, a, p, q, r, s, t) whose derived subalgebra gains z from
    // [x, y]: dimensions 3 vs 4, so the fingerprints cannot match
    Endomorphism phi = fx::fourstep_diag({1, 5, 3, 2, 4, 3});
    Endomorphism theta = fx::fourstep_diag({1, 3, 2, 3, 5, 4});
    GrowthFiltration f1 = growth_filtration(phi, adapted_jordan_basis(phi));
    GrowthFiltration f2 = growth_filtration(theta, adapted_jordan_basis(theta));
    REQUIRE(f1.spaces.size() == 5);
    REQUIRE(f2.spaces.size() == 5);
    CHECK(f1.spaces[2].fingerprint.lcs_dims == std::vector<unsigned>{9, 3, 2, 1, 0});
    CHECK(f2.spaces[2].fingerprint.lcs_dims == std::vector<unsigned>{9, 4, 2, 1, 0});
    auto mism = filtration_mismatch(f1, f2);
    REQUIRE(mism.has_value());
    CHECK(mism->position == 3);
    // every other position agrees
    for (std::size_t i : {0u, 1u, 3u, 4u})
        CHECK(f1.spaces[i].fingerprint == f2.spaces[i].fingerprint);
}

TEST_CASE("bracket closure failures are reported, never ignored") {
    // diag(2,2,16) on the heisenberg algebra is not a homomorphism; its
    // 2-threshold space spans (x, y) but [x, y] = z falls outside
    GradedAlgebra g = fx::heisenberg();
    QMat m = parse_matrix({{"2", "0", "0"}, {"0", "2", "0"}, {"0", "0", "16"}});
    AdaptedBasis basis = adapted_jordan_basis(m, g.weights());
    Endomorphism e{g, m};
    CHECK_THROWS_AS(growth_filtration(e, basis), SubalgebraClosureError);
}

TEST_CASE("growth spaces on every corpus endomorphism pass exact closure") {
    std::vector<Endomorphism> corpus = {
        fx::heisenberg_phi(),
        fx::h3_diag({1, 11, 6, 3, 15, 9, 7, 9, 8}),
        fx::h3_diag({7, 11, 9, 1, 15, 8, 3, 9, 6}),
        fx::fourstep_diag({1, 5, 3, 2, 4, 3}),
        fx::fourstep_diag({1, 3, 2, 3, 5, 4}),
    };
    RatField f;
    for (const auto& e : corpus) {
        AdaptedBasis basis = adapted_jordan_basis(e);
        GrowthFiltration gf = growth_filtration(e, basis);  // throws on failure
        // independent re-check of closure on every space
        for (const auto& s : gf.spaces)
            for (const auto& u : s.span)
                for (const auto& v : s.span)
                    CHECK(in_span(f, s.span, bracket(u, v, e.algebra.sc())));
        // top space is everything
        CHECK(gf.spaces.back().span.size() == e.dim());
    }
}
