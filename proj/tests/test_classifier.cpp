#include <doctest.h>

#include "fixtures.hpp"
#include "nbcqi/classifier.hpp"
#include "nbcqi/errors.hpp"

using namespace nbcqi;
namespace fx = nbcqi::fixtures;

TEST_CASE("check_standing_assumptions") {
    SUBCASE("the worked heisenberg endomorphism passes everything") {
        auto r = check_standing_assumptions(fx::heisenberg_phi());
        CHECK(r.homomorphism);
        CHECK(r.injective);
        CHECK(r.nonsurjective);
        CHECK(r.det_abs == "16");
        CHECK(r.unipotent_free);
        CHECK(r.carnot);
        CHECK(r.all_ok());
    }
    SUBCASE("identity fails nonsurjectivity") {
        RatField f;
        Endomorphism id{fx::heisenberg(), mat_identity(f, 3)};
        auto r = check_standing_assumptions(id);
        CHECK(r.homomorphism);
        CHECK(r.injective);
        CHECK(!r.nonsurjective);
        CHECK(!r.all_ok());
    }
    SUBCASE("the four-step diagonal passes everything") {
        auto r = check_standing_assumptions(fx::fourstep_diag({1, 5, 3, 2, 4, 3}));
        CHECK(r.all_ok());
    }
}

TEST_CASE("classify the nine-dimensional pair: quasi-isometric at (1,1)") {
    Verdict v = classify(fx::h3_diag({1, 11, 6, 3, 15, 9, 7, 9, 8}),
                         fx::h3_diag({7, 11, 9, 1, 15, 8, 3, 9, 6}), 12);
    CHECK(v.outcome == Verdict::Outcome::QuasiIsometric);
    CHECK(v.r1 == 1);
    CHECK(v.r2 == 1);
    CHECK(!v.evidence.empty());
}

TEST_CASE("classify an endomorphism against its square: (2,1)") {
    std::vector<Endomorphism> corpus = {
        fx::heisenberg_phi(),
        fx::h3_diag({1, 11, 6, 3, 15, 9, 7, 9, 8}),
        fx::fourstep_diag({1, 5, 3, 2, 4, 3}),
    };
    for (const auto& e : corpus) {
        Endomorphism e2{e.algebra, mat_pow(e.matrix, 2)};
        Verdict v = classify(e, e2, 12);
        CHECK(v.outcome == Verdict::Outcome::QuasiIsometric);
        CHECK(v.r1 == 2);
        CHECK(v.r2 == 1);
        Verdict w = classify(e2, e, 12);
        CHECK(w.outcome == Verdict::Outcome::QuasiIsometric);
        CHECK(w.r1 == 1);
        CHECK(w.r2 == 2);
    }
}

TEST_CASE("classify(E, E) is quasi-isometric at (1,1) for the whole corpus") {
    std::vector<Endomorphism> corpus = {
        fx::heisenberg_phi(),
        fx::h3_diag({1, 11, 6, 3, 15, 9, 7, 9, 8}),
        fx::h3_diag({7, 11, 9, 1, 15, 8, 3, 9, 6}),
        fx::fourstep_diag({1, 5, 3, 2, 4, 3}),
        fx::fourstep_diag({1, 3, 2, 3, 5, 4}),
    };
    for (const auto& e : corpus) {
        Verdict v = classify(e, e, 12);
        CHECK(v.outcome == Verdict::Outcome::QuasiIsometric);
        CHECK(v.r1 == 1);
        CHECK(v.r2 == 1);
    }
}

TEST_CASE("divergence mismatch is a proven negative with a witness") {
    // the variant changes generator growths on the third factor while staying
    // a homomorphism; the base multisets differ, so the groups cannot be
    // quasi-isometric
    Verdict v = classify(fx::h3_diag({1, 11, 6, 3, 15, 9, 7, 9, 8}),
                         fx::h3_diag({1, 11, 6, 3, 15, 9, 11, 9, 10}), 12);
    CHECK(v.outcome == Verdict::Outcome::NotQuasiIsometric);
    CHECK(v.witness.find("divergence") != std::string::npos);
    bool saw_divergence_evidence = false;
    for (const auto& item : v.evidence)
        if (item.check == "divergence_multisets" && item.result == "not_equal")
            saw_divergence_evidence = true;
    CHECK(saw_divergence_evidence);
}

TEST_CASE("four-step pair: proven non-quasi-isometric through the growth filtration") {
    // the pair shares the divergence multiset (up to power 1), but its growth
    // filtrations differ at the third threshold, which the pipeline reports
    // as a proven invariant mismatch
    Verdict v = classify(fx::fourstep_diag({1, 5, 3, 2, 4, 3}),
                         fx::fourstep_diag({1, 3, 2, 3, 5, 4}), 12);
    CHECK(v.outcome == Verdict::Outcome::NotQuasiIsometric);
    CHECK(v.witness.find("growth") != std::string::npos);
    // evidence trail shows pajf not equivalent, divergence equal, growth differ
    bool pajf_neg = false, div_eq = false, growth_neg = false;
    for (const auto& item : v.evidence) {
        if (item.check == "pajf_power_equivalent" && item.result == "not_equivalent")
            pajf_neg = true;
        if (item.check == "divergence_multisets" && item.result == "equal") div_eq = true;
        if (item.check == "growth_filtration" && item.result == "not_equivalent")
            growth_neg = true;
    }
    CHECK(pajf_neg);
    CHECK(div_eq);
    CHECK(growth_neg);
}

TEST_CASE("a genuinely undecided comparison returns Unknown") {
    StructureConstants sc(1);
    GradedAlgebra line = GradedAlgebra::build(sc);
    Endomorphism two{line, parse_matrix({{"2"}})};
    Endomorphism three{line, parse_matrix({{"3"}})};
    Verdict v = classify(two, three, 12);
    CHECK(v.outcome == Verdict::Outcome::Unknown);
}

TEST_CASE("outcome kinds are symmetric under swapping the arguments") {
    std::vector<std::pair<Endomorphism, Endomorphism>> pairs = {
        {fx::h3_diag({1, 11, 6, 3, 15, 9, 7, 9, 8}), fx::h3_diag({7, 11, 9, 1, 15, 8, 3, 9, 6})},
        {fx::h3_diag({1, 11, 6, 3, 15, 9, 7, 9, 8}),
         fx::h3_diag({1, 11, 6, 3, 15, 9, 11, 9, 10})},
        {fx::fourstep_diag({1, 5, 3, 2, 4, 3}), fx::fourstep_diag({1, 3, 2, 3, 5, 4})},
    };
    for (const auto& [a, b] : pairs) {
        Verdict ab = classify(a, b, 12);
        Verdict ba = classify(b, a, 12);
        CHECK(ab.outcome == ba.outcome);
    }
}

TEST_CASE("assumption violations are refused with a report") {
    RatField f;
    Endomorphism id{fx::heisenberg(), mat_identity(f, 3)};
    CHECK_THROWS_AS(classify(id, fx::heisenberg_phi(), 12), AssumptionViolationError);
}

TEST_CASE("endomorphisms of different algebras are refused") {
    StructureConstants sc(3);  // abelian R^3 vs heisenberg
    GradedAlgebra r3 = GradedAlgebra::build(sc);
    Endomorphism a{r3, parse_matrix({{"2", "0", "0"}, {"0", "2", "0"}, {"0", "0", "4"}})};
    Endomorphism b = fx::heisenberg_phi();
    CHECK_THROWS_AS(classify(a, b, 12), AssumptionViolationError);
}

TEST_CASE("not-quasi-isometric witnesses are independently re-checkable") {
    Verdict v = classify(fx::h3_diag({1, 11, 6, 3, 15, 9, 7, 9, 8}),
                         fx::h3_diag({1, 11, 6, 3, 15, 9, 11, 9, 10}), 12);
    REQUIRE(v.outcome == Verdict::Outcome::NotQuasiIsometric);
    // re-check: the divergence multisets really differ up to any power
    auto d1 = basis_rates(adapted_jordan_basis(fx::h3_diag({1, 11, 6, 3, 15, 9, 7, 9, 8})),
                          Direction::Forward)
                  .multiset();
    auto d2 = basis_rates(adapted_jordan_basis(fx::h3_diag({1, 11, 6, 3, 15, 9, 11, 9, 10})),
                          Direction::Forward)
                  .multiset();
    CHECK(multiset_equal_up_to_power(d1, d2, 12).kind == MultisetMatch::Kind::NotEqual);
}
