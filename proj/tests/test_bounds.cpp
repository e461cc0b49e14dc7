#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlcseq/bounds.hpp"
#include "nlcseq/hermitian.hpp"
#include "nlcseq/rational.hpp"
#include "nlcseq/rng.hpp"

using namespace nlcseq;

TEST_CASE("Fraction normalization and exact comparison") {
    CHECK(Fraction(2, 4) == Fraction(1, 2));
    CHECK(Fraction(5, -4) == Fraction(-5, 4));
    CHECK(Fraction(0, 7) == Fraction(0, 3));
    CHECK(Fraction(5, 4).ceil_value() == 2);
    CHECK(Fraction(8, 4).ceil_value() == 2);
    CHECK(Fraction(23, 14).ceil_value() == 2);
    CHECK(Fraction(1, 9).ceil_value() == 1);
    CHECK(Fraction(0, 1).ceil_value() == 0);
    CHECK(Fraction(1, 3) < Fraction(2, 5));
    CHECK(!(Fraction(2, 5) < Fraction(1, 3)));
    // products that would overflow 64-bit cross-multiplication territory
    const long long big = 3'000'000'000LL;
    CHECK(Fraction(big, big + 1) < Fraction(big + 1, big + 2));
    CHECK_THROWS_AS(Fraction(1, 0), std::invalid_argument);
}

TEST_CASE("rational bound: frozen values") {
    const auto b32 = bound_rational(13, 3, 3, 1, 2, 1);
    CHECK(b32.value == Fraction(5, 4));
    REQUIRE(b32.head.has_value());
    CHECK(!b32.tail.has_value());  // n < d: only the short-prefix branch

    const auto b33 = bound_rational(13, 3, 3, 1, 3, 1);
    CHECK(b33.value == Fraction(2, 1));
    REQUIRE(b33.head.has_value());
    REQUIRE(b33.tail.has_value());
    CHECK(*b33.head == *b33.tail);  // branches agree at n = d

    // wide shape: n beyond d uses the floor-quotient branch only
    const auto b9 = bound_rational(13, 3, 1, 3, 9, 1);
    CHECK(!b9.head.has_value());
    REQUIRE(b9.tail.has_value());
    CHECK(b9.value == Fraction(3 * 1 * 3 - 1, 1 * 3 + 1));  // 8/4 = 2
    CHECK(b9.value.ceil_value() == 2);
}

TEST_CASE("rational bound: hypothesis checks") {
    CHECK_THROWS_AS(bound_rational(13, 1, 11, 1, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(bound_rational(13, 5, 1, 1, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(bound_rational(7, 3, 1, 1, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(bound_rational(13, 3, 2, 1, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(bound_rational(13, 3, 3, 1, 1, 1), std::invalid_argument);  // n = 1
    CHECK_THROWS_AS(bound_rational(13, 3, 3, 1, 4, 1), std::invalid_argument);  // n > d*M
    CHECK_THROWS_AS(bound_rational(13, 3, 3, 1, 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(bound_rational(13, 3, 3, 1, 3, 13), std::invalid_argument);
}

TEST_CASE("sigma bound: frozen values") {
    const auto b = bound_hermitian_sigma(5, 4, 1, 24, 1);
    CHECK(b.value == Fraction(95, 24));
    REQUIRE(b.head.has_value());
    REQUIRE(b.tail.has_value());
    CHECK(*b.head == *b.tail);  // n = q^2 - 1 is the overlap point

    const auto b2 = bound_hermitian_sigma(5, 2, 2, 25, 1);
    CHECK(!b2.head.has_value());
    CHECK(b2.value == Fraction(47, 22));

    const auto small = bound_hermitian_sigma(5, 4, 1, 2, 2);
    CHECK(small.value == Fraction(2 * 4 - 1, 4 + 20 * 2));  // 7/44
    CHECK(small.value.ceil_value() == 1);
}

TEST_CASE("sigma bound: hypothesis checks") {
    CHECK_THROWS_AS(bound_hermitian_sigma(3, 2, 1, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(bound_hermitian_sigma(6, 5, 1, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(bound_hermitian_sigma(5, 3, 1, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(bound_hermitian_sigma(5, 4, 1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(bound_hermitian_sigma(5, 4, 1, 25, 1), std::invalid_argument);
    CHECK_THROWS_AS(bound_hermitian_sigma(5, 4, 1, 24, 25), std::invalid_argument);
    try {
        bound_hermitian_sigma(3, 2, 1, 5, 1);
        CHECK(false);
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find(">= 5") != std::string::npos);
    }
}

TEST_CASE("phi bound: frozen values") {
    const auto b = bound_hermitian_phi(3, 3, 8, 1, 3, 1);
    CHECK(b.value == Fraction(23, 14));
    REQUIRE(b.head.has_value());
    REQUIRE(b.tail.has_value());
    CHECK(*b.head == Fraction(23, 14));
    CHECK(*b.tail == Fraction(23, 14));  // n = p: both branches coincide

    const auto b2 = bound_hermitian_phi(3, 3, 8, 1, 2, 2);
    CHECK(b2.value == Fraction(2 * 8 - 1, 8 + 6 * 2));  // 15/20 = 3/4
    CHECK(b2.value.ceil_value() == 1);

    const auto wide = bound_hermitian_phi(3, 3, 1, 8, 24, 1);
    CHECK(wide.value == Fraction(3 * 1 * 8 - 1, 1 * 8 + 6));  // 23/14
}

TEST_CASE("phi bound: hypothesis checks") {
    CHECK_THROWS_AS(bound_hermitian_phi(2, 2, 3, 1, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(bound_hermitian_phi(4, 4, 15, 1, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(bound_hermitian_phi(3, 6, 71, 1, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(bound_hermitian_phi(3, 3, 4, 1, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(bound_hermitian_phi(3, 3, 8, 1, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(bound_hermitian_phi(3, 3, 8, 1, 3, 9), std::invalid_argument);
    try {
        bound_hermitian_phi(2, 2, 3, 1, 2, 1);
        CHECK(false);
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("odd") != std::string::npos);
    }
}

TEST_CASE("branches agree wherever both apply") {
    for (unsigned r : {1u, 2u, 3u}) {
        const auto b = bound_rational(61, 10, 5, 1, 10, r);
        REQUIRE(b.head.has_value());
        REQUIRE(b.tail.has_value());
        CHECK(*b.head == *b.tail);
    }
    for (unsigned r : {1u, 2u}) {
        const auto b = bound_hermitian_phi(3, 3, 4, 2, 3, r);
        REQUIRE(b.head.has_value());
        REQUIRE(b.tail.has_value());
        CHECK(*b.head == *b.tail);
    }
}

TEST_CASE("bound_spec_for selects by provenance") {
    auto F13 = make_field(13, 1);
    const auto S = generate_rational(plan_rational(F13, 3, 3, 1));
    const auto spec = bound_spec_for(S.prov);
    CHECK(spec.construction == "rational");
    CHECK(spec.q == 13);
    CHECK(spec.d == 3);
    CHECK(spec.n_max == 3);
    CHECK(spec.r_max == 12);
    CHECK(spec.evaluate(3, 1).value == Fraction(2, 1));

    const auto curve = enumerate_points(make_field(5, 2), 5);
    const auto H = generate_hermitian(plan_hermitian(curve, HermMode::Sigma, 4, 1));
    const auto hspec = bound_spec_for(H.prov);
    CHECK(hspec.construction == "hermitian-sigma");
    CHECK(hspec.q == 5);
    CHECK(hspec.n_max == 24);
    CHECK(hspec.r_max == 24);
    CHECK(hspec.evaluate(24, 1).value == Fraction(95, 24));

    const auto c3 = enumerate_points(make_field(3, 2), 3);
    const auto P = generate_hermitian(plan_hermitian(c3, HermMode::Phi, 8, 1));
    const auto pspec = bound_spec_for(P.prov);
    CHECK(pspec.construction == "hermitian-phi");
    CHECK(pspec.p == 3);
    CHECK(pspec.n_max == 3);
    CHECK(pspec.evaluate(3, 1).value == Fraction(23, 14));
}

TEST_CASE("bound_spec_for refuses data with no guarantee") {
    Provenance random_prov;
    random_prov.construction = "random";
    random_prov.q = 2;
    CHECK_THROWS_AS(bound_spec_for(random_prov), std::invalid_argument);

    const auto c3 = enumerate_points(make_field(3, 2), 3);
    const auto S =
        generate_hermitian(plan_hermitian(c3, HermMode::Sigma, 2, 1, true));
    CHECK(S.prov.small_q_warning);
    CHECK_THROWS_AS(bound_spec_for(S.prov), std::invalid_argument);
}

TEST_CASE("verify_sweep on the q = 13 matrix") {
    auto F = make_field(13, 1);
    const auto S = generate_rational(plan_rational(F, 3, 3, 1));
    const auto spec = bound_spec_for(S.prov);
    const auto report = verify_sweep(S, spec, {2, 3}, {1, 2}, kDefaultMonomialBudget, 1);
    REQUIRE(report.rows.size() == 4);
    CHECK(report.all_exact_satisfied());
    // n-major cell order
    CHECK(report.rows[0].n == 2);
    CHECK(report.rows[0].r == 1);
    CHECK(report.rows[1].n == 2);
    CHECK(report.rows[1].r == 2);
    CHECK(report.rows[2].n == 3);
    for (const auto& row : report.rows) {
        CHECK(row.has_bound);
        CHECK(row.satisfied);
        CHECK(row.construction == "rational");
        CHECK(row.q == 13);
        CHECK(row.d_or_p == 3);
        CHECK(row.result.status == ComplexityResult::Status::Exact);
        CHECK(row.result.value >= static_cast<unsigned>(row.bound.ceil_value()));
    }
    // the multi-worker path gives the same report
    const auto par = verify_sweep(S, spec, {2, 3}, {1, 2}, kDefaultMonomialBudget, 3);
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        CHECK(par.rows[i].result.value == report.rows[i].result.value);
        CHECK(par.rows[i].satisfied == report.rows[i].satisfied);
    }
}

TEST_CASE("verify_sweep rejects mismatched provenance and bad ranges") {
    auto F = make_field(13, 1);
    const auto S = generate_rational(plan_rational(F, 3, 3, 1));
    auto spec = bound_spec_for(S.prov);
    spec.N = 1;
    spec.M = 3;
    CHECK_THROWS_AS(verify_sweep(S, spec, {2}, {1}), std::runtime_error);
    const auto good = bound_spec_for(S.prov);
    CHECK_THROWS_AS(verify_sweep(S, good, {1}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(verify_sweep(S, good, {4}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(verify_sweep(S, good, {3}, {0}), std::invalid_argument);
    CHECK_THROWS_AS(verify_sweep(S, good, {3}, {13}), std::invalid_argument);
}

TEST_CASE("a tampered sequence fails its bound") {
    auto F = make_field(61, 1);
    auto S = generate_rational(plan_rational(F, 10, 5, 1));
    // zero out everything: complexity drops to 0, bound stays > 0
    for (auto& row : S.rows)
        for (auto& e : row) e = F->zero();
    const auto spec = bound_spec_for(S.prov);
    const auto report = verify_sweep(S, spec, {5, 10}, {1});
    CHECK(!report.all_exact_satisfied());
    for (const auto& row : report.rows) {
        CHECK(row.result.value == 0);
        CHECK(!row.satisfied);
    }
}

TEST_CASE("random baseline is deterministic and sane") {
    auto F = make_field(2, 1);
    const auto a = random_baseline(F, 2, 16, 1, 20, 42);
    const auto b = random_baseline(F, 2, 16, 1, 20, 42);
    CHECK(a.values == b.values);
    CHECK(a.mean == b.mean);
    CHECK(a.values.size() == 20);
    CHECK(a.min <= a.max);
    CHECK(a.max <= 16);
    CHECK(a.truncated == 0);
    // a different seed changes at least something across 20 trials
    const auto c = random_baseline(F, 2, 16, 1, 20, 43);
    CHECK(a.values != c.values);
    // log reference fields
    CHECK(a.ln_mn == doctest::Approx(std::log(32.0)));
    CHECK(a.log2_mn == doctest::Approx(5.0));
}

TEST_CASE("baseline on length-1 rows stays within the trivial range") {
    auto F = make_field(2, 1);
    const auto s = random_baseline(F, 1, 1, 1, 30, 7);
    for (unsigned v : s.values) CHECK(v <= 1);
    CHECK(s.mean <= 1.0);
}

TEST_CASE("random_multisequence draws the documented stream") {
    auto F = make_field(3, 1);
    const auto S = random_multisequence(F, 2, 5, 99);
    REQUIRE(S.dim() == 2);
    REQUIRE(S.length() == 5);
    CHECK(S.prov.construction == "random");
    // row-major against a hand-rolled CounterRng
    CounterRng rng(99);
    for (unsigned i = 0; i < 2; ++i)
        for (unsigned j = 0; j < 5; ++j)
            CHECK(S.rows[i][j].v == rng.below(3));
}
