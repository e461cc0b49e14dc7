#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nlcseq/bounds.hpp"
#include "nlcseq/complexity.hpp"
#include "nlcseq/rng.hpp"

using namespace nlcseq;

namespace {

Multisequence make_ms(const FieldCtxPtr& ctx, std::vector<std::vector<int>> rows) {
    Multisequence S;
    S.ctx = ctx;
    for (const auto& r : rows) {
        std::vector<FieldElem> row;
        for (int v : r) row.push_back(ctx->elem(static_cast<std::uint32_t>(v)));
        S.rows.push_back(std::move(row));
    }
    S.prov.construction = "replay";
    S.prov.p = ctx->p();
    S.prov.k = ctx->k();
    S.prov.q = ctx->q();
    S.prov.N = S.dim();
    return S;
}

// Every polynomial in u variables with exponents <= r over F_q, as a
// coefficient counter; returns true while a next candidate exists.
bool next_candidate(std::vector<FieldElem>& coeffs, const FieldCtx& F) {
    for (auto& c : coeffs) {
        if (c.v + 1u < F.q()) {
            c.v = static_cast<std::uint16_t>(c.v + 1);
            return true;
        }
        c.v = 0;
    }
    return false;
}

// Brute-force: does any degree-<=r polynomial in u variables generate all
// rows of the n-prefix?
bool oracle_exists(const Multisequence& S, unsigned n, unsigned u, unsigned r) {
    const auto& F = *S.ctx;
    std::uint64_t ncoef = 1;
    for (unsigned i = 0; i < u; ++i) ncoef *= (r + 1);
    GeneratingPolynomial f{u, r, std::vector<FieldElem>(ncoef)};
    do {
        bool ok = true;
        for (const auto& row : S.rows) {
            for (unsigned j = 0; ok && j + u < n; ++j) {
                const std::span<const FieldElem> window(row.data() + j, u);
                ok = f.eval(F, window).v == row[j + u].v;
            }
            if (!ok) break;
        }
        if (ok) return true;
    } while (next_candidate(f.coeffs, F));
    return false;
}

Multisequence random_ms(const FieldCtxPtr& ctx, unsigned m, unsigned n,
                        std::uint64_t seed) {
    return random_multisequence(ctx, m, n, seed);
}

}  // namespace

TEST_CASE("single F_2 sequence 1,0,1,0 has first-order complexity 1") {
    auto F = make_field(2, 1);
    const auto S = make_ms(F, {{1, 0, 1, 0}});
    const auto res = joint_nonlinear_complexity(S, 4, 1);
    CHECK(res.value == 1);
    CHECK(res.status == ComplexityResult::Status::Exact);
    REQUIRE(res.witness.has_value());
    CHECK(res.witness->u == 1);
    // f(x) = 1 + x flips the bit
    REQUIRE(res.witness->coeffs.size() == 2);
    CHECK(res.witness->coeffs[0].v == 1);
    CHECK(res.witness->coeffs[1].v == 1);
}

TEST_CASE("0,0,1 needs memory two and the oracle agrees") {
    auto F = make_field(2, 1);
    const auto S = make_ms(F, {{0, 0, 1}});
    CHECK(!oracle_exists(S, 3, 1, 1));
    CHECK(oracle_exists(S, 3, 2, 1));
    CHECK(!exists_generator(S, 3, 1, 1).has_value());
    CHECK(exists_generator(S, 3, 2, 1).has_value());
    const auto res = joint_nonlinear_complexity(S, 3, 1);
    CHECK(res.value == 2);
    CHECK(res.status == ComplexityResult::Status::Exact);
    CHECK(res.witness.has_value());
}

TEST_CASE("jointly contradictory pair hits the no-generator case") {
    auto F = make_field(2, 1);
    const auto S = make_ms(F, {{0, 1}, {0, 0}});
    const auto res = joint_nonlinear_complexity(S, 2, 1);
    CHECK(res.value == 2);  // value n: no u in [1, n-1] works
    CHECK(res.status == ComplexityResult::Status::Exact);
    CHECK(!res.witness.has_value());
    CHECK(res.u_searched == 1);
}

TEST_CASE("all-zero prefixes have complexity zero") {
    auto F2 = make_field(2, 1);
    auto F9 = make_field(3, 2);
    const auto Z = make_ms(F2, {{0, 0, 0, 0}, {0, 0, 0, 0}});
    for (unsigned n = 1; n <= 4; ++n) {
        const auto res = joint_nonlinear_complexity(Z, n, 1);
        CHECK(res.value == 0);
        CHECK(res.status == ComplexityResult::Status::Exact);
        CHECK(!res.witness.has_value());
    }
    // zero prefix of a nonzero sequence still counts as zero
    const auto S = make_ms(F9, {{0, 0, 5, 1}});
    CHECK(joint_nonlinear_complexity(S, 2, 1).value == 0);
    CHECK(joint_nonlinear_complexity(S, 3, 1).value > 0);
}

TEST_CASE("replay regenerates from seeds") {
    auto F = make_field(2, 1);
    const auto S = make_ms(F, {{1, 0, 1, 0, 1, 0}});
    const auto res = joint_nonlinear_complexity(S, 6, 1);
    REQUIRE(res.witness.has_value());
    const auto R = replay(F, *res.witness, {{F->one()}}, 6);
    REQUIRE(R.dim() == 1);
    CHECK(R.rows[0] == S.rows[0]);
    CHECK(R.prov.construction == "replay");
    // seed size must match the witness memory
    CHECK_THROWS_AS(replay(F, *res.witness, {{F->one(), F->zero()}}, 6),
                    std::invalid_argument);
}

TEST_CASE("exists_generator matches exhaustive enumeration") {
    int instances = 0;
    for (int p : {2, 3}) {
        auto F = make_field(p, 1);
        CounterRng rng(static_cast<std::uint64_t>(40 + p));
        for (int trial = 0; trial < 150; ++trial) {
            const unsigned m = 1 + static_cast<unsigned>(rng.below(2));
            const unsigned n = 3 + static_cast<unsigned>(rng.below(4));
            const auto S = random_ms(F, m, n, rng.next());
            for (unsigned u : {1u, 2u}) {
                const bool oracle = oracle_exists(S, n, u, 1);
                const auto got = exists_generator(S, n, u, 1);
                CHECK(got.has_value() == oracle);
                if (got) {
                    // returned witness really generates
                    for (const auto& row : S.rows)
                        for (unsigned j = 0; j + u < n; ++j) {
                            const std::span<const FieldElem> w(row.data() + j, u);
                            CHECK(got->eval(*F, w).v == row[j + u].v);
                        }
                }
                ++instances;
            }
        }
    }
    CHECK(instances >= 500);
}

TEST_CASE("window-hash route agrees with the solver at full degree") {
    int instances = 0;
    for (int p : {2, 3}) {
        auto F = make_field(p, 1);
        const unsigned r = static_cast<unsigned>(F->q() - 1);
        CounterRng rng(static_cast<std::uint64_t>(90 + p));
        for (int trial = 0; trial < 110; ++trial) {
            const unsigned m = 1 + static_cast<unsigned>(rng.below(3));
            const unsigned n = 2 + static_cast<unsigned>(rng.below(19));
            const auto S = random_ms(F, m, n, rng.next());
            const auto slow = joint_nonlinear_complexity(S, n, r);
            REQUIRE(slow.status == ComplexityResult::Status::Exact);
            CHECK(max_order_complexity_fast(S, n) == slow.value);
            ++instances;
        }
    }
    CHECK(instances >= 200);
}

TEST_CASE("complexity is monotone in n and antitone in r") {
    auto F = make_field(3, 1);
    CounterRng rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        const auto S = random_ms(F, 2, 10, rng.next());
        unsigned prev = 0;
        for (unsigned n = 1; n <= 10; ++n) {
            const unsigned v = joint_nonlinear_complexity(S, n, 1).value;
            CHECK(v >= prev);
            prev = v;
        }
        unsigned prev_r = 10;
        for (unsigned r = 1; r <= 3; ++r) {
            const unsigned v = joint_nonlinear_complexity(S, 10, r).value;
            CHECK(v <= prev_r);
            prev_r = v;
        }
    }
}

TEST_CASE("degree caps clamp at q - 1") {
    for (int p : {2, 3}) {
        auto F = make_field(p, 1);
        const unsigned q = static_cast<unsigned>(F->q());
        CounterRng rng(static_cast<std::uint64_t>(60 + p));
        for (int trial = 0; trial < 30; ++trial) {
            const auto S = random_ms(F, 2, 8, rng.next());
            const unsigned base = joint_nonlinear_complexity(S, 8, q - 1).value;
            CHECK(joint_nonlinear_complexity(S, 8, q).value == base);
            CHECK(joint_nonlinear_complexity(S, 8, q + 5).value == base);
        }
    }
}

TEST_CASE("monomial budget") {
    auto F = make_field(2, 1);
    const auto S = make_ms(F, {{0, 0, 1}});
    SUBCASE("exists_generator refuses an over-budget u") {
        CHECK_THROWS_AS(exists_generator(S, 3, 2, 1, 3), std::runtime_error);
        CHECK_NOTHROW(exists_generator(S, 3, 2, 1, 4));
    }
    SUBCASE("the search degrades to a truncated result") {
        const auto res = joint_nonlinear_complexity(S, 3, 1, 3);
        CHECK(res.status == ComplexityResult::Status::Truncated);
        CHECK(res.value == 2);  // least memory not yet ruled out
        CHECK(res.u_searched == 1);
        CHECK(!res.witness.has_value());
    }
    SUBCASE("a budget that covers the search leaves the result exact") {
        const auto res = joint_nonlinear_complexity(S, 3, 1, 4);
        CHECK(res.status == ComplexityResult::Status::Exact);
        CHECK(res.value == 2);
    }
}

TEST_CASE("witness accompanies exactly the in-range exact values") {
    auto F = make_field(3, 1);
    CounterRng rng(123);
    for (int trial = 0; trial < 60; ++trial) {
        const unsigned n = 2 + static_cast<unsigned>(rng.below(7));
        const auto S = random_ms(F, 1 + static_cast<unsigned>(rng.below(2)), n,
                                 rng.next());
        const auto res = joint_nonlinear_complexity(S, n, 1);
        if (res.status == ComplexityResult::Status::Exact && res.value >= 1 &&
            res.value <= n - 1) {
            REQUIRE(res.witness.has_value());
            // replaying the witness from the prefix seeds reproduces S
            std::vector<std::vector<FieldElem>> seeds;
            for (const auto& row : S.rows)
                seeds.emplace_back(row.begin(), row.begin() + res.witness->u);
            const auto R = replay(F, *res.witness, seeds, n);
            for (unsigned i = 0; i < S.dim(); ++i)
                for (unsigned j = 0; j < n; ++j)
                    CHECK(R.rows[i][j].v == S.rows[i][j].v);
        } else {
            CHECK(!res.witness.has_value());
        }
    }
}

TEST_CASE("argument validation") {
    auto F = make_field(2, 1);
    const auto S = make_ms(F, {{1, 0, 1}});
    CHECK_THROWS_AS(joint_nonlinear_complexity(S, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(joint_nonlinear_complexity(S, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(joint_nonlinear_complexity(S, 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(exists_generator(S, 3, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(exists_generator(S, 3, 3, 1), std::invalid_argument);
    const Multisequence empty{F, {}, {}};
    CHECK_THROWS_AS(joint_nonlinear_complexity(empty, 1, 1), std::invalid_argument);
}

TEST_CASE("monomial ordering of the witness coefficients") {
    // Over F_3, s = 0,1,2,0,1,2,... is generated by f(x) = x + 1: check the
    // coefficient layout c[e] multiplies x^e.
    auto F = make_field(3, 1);
    const auto S = make_ms(F, {{0, 1, 2, 0, 1, 2}});
    const auto res = joint_nonlinear_complexity(S, 6, 1);
    CHECK(res.value == 1);
    REQUIRE(res.witness.has_value());
    REQUIRE(res.witness->coeffs.size() == 2);
    CHECK(res.witness->coeffs[0].v == 1);  // constant term
    CHECK(res.witness->coeffs[1].v == 1);  // coefficient of x
    // two-variable layout: first variable most significant. f(x1,x2) = x1
    // generates the shift-by-two sequence pairs seeded accordingly.
    GeneratingPolynomial g{2, 1, {F->zero(), F->zero(), F->one(), F->zero()}};
    const std::vector<FieldElem> args{F->elem(2), F->elem(1)};
    CHECK(g.eval(*F, args).v == 2);  // index 2 = e-vector (1, 0) -> x1
}
