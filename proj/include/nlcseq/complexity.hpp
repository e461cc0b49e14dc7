#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nlcseq/gf.hpp"
#include "nlcseq/multiseq.hpp"

namespace nlcseq {

// Cap on (r+1)^u, the number of monomial coefficients a candidate generator
// carries. Searches that would exceed it stop and report a truncated result.
inline constexpr std::uint64_t kDefaultMonomialBudget = std::uint64_t{1} << 20;

// Polynomial in u variables with every exponent at most r. Coefficients are
// stored against exponent vectors in lexicographic order with the first
// variable most significant: index = sum e_i * (r+1)^(u-i). Evaluation uses
// the convention 0^0 = 1.
struct GeneratingPolynomial {
    unsigned u = 0;
    unsigned r = 0;
    std::vector<FieldElem> coeffs;  // (r+1)^u entries

    FieldElem eval(const FieldCtx& F, std::span<const FieldElem> args) const;
};

struct ComplexityResult {
    enum class Status { Exact, Truncated };

    unsigned value = 0;
    Status status = Status::Exact;
    // Present exactly when the search succeeded at some u in [1, n-1].
    std::optional<GeneratingPolynomial> witness;
    unsigned u_searched = 0;  // largest u actually examined
};

// Decides whether one polynomial of per-variable degree at most r drives all
// rows of S simultaneously: f(s_i(j..j+u-1)) = s_i(j+u) for every i and
// every j in [0, n-u). Consistency is decided by Gaussian elimination on the
// (r+1)^u coefficients; rows are assembled sequence-major. Requires
// 1 <= u <= n-1 and n within the stored length; throws std::runtime_error
// when (r+1)^u exceeds the budget.
std::optional<GeneratingPolynomial> exists_generator(
    const Multisequence& S, unsigned n, unsigned u, unsigned r,
    std::uint64_t budget = kDefaultMonomialBudget);

// Smallest u >= 1 admitting a joint generator for the n-prefixes, with r
// clamped to q-1. Zero when every prefix is identically zero; n when no u in
// [1, n-1] works. When the next u would blow the monomial budget the result
// downgrades to Truncated, carrying the least u not yet ruled out. Any
// returned witness has been replayed against the prefixes before return.
ComplexityResult joint_nonlinear_complexity(
    const Multisequence& S, unsigned n, unsigned r,
    std::uint64_t budget = kDefaultMonomialBudget);

// The r = q-1 case by window hashing instead of linear algebra: the answer
// is the least u at which no length-u window is jointly followed by two
// different symbols. Independent of the solver path on purpose; the two are
// cross-checked in the tests.
unsigned max_order_complexity_fast(const Multisequence& S, unsigned n);

// Runs the recurrence forward from per-row seeds of length f.u, producing
// rows of the requested length.
Multisequence replay(const FieldCtxPtr& ctx, const GeneratingPolynomial& f,
                     const std::vector<std::vector<FieldElem>>& seeds,
                     unsigned length);

}  // namespace nlcseq
