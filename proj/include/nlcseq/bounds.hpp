#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlcseq/complexity.hpp"
#include "nlcseq/multiseq.hpp"

namespace nlcseq {

// Exact rational with the usual normalized representation (den > 0, reduced).
// All bound arithmetic stays in integers; nothing here ever rounds.
struct Fraction {
    long long num = 0;
    long long den = 1;

    Fraction() = default;
    Fraction(long long n, long long d);

    long long ceil_value() const;
    friend bool operator==(const Fraction&, const Fraction&) = default;
    bool operator<(const Fraction& o) const;
};

// A lower bound together with the branch values it was taken from. head is
// the small-n formula, tail the floor-quotient formula; at the boundary both
// apply and the bound is their max.
struct BoundValue {
    Fraction value;
    std::optional<Fraction> head;
    std::optional<Fraction> tail;
};

// Lower bound for the rational construction: sequences of length d*M over
// F_q built from N*M = (q-1)/d - 1 coset orbits. Valid for 1 < n <= d*M and
// 1 <= r <= q-1.
BoundValue bound_rational(unsigned q, unsigned d, unsigned N, unsigned M,
                          unsigned n, unsigned r);

// Lower bound for the Hermitian sigma construction over F_{q^2}, q >= 5 a
// prime power, N*M = q-1, 1 < n <= M(q^2-1), 1 <= r <= q^2-1.
BoundValue bound_hermitian_sigma(unsigned q, unsigned N, unsigned M, unsigned n,
                                 unsigned r);

// Lower bound for the Hermitian phi construction, p an odd prime, q a power
// of p, N*M = q^3/p - 1, 1 < n <= M*p, 1 <= r <= q^2-1.
BoundValue bound_hermitian_phi(unsigned p, unsigned q, unsigned N, unsigned M,
                               unsigned n, unsigned r);

// Which bound applies to a multisequence, derived from its provenance.
struct BoundSpec {
    std::string construction;
    unsigned q = 0;        // field size for rational, curve parameter otherwise
    unsigned p = 0;        // phi only
    unsigned d = 0;        // rational only
    unsigned N = 0;
    unsigned M = 0;
    unsigned n_max = 0;
    unsigned r_max = 0;

    BoundValue evaluate(unsigned n, unsigned r) const;
};

// Builds the applicable bound for a generated multisequence; refuses
// constructions with no bound (random data, sigma runs flagged below their
// guaranteed range).
BoundSpec bound_spec_for(const Provenance& prov);

struct SweepRow {
    std::string construction;
    unsigned q = 0;       // as in BoundSpec
    unsigned d_or_p = 0;  // block length: d, q^2-1, or p
    unsigned N = 0, M = 0;
    unsigned n = 0, r = 0;
    ComplexityResult result;
    bool has_bound = false;  // false for pure complexity reports
    Fraction bound;
    bool satisfied = false;  // result.value >= ceil(bound)
    double millis = 0.0;
};

struct SweepReport {
    std::vector<SweepRow> rows;

    // True when every exact row meets its bound; truncated rows are
    // inconclusive and do not count against the sweep.
    bool all_exact_satisfied() const;
};

// Computes N_r(S_n) for every (n, r) in the given lists (n-major order) and
// checks each exact value against the bound. Throws std::runtime_error when
// the bound's parameters do not match the multisequence provenance, and
// std::invalid_argument for (n, r) outside the bound's validity range.
SweepReport verify_sweep(const Multisequence& S, const BoundSpec& spec,
                         const std::vector<unsigned>& n_list,
                         const std::vector<unsigned>& r_list,
                         std::uint64_t budget = kDefaultMonomialBudget,
                         unsigned workers = 1);

struct BaselineStats {
    std::uint32_t q = 0;
    unsigned m = 0;      // rows per trial
    unsigned n = 0;      // length per row
    unsigned r = 0;
    unsigned trials = 0;
    std::uint64_t seed = 0;
    double mean = 0.0;
    unsigned min = 0;
    unsigned max = 0;
    double ln_mn = 0.0;
    double log2_mn = 0.0;
    unsigned truncated = 0;  // trials whose N_r came back inexact
    std::vector<unsigned> values;
};

// Monte Carlo reference: trials independent uniformly random m x n
// multisequences over the given field, exact N_r for each (the r = q-1 case
// goes through the window-hash route). Trial t draws its elements row-major
// from the stream seeded with derive_stream_seed(seed, t).
BaselineStats random_baseline(const FieldCtxPtr& ctx, unsigned m, unsigned n,
                              unsigned r, unsigned trials, std::uint64_t seed,
                              std::uint64_t budget = kDefaultMonomialBudget);

// The raw sampler behind random_baseline, exposed for tests.
Multisequence random_multisequence(const FieldCtxPtr& ctx, unsigned m, unsigned n,
                                   std::uint64_t stream_seed);

}  // namespace nlcseq
