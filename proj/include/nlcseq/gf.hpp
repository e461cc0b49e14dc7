#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace nlcseq {

// Element of a finite field F_{p^k}, stored as its canonical index: the
// base-p digit encoding of the residue polynomial, so index 0 is the zero
// element and for prime fields the index equals the residue. The natural
// integer order on indices is the order used everywhere for orbit
// representatives and serialization.
struct FieldElem {
    std::uint16_t v = 0;
    friend constexpr auto operator<=>(const FieldElem&, const FieldElem&) = default;
};

class FieldCtx;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

// Arithmetic context for F_{p^k} with q = p^k <= 2^16. Multiplication runs
// on exp/log tables built from a fixed primitive element; the modulus is the
// monic irreducible of degree k whose canonical encoding is smallest, so the
// element representation is stable across runs. Immutable once built and
// safe to share between threads.
class FieldCtx {
  public:
    int p() const { return p_; }
    int k() const { return k_; }
    std::uint32_t q() const { return q_; }

    // Modulus coefficients, constant term first, length k+1, leading 1.
    const std::vector<std::uint16_t>& modulus() const { return modulus_; }

    // Smallest element (in canonical index order) of multiplicative order q-1.
    FieldElem primitive() const { return primitive_; }

    FieldElem zero() const { return {0}; }
    FieldElem one() const { return {1}; }

    // Element from its canonical index; rejects indices >= q.
    FieldElem elem(std::uint32_t index) const;

    // Integer reduced into the prime subfield (handles negatives).
    FieldElem from_int(long long t) const;

    FieldElem add(FieldElem a, FieldElem b) const;
    FieldElem sub(FieldElem a, FieldElem b) const;
    FieldElem neg(FieldElem a) const { return FieldElem{neg_[a.v]}; }
    FieldElem mul(FieldElem a, FieldElem b) const;
    FieldElem inv(FieldElem a) const;  // throws std::domain_error on zero

    // 0^0 = 1; zero to a negative power throws std::domain_error.
    FieldElem pow(FieldElem a, long long e) const;

    // Multiplicative order; throws std::domain_error on zero.
    unsigned element_order(FieldElem a) const;

    struct Coset {
        FieldElem rep;                    // smallest member, canonical order
        std::vector<FieldElem> members;   // rep*alpha^0, rep*alpha^1, ...
    };

    // Cosets of the order-d subgroup of F_q^* generated by primitive^((q-1)/d),
    // sorted by smallest member. Requires d | q-1.
    std::vector<Coset> subgroup_cosets(unsigned d) const;

  private:
    FieldCtx() = default;
    friend FieldCtxPtr make_field(int p, int k);

    int p_ = 0, k_ = 0;
    std::uint32_t q_ = 0;
    std::vector<std::uint16_t> modulus_;
    FieldElem primitive_;
    std::vector<std::uint16_t> exp_;   // exp_[i] = primitive^i, i in [0, q-1)
    std::vector<std::uint32_t> log_;   // inverse of exp_; log_[0] is a sentinel
    std::vector<std::uint16_t> neg_;
    std::vector<std::uint16_t> add_;   // q*q table, only built for q <= 256

    std::uint32_t dlog(FieldElem a) const { return log_[a.v]; }
};

// Builds F_{p^k}. Throws std::invalid_argument if p is not prime, k < 1, or
// p^k > 2^16.
FieldCtxPtr make_field(int p, int k);

// Dense linear system A x = b over one field; rows[i] has ncols entries.
struct LinearSystem {
    std::size_t ncols = 0;
    std::vector<std::vector<FieldElem>> rows;
    std::vector<FieldElem> rhs;
};

// Gaussian elimination. Returns a solution with every free variable set to
// zero (deterministic), or nullopt when the system is inconsistent.
std::optional<std::vector<FieldElem>> solve_consistent(const LinearSystem& sys,
                                                       const FieldCtx& F);

}  // namespace nlcseq
