#pragma once

#include <vector>

#include "nlcseq/gf.hpp"
#include "nlcseq/multiseq.hpp"

namespace nlcseq {

// Plan for the rational-field construction: the multiplicative group of F_q
// splits into cosets of the order-d subgroup <alpha>; the smallest coset
// hosts the pole of z = 1/(x - c) and the remaining N*M cosets fill an N x M
// grid of orbit representatives, row-major in canonical order.
struct RationalPlan {
    FieldCtxPtr ctx;
    unsigned d = 0;
    unsigned N = 0;
    unsigned M = 0;
    FieldElem alpha;     // primitive^((q-1)/d), multiplicative order d
    FieldElem pole_rep;  // c, smallest member of the smallest coset
    std::vector<std::vector<FieldElem>> q_grid;  // N rows of M representatives
    std::vector<unsigned> rotate;  // per-cell start shift, N*M entries or empty
};

// Validates d > 1, d | q-1, (q-1)/d >= 3 and N*M = (q-1)/d - 1, then lays
// out the coset grid. rotate, when given, must have N*M entries; cell (i,l)
// starts its orbit traversal at step rotate[i*M + l].
RationalPlan plan_rational(FieldCtxPtr ctx, unsigned d, unsigned N, unsigned M,
                           std::vector<unsigned> rotate = {});

// Emits s_i(d*l + j) = 1/(w_{i,l} * alpha^{-j} - c). Each block walks its
// orbit passes times (passes > 1 exposes the periodic extension, mainly for
// period experiments with M = 1).
Multisequence generate_rational(const RationalPlan& plan, unsigned passes = 1);

// A place of the rational function field: one point per field element plus
// the place at infinity.
struct RationalPlace {
    bool at_infinity = false;
    FieldElem w;
    friend bool operator==(const RationalPlace&, const RationalPlace&) = default;
};

// Orbit partition of all q+1 places under x -> alpha*x with ord(alpha) = d.
// Affine places come first in canonical order, infinity last; each orbit is
// listed in traversal order from its smallest member.
std::vector<std::vector<RationalPlace>> rational_place_orbits(const FieldCtx& F,
                                                              unsigned d);

}  // namespace nlcseq
