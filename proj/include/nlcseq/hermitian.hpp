#pragma once

#include <vector>

#include "nlcseq/gf.hpp"
#include "nlcseq/multiseq.hpp"

namespace nlcseq {

// Affine point (a, b) on the curve y^q + y = x^(q+1) over F_{q^2}.
struct HermitianPoint {
    FieldElem a, b;
    friend constexpr auto operator<=>(const HermitianPoint&,
                                      const HermitianPoint&) = default;
};

// The curve together with its full list of affine points, sorted by (a, b)
// in canonical order. There are exactly q^3 of them; the place at infinity
// is tracked implicitly.
struct HermitianCurve {
    FieldCtxPtr ctx;  // F_{q^2}
    unsigned q = 0;
    unsigned genus = 0;  // (q^2 - q) / 2
    std::vector<HermitianPoint> affine_points;

    bool on_curve(HermitianPoint pt) const;
    // Position of pt in affine_points; throws std::domain_error if absent.
    std::size_t point_index(HermitianPoint pt) const;
};

// Builds the curve over the given field, which must be F_{q^2} for the given
// q (same characteristic); otherwise throws std::invalid_argument.
HermitianCurve enumerate_points(FieldCtxPtr ctx, unsigned q);

enum class HermMode { Sigma, Phi };

// One application of the automorphism. Sigma with parameter delta sends
// (a, b) to (a*delta^-1, b*delta^-(q+1)); phi with parameter theta sends
// (a, b) to (a, b - theta). The input must lie on the curve.
HermitianPoint apply_automorphism(const HermitianCurve& curve, HermMode mode,
                                  FieldElem param, HermitianPoint pt);

// Orbit partition of the affine points under sigma. delta must have
// multiplicative order q^2 - 1. Orbits are sorted by smallest member and
// listed in traversal order from it.
std::vector<std::vector<HermitianPoint>> sigma_orbits(const HermitianCurve& curve,
                                                      FieldElem delta);

// Orbit partition under phi. theta must be nonzero with theta^q + theta = 0.
std::vector<std::vector<HermitianPoint>> phi_orbits(const HermitianCurve& curve,
                                                    FieldElem theta);

// Smallest nonzero theta (canonical order) with theta^q + theta = 0.
FieldElem canonical_theta(const HermitianCurve& curve);

// Value at Q of z = (x-a)^q / (y - b - a^q (x-a)), the function with pole
// divisor (2g-1) * infinity + P for P = (a, b). Throws std::domain_error
// when Q = P; the denominator is the tangent line at P and vanishes at no
// other affine point.
FieldElem pole_function_eval(const HermitianCurve& curve, HermitianPoint P,
                             HermitianPoint Q);

struct HermitianPlan {
    HermitianCurve curve;
    HermMode mode = HermMode::Sigma;
    FieldElem gen_param;  // delta or theta
    unsigned N = 0;
    unsigned M = 0;
    unsigned orbit_len = 0;  // q^2 - 1 for sigma, p for phi
    HermitianPoint pole_point;
    std::vector<HermitianPoint> pole_orbit;
    // N x M grid of orbits, each in traversal order from its smallest member.
    std::vector<std::vector<std::vector<HermitianPoint>>> grid;
    bool small_q_warning = false;
};

// Lays out pole and grid orbits. Sigma mode uses the q full-length orbits
// (those with a != 0) and needs N*M = q-1; q < 5 is refused unless
// allow_small_q is set, in which case the plan is marked as carrying no
// complexity guarantee. Phi mode uses all q^3/p orbits, needs
// N*M = q^3/p - 1 and an odd characteristic.
HermitianPlan plan_hermitian(const HermitianCurve& curve, HermMode mode,
                             unsigned N, unsigned M, bool allow_small_q = false);

// Emits s_i(orbit_len*l + j) = z(aut^j(Q_{i,l})) with the pole function
// anchored at the plan's pole point. passes as in generate_rational.
Multisequence generate_hermitian(const HermitianPlan& plan, unsigned passes = 1);

}  // namespace nlcseq
