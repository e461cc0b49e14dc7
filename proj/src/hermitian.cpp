#include "nlcseq/hermitian.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nlcseq {

bool HermitianCurve::on_curve(HermitianPoint pt) const {
    const FieldCtx& F = *ctx;
    const FieldElem lhs = F.add(F.pow(pt.b, q), pt.b);
    const FieldElem rhs = F.pow(pt.a, q + 1);
    return lhs == rhs;
}

std::size_t HermitianCurve::point_index(HermitianPoint pt) const {
    const auto it =
        std::lower_bound(affine_points.begin(), affine_points.end(), pt);
    if (it == affine_points.end() || *it != pt)
        throw std::domain_error("point_index: point not on curve");
    return static_cast<std::size_t>(it - affine_points.begin());
}

HermitianCurve enumerate_points(FieldCtxPtr ctx, unsigned q) {
    if (!ctx) throw std::invalid_argument("enumerate_points: null field context");
    if (q < 2 || static_cast<std::uint64_t>(q) * q != ctx->q())
        throw std::invalid_argument(
            "enumerate_points: field size " + std::to_string(ctx->q()) +
            " is not the square of q = " + std::to_string(q));

    HermitianCurve curve;
    curve.q = q;
    curve.genus = (q * q - q) / 2;
    curve.ctx = std::move(ctx);
    const FieldCtx& F = *curve.ctx;
    curve.affine_points.reserve(static_cast<std::size_t>(q) * q * q);
    for (std::uint32_t a = 0; a < F.q(); ++a)
        for (std::uint32_t b = 0; b < F.q(); ++b) {
            const HermitianPoint pt{F.elem(a), F.elem(b)};
            if (curve.on_curve(pt)) curve.affine_points.push_back(pt);
        }
    if (curve.affine_points.size() != static_cast<std::size_t>(q) * q * q)
        throw std::logic_error("enumerate_points: affine point count is not q^3");
    return curve;
}

HermitianPoint apply_automorphism(const HermitianCurve& curve, HermMode mode,
                                  FieldElem param, HermitianPoint pt) {
    const FieldCtx& F = *curve.ctx;
    if (!curve.on_curve(pt))
        throw std::domain_error("apply_automorphism: point not on curve");
    if (mode == HermMode::Sigma) {
        const FieldElem di = F.inv(param);
        return {F.mul(pt.a, di), F.mul(pt.b, F.pow(di, curve.q + 1))};
    }
    return {pt.a, F.sub(pt.b, param)};
}

namespace {

std::vector<std::vector<HermitianPoint>> orbit_partition(
    const HermitianCurve& curve, HermMode mode, FieldElem param) {
    const FieldCtx& F = *curve.ctx;
    // Per-step multipliers/offset, hoisted out of the walk.
    FieldElem mul_a = F.one(), mul_b = F.one(), off_b = F.zero();
    if (mode == HermMode::Sigma) {
        mul_a = F.inv(param);
        mul_b = F.pow(mul_a, curve.q + 1);
    } else {
        off_b = F.neg(param);
    }

    std::vector<bool> seen(curve.affine_points.size(), false);
    std::vector<std::vector<HermitianPoint>> orbits;
    for (std::size_t start = 0; start < curve.affine_points.size(); ++start) {
        if (seen[start]) continue;
        std::vector<HermitianPoint> orbit;
        HermitianPoint pt = curve.affine_points[start];
        while (true) {
            const std::size_t idx = curve.point_index(pt);
            if (seen[idx]) break;
            seen[idx] = true;
            orbit.push_back(pt);
            if (mode == HermMode::Sigma)
                pt = {F.mul(pt.a, mul_a), F.mul(pt.b, mul_b)};
            else
                pt = {pt.a, F.add(pt.b, off_b)};
        }
        if (pt != curve.affine_points[start])
            throw std::logic_error("orbit_partition: walk left its orbit");
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

}  // namespace

std::vector<std::vector<HermitianPoint>> sigma_orbits(const HermitianCurve& curve,
                                                      FieldElem delta) {
    const FieldCtx& F = *curve.ctx;
    if (delta.v == 0 || F.element_order(delta) != F.q() - 1)
        throw std::invalid_argument(
            "sigma_orbits: delta is not primitive in the coordinate field");
    return orbit_partition(curve, HermMode::Sigma, delta);
}

std::vector<std::vector<HermitianPoint>> phi_orbits(const HermitianCurve& curve,
                                                    FieldElem theta) {
    const FieldCtx& F = *curve.ctx;
    if (theta.v == 0 ||
        F.add(F.pow(theta, curve.q), theta) != F.zero())
        throw std::invalid_argument(
            "phi_orbits: theta must be nonzero with theta^q + theta = 0");
    return orbit_partition(curve, HermMode::Phi, theta);
}

FieldElem canonical_theta(const HermitianCurve& curve) {
    const FieldCtx& F = *curve.ctx;
    for (std::uint32_t enc = 1; enc < F.q(); ++enc) {
        const FieldElem t = F.elem(enc);
        if (F.add(F.pow(t, curve.q), t) == F.zero()) return t;
    }
    throw std::logic_error("canonical_theta: no admissible theta found");
}

FieldElem pole_function_eval(const HermitianCurve& curve, HermitianPoint P,
                             HermitianPoint Q) {
    const FieldCtx& F = *curve.ctx;
    if (!curve.on_curve(P) || !curve.on_curve(Q))
        throw std::domain_error("pole_function_eval: point not on curve");
    if (P == Q)
        throw std::domain_error("pole_function_eval: evaluation at the pole");
    const FieldElem da = F.sub(Q.a, P.a);
    const FieldElem num = F.pow(da, curve.q);
    const FieldElem den =
        F.sub(F.sub(Q.b, P.b), F.mul(F.pow(P.a, curve.q), da));
    return F.mul(num, F.inv(den));
}

HermitianPlan plan_hermitian(const HermitianCurve& curve, HermMode mode,
                             unsigned N, unsigned M, bool allow_small_q) {
    const FieldCtx& F = *curve.ctx;
    if (N < 1 || M < 1)
        throw std::invalid_argument("plan_hermitian: N and M must be >= 1");

    HermitianPlan plan;
    plan.curve = curve;
    plan.mode = mode;
    plan.N = N;
    plan.M = M;

    std::vector<std::vector<HermitianPoint>> eligible;
    if (mode == HermMode::Sigma) {
        if (curve.q < 5 && !allow_small_q)
            throw std::invalid_argument(
                "plan_hermitian: sigma mode requires q >= 5 (q = " +
                std::to_string(curve.q) + "); pass allow_small_q to override");
        plan.small_q_warning = curve.q < 5;
        if (static_cast<unsigned long long>(N) * M != curve.q - 1)
            throw std::invalid_argument(
                "plan_hermitian: sigma mode needs N*M = q-1 = " +
                std::to_string(curve.q - 1) + ", got " + std::to_string(N * M));
        plan.gen_param = F.primitive();
        plan.orbit_len = F.q() - 1;
        for (auto& orb : sigma_orbits(curve, plan.gen_param))
            if (orb.size() == plan.orbit_len) eligible.push_back(std::move(orb));
        if (eligible.size() != curve.q)
            throw std::logic_error("plan_hermitian: expected q full sigma orbits");
    } else {
        if (F.p() == 2)
            throw std::invalid_argument(
                "plan_hermitian: phi mode requires odd characteristic");
        const unsigned norbits =
            static_cast<unsigned>(static_cast<std::uint64_t>(curve.q) * curve.q *
                                  curve.q / F.p());
        if (static_cast<unsigned long long>(N) * M != norbits - 1)
            throw std::invalid_argument(
                "plan_hermitian: phi mode needs N*M = q^3/p - 1 = " +
                std::to_string(norbits - 1) + ", got " + std::to_string(N * M));
        plan.gen_param = canonical_theta(curve);
        plan.orbit_len = static_cast<unsigned>(F.p());
        eligible = phi_orbits(curve, plan.gen_param);
        if (eligible.size() != norbits)
            throw std::logic_error("plan_hermitian: unexpected phi orbit count");
    }

    plan.pole_orbit = std::move(eligible[0]);
    plan.pole_point = plan.pole_orbit[0];
    plan.grid.assign(N, std::vector<std::vector<HermitianPoint>>(M));
    for (unsigned i = 0; i < N; ++i)
        for (unsigned l = 0; l < M; ++l)
            plan.grid[i][l] = std::move(eligible[1 + i * M + l]);
    return plan;
}

Multisequence generate_hermitian(const HermitianPlan& plan, unsigned passes) {
    if (passes < 1) throw std::invalid_argument("generate_hermitian: passes >= 1");
    const FieldCtx& F = *plan.curve.ctx;
    const unsigned block = plan.orbit_len * passes;

    Multisequence out;
    out.ctx = plan.curve.ctx;
    out.rows.assign(plan.N, {});
    for (unsigned i = 0; i < plan.N; ++i) {
        auto& row = out.rows[i];
        row.reserve(static_cast<std::size_t>(block) * plan.M);
        for (unsigned l = 0; l < plan.M; ++l) {
            const auto& orbit = plan.grid[i][l];
            for (unsigned j = 0; j < block; ++j)
                row.push_back(pole_function_eval(plan.curve, plan.pole_point,
                                                 orbit[j % orbit.size()]));
        }
    }

    out.prov.construction =
        plan.mode == HermMode::Sigma ? "hermitian-sigma" : "hermitian-phi";
    out.prov.p = F.p();
    out.prov.k = F.k();
    out.prov.q = F.q();
    out.prov.curve_q = plan.curve.q;
    if (plan.mode == HermMode::Sigma)
        out.prov.delta_index = plan.gen_param.v;
    else
        out.prov.theta_index = plan.gen_param.v;
    out.prov.N = plan.N;
    out.prov.M = plan.M;
    out.prov.small_q_warning = plan.small_q_warning;
    return out;
}

}  // namespace nlcseq
