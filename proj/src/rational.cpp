#include "nlcseq/rational.hpp"

#include <stdexcept>
#include <string>

namespace nlcseq {

RationalPlan plan_rational(FieldCtxPtr ctx, unsigned d, unsigned N, unsigned M,
                           std::vector<unsigned> rotate) {
    if (!ctx) throw std::invalid_argument("plan_rational: null field context");
    const unsigned qm1 = ctx->q() - 1;
    if (d <= 1)
        throw std::invalid_argument("plan_rational: d must be > 1, got " +
                                    std::to_string(d));
    if (qm1 % d != 0)
        throw std::invalid_argument("plan_rational: d = " + std::to_string(d) +
                                    " does not divide q-1 = " + std::to_string(qm1));
    const unsigned ncosets = qm1 / d;
    if (ncosets < 3)
        throw std::invalid_argument(
            "plan_rational: (q-1)/d must be >= 3, got " + std::to_string(ncosets));
    if (N < 1 || M < 1)
        throw std::invalid_argument("plan_rational: N and M must be >= 1");
    if (static_cast<unsigned long long>(N) * M != ncosets - 1)
        throw std::invalid_argument(
            "plan_rational: N*M must equal (q-1)/d - 1 = " +
            std::to_string(ncosets - 1) + ", got " + std::to_string(N * M));
    if (!rotate.empty() && rotate.size() != static_cast<std::size_t>(N) * M)
        throw std::invalid_argument("plan_rational: rotate needs N*M entries");

    const auto cosets = ctx->subgroup_cosets(d);

    RationalPlan plan;
    plan.ctx = std::move(ctx);
    plan.d = d;
    plan.N = N;
    plan.M = M;
    plan.alpha = plan.ctx->pow(plan.ctx->primitive(), qm1 / d);
    plan.pole_rep = cosets[0].rep;
    plan.q_grid.assign(N, std::vector<FieldElem>(M));
    for (unsigned i = 0; i < N; ++i)
        for (unsigned l = 0; l < M; ++l)
            plan.q_grid[i][l] = cosets[1 + i * M + l].rep;
    plan.rotate = std::move(rotate);
    return plan;
}

Multisequence generate_rational(const RationalPlan& plan, unsigned passes) {
    const FieldCtx& F = *plan.ctx;
    if (passes < 1) throw std::invalid_argument("generate_rational: passes >= 1");

    const FieldElem c = plan.pole_rep;
    const FieldElem alpha_inv = F.inv(plan.alpha);
    const unsigned block = plan.d * passes;

    Multisequence out;
    out.ctx = plan.ctx;
    out.rows.assign(plan.N, {});
    for (unsigned i = 0; i < plan.N; ++i) {
        auto& row = out.rows[i];
        row.reserve(static_cast<std::size_t>(block) * plan.M);
        for (unsigned l = 0; l < plan.M; ++l) {
            FieldElem w = plan.q_grid[i][l];
            if (!plan.rotate.empty())
                w = F.mul(w, F.pow(alpha_inv, plan.rotate[i * plan.M + l]));
            for (unsigned j = 0; j < block; ++j) {
                row.push_back(F.inv(F.sub(w, c)));
                w = F.mul(w, alpha_inv);
            }
        }
    }

    out.prov.construction = "rational";
    out.prov.p = F.p();
    out.prov.k = F.k();
    out.prov.q = F.q();
    out.prov.d = plan.d;
    out.prov.N = plan.N;
    out.prov.M = plan.M;
    return out;
}

std::vector<std::vector<RationalPlace>> rational_place_orbits(const FieldCtx& F,
                                                              unsigned d) {
    const unsigned qm1 = F.q() - 1;
    if (d == 0 || qm1 % d != 0)
        throw std::invalid_argument("rational_place_orbits: d must divide q-1");
    const FieldElem alpha = F.pow(F.primitive(), qm1 / d);
    const FieldElem alpha_inv = F.inv(alpha);

    std::vector<std::vector<RationalPlace>> orbits;
    std::vector<bool> seen(F.q(), false);
    for (std::uint32_t enc = 0; enc < F.q(); ++enc) {
        if (seen[enc]) continue;
        std::vector<RationalPlace> orbit;
        FieldElem w = F.elem(enc);
        do {
            seen[w.v] = true;
            orbit.push_back({false, w});
            w = F.mul(w, alpha_inv);
        } while (w.v != enc);
        orbits.push_back(std::move(orbit));
    }
    orbits.push_back({RationalPlace{true, F.zero()}});
    return orbits;
}

}  // namespace nlcseq
