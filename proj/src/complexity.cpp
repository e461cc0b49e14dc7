#include "nlcseq/complexity.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace nlcseq {

namespace {

// Saturating (r+1)^u so budget checks never overflow.
std::uint64_t monomial_count(unsigned r, unsigned u) {
    std::uint64_t c = 1;
    for (unsigned i = 0; i < u; ++i) {
        if (c > UINT64_MAX / (r + 1)) return UINT64_MAX;
        c *= r + 1;
    }
    return c;
}

// All monomial values of the window in coefficient order. Grows one variable
// at a time; appending variable t multiplies the index by r+1, which is what
// keeps the first variable most significant.
std::vector<FieldElem> monomial_row(const FieldCtx& F,
                                    std::span<const FieldElem> window,
                                    unsigned r) {
    std::vector<FieldElem> row{F.one()};
    std::vector<FieldElem> pws(r + 1);
    for (const FieldElem arg : window) {
        pws[0] = F.one();
        for (unsigned e = 1; e <= r; ++e) pws[e] = F.mul(pws[e - 1], arg);
        std::vector<FieldElem> next(row.size() * (r + 1));
        std::size_t idx = 0;
        for (const FieldElem c : row)
            for (unsigned e = 0; e <= r; ++e) next[idx++] = F.mul(c, pws[e]);
        row = std::move(next);
    }
    return row;
}

void check_prefix_args(const Multisequence& S, unsigned n) {
    if (S.rows.empty())
        throw std::invalid_argument("complexity: empty multisequence");
    for (const auto& row : S.rows)
        if (row.size() != S.rows[0].size())
            throw std::invalid_argument("complexity: ragged rows");
    if (n < 1 || n > S.length())
        throw std::invalid_argument("complexity: n = " + std::to_string(n) +
                                    " outside [1, " + std::to_string(S.length()) +
                                    "]");
}

bool zero_prefixes(const Multisequence& S, unsigned n) {
    for (const auto& row : S.rows)
        for (unsigned j = 0; j < n; ++j)
            if (row[j].v != 0) return false;
    return true;
}

}  // namespace

FieldElem GeneratingPolynomial::eval(const FieldCtx& F,
                                     std::span<const FieldElem> args) const {
    if (args.size() != u)
        throw std::invalid_argument("eval: expected " + std::to_string(u) +
                                    " arguments");
    const auto mono = monomial_row(F, args, r);
    FieldElem acc = F.zero();
    for (std::size_t m = 0; m < mono.size(); ++m)
        if (coeffs[m].v != 0 && mono[m].v != 0)
            acc = F.add(acc, F.mul(coeffs[m], mono[m]));
    return acc;
}

std::optional<GeneratingPolynomial> exists_generator(const Multisequence& S,
                                                     unsigned n, unsigned u,
                                                     unsigned r,
                                                     std::uint64_t budget) {
    check_prefix_args(S, n);
    if (u < 1 || u >= n)
        throw std::invalid_argument("exists_generator: u must lie in [1, n-1]");
    if (r < 1) throw std::invalid_argument("exists_generator: r must be >= 1");
    const std::uint64_t ncols = monomial_count(r, u);
    if (ncols > budget)
        throw std::runtime_error("exists_generator: monomial budget exceeded: (r+1)^u = " +
                                 std::to_string(ncols) + " > " +
                                 std::to_string(budget));

    const FieldCtx& F = *S.ctx;
    LinearSystem sys;
    sys.ncols = static_cast<std::size_t>(ncols);
    sys.rows.reserve(S.rows.size() * (n - u));
    sys.rhs.reserve(S.rows.size() * (n - u));
    for (const auto& row : S.rows)
        for (unsigned j = 0; j + u < n; ++j) {
            sys.rows.push_back(
                monomial_row(F, std::span(row.data() + j, u), r));
            sys.rhs.push_back(row[j + u]);
        }

    auto sol = solve_consistent(sys, F);
    if (!sol) return std::nullopt;
    return GeneratingPolynomial{u, r, std::move(*sol)};
}

ComplexityResult joint_nonlinear_complexity(const Multisequence& S, unsigned n,
                                            unsigned r, std::uint64_t budget) {
    check_prefix_args(S, n);
    if (r < 1)
        throw std::invalid_argument("joint_nonlinear_complexity: r must be >= 1");
    const unsigned r_eff =
        std::min<unsigned>(r, static_cast<unsigned>(S.ctx->q() - 1));

    if (zero_prefixes(S, n)) return {0, ComplexityResult::Status::Exact, {}, 0};

    for (unsigned u = 1; u < n; ++u) {
        if (monomial_count(r_eff, u) > budget)
            return {u, ComplexityResult::Status::Truncated, {}, u - 1};
        auto f = exists_generator(S, n, u, r_eff, budget);
        if (!f) continue;
        // Witness integrity: the recurrence must reproduce every prefix.
        std::vector<std::vector<FieldElem>> seeds;
        seeds.reserve(S.rows.size());
        for (const auto& row : S.rows)
            seeds.emplace_back(row.begin(), row.begin() + u);
        const Multisequence rep = replay(S.ctx, *f, seeds, n);
        for (std::size_t i = 0; i < S.rows.size(); ++i)
            for (unsigned j = 0; j < n; ++j)
                if (rep.rows[i][j] != S.rows[i][j])
                    throw std::logic_error(
                        "joint_nonlinear_complexity: witness replay mismatch");
        return {u, ComplexityResult::Status::Exact, std::move(f), u};
    }
    return {n, ComplexityResult::Status::Exact, {}, n - 1};
}

unsigned max_order_complexity_fast(const Multisequence& S, unsigned n) {
    check_prefix_args(S, n);
    if (zero_prefixes(S, n)) return 0;

    for (unsigned u = 1; u < n; ++u) {
        // Key = packed window bytes; value = the symbol that followed it.
        std::unordered_map<std::string, std::uint16_t> succ;
        succ.reserve(S.rows.size() * (n - u));
        bool ok = true;
        for (const auto& row : S.rows) {
            for (unsigned j = 0; ok && j + u < n; ++j) {
                std::string key(reinterpret_cast<const char*>(row.data() + j),
                                u * sizeof(FieldElem));
                const auto [it, inserted] = succ.try_emplace(key, row[j + u].v);
                if (!inserted && it->second != row[j + u].v) ok = false;
            }
            if (!ok) break;
        }
        if (ok) return u;
    }
    return n;
}

Multisequence replay(const FieldCtxPtr& ctx, const GeneratingPolynomial& f,
                     const std::vector<std::vector<FieldElem>>& seeds,
                     unsigned length) {
    if (!ctx) throw std::invalid_argument("replay: null field context");
    if (length < f.u)
        throw std::invalid_argument("replay: length shorter than the seed");
    Multisequence out;
    out.ctx = ctx;
    out.rows.reserve(seeds.size());
    for (const auto& seed : seeds) {
        if (seed.size() != f.u)
            throw std::invalid_argument("replay: seed length must equal f.u");
        std::vector<FieldElem> row(seed.begin(), seed.end());
        row.reserve(length);
        for (unsigned t = f.u; t < length; ++t)
            row.push_back(f.eval(*ctx, std::span(row.data() + t - f.u, f.u)));
        out.rows.push_back(std::move(row));
    }
    out.prov.construction = "replay";
    out.prov.p = ctx->p();
    out.prov.k = ctx->k();
    out.prov.q = ctx->q();
    out.prov.N = static_cast<unsigned>(seeds.size());
    return out;
}

}  // namespace nlcseq
