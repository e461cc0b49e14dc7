#include "nlcseq/bounds.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "nlcseq/parallel.hpp"
#include "nlcseq/rng.hpp"

namespace nlcseq {

namespace {

bool is_prime_u(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; static_cast<unsigned long long>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Returns the prime p with q = p^e, or 0 when q is not a prime power.
unsigned prime_power_base(unsigned q) {
    if (q < 2) return 0;
    unsigned p = 0;
    for (unsigned d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0) return q;  // q itself prime
    while (q % p == 0) q /= p;
    return q == 1 ? p : 0;
}

Fraction max_frac(const Fraction& a, const Fraction& b) { return a < b ? b : a; }

}  // namespace

Fraction::Fraction(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Fraction: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

long long Fraction::ceil_value() const {
    const long long q = num / den;
    return (num % den != 0 && num > 0) ? q + 1 : q;
}

bool Fraction::operator<(const Fraction& o) const {
    return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
}

BoundValue bound_rational(unsigned q, unsigned d, unsigned N, unsigned M,
                          unsigned n, unsigned r) {
    if (d <= 1 || (q - 1) % d != 0)
        throw std::invalid_argument("bound_rational: d must be > 1 and divide q-1");
    const unsigned ncosets = (q - 1) / d;
    if (ncosets < 3)
        throw std::invalid_argument("bound_rational: (q-1)/d must be >= 3");
    if (N < 1 || M < 1 ||
        static_cast<unsigned long long>(N) * M != ncosets - 1)
        throw std::invalid_argument("bound_rational: N*M must equal (q-1)/d - 1");
    if (r < 1 || r > q - 1)
        throw std::invalid_argument("bound_rational: r must lie in [1, q-1]");
    if (n <= 1 || n > static_cast<unsigned long long>(d) * M)
        throw std::invalid_argument("bound_rational: n must lie in (1, d*M]");

    const long long Nn = N, rr = r, dd = d, nn = n;
    BoundValue out;
    if (n <= d) out.head = Fraction(nn * Nn - 1, Nn + rr);
    if (n >= d) {
        const long long t = nn / dd;
        out.tail = Fraction(dd * Nn * t - 1, Nn * t + rr);
    }
    if (out.head && out.tail)
        out.value = max_frac(*out.head, *out.tail);
    else
        out.value = out.head ? *out.head : *out.tail;
    return out;
}

BoundValue bound_hermitian_sigma(unsigned q, unsigned N, unsigned M, unsigned n,
                                 unsigned r) {
    if (q < 5 || prime_power_base(q) == 0)
        throw std::invalid_argument(
            "bound_hermitian_sigma: q must be a prime power >= 5");
    const unsigned long long L = static_cast<unsigned long long>(q) * q - 1;
    if (N < 1 || M < 1 || static_cast<unsigned long long>(N) * M != q - 1)
        throw std::invalid_argument("bound_hermitian_sigma: N*M must equal q-1");
    if (r < 1 || r > L)
        throw std::invalid_argument(
            "bound_hermitian_sigma: r must lie in [1, q^2-1]");
    if (n <= 1 || n > L * M)
        throw std::invalid_argument(
            "bound_hermitian_sigma: n must lie in (1, M*(q^2-1)]");

    const long long Nn = N, rr = r, nn = n, LL = static_cast<long long>(L);
    const long long w = static_cast<long long>(q) * q - q;  // q^2 - q
    BoundValue out;
    if (nn <= LL) out.head = Fraction(nn * Nn - 1, Nn + w * rr);
    if (nn >= LL) {
        const long long t = nn / LL;
        out.tail = Fraction(LL * Nn * t - 1, Nn * t + w * rr);
    }
    if (out.head && out.tail)
        out.value = max_frac(*out.head, *out.tail);
    else
        out.value = out.head ? *out.head : *out.tail;
    return out;
}

BoundValue bound_hermitian_phi(unsigned p, unsigned q, unsigned N, unsigned M,
                               unsigned n, unsigned r) {
    if (!is_prime_u(p) || p == 2)
        throw std::invalid_argument("bound_hermitian_phi: p must be an odd prime");
    unsigned long long qq = q;
    while (qq > 1 && qq % p == 0) qq /= p;
    if (qq != 1)
        throw std::invalid_argument("bound_hermitian_phi: q must be a power of p");
    const unsigned long long norbits =
        static_cast<unsigned long long>(q) * q * q / p;
    if (N < 1 || M < 1 || static_cast<unsigned long long>(N) * M != norbits - 1)
        throw std::invalid_argument(
            "bound_hermitian_phi: N*M must equal q^3/p - 1");
    const unsigned long long L = static_cast<unsigned long long>(q) * q - 1;
    if (r < 1 || r > L)
        throw std::invalid_argument("bound_hermitian_phi: r must lie in [1, q^2-1]");
    if (n <= 1 || n > static_cast<unsigned long long>(M) * p)
        throw std::invalid_argument("bound_hermitian_phi: n must lie in (1, M*p]");

    const long long Nn = N, rr = r, nn = n, pp = p;
    const long long w = static_cast<long long>(q) * q - q;
    BoundValue out;
    if (nn <= pp) out.head = Fraction(nn * Nn - 1, Nn + w * rr);
    if (nn >= pp) {
        const long long t = nn / pp;
        out.tail = Fraction(pp * Nn * t - 1, Nn * t + w * rr);
    }
    if (out.head && out.tail)
        out.value = max_frac(*out.head, *out.tail);
    else
        out.value = out.head ? *out.head : *out.tail;
    return out;
}

BoundValue BoundSpec::evaluate(unsigned n, unsigned r) const {
    if (construction == "rational") return bound_rational(q, d, N, M, n, r);
    if (construction == "hermitian-sigma")
        return bound_hermitian_sigma(q, N, M, n, r);
    if (construction == "hermitian-phi")
        return bound_hermitian_phi(p, q, N, M, n, r);
    throw std::invalid_argument("BoundSpec: no bound for construction '" +
                                construction + "'");
}

BoundSpec bound_spec_for(const Provenance& prov) {
    BoundSpec spec;
    spec.construction = prov.construction;
    spec.N = prov.N;
    spec.M = prov.M;
    if (prov.construction == "rational") {
        spec.q = prov.q;
        spec.d = prov.d;
        spec.n_max = prov.d * prov.M;
        spec.r_max = prov.q - 1;
    } else if (prov.construction == "hermitian-sigma") {
        if (prov.small_q_warning)
            throw std::invalid_argument(
                "bound_spec_for: sigma data generated below q = 5 carries no bound");
        spec.q = prov.curve_q;
        spec.n_max = (prov.curve_q * prov.curve_q - 1) * prov.M;
        spec.r_max = prov.curve_q * prov.curve_q - 1;
    } else if (prov.construction == "hermitian-phi") {
        spec.q = prov.curve_q;
        spec.p = static_cast<unsigned>(prov.p);
        spec.n_max = static_cast<unsigned>(prov.p) * prov.M;
        spec.r_max = prov.curve_q * prov.curve_q - 1;
    } else {
        throw std::invalid_argument("bound_spec_for: construction '" +
                                    prov.construction + "' has no bound");
    }
    return spec;
}

bool SweepReport::all_exact_satisfied() const {
    for (const auto& row : rows)
        if (row.has_bound &&
            row.result.status == ComplexityResult::Status::Exact && !row.satisfied)
            return false;
    return true;
}

SweepReport verify_sweep(const Multisequence& S, const BoundSpec& spec,
                         const std::vector<unsigned>& n_list,
                         const std::vector<unsigned>& r_list,
                         std::uint64_t budget, unsigned workers) {
    const Provenance& prov = S.prov;
    bool match = spec.construction == prov.construction &&
                 spec.N == prov.N && spec.M == prov.M;
    if (match) {
        if (prov.construction == "rational")
            match = spec.q == prov.q && spec.d == prov.d;
        else
            match = spec.q == prov.curve_q &&
                    (prov.construction != "hermitian-phi" ||
                     spec.p == static_cast<unsigned>(prov.p));
    }
    if (!match)
        throw std::runtime_error(
            "verify_sweep: provenance mismatch between input and bound spec");

    for (unsigned n : n_list)
        if (n <= 1 || n > spec.n_max || n > S.length())
            throw std::invalid_argument("verify_sweep: n = " + std::to_string(n) +
                                        " outside (1, " +
                                        std::to_string(spec.n_max) + "]");
    for (unsigned r : r_list)
        if (r < 1 || r > spec.r_max)
            throw std::invalid_argument("verify_sweep: r = " + std::to_string(r) +
                                        " outside [1, " +
                                        std::to_string(spec.r_max) + "]");

    const unsigned block_len = spec.construction == "rational" ? spec.d
                               : spec.construction == "hermitian-sigma"
                                   ? spec.q * spec.q - 1
                                   : spec.p;

    SweepReport report;
    report.rows.resize(n_list.size() * r_list.size());
    parallel_for_index(
        report.rows.size(), workers, [&](std::size_t cell) {
            const unsigned n = n_list[cell / r_list.size()];
            const unsigned r = r_list[cell % r_list.size()];
            SweepRow row;
            row.construction = spec.construction;
            row.q = spec.q;
            row.d_or_p = block_len;
            row.N = spec.N;
            row.M = spec.M;
            row.n = n;
            row.r = r;
            const auto t0 = std::chrono::steady_clock::now();
            row.result = joint_nonlinear_complexity(S, n, r, budget);
            const auto t1 = std::chrono::steady_clock::now();
            row.millis =
                std::chrono::duration<double, std::milli>(t1 - t0).count();
            row.has_bound = true;
            row.bound = spec.evaluate(n, r).value;
            row.satisfied = static_cast<long long>(row.result.value) >=
                            row.bound.ceil_value();
            report.rows[cell] = std::move(row);
        });
    return report;
}

Multisequence random_multisequence(const FieldCtxPtr& ctx, unsigned m, unsigned n,
                                   std::uint64_t stream_seed) {
    if (!ctx) throw std::invalid_argument("random_multisequence: null field context");
    if (m < 1 || n < 1)
        throw std::invalid_argument("random_multisequence: m and n must be >= 1");
    CounterRng rng(stream_seed);
    Multisequence S;
    S.ctx = ctx;
    S.rows.assign(m, std::vector<FieldElem>(n));
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < n; ++j)
            S.rows[i][j] = {static_cast<std::uint16_t>(rng.below(ctx->q()))};
    S.prov.construction = "random";
    S.prov.p = ctx->p();
    S.prov.k = ctx->k();
    S.prov.q = ctx->q();
    S.prov.N = m;
    S.prov.seed = stream_seed;
    return S;
}

BaselineStats random_baseline(const FieldCtxPtr& ctx, unsigned m, unsigned n,
                              unsigned r, unsigned trials, std::uint64_t seed,
                              std::uint64_t budget) {
    if (trials < 1)
        throw std::invalid_argument("random_baseline: trials must be >= 1");
    BaselineStats stats;
    stats.q = ctx->q();
    stats.m = m;
    stats.n = n;
    stats.r = r;
    stats.trials = trials;
    stats.seed = seed;
    stats.ln_mn = std::log(static_cast<double>(m) * n);
    stats.log2_mn = std::log2(static_cast<double>(m) * n);
    stats.values.reserve(trials);

    const unsigned r_eff = std::min<unsigned>(r, ctx->q() - 1);
    double sum = 0.0;
    for (unsigned t = 0; t < trials; ++t) {
        const Multisequence S =
            random_multisequence(ctx, m, n, derive_stream_seed(seed, t));
        unsigned value;
        if (r_eff == ctx->q() - 1) {
            value = max_order_complexity_fast(S, n);
        } else {
            const ComplexityResult res = joint_nonlinear_complexity(S, n, r, budget);
            if (res.status != ComplexityResult::Status::Exact) ++stats.truncated;
            value = res.value;
        }
        stats.values.push_back(value);
        sum += value;
        if (t == 0 || value < stats.min) stats.min = value;
        if (t == 0 || value > stats.max) stats.max = value;
    }
    stats.mean = sum / trials;
    return stats;
}

}  // namespace nlcseq
