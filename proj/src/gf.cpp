#include "nlcseq/gf.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace nlcseq {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<unsigned> prime_factors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Polynomials over F_p as digit vectors, constant term first.
using Poly = std::vector<int>;

Poly to_poly(std::uint32_t enc, int p) {
    Poly f;
    while (enc) {
        f.push_back(static_cast<int>(enc % p));
        enc /= p;
    }
    return f;
}

std::uint32_t from_poly(const Poly& f, int p) {
    std::uint32_t enc = 0;
    for (std::size_t i = f.size(); i-- > 0;) enc = enc * p + f[i];
    return enc;
}

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo a monic divisor m.
Poly poly_rem(Poly f, const Poly& m, int p) {
    trim(f);
    const std::size_t dm = m.size() - 1;
    while (f.size() > dm) {
        const int c = f.back();
        const std::size_t shift = f.size() - 1 - dm;
        if (c != 0)
            for (std::size_t i = 0; i <= dm; ++i) {
                int& digit = f[shift + i];
                digit = (digit - c * m[i]) % p;
                if (digit < 0) digit += p;
            }
        f.pop_back();
        trim(f);
    }
    return f;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, int p) {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    return poly_rem(std::move(prod), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, int p) {
    Poly acc{1};
    while (e) {
        if (e & 1) acc = poly_mulmod(acc, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return acc;
}

// True when f (monic, degree >= 1) has no monic divisor of degree in
// [1, deg(f)/2]. Trial division is cheap at these sizes.
bool is_irreducible(const Poly& f, int p) {
    const std::size_t deg = f.size() - 1;
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
        std::uint64_t lo = 1, hi = 1;
        for (std::size_t i = 0; i < d; ++i) lo *= p;
        hi = 2 * lo;
        for (std::uint64_t enc = lo; enc < hi; ++enc) {
            Poly g = to_poly(static_cast<std::uint32_t>(enc), p);
            if (poly_rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace

FieldCtxPtr make_field(int p, int k) {
    if (!is_prime(p))
        throw std::invalid_argument("make_field: p = " + std::to_string(p) +
                                    " is not prime");
    if (k < 1) throw std::invalid_argument("make_field: k must be >= 1");
    std::uint64_t q = 1;
    for (int i = 0; i < k; ++i) {
        q *= static_cast<std::uint64_t>(p);
        if (q > (1u << 16))
            throw std::invalid_argument("make_field: p^k exceeds 2^16");
    }

    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->k_ = k;
    ctx->q_ = static_cast<std::uint32_t>(q);

    // Smallest-encoding monic irreducible of degree k. For k = 1 that is x,
    // which reduces the representation to plain residues mod p.
    Poly mod;
    if (k == 1) {
        mod = {0, 1};
    } else {
        for (std::uint32_t enc = ctx->q_;; ++enc) {
            Poly f = to_poly(enc, p);
            if (is_irreducible(f, p)) {
                mod = std::move(f);
                break;
            }
        }
    }
    ctx->modulus_.assign(mod.begin(), mod.end());

    const std::uint32_t qm1 = ctx->q_ - 1;
    std::uint32_t prim = 1;
    if (ctx->q_ > 2) {
        const auto factors = prime_factors(qm1);
        for (std::uint32_t cand = 2; cand < ctx->q_; ++cand) {
            const Poly c = to_poly(cand, p);
            bool ok = true;
            for (unsigned f : factors) {
                Poly r = poly_powmod(c, qm1 / f, mod, p);
                if (from_poly(r, p) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                prim = cand;
                break;
            }
        }
    }
    ctx->primitive_ = {static_cast<std::uint16_t>(prim)};

    ctx->exp_.resize(qm1);
    ctx->log_.assign(ctx->q_, UINT32_MAX);
    Poly cur{1};
    const Poly prim_poly = to_poly(prim, p);
    for (std::uint32_t i = 0; i < qm1; ++i) {
        const std::uint32_t enc = from_poly(cur, p);
        ctx->exp_[i] = static_cast<std::uint16_t>(enc);
        if (ctx->log_[enc] != UINT32_MAX)
            throw std::logic_error("make_field: primitive element order check failed");
        ctx->log_[enc] = i;
        cur = poly_mulmod(cur, prim_poly, mod, p);
    }
    if (from_poly(cur, p) != 1)
        throw std::logic_error("make_field: exp table did not close");

    ctx->neg_.resize(ctx->q_);
    for (std::uint32_t enc = 0; enc < ctx->q_; ++enc) {
        std::uint32_t r = 0, m = 1, x = enc;
        while (x) {
            r += ((p - static_cast<int>(x % p)) % p) * m;
            m *= p;
            x /= p;
        }
        ctx->neg_[enc] = static_cast<std::uint16_t>(r);
    }

    if (ctx->q_ <= 256) {
        ctx->add_.resize(ctx->q_ * ctx->q_);
        for (std::uint32_t a = 0; a < ctx->q_; ++a)
            for (std::uint32_t b = 0; b < ctx->q_; ++b) {
                std::uint32_t r = 0, m = 1, x = a, y = b;
                while (x || y) {
                    r += ((x % p) + (y % p)) % p * m;
                    m *= p;
                    x /= p;
                    y /= p;
                }
                ctx->add_[a * ctx->q_ + b] = static_cast<std::uint16_t>(r);
            }
    }

    return ctx;
}

FieldElem FieldCtx::elem(std::uint32_t index) const {
    if (index >= q_)
        throw std::invalid_argument("elem: index " + std::to_string(index) +
                                    " out of range for q = " + std::to_string(q_));
    return {static_cast<std::uint16_t>(index)};
}

FieldElem FieldCtx::from_int(long long t) const {
    long long r = t % p_;
    if (r < 0) r += p_;
    return {static_cast<std::uint16_t>(r)};
}

FieldElem FieldCtx::add(FieldElem a, FieldElem b) const {
    if (!add_.empty()) return {add_[a.v * q_ + b.v]};
    if (p_ == 2) return {static_cast<std::uint16_t>(a.v ^ b.v)};
    std::uint32_t r = 0, m = 1, x = a.v, y = b.v;
    while (x || y) {
        r += ((x % p_) + (y % p_)) % p_ * m;
        m *= p_;
        x /= p_;
        y /= p_;
    }
    return {static_cast<std::uint16_t>(r)};
}

FieldElem FieldCtx::sub(FieldElem a, FieldElem b) const {
    return add(a, FieldElem{neg_[b.v]});
}

FieldElem FieldCtx::mul(FieldElem a, FieldElem b) const {
    if (a.v == 0 || b.v == 0) return {0};
    const std::uint32_t qm1 = q_ - 1;
    std::uint32_t s = log_[a.v] + log_[b.v];
    if (s >= qm1) s -= qm1;
    return {exp_[s]};
}

FieldElem FieldCtx::inv(FieldElem a) const {
    if (a.v == 0) throw std::domain_error("inv: division by zero");
    const std::uint32_t qm1 = q_ - 1;
    const std::uint32_t l = log_[a.v];
    return {exp_[l == 0 ? 0 : qm1 - l]};
}

FieldElem FieldCtx::pow(FieldElem a, long long e) const {
    if (a.v == 0) {
        if (e == 0) return one();
        if (e < 0) throw std::domain_error("pow: zero to a negative power");
        return zero();
    }
    const long long qm1 = q_ - 1;
    long long r = e % qm1;
    if (r < 0) r += qm1;
    const std::uint64_t idx =
        (static_cast<std::uint64_t>(log_[a.v]) * static_cast<std::uint64_t>(r)) %
        static_cast<std::uint64_t>(qm1);
    return {exp_[idx]};
}

unsigned FieldCtx::element_order(FieldElem a) const {
    if (a.v == 0) throw std::domain_error("element_order: zero element");
    const unsigned qm1 = q_ - 1;
    return qm1 / std::gcd(static_cast<unsigned>(log_[a.v]), qm1);
}

std::vector<FieldCtx::Coset> FieldCtx::subgroup_cosets(unsigned d) const {
    const unsigned qm1 = q_ - 1;
    if (d == 0 || qm1 % d != 0)
        throw std::invalid_argument("subgroup_cosets: d = " + std::to_string(d) +
                                    " does not divide q-1 = " + std::to_string(qm1));
    const FieldElem alpha = {exp_[(qm1 / d) % qm1]};
    std::vector<bool> seen(q_, false);
    std::vector<Coset> out;
    out.reserve(qm1 / d);
    for (std::uint32_t enc = 1; enc < q_; ++enc) {
        if (seen[enc]) continue;
        Coset c;
        c.rep = {static_cast<std::uint16_t>(enc)};
        c.members.reserve(d);
        FieldElem cur = c.rep;
        for (unsigned j = 0; j < d; ++j) {
            seen[cur.v] = true;
            c.members.push_back(cur);
            cur = mul(cur, alpha);
        }
        if (cur != c.rep)
            throw std::logic_error("subgroup_cosets: coset did not close");
        out.push_back(std::move(c));
    }
    return out;
}

std::optional<std::vector<FieldElem>> solve_consistent(const LinearSystem& sys,
                                                       const FieldCtx& F) {
    if (sys.rows.size() != sys.rhs.size())
        throw std::invalid_argument("solve_consistent: rows/rhs size mismatch");
    for (const auto& r : sys.rows)
        if (r.size() != sys.ncols)
            throw std::invalid_argument("solve_consistent: row width mismatch");

    // Row echelon kept as pivot-column -> normalized row. Pivot rows are zero
    // left of their pivot, so one left-to-right pass fully reduces a new row.
    struct EchRow {
        std::vector<FieldElem> a;
        FieldElem b;
    };
    std::vector<EchRow> ech;
    std::vector<std::ptrdiff_t> pivot_row(sys.ncols, -1);

    for (std::size_t ri = 0; ri < sys.rows.size(); ++ri) {
        std::vector<FieldElem> row = sys.rows[ri];
        FieldElem rhs = sys.rhs[ri];
        bool placed = false;
        for (std::size_t j = 0; j < sys.ncols; ++j) {
            if (row[j].v == 0) continue;
            const std::ptrdiff_t e = pivot_row[j];
            if (e < 0) {
                const FieldElem s = F.inv(row[j]);
                for (std::size_t t = j; t < sys.ncols; ++t) row[t] = F.mul(row[t], s);
                rhs = F.mul(rhs, s);
                pivot_row[j] = static_cast<std::ptrdiff_t>(ech.size());
                ech.push_back({std::move(row), rhs});
                placed = true;
                break;
            }
            const FieldElem c = row[j];
            const EchRow& er = ech[e];
            for (std::size_t t = j; t < sys.ncols; ++t)
                if (er.a[t].v != 0) row[t] = F.sub(row[t], F.mul(c, er.a[t]));
            rhs = F.sub(rhs, F.mul(c, er.b));
        }
        if (!placed && rhs.v != 0) return std::nullopt;
    }

    std::vector<FieldElem> x(sys.ncols, F.zero());
    for (std::size_t j = sys.ncols; j-- > 0;) {
        const std::ptrdiff_t e = pivot_row[j];
        if (e < 0) continue;
        const EchRow& er = ech[e];
        FieldElem acc = er.b;
        for (std::size_t t = j + 1; t < sys.ncols; ++t)
            if (er.a[t].v != 0 && x[t].v != 0) acc = F.sub(acc, F.mul(er.a[t], x[t]));
        x[j] = acc;
    }

    for (std::size_t ri = 0; ri < sys.rows.size(); ++ri) {
        FieldElem acc = F.zero();
        for (std::size_t j = 0; j < sys.ncols; ++j)
            if (sys.rows[ri][j].v != 0 && x[j].v != 0)
                acc = F.add(acc, F.mul(sys.rows[ri][j], x[j]));
        if (acc != sys.rhs[ri])
            throw std::logic_error("solve_consistent: solution check failed");
    }
    return x;
}

}  // namespace nlcseq
