#include "padicroots/root_counting.hpp"

#include <algorithm>
#include <stdexcept>

namespace padic {

namespace {

mpz_class divexact_checked(const mpz_class& a, const mpz_class& b) {
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) throw std::logic_error("inexact division in fraction-free arithmetic");
    return q;
}

mpz_class int_pow(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

mpz_class content(const IntPolynomial& f) {
    mpz_class g = 0;
    for (const auto& a : f.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        if (g == 1) break;
    }
    return g; // 0 for the zero polynomial
}

// Primitive part with positive leading coefficient.
IntPolynomial primitive_part(const IntPolynomial& f) {
    if (f.is_zero()) return f;
    mpz_class c = content(f);
    if (f.coeffs().back() < 0) c = -c;
    std::vector<mpz_class> out;
    out.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) out.push_back(divexact_checked(a, c));
    return IntPolynomial(std::move(out));
}

// Pseudo-remainder: lc(v)^(deg u - deg v + 1) * u mod v, computed in Z[X].
IntPolynomial pseudo_rem(const IntPolynomial& u, const IntPolynomial& v) {
    const auto& vc = v.coeffs();
    long dv = v.degree();
    const mpz_class& lv = vc.back();
    IntPolynomial r = u;
    long e = u.degree() - dv + 1;
    while (!r.is_zero() && r.degree() >= dv) {
        long dr = r.degree();
        std::vector<mpz_class> next(r.coeffs().begin(), r.coeffs().end() - 1);
        const mpz_class& lead = r.coeffs().back();
        for (long i = 0; i < dr; ++i) {
            next[i] *= lv;
            if (i >= dr - dv) next[i] -= lead * vc[i - (dr - dv)];
        }
        r = IntPolynomial(std::move(next));
        --e;
    }
    // Degree can drop by more than one per step; top up the scaling.
    if (e > 0) {
        mpz_class scale = int_pow(lv, static_cast<unsigned long>(e));
        std::vector<mpz_class> out;
        out.reserve(r.coeffs().size());
        for (const auto& a : r.coeffs()) out.push_back(a * scale);
        r = IntPolynomial(std::move(out));
    }
    return r;
}

} // namespace

IntPolynomial polynomial_gcd(const IntPolynomial& u0, const IntPolynomial& v0) {
    if (u0.is_zero()) return primitive_part(v0);
    if (v0.is_zero()) return primitive_part(u0);
    IntPolynomial u = primitive_part(u0);
    IntPolynomial v = primitive_part(v0);
    if (u.degree() < v.degree()) std::swap(u, v);
    // Subresultant polynomial remainder sequence (fraction-free).
    mpz_class g = 1, h = 1;
    while (true) {
        long delta = u.degree() - v.degree();
        IntPolynomial r = pseudo_rem(u, v);
        if (r.is_zero()) return primitive_part(v);
        if (r.degree() == 0) return IntPolynomial({mpz_class(1)});
        u = v;
        mpz_class divisor = g * int_pow(h, static_cast<unsigned long>(delta));
        std::vector<mpz_class> vc;
        vc.reserve(r.coeffs().size());
        for (const auto& a : r.coeffs()) vc.push_back(divexact_checked(a, divisor));
        v = IntPolynomial(std::move(vc));
        g = u.coeffs().back();
        if (delta <= 1)
            h = int_pow(g, static_cast<unsigned long>(delta)) * int_pow(h, static_cast<unsigned long>(1 - delta));
        else
            h = divexact_checked(int_pow(g, static_cast<unsigned long>(delta)),
                                 int_pow(h, static_cast<unsigned long>(delta - 1)));
    }
}

mpz_class resultant(const IntPolynomial& u, const IntPolynomial& v) {
    if (u.is_zero() || v.is_zero()) return 0;
    long m = u.degree(), n = v.degree();
    if (m == 0) return int_pow(u.coeffs()[0], static_cast<unsigned long>(n));
    if (n == 0) return int_pow(v.coeffs()[0], static_cast<unsigned long>(m));
    long N = m + n;
    // Sylvester matrix: n rows of u's coefficients, m rows of v's.
    std::vector<std::vector<mpz_class>> M(N, std::vector<mpz_class>(N, mpz_class(0)));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j <= m; ++j) M[i][i + j] = u.coeff(m - j);
    for (long i = 0; i < m; ++i)
        for (long j = 0; j <= n; ++j) M[n + i][i + j] = v.coeff(n - j);
    // Bareiss fraction-free elimination.
    int sign = 1;
    mpz_class prev = 1;
    for (long k = 0; k + 1 < N; ++k) {
        if (M[k][k] == 0) {
            long piv = -1;
            for (long i = k + 1; i < N; ++i)
                if (M[i][k] != 0) { piv = i; break; }
            if (piv < 0) return 0;
            std::swap(M[k], M[piv]);
            sign = -sign;
        }
        for (long i = k + 1; i < N; ++i) {
            for (long j = k + 1; j < N; ++j)
                M[i][j] = divexact_checked(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev);
            M[i][k] = 0;
        }
        prev = M[k][k];
    }
    return sign * M[N - 1][N - 1];
}

IntPolynomial squarefree_part(const IntPolynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("zero polynomial has every x as root");
    IntPolynomial g = primitive_part(f);
    if (g.degree() <= 1) return g;
    IntPolynomial d = polynomial_gcd(g, derivative(g));
    if (d.degree() == 0) return g;
    // Exact division in Z[X]: g and d are primitive with positive leading
    // coefficients and d divides g, so the quotient is primitive with a
    // positive leading coefficient as well.
    std::vector<mpz_class> num = g.coeffs();
    const auto& dc = d.coeffs();
    long dd = d.degree();
    long dq = g.degree() - dd;
    std::vector<mpz_class> q(dq + 1);
    for (long i = dq; i >= 0; --i) {
        q[i] = divexact_checked(num[i + dd], dc[dd]);
        for (long j = 0; j <= dd; ++j) num[i + j] -= q[i] * dc[j];
    }
    for (const auto& a : num)
        if (a != 0) throw std::logic_error("squarefree division left a remainder");
    return IntPolynomial(std::move(q));
}

namespace {

// Coefficients of g reduced mod p, as machine words (p < 2^32).
void reduce_mod_p(const IntPolynomial& g, std::uint64_t p, std::vector<std::uint64_t>& out) {
    out.clear();
    out.reserve(g.coeffs().size());
    for (const auto& a : g.coeffs())
        out.push_back(mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(p)));
}

std::uint64_t horner_mod_p(const std::vector<std::uint64_t>& c, std::uint64_t r, std::uint64_t p) {
    std::uint64_t acc = 0;
    for (std::size_t i = c.size(); i > 0; --i) acc = (acc * r + c[i - 1]) % p;
    return acc;
}

std::uint64_t horner_deriv_mod_p(const std::vector<std::uint64_t>& c, std::uint64_t r, std::uint64_t p) {
    std::uint64_t acc = 0;
    for (std::size_t i = c.size(); i > 1; --i) {
        std::uint64_t coeff = (c[i - 1] * ((i - 1) % p)) % p;
        acc = (acc * r + coeff) % p;
    }
    return acc;
}

// Residue descent. Returns the root count of g; per_residue (when non-null)
// receives the split by top-level residue class. Sets exceeded and aborts
// if a child would go past max_depth.
std::uint64_t descend(const IntPolynomial& g0, const Prime& p, unsigned long depth,
                      unsigned long max_depth, bool& exceeded,
                      std::vector<std::uint64_t>* per_residue) {
    // Peel an exact zero root up front: X^k contributes the single root 0,
    // and recursing into it would otherwise never terminate.
    IntPolynomial stripped;
    const IntPolynomial* gp = &g0;
    std::uint64_t zero_root = 0;
    if (g0.coeff(0) == 0) {
        const auto& c = g0.coeffs();
        std::size_t low = 0;
        while (c[low] == 0) ++low; // g0 is nonzero, so this stops
        stripped = IntPolynomial(std::vector<mpz_class>(c.begin() + low, c.end()));
        zero_root = 1;
        gp = &stripped;
    }
    const IntPolynomial& g = *gp;
    if (zero_root && per_residue) (*per_residue)[0] += 1;
    if (g.degree() == 0) return zero_root; // nonzero constant: nothing else vanishes

    const std::uint64_t pv = p.value();
    std::vector<std::uint64_t> red;
    reduce_mod_p(g, pv, red);
    std::uint64_t total = zero_root;
    for (std::uint64_t r = 0; r < pv; ++r) {
        if (horner_mod_p(red, r, pv) != 0) continue;
        std::uint64_t contribution = 0;
        if (horner_deriv_mod_p(red, r, pv) != 0) {
            contribution = 1; // simple root mod p lifts uniquely
        } else {
            if (depth + 1 > max_depth) {
                exceeded = true;
                return 0;
            }
            // Balanced digit keeps the shifted coefficients small.
            mpz_class rb = (r * 2 > pv) ? mpz_class(static_cast<long>(r) - static_cast<long>(pv))
                                        : mpz_class(static_cast<unsigned long>(r));
            IntPolynomial child = content_compress(shift_scale(g, rb, p), p).first;
            contribution = descend(child, p, depth + 1, max_depth, exceeded, nullptr);
            if (exceeded) return 0;
        }
        total += contribution;
        if (per_residue) (*per_residue)[r] += contribution;
    }
    return total;
}

RootCount count_rigorous(const IntPolynomial& f, const Prime& p) {
    RootCount rc;
    rc.per_residue.assign(p.value(), 0);
    IntPolynomial g = squarefree_part(f);
    if (g.degree() <= 0) return rc;
    // The descent depth is at most v_p(disc) + 1 for the squarefree part,
    // and v_p(disc) <= log_2 |disc|. Hadamard on the Sylvester matrix of
    // (g, g') bounds that bit size in O(deg g) time, which keeps the loud
    // failure guarantee without an O(n^3) exact resultant.
    const auto n = static_cast<unsigned long>(g.degree());
    std::size_t coeff_bits = 1;
    for (const auto& a : g.coeffs()) {
        if (a != 0) coeff_bits = std::max(coeff_bits, mpz_sizeinbase(a.get_mpz_t(), 2));
    }
    std::size_t log2n = 0;
    while ((std::size_t{1} << log2n) < n + 2) ++log2n;
    const unsigned long budget =
        static_cast<unsigned long>((2 * n - 1) * (coeff_bits + 2 * log2n + 2)) + 1;
    bool exceeded = false;
    rc.total = descend(g, p, 0, budget, exceeded, &rc.per_residue);
    if (exceeded) throw std::logic_error("descent exceeded its discriminant depth budget");
    return rc;
}

} // namespace

RootCount count_roots_zp(const IntPolynomial& f, const Prime& p) {
    if (f.is_zero()) throw std::invalid_argument("zero polynomial has every x as root");
    return count_rigorous(f, p);
}

RootCount count_roots_zp_fast(const IntPolynomial& f, const Prime& p) {
    if (f.is_zero()) throw std::invalid_argument("zero polynomial has every x as root");
    // Distinct Z_p roots collide past depth c with probability ~p^-c, so a
    // small cap almost never reroutes a squarefree input; repeated factors
    // are rerouted after bounded work instead of ballooning coefficients.
    constexpr unsigned long kFastDepthCap = 24;
    RootCount rc;
    rc.per_residue.assign(p.value(), 0);
    IntPolynomial g = content_compress(f, p).first;
    bool exceeded = false;
    rc.total = descend(g, p, 0, kFastDepthCap, exceeded, &rc.per_residue);
    if (!exceeded) return rc;
    // Only repeated Z_p roots descend this deep; the squarefree reduction
    // removes them.
    return count_rigorous(f, p);
}

HenselianReport count_henselian_roots(const PAdicApproxPolynomial& g, unsigned long k,
                                      std::uint64_t node_cap) {
    if (k < 1) throw std::invalid_argument("henselian level must be >= 1");
    if (g.precision() < 2 * k - 1)
        throw std::invalid_argument("precision too low: need at least 2k-1 digits");
    const std::uint64_t p = g.prime().value();
    const unsigned long deep_depth = 2 * k - 1;
    std::vector<mpz_class> pow(deep_depth + 1);
    pow[0] = 1;
    for (unsigned long j = 1; j <= deep_depth; ++j) pow[j] = pow[j - 1] * g.prime().mpz();

    PAdicApproxPolynomial dg = g.derivative();
    HenselianReport rep;
    rep.k = k;
    std::uint64_t nodes = 0;
    auto charge = [&]() {
        if (++nodes > node_cap)
            throw std::runtime_error("degenerate input, raise precision");
    };

    // True iff some digit extension of x reaches depth 2k-1 with g = 0.
    auto reaches = [&](auto&& self, const mpz_class& x, unsigned long j) -> bool {
        if (j == deep_depth) return true;
        for (std::uint64_t c = 0; c < p; ++c) {
            charge();
            mpz_class child = x + mpz_class(static_cast<unsigned long>(c)) * pow[j];
            if (g.eval_mod(child, j + 1) == 0 && self(self, child, j + 1)) return true;
        }
        return false;
    };

    auto walk = [&](auto&& self, const mpz_class& x, unsigned long j) -> void {
        if (j == k) {
            bool simple = dg.eval_mod(x, k) != 0;
            if (!simple) {
                rep.all_simple = false;
                return;
            }
            if (reaches(reaches, x, j)) ++rep.henselian_count;
            return;
        }
        for (std::uint64_t c = 0; c < p; ++c) {
            charge();
            mpz_class child = x + mpz_class(static_cast<unsigned long>(c)) * pow[j];
            if (g.eval_mod(child, j + 1) == 0) self(self, child, j + 1);
        }
    };
    walk(walk, mpz_class(0), 0);
    return rep;
}

HenselianReport henselian_enumerate(const PAdicApproxPolynomial& g, unsigned long k) {
    if (k < 1) throw std::invalid_argument("henselian level must be >= 1");
    if (g.precision() < 2 * k - 1)
        throw std::invalid_argument("precision too low: need at least 2k-1 digits");
    HenselianReport rep;
    rep.k = k;
    PAdicApproxPolynomial dg = g.derivative();
    mpz_class pk = g.prime().pow(k);
    mpz_class lifts = g.prime().pow(k - 1); // p^(2k-1) / p^k
    for (mpz_class x = 0; x < pk; ++x) {
        bool root_k = g.eval_mod(x, k) == 0;
        bool simple = dg.eval_mod(x, k) != 0;
        if (root_k && !simple) rep.all_simple = false;
        if (!simple) continue;
        for (mpz_class t = 0; t < lifts; ++t) {
            if (g.eval_mod(x + t * pk, 2 * k - 1) == 0) {
                ++rep.henselian_count;
                break;
            }
        }
    }
    return rep;
}

mpz_class d_set_count(std::uint64_t N, std::uint64_t d) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), N, d);
    return r;
}

namespace {

void composition_sum(const std::vector<std::uint64_t>& counts, std::size_t idx,
                     std::uint64_t remaining, const mpz_class& partial, mpz_class& acc) {
    if (idx + 1 == counts.size()) {
        acc += partial * d_set_count(counts[idx], remaining);
        return;
    }
    for (std::uint64_t e = 0; e <= remaining && e <= counts[idx]; ++e)
        composition_sum(counts, idx + 1, remaining - e, partial * d_set_count(counts[idx], e), acc);
}

} // namespace

bool residue_partition_check(const IntPolynomial& f, const Prime& p, std::uint64_t d) {
    if (f.is_zero()) throw std::invalid_argument("zero polynomial has every x as root");
    RootCount rc = count_roots_zp(f, p);
    std::vector<std::uint64_t> per(p.value());
    for (std::uint64_t r = 0; r < p.value(); ++r) {
        IntPolynomial fr = shift_scale(f, mpz_class(static_cast<unsigned long>(r)), p);
        per[r] = count_roots_zp(fr, p).total;
    }
    mpz_class rhs = 0;
    composition_sum(per, 0, d, 1, rhs);
    return rhs == d_set_count(rc.total, d);
}

} // namespace padic
