#include "padicroots/moments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace padic {

namespace {

// n choose 2, the exponent of the per-level contraction factor.
unsigned long tri(unsigned long n) { return n * (n - 1) / 2; }

Rational make_rational(const mpz_class& num, const mpz_class& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational inv_pow(const Prime& p, unsigned long e) {
    return make_rational(1, p.pow(e));
}

// Truncated product of two power series (degree <= max_deg kept).
std::vector<Rational> mul_trunc(const std::vector<Rational>& a, const std::vector<Rational>& b, unsigned long max_deg) {
    const size_t out_size = std::min(a.size() + b.size() - 1, static_cast<size_t>(max_deg) + 1);
    std::vector<Rational> out(out_size, Rational(0));
    for (size_t i = 0; i < a.size() && i <= max_deg; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (size_t j = 0; j < b.size() && i + j <= max_deg; ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

// base^e truncated at degree max_deg, by binary exponentiation.
std::vector<Rational> series_pow(std::vector<Rational> base, std::uint64_t e, unsigned long max_deg) {
    std::vector<Rational> result{Rational(1)};
    while (e > 0) {
        if (e & 1) result = mul_trunc(result, base, max_deg);
        e >>= 1;
        if (e > 0) base = mul_trunc(base, base, max_deg);
    }
    result.resize(max_deg + 1, Rational(0));
    return result;
}

// Visit every multiset of positive parts, listed non-increasing, with each
// part <= max_part, at most max_count parts and total <= remaining. The
// empty multiset is visited too.
void for_each_multiset(std::vector<unsigned long>& parts, unsigned long max_part, unsigned long max_count,
                       unsigned long remaining, const std::function<void(const std::vector<unsigned long>&)>& visit) {
    visit(parts);
    if (parts.size() >= max_count) return;
    unsigned long hi = std::min(max_part, remaining);
    if (!parts.empty()) hi = std::min(hi, parts.back());
    for (unsigned long m = hi; m >= 1; --m) {
        parts.push_back(m);
        for_each_multiset(parts, max_part, max_count, remaining - m, visit);
        parts.pop_back();
        if (m == 1) break;
    }
}

// Number of ways to assign distinct residues mod p to the multiplicity
// pattern mu: a falling factorial divided by the symmetry of equal parts.
mpz_class residue_assignments(const std::vector<unsigned long>& mu, const Prime& p) {
    mpz_class ways = 1;
    const mpz_class& p_big = p.mpz();
    for (size_t i = 0; i < mu.size(); ++i) ways *= p_big - static_cast<unsigned long>(i);
    for (size_t i = 0; i < mu.size();) {
        size_t j = i;
        while (j < mu.size() && mu[j] == mu[i]) ++j;
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(j - i));
        mpz_divexact(ways.get_mpz_t(), ways.get_mpz_t(), f.get_mpz_t());
        i = j;
    }
    return ways;
}

} // namespace

mpz_class no_root_poly_count(unsigned long m, const Prime& p) {
    const unsigned long j_max = std::min<unsigned long>(m, static_cast<unsigned long>(p.value()));
    mpz_class total = 0;
    for (unsigned long j = 0; j <= j_max; ++j) {
        mpz_class binom;
        mpz_bin_ui(binom.get_mpz_t(), p.mpz().get_mpz_t(), j);
        mpz_class term = binom * p.pow(m - j);
        if (j % 2 == 0) {
            total += term;
        } else {
            total -= term;
        }
    }
    return total;
}

mpz_class no_root_poly_count_brute(unsigned long m, const Prime& p) {
    const double size = std::pow(static_cast<double>(p.value()), static_cast<double>(m));
    if (size > 2e7) {
        throw std::invalid_argument("brute-force enumeration too large: p^m exceeds the desk-scale cap");
    }
    const std::uint64_t P = p.value();
    std::vector<std::uint64_t> coeff(m, 0);
    mpz_class count = 0;
    while (true) {
        bool has_root = false;
        for (std::uint64_t r = 0; r < P && !has_root; ++r) {
            std::uint64_t acc = 1 % P; // leading coefficient of the monic polynomial
            for (size_t i = m; i-- > 0;) acc = (acc * r + coeff[i]) % P;
            has_root = (acc == 0);
        }
        if (!has_root) ++count;
        size_t pos = 0;
        while (pos < m && ++coeff[pos] == P) {
            coeff[pos] = 0;
            ++pos;
        }
        if (pos == m) break;
    }
    return count;
}

mpz_class stirling2(unsigned long m, unsigned long d) {
    if (d > m) return 0;
    if (m == 0) return 1;
    if (d == 0) return 0;
    // row[j] holds S(i, j) for the current i; descending j keeps S(i-1, j-1) intact
    std::vector<mpz_class> row(d + 1, mpz_class(0));
    row[0] = 1;
    for (unsigned long i = 1; i <= m; ++i) {
        for (unsigned long j = std::min(i, d); j >= 1; --j) {
            row[j] = row[j] * j + row[j - 1];
        }
        row[0] = 0;
    }
    return row[d];
}

Rational factorial_to_raw_moments(const std::vector<Rational>& factorial_moments, unsigned long m) {
    if (m == 0) return Rational(1);
    if (factorial_moments.size() < m) {
        throw std::invalid_argument("factorial moments for d = 1..m are required");
    }
    Rational total(0);
    for (unsigned long d = 1; d <= m; ++d) {
        mpz_class fac;
        mpz_fac_ui(fac.get_mpz_t(), d);
        total += Rational(stirling2(m, d) * fac) * factorial_moments[d - 1];
    }
    return total;
}

std::pair<Rational, Rational> theoretical_mean_variance(const Prime& p) {
    const mpz_class& pz = p.mpz();
    const Rational mean = make_rational(pz - 1, pz + 1);
    const mpz_class p2 = pz * pz;
    const mpz_class num = (p2 + 1) * (p2 + 1) * (pz - 1);
    const mpz_class den = (p2 * p2 + p2 * pz + p2 + pz + 1) * (pz + 1);
    return {mean, make_rational(num, den)};
}

double entropy_base_p(double x, const Prime& p) {
    if (!(x >= 0.0) || x >= 1.0) {
        throw std::domain_error("entropy argument outside [0, 1): " + std::to_string(x));
    }
    if (x == 0.0) return 0.0;
    const double h = x * std::log(1.0 / x) + (1.0 - x) * std::log(1.0 / (1.0 - x));
    return h / std::log(static_cast<double>(p.value()));
}

double error_exponent_C(double ratio, const Prime& p) {
    const double x = 4.0 * std::log(static_cast<double>(p.value())) * ratio;
    return 0.25 - 0.25 * entropy_base_p(x, p);
}

double error_exponent_C(const Rational& ratio, const Prime& p) {
    return error_exponent_C(mpq_get_d(ratio.get_mpq_t()), p);
}

double log_base_p(const Rational& x, const Prime& p) {
    if (sgn(x) <= 0) {
        throw std::domain_error("log of a non-positive rational");
    }
    signed long en = 0;
    signed long ed = 0;
    const double mn = mpz_get_d_2exp(&en, x.get_num_mpz_t());
    const double md = mpz_get_d_2exp(&ed, x.get_den_mpz_t());
    const double ln2 = std::log(2.0);
    const double ln_x = (std::log(mn) + static_cast<double>(en) * ln2) - (std::log(md) + static_cast<double>(ed) * ln2);
    return ln_x / std::log(static_cast<double>(p.value()));
}

void MomentTable::ensure(unsigned long n_max, unsigned long d_max) {
    if (built_ && n_max <= n_filled_ && d_max <= d_filled_) return;
    const unsigned long target_n = built_ ? std::max(n_max, n_filled_) : n_max;
    const unsigned long target_d = built_ ? std::max(d_max, d_filled_) : d_max;
    rebuild(target_n, target_d);
}

void MomentTable::rebuild(unsigned long n_max, unsigned long d_max) {
    n_filled_ = n_max;
    d_filled_ = d_max;
    cells_.assign(n_max + 1, std::vector<std::pair<Rational, Rational>>(d_max + 1, {Rational(0), Rational(0)}));
    for (unsigned long n = 0; n <= n_max; ++n) {
        cells_[n][0] = {Rational(1), Rational(1)};
        if (n == 1 && d_max >= 1) {
            cells_[1][1] = {Rational(1), Rational(1)};
        }
        if (n >= 2) solve_level(n);
    }
    built_ = true;
}

void MomentTable::solve_level(unsigned long n) {
    const unsigned long D = std::min(n, d_filled_);
    if (D == 0) return;

    // raw[d] accumulates p^n times the contribution to alpha(n, d) of every
    // residue root pattern except the single root of full multiplicity n
    std::vector<Rational> raw(D + 1, Rational(0));
    const unsigned long max_count = static_cast<unsigned long>(std::min<std::uint64_t>(p_.value(), n));

    auto visit = [&](const std::vector<unsigned long>& mu) {
        if (mu.empty()) return; // rootless patterns only contribute at d = 0
        unsigned long total_mult = 0;
        for (unsigned long m : mu) total_mult += m;
        mpz_class ways = residue_assignments(mu, p_);
        ways *= no_root_poly_count(n - total_mult, p_);
        if (ways == 0) return;
        // generating series of the root block: one beta column per root
        std::vector<Rational> conv{Rational(1)};
        for (unsigned long m : mu) {
            std::vector<Rational> bm(std::min(m, D) + 1);
            for (unsigned long e = 0; e < bm.size(); ++e) bm[e] = cells_[m][e].second;
            conv = mul_trunc(conv, bm, D);
        }
        const Rational w{ways};
        for (unsigned long d = 1; d < conv.size(); ++d) raw[d] += w * conv[d];
    };
    std::vector<unsigned long> scratch;
    for_each_multiset(scratch, n - 1, max_count, n, visit);

    const Rational inv_pn = inv_pow(p_, n);
    const Rational c = inv_pow(p_, n - 1);   // weight of the p full-multiplicity patterns
    const Rational ee = inv_pow(p_, tri(n)); // contraction factor p^(-C(n,2))
    const Rational det = Rational(1) - c * ee; // nonzero for every n >= 2

    // tail[s] = sum_{r=s+1}^{n-1} p^(-C(r+1,2)), shared across all d at this level
    std::vector<Rational> tail(n, Rational(0));
    for (unsigned long s = n - 1; s-- > 0;) {
        tail[s] = tail[s + 1] + inv_pow(p_, tri(s + 2));
    }

    const Rational p_minus_1{mpz_class(p_.mpz() - 1)};
    for (unsigned long d = 1; d <= D; ++d) {
        const Rational big_a = raw[d] * inv_pn;
        Rational b(0);
        for (unsigned long s = d; s + 2 <= n; ++s) {
            b += Rational(p_.pow(s)) * cells_[s][d].first * tail[s];
        }
        b *= p_minus_1;
        const Rational alpha_val = (big_a + c * b) / det;
        const Rational beta_val = b + ee * alpha_val;
        if (sgn(alpha_val) < 0 || sgn(beta_val) < 0) {
            throw std::logic_error("internal error: negative moment value at level n=" + std::to_string(n) +
                                   ", d=" + std::to_string(d));
        }
        cells_[n][d] = {alpha_val, beta_val};
    }
}

std::pair<Rational, Rational> MomentTable::alpha_beta(unsigned long n, unsigned long d) {
    ensure(n, d);
    return cells_[n][d];
}

Rational MomentTable::alpha(unsigned long n, unsigned long d) {
    ensure(n, d);
    return cells_[n][d].first;
}

Rational MomentTable::beta(unsigned long n, unsigned long d) {
    ensure(n, d);
    return cells_[n][d].second;
}

Rational MomentTable::alpha_stable(unsigned long d, bool verify) {
    ensure(2 * d + (verify ? 2 : 0), d);
    const Rational v = cells_[2 * d][d].first;
    if (verify && (cells_[2 * d + 1][d].first != v || cells_[2 * d + 2][d].first != v)) {
        throw std::logic_error("stability check failed: alpha(n, d) varies over n = 2d..2d+2 at d=" +
                               std::to_string(d));
    }
    return v;
}

Rational MomentTable::beta_stable(unsigned long d, bool verify) {
    ensure(2 * d + (verify ? 2 : 0), d);
    const Rational v = cells_[2 * d][d].second;
    if (verify && (cells_[2 * d + 1][d].second != v || cells_[2 * d + 2][d].second != v)) {
        throw std::logic_error("stability check failed: beta(n, d) varies over n = 2d..2d+2 at d=" +
                               std::to_string(d));
    }
    return v;
}

Rational MomentTable::gamma(unsigned long d) {
    auto it = gamma_.find(d);
    if (it != gamma_.end()) return it->second;
    gamma_series(d);
    return gamma_.at(d);
}

std::vector<Rational> MomentTable::beta_series(unsigned long d_max) {
    ensure(2 * d_max, d_max);
    std::vector<Rational> out(d_max + 1);
    for (unsigned long d = 0; d <= d_max; ++d) out[d] = cells_[2 * d][d].second;
    return out;
}

std::vector<Rational> MomentTable::alpha_series(unsigned long d_max) {
    ensure(2 * d_max, d_max);
    std::vector<Rational> out(d_max + 1);
    for (unsigned long d = 0; d <= d_max; ++d) out[d] = cells_[2 * d][d].first;
    return out;
}

std::vector<Rational> MomentTable::gamma_series(unsigned long d_max) {
    const std::vector<Rational> out = series_pow(beta_series(d_max), p_.value() - 1, d_max);
    for (unsigned long d = 0; d <= d_max; ++d) gamma_[d] = out[d];
    return out;
}

bool series_identity_check(MomentTable& table, unsigned long d_max) {
    const std::vector<Rational> alpha_s = table.alpha_series(d_max);
    const std::vector<Rational> beta_s = table.beta_series(d_max);
    const std::vector<Rational> gamma_s = table.gamma_series(d_max);
    const std::uint64_t p = table.prime().value();
    return alpha_s == series_pow(beta_s, p, d_max) && gamma_s == series_pow(beta_s, p - 1, d_max);
}

bool geometric_weight_check(MomentTable& table, unsigned long d, unsigned long n) {
    if (n <= 2 * d) {
        throw std::invalid_argument("geometric weight identity requires n > 2d");
    }
    table.ensure(n, d);
    const Prime& p = table.prime();
    Rational partial(0);
    for (unsigned long m = 0; m < n; ++m) {
        partial += table.beta(m, d) * inv_pow(p, m);
    }
    Rational lhs = (Rational(1) - inv_pow(p, 1)) * partial;
    lhs += table.beta(n, d) * inv_pow(p, n);
    return lhs == table.beta_stable(d);
}

Rational alpha_direct_oracle(MomentTable& table, unsigned long n, unsigned long d) {
    const Prime& p = table.prime();
    const double size = std::pow(static_cast<double>(p.value()), static_cast<double>(n));
    if (size > 2e7) {
        throw std::invalid_argument("direct enumeration too large: p^n exceeds the desk-scale cap");
    }
    table.ensure(n, d);
    const std::uint64_t P = p.value();

    std::vector<std::uint64_t> coeff(n, 0);
    Rational sum(0);
    while (true) {
        // peel linear factors off a working copy to read off root multiplicities
        std::vector<std::uint64_t> work(coeff);
        work.push_back(1);
        std::vector<Rational> conv{Rational(1)};
        for (std::uint64_t r = 0; r < P; ++r) {
            unsigned long mult = 0;
            while (work.size() > 1) {
                std::uint64_t acc = 0;
                for (size_t i = work.size(); i-- > 0;) acc = (acc * r + work[i]) % P;
                if (acc != 0) break;
                const size_t m = work.size() - 1;
                std::vector<std::uint64_t> q(m);
                std::uint64_t carry = work[m];
                q[m - 1] = carry;
                for (size_t j = m - 1; j >= 1; --j) {
                    carry = (carry * r + work[j]) % P;
                    q[j - 1] = carry;
                }
                work = std::move(q);
                ++mult;
            }
            if (mult > 0) {
                std::vector<Rational> bm(std::min(mult, d) + 1);
                for (unsigned long e = 0; e < bm.size(); ++e) bm[e] = table.beta(mult, e);
                conv = mul_trunc(conv, bm, d);
            }
        }
        if (d < conv.size()) sum += conv[d];
        size_t pos = 0;
        while (pos < n && ++coeff[pos] == P) {
            coeff[pos] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
    return sum * inv_pow(p, n);
}

std::vector<AsymptoticRow> asymptotic_table(MomentTable& table, unsigned long d_max) {
    if (d_max < 2) {
        throw std::invalid_argument("asymptotic table requires d_max >= 2");
    }
    const Prime& p = table.prime();
    std::vector<AsymptoticRow> rows;
    rows.reserve(d_max);
    for (unsigned long d = 1; d <= d_max; ++d) {
        AsymptoticRow row;
        row.d = d;
        row.beta = table.beta_stable(d);
        row.gamma = table.gamma(d);
        const double d2 = static_cast<double>(d) * static_cast<double>(d);
        row.log_p_beta_over_d2 = log_base_p(row.beta, p) / d2;
        row.log_p_gamma_over_d2 = log_base_p(row.gamma, p) / d2;
        rows.push_back(row);
    }
    return rows;
}

} // namespace padic
