#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>
#include <gmpxx.h>

#include "padicroots/prime.hpp"

namespace padic {

/// Exact rational scalar backed by GMP; always kept in lowest terms.
using Rational = mpq_class;

/**
 * Number of monic degree-m polynomials over F_p with no root in F_p, via
 * inclusion-exclusion over the p candidate roots:
 * M(m) = sum_{j=0}^{min(m,p)} (-1)^j C(p,j) p^(m-j).
 */
mpz_class no_root_poly_count(unsigned long m, const Prime& p);

/**
 * Enumeration cross-check of no_root_poly_count: walk all p^m monic
 * polynomials and count the rootless ones directly. Throws
 * std::invalid_argument when p^m is too large to enumerate.
 */
mpz_class no_root_poly_count_brute(unsigned long m, const Prime& p);

/// Stirling number of the second kind: partitions of an m-set into d nonempty blocks.
mpz_class stirling2(unsigned long m, unsigned long d);

/**
 * Convert factorial moments into a raw moment:
 * E[N^m] = sum_{d=1}^{m} S(m,d) d! E[binom(N,d)].
 * factorial_moments[d-1] must hold E[binom(N,d)] for d = 1..m.
 */
Rational factorial_to_raw_moments(const std::vector<Rational>& factorial_moments, unsigned long m);

/**
 * Closed forms for the limiting mean and variance of the number of distinct
 * roots in Z_p of a random monic polynomial with unit constant coefficient:
 * mean (p-1)/(p+1) and variance (p^2+1)^2 (p-1) / ((p^4+p^3+p^2+p+1)(p+1)).
 */
std::pair<Rational, Rational> theoretical_mean_variance(const Prime& p);

/**
 * Base-p entropy h_p(x) = (x ln(1/x) + (1-x) ln(1/(1-x))) / ln p.
 * Defined for 0 <= x < 1 with h_p(0) = 0; throws std::domain_error outside.
 */
double entropy_base_p(double x, const Prime& p);

/**
 * Convergence-rate exponent C = 1/4 - h_p(4 ln(p) ratio) / 4, where ratio is
 * the limiting value of d / log n. Throws std::domain_error when the entropy
 * argument 4 ln(p) ratio leaves [0, 1).
 */
double error_exponent_C(double ratio, const Prime& p);
double error_exponent_C(const Rational& ratio, const Prime& p);

/// log base p of a positive rational; converts to floating point only here.
double log_base_p(const Rational& x, const Prime& p);

/**
 * Exact factorial-moment table for the count of distinct Z_p roots of random
 * monic polynomials.
 *
 * alpha(n, d) = E[binom(N, d)] for a monic degree-n polynomial whose lower
 * coefficients are i.i.d. uniform on Z_p, where N is the number of distinct
 * roots in Z_p. beta(n, d) is the same expectation with coefficients uniform
 * on p Z_p. gamma(d) is the limiting d-th factorial moment of the model
 * conditioned on a unit constant coefficient.
 *
 * The table fills bottom-up (degree outer, d inner). At each level the two
 * recurrences couple alpha(n, d) and beta(n, d), so the pair is obtained by
 * an exact 2x2 linear solve; the system's determinant 1 - p^(1-n-C(n,2)) is
 * nonzero for every n >= 2. All arithmetic is exact-rational.
 */
class MomentTable {
public:
    explicit MomentTable(const Prime& p) : p_(p) {}

    const Prime& prime() const { return p_; }

    /// Fill the table so every (n', d') with n' <= n_max, d' <= d_max is available.
    void ensure(unsigned long n_max, unsigned long d_max);

    /// alpha(n, d) and beta(n, d) as one exact pair.
    std::pair<Rational, Rational> alpha_beta(unsigned long n, unsigned long d);

    Rational alpha(unsigned long n, unsigned long d);
    Rational beta(unsigned long n, unsigned long d);

    /**
     * Stabilized alpha(d) = alpha(2d, d); the value is the same for every
     * degree n >= 2d. With verify = true the values at n = 2d, 2d+1, 2d+2
     * are compared exactly and a mismatch throws std::logic_error.
     */
    Rational alpha_stable(unsigned long d, bool verify = false);

    /// Stabilized beta(d) = beta(2d, d); same verification contract as alpha_stable.
    Rational beta_stable(unsigned long d, bool verify = false);

    /**
     * gamma(d): coefficient of t^d in (sum_e beta(e) t^e)^(p-1); equivalently
     * the sum over compositions d_1+...+d_{p-1} = d of prod_r beta(d_r).
     */
    Rational gamma(unsigned long d);

    /// Stable values beta(0..d_max) as a truncated power series.
    std::vector<Rational> beta_series(unsigned long d_max);
    /// Stable values alpha(0..d_max).
    std::vector<Rational> alpha_series(unsigned long d_max);
    /// gamma(0..d_max).
    std::vector<Rational> gamma_series(unsigned long d_max);

private:
    Prime p_;
    bool built_ = false;
    unsigned long n_filled_ = 0;
    unsigned long d_filled_ = 0;
    // cells_[n][d] = (alpha(n, d), beta(n, d)); entries with d > n stay (0, 0)
    std::vector<std::vector<std::pair<Rational, Rational>>> cells_;
    std::map<unsigned long, Rational> gamma_;

    void rebuild(unsigned long n_max, unsigned long d_max);
    void solve_level(unsigned long n);
};

/**
 * True iff sum_d alpha(d) t^d = (sum_d beta(d) t^d)^p and the gamma series
 * equals (sum_d beta(d) t^d)^(p-1), coefficient-by-coefficient as exact
 * rationals up to degree d_max.
 */
bool series_identity_check(MomentTable& table, unsigned long d_max);

/**
 * Exact check of the geometric-weight identity
 * beta(d) = (1 - p^-1) sum_{m<n} beta(m, d) p^-m + beta(n, d) p^-n,
 * which holds for every n > 2d. Throws std::invalid_argument if n <= 2d.
 */
bool geometric_weight_check(MomentTable& table, unsigned long d, unsigned long n);

/**
 * Oracle form of alpha(n, d): the direct average over all p^n monic residue
 * polynomials of degree n, bypassing the multiplicity-vector collapse used by
 * MomentTable. Throws std::invalid_argument when p^n is too large.
 */
Rational alpha_direct_oracle(MomentTable& table, unsigned long n, unsigned long d);

/// One row of the asymptotic trend report; exact values plus floating views.
struct AsymptoticRow {
    unsigned long d = 0;
    Rational beta;
    Rational gamma;
    double log_p_beta_over_d2 = 0.0;
    double log_p_gamma_over_d2 = 0.0;
};

/**
 * Trend rows (d, log_p beta(d) / d^2, log_p gamma(d) / d^2) for d = 1..d_max,
 * for inspection against the quadratic-exponent decay of both sequences.
 * Requires d_max >= 2.
 */
std::vector<AsymptoticRow> asymptotic_table(MomentTable& table, unsigned long d_max);

} // namespace padic
