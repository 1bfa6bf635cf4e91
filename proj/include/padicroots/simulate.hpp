#pragma once

#include <cstdint>
#include <optional>
#include <vector>
#include <gmpxx.h>

#include "padicroots/distribution.hpp"
#include "padicroots/moments.hpp"
#include "padicroots/poly.hpp"
#include "padicroots/prime.hpp"
#include "padicroots/rng.hpp"

namespace padic {

enum class Condition {
    none,
    unit_constant_term // keep only samples whose constant coefficient is a p-unit
};

/**
 * One Monte Carlo experiment: sample_count random monic polynomials of the
 * given degree with i.i.d. coefficients from the distribution, reduced by
 * rejection to the conditioned model when requested.
 *
 * henselian_level is the certification level k used when the model is
 * finite-precision; haar-type models must carry precision >= 2k-1. Exact
 * (finite-support) models ignore it and count roots exactly.
 */
struct ExperimentConfig {
    CoeffDistribution distribution;
    unsigned long degree = 1; // n
    unsigned long d = 1;
    std::uint64_t sample_count = 1;
    std::uint64_t seed = 0;
    unsigned long worker_count = 1;
    Condition condition = Condition::none;
    unsigned long henselian_level = 20;
};

/**
 * Outcome of an estimate of E[binom(N, d)]: sample mean, standard error, and
 * exact integer accumulators that downstream identity checks can reuse.
 *
 * bias_bound is the fraction of samples whose root count could not be
 * certified at the final precision (0 for exact counting); those samples are
 * included with their certified Henselian counts, which never overcount.
 */
struct EstimateReport {
    double mean = 0.0;
    double std_error = 0.0;
    Rational mean_exact;
    std::uint64_t samples_used = 0;
    std::uint64_t samples_rejected = 0;
    std::uint64_t samples_uncertified = 0;
    double bias_bound = 0.0;
    std::optional<Rational> target;
    std::optional<double> z_score; // absent when std_error = 0 and mean != target
    std::uint64_t seed = 0;
    unsigned long worker_count = 1;
    // exact accumulators over the accepted samples
    mpz_class sum_zd;    // sum of binom(N, d)
    mpz_class sum_zd_sq; // sum of binom(N, d)^2
    mpz_class sum_n;     // sum of N
    mpz_class sum_n_sq;  // sum of N^2
    mpz_class sum_z2;    // sum of binom(N, 2)
};

enum class ThresholdKind {
    log_n, // threshold = ceil(ln n)
    power  // threshold = ceil(n^lambda); lambda = 1 asks for totally split samples
};

/// Empirical tail report for Pr(N >= threshold) plus split/maximum diagnostics.
struct TailReport {
    std::uint64_t threshold = 0;
    std::uint64_t hit_count = 0;
    double fraction = 0.0;
    std::uint64_t split_count = 0; // samples with N >= n, i.e. totally split
    std::uint64_t max_root_count = 0;
    std::uint64_t samples_used = 0;
    std::uint64_t samples_rejected = 0;
    std::uint64_t samples_uncertified = 0;
    std::optional<Rational> tau; // collision deficit, reported but never gated here
    std::uint64_t seed = 0;
    unsigned long worker_count = 1;
};

/// Draw one exact monic polynomial of the given degree (finite-support models).
IntPolynomial sample_int_polynomial(const CoeffDistribution& dist, unsigned long degree, Xoshiro256pp& rng);

/**
 * Draw one residue approximation of a random polynomial. haar-type models
 * yield a monic degree-n polynomial mod p^K; the upsilon model yields its
 * canonical representative of degree max(n, k-1) mod p^k, whose coefficient i
 * is p^i times a uniform residue mod p^(k-i) (zero for i >= k).
 */
PAdicApproxPolynomial sample_approx_polynomial(const CoeffDistribution& dist, unsigned long degree,
                                               Xoshiro256pp& rng);

/**
 * Estimate E[binom(N(f), d)] by seeded Monte Carlo. Deterministic for fixed
 * (seed, worker_count, config): workers own disjoint RNG streams and fixed
 * accepted-sample quotas, and the reduction is exact integer arithmetic.
 * No target is attached; the verify_* wrappers fill it in.
 */
EstimateReport estimate_zd(const ExperimentConfig& config);

/**
 * Main-theorem check: condition on a unit constant term (forced), target
 * gamma(d). The coefficient model must be finite-support or haar, and its
 * collision deficit must be positive (AssumptionError otherwise).
 */
EstimateReport verify_main_theorem(const ExperimentConfig& config, MomentTable& table);

/**
 * Unit-or-zero model check without conditioning: target
 * gamma(d) + Pr(xi_0 = 0) gamma(d-1), with gamma(-1) = 0. Requires a
 * finite-support model whose every value is 0 or a p-unit.
 */
EstimateReport verify_nonunit_theorem(const ExperimentConfig& config, MomentTable& table);

/**
 * Scaled-model check: sample haar-uniform monic f, count roots of f(pX)
 * formed exactly at the available precision, target beta(d). Requires
 * d <= n/2 and haar coefficients with precision >= 2k-1.
 */
EstimateReport verify_scaled_haar(const ExperimentConfig& config, MomentTable& table);

/**
 * Upsilon-model check: samples are exact mod p^k, certified at Henselian
 * level floor(k/2) with no digit escalation (the model carries no deeper
 * digits), target beta(d). bias_bound reports the uncertified fraction.
 */
EstimateReport verify_upsilon(const ExperimentConfig& config, MomentTable& table);

/**
 * Empirical tail probability Pr(N(f) >= threshold) over accepted samples.
 * Reports the collision deficit when defined but never fails on it.
 */
TailReport tail_probability(const ExperimentConfig& config, ThresholdKind kind, double lambda = 1.0);

} // namespace padic
