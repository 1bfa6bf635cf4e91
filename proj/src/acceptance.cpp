#include "padicroots/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <utility>

#include "padicroots/distribution.hpp"
#include "padicroots/moments.hpp"
#include "padicroots/poly.hpp"
#include "padicroots/prime.hpp"
#include "padicroots/report_json.hpp"
#include "padicroots/rng.hpp"
#include "padicroots/root_counting.hpp"
#include "padicroots/simulate.hpp"

namespace padic {

namespace {

using Verdict = std::pair<bool, std::string>;

std::string q_str(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// ---- exact criteria ----

Verdict exact_gamma1() {
    for (unsigned long pv : {2ul, 3ul, 5ul, 7ul}) {
        Prime p(pv);
        MomentTable table(p);
        Rational expect(mpz_class(pv - 1), mpz_class(pv + 1));
        expect.canonicalize();
        if (table.gamma(1) != expect) {
            return {false, "gamma(1) = " + q_str(table.gamma(1)) + " != (p-1)/(p+1) at p=" + std::to_string(pv)};
        }
    }
    return {true, "gamma(1) = (p-1)/(p+1) exactly for p in {2,3,5,7}"};
}

Verdict exact_variance() {
    for (unsigned long pv : {2ul, 3ul, 5ul}) {
        Prime p(pv);
        MomentTable table(p);
        const Rational g1 = table.gamma(1);
        const Rational g2 = table.gamma(2);
        const Rational lhs = Rational(2) * g2 + g1 - g1 * g1;
        const auto [mean, variance] = theoretical_mean_variance(p);
        if (g1 != mean) return {false, "gamma(1) != closed-form mean at p=" + std::to_string(pv)};
        if (lhs != variance) {
            return {false, "2 gamma(2) + gamma(1) - gamma(1)^2 = " + q_str(lhs) + " != " + q_str(variance) +
                               " at p=" + std::to_string(pv)};
        }
    }
    Prime p2(2);
    MomentTable t2(p2);
    const Rational var2 = Rational(2) * t2.gamma(2) + t2.gamma(1) - t2.gamma(1) * t2.gamma(1);
    return {true, "variance identity exact for p in {2,3,5}; p=2 value " + q_str(var2)};
}

Verdict exact_series() {
    for (unsigned long pv : {2ul, 3ul}) {
        Prime p(pv);
        MomentTable table(p);
        if (!series_identity_check(table, 5)) {
            return {false, "series identities fail by degree 5 at p=" + std::to_string(pv)};
        }
    }
    return {true, "alpha = beta^p and gamma = beta^(p-1) coefficient-wise to degree 5, p in {2,3}"};
}

Verdict exact_stability() {
    for (unsigned long pv : {2ul, 3ul}) {
        Prime p(pv);
        MomentTable table(p);
        for (unsigned long d = 0; d <= 4; ++d) {
            const Rational a = table.alpha(2 * d, d);
            const Rational b = table.beta(2 * d, d);
            for (unsigned long n = 2 * d + 1; n <= 2 * d + 2; ++n) {
                if (table.alpha(n, d) != a || table.beta(n, d) != b) {
                    return {false, "value changes between n=2d and n=" + std::to_string(n) + " at d=" +
                                       std::to_string(d) + ", p=" + std::to_string(pv)};
                }
            }
        }
    }
    return {true, "alpha(n,d), beta(n,d) constant over n in {2d,2d+1,2d+2} for d <= 4, p in {2,3}"};
}

Verdict exact_initial_conditions() {
    for (unsigned long pv : {2ul, 3ul}) {
        Prime p(pv);
        MomentTable table(p);
        for (unsigned long d = 1; d <= 6; ++d) {
            for (unsigned long n = 0; n < d; ++n) {
                const auto [a, b] = table.alpha_beta(n, d);
                if (a != 0 || b != 0) {
                    return {false, "nonzero below the diagonal at (n,d)=(" + std::to_string(n) + "," +
                                       std::to_string(d) + "), p=" + std::to_string(pv)};
                }
            }
        }
        for (unsigned long n = 0; n <= 8; ++n) {
            const auto [a, b] = table.alpha_beta(n, 0);
            if (a != 1 || b != 1) return {false, "d=0 row not all ones at p=" + std::to_string(pv)};
        }
        const auto [a11, b11] = table.alpha_beta(1, 1);
        if (a11 != 1 || b11 != 1) return {false, "(n,d)=(1,1) not 1 at p=" + std::to_string(pv)};
    }
    return {true, "zero for n < d, one for d = 0, one at (n,d) = (1,1); p in {2,3}"};
}

Verdict exact_combinatorial_oracles() {
    for (unsigned long pv : {2ul, 3ul}) {
        Prime p(pv);
        for (unsigned long m = 0; m <= 6; ++m) {
            const mpz_class fast = no_root_poly_count(m, p);
            const mpz_class brute = no_root_poly_count_brute(m, p);
            if (fast != brute) {
                return {false, "rootless-polynomial count " + fast.get_str() + " != brute " + brute.get_str() +
                                   " at m=" + std::to_string(m) + ", p=" + std::to_string(pv)};
            }
        }
    }
    Prime p2(2);
    MomentTable table(p2);
    for (unsigned long n = 1; n <= 6; ++n) {
        for (unsigned long d = 1; d <= std::min<unsigned long>(n, 3); ++d) {
            const Rational direct = alpha_direct_oracle(table, n, d);
            if (direct != table.alpha(n, d)) {
                return {false, "recurrence alpha(" + std::to_string(n) + "," + std::to_string(d) +
                                   ") != direct average over all monic residue polynomials"};
            }
        }
    }
    return {true, "rootless counts match enumeration (p in {2,3}, m <= 6); "
                  "alpha recurrence matches the direct average (p=2, n <= 6, d <= 3)"};
}

// Certified Henselian count of an exact squarefree polynomial, escalating the
// level until every counted residue is simple; then certification is exact.
bool henselian_matches_exact(const IntPolynomial& f, const Prime& p, std::uint64_t exact_total,
                             std::string& why) {
    unsigned long k = 1;
    for (int attempt = 0; attempt < 9; ++attempt, k *= 2) {
        const HenselianReport rep = count_henselian_roots(PAdicApproxPolynomial::reduce(f, p, 2 * k - 1), k);
        if (!rep.all_simple) continue;
        if (rep.henselian_count != exact_total) {
            why = "certified count " + std::to_string(rep.henselian_count) + " != exact " +
                  std::to_string(exact_total) + " at level " + std::to_string(k);
            return false;
        }
        return true;
    }
    why = "no certifying level up to 256";
    return false;
}

Verdict exact_root_counting_oracles(std::uint64_t seed) {
    const std::vector<unsigned long> primes = {2, 3, 5};
    std::uint64_t checked = 0;
    // every squarefree integer polynomial of degree <= 4, coefficients in [-3,3]
    for (int deg = 1; deg <= 4; ++deg) {
        std::vector<int> c(static_cast<std::size_t>(deg) + 1, -3);
        while (true) {
            if (c.back() != 0) {
                const std::vector<long> v(c.begin(), c.end());
                const IntPolynomial f = IntPolynomial::from_ints(v);
                if (resultant(f, derivative(f)) != 0) {
                    for (unsigned long pv : primes) {
                        Prime p(pv);
                        const RootCount exact = count_roots_zp(f, p);
                        std::string why;
                        if (!henselian_matches_exact(f, p, exact.total, why)) {
                            std::ostringstream os;
                            os << "degree-" << deg << " polynomial with coefficients";
                            for (int ci : c) os << ' ' << ci;
                            os << " at p=" << pv << ": " << why;
                            return {false, os.str()};
                        }
                        ++checked;
                    }
                }
            }
            std::size_t pos = 0;
            while (pos < c.size() && ++c[pos] > 3) {
                c[pos] = -3;
                ++pos;
            }
            if (pos == c.size()) break;
        }
    }
    // residue-partition identity on random monic sextics
    for (unsigned long pv : primes) {
        Prime p(pv);
        Xoshiro256pp rng(seed, 1000 + pv);
        for (int i = 0; i < 1000; ++i) {
            std::vector<mpz_class> coeffs(7);
            for (int j = 0; j < 6; ++j) coeffs[j] = mpz_class(rng.below(std::uint64_t(41))) - 20;
            coeffs[6] = 1;
            const IntPolynomial f(std::move(coeffs));
            const std::uint64_t d = static_cast<std::uint64_t>(i % 3) + 1;
            if (!residue_partition_check(f, p, d)) {
                return {false, "residue-partition identity fails on a random sextic at p=" +
                                   std::to_string(pv) + ", d=" + std::to_string(d)};
            }
        }
    }
    return {true, "exact vs certified counts agree on " + std::to_string(checked) +
                      " squarefree cases; partition identity holds on 3000 random sextics"};
}

Verdict exact_geometric_weights() {
    for (unsigned long pv : {2ul, 3ul}) {
        Prime p(pv);
        MomentTable table(p);
        for (unsigned long d = 0; d <= 3; ++d) {
            if (!geometric_weight_check(table, d, 2 * d + 3)) {
                return {false, "geometric weighting of beta(n,d) misses beta(d) at d=" + std::to_string(d) +
                                   ", p=" + std::to_string(pv)};
            }
        }
    }
    return {true, "(1-1/p) sum_{m<n} beta(m,d) p^-m + beta(n,d) p^-n = beta(d) at n=2d+3, d <= 3, p in {2,3}"};
}

Verdict exact_asymptotic_decay() {
    Prime p2(2);
    MomentTable table(p2);
    for (unsigned long d = 1; d <= 10; ++d) {
        if (sgn(table.gamma(d)) <= 0) return {false, "gamma(" + std::to_string(d) + ") not positive"};
    }
    for (unsigned long d = 6; d <= 10; ++d) {
        // log_2 gamma(d) / d^2 <= -1/4 without floats: gamma(d)^4 * 2^(d^2) <= 1
        const Rational g = table.gamma(d);
        mpz_class two_pow;
        mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, d * d);
        if (g * g * g * g * Rational(two_pow) > 1) {
            return {false, "gamma(" + std::to_string(d) + ") decays slower than 2^(-d^2/4)"};
        }
    }
    const std::vector<AsymptoticRow> rows = asymptotic_table(table, 10);
    std::ostringstream os;
    os << "gamma positive through d=10; log_2 gamma(d)/d^2 <= -1/4 for d >= 6 "
       << "(at d=10: " << rows.back().log_p_gamma_over_d2 << ")";
    return {true, os.str()};
}

// ---- stochastic criteria ----

ExperimentConfig pm1_config(const Prime& p, unsigned long degree, std::uint64_t samples, std::uint64_t seed,
                            unsigned long workers) {
    ExperimentConfig cfg{CoeffDistribution::uniform_on(p, {mpz_class(-1), mpz_class(1)})};
    cfg.degree = degree;
    cfg.d = 1;
    cfg.sample_count = samples;
    cfg.seed = seed;
    cfg.worker_count = workers;
    return cfg;
}

std::string mc_detail(const EstimateReport& rep, double err, double tol) {
    std::ostringstream os;
    os << "mean " << rep.mean << ", stderr " << rep.std_error << ", |error| " << err << " vs tolerance " << tol;
    if (rep.samples_uncertified > 0) os << ", uncertified " << rep.samples_uncertified;
    return os.str();
}

Verdict mc_unit_conditioned(std::uint64_t seed, unsigned long workers) {
    Prime p3(3);
    MomentTable table(p3);
    ExperimentConfig cfg = pm1_config(p3, 200, 100000, seed, workers);
    const EstimateReport rep = verify_main_theorem(cfg, table);
    if (!rep.target || *rep.target != Rational(1, 2)) return {false, "target is not 1/2"};
    const double err = std::fabs(rep.mean - 0.5);
    const double tol = 4.0 * rep.std_error + 0.02;
    return {err <= tol, mc_detail(rep, err, tol)};
}

Verdict mc_unit_or_zero(std::uint64_t seed, unsigned long workers) {
    Prime p3(3);
    MomentTable table(p3);
    ExperimentConfig cfg{CoeffDistribution::uniform_on(p3, {mpz_class(0), mpz_class(1)})};
    cfg.degree = 200;
    cfg.d = 1;
    cfg.sample_count = 100000;
    cfg.seed = seed;
    cfg.worker_count = workers;
    const EstimateReport rep = verify_nonunit_theorem(cfg, table);
    if (!rep.target || *rep.target != Rational(1)) return {false, "target gamma(1) + Pr(0) gamma(0) is not 1"};
    const double err = std::fabs(rep.mean - 1.0);
    const double tol = 4.0 * rep.std_error + 0.02;
    return {err <= tol, mc_detail(rep, err, tol)};
}

Verdict mc_truncated_model(std::uint64_t seed, unsigned long workers) {
    Prime p2(2);
    MomentTable table(p2);
    ExperimentConfig cfg{CoeffDistribution::upsilon(p2, 12)};
    cfg.degree = 11;
    cfg.d = 1;
    cfg.sample_count = 100000;
    cfg.seed = seed;
    cfg.worker_count = workers;
    const EstimateReport rep = verify_upsilon(cfg, table);
    if (!rep.target || *rep.target != Rational(1, 3)) return {false, "target is not beta(1) = 1/3"};
    const double err = std::fabs(rep.mean - 1.0 / 3.0);
    const double tol = 4.0 * rep.std_error + 0.02 + rep.bias_bound;
    return {err <= tol, mc_detail(rep, err, tol)};
}

Verdict mc_tail(std::uint64_t seed, unsigned long workers) {
    Prime p2(2);
    ExperimentConfig cfg = pm1_config(p2, 1000, 100000, seed, workers);
    const TailReport rep = tail_probability(cfg, ThresholdKind::log_n, 1.0);
    std::ostringstream os;
    os << "Pr(N >= " << rep.threshold << ") = " << rep.fraction << ", split samples " << rep.split_count
       << ", max root count " << rep.max_root_count;
    const bool ok = rep.fraction <= 1e-4 && rep.split_count == 0;
    return {ok, os.str()};
}

Verdict mc_determinism(std::uint64_t seed, unsigned long workers) {
    Prime p3(3);
    MomentTable table(p3);
    ExperimentConfig cfg = pm1_config(p3, 200, 100000, seed, workers);
    cfg.condition = Condition::unit_constant_term; // what the conditioned run executes
    const EstimateReport first = verify_main_theorem(cfg, table);
    const EstimateReport second = verify_main_theorem(cfg, table);
    const std::string a = simulate_envelope("main", cfg, first).dump();
    const std::string b = simulate_envelope("main", cfg, second).dump();
    if (a != b) return {false, "two identical runs serialized differently"};
    return {true, "two runs with the same seed and workers agree on all " + std::to_string(a.size()) +
                      " JSON bytes"};
}

struct CriterionSpec {
    int id;
    const char* name;
    bool stochastic;
    double budget_seconds; // 0 = no pinned budget
    std::function<Verdict()> fn;
};

} // namespace

std::vector<CriterionResult> run_acceptance(
    CriterionSuite suite, std::uint64_t seed, unsigned long worker_count,
    const std::function<void(const CriterionResult&)>& on_result) {
    const std::vector<CriterionSpec> specs = {
        {1, "exact-gamma1-closed-form", false, 1.0, exact_gamma1},
        {2, "exact-variance-identity", false, 5.0, exact_variance},
        {3, "power-series-identities", false, 60.0, exact_series},
        {4, "n-stability", false, 0.0, exact_stability},
        {5, "initial-conditions", false, 0.0, exact_initial_conditions},
        {6, "combinatorial-oracles", false, 0.0, exact_combinatorial_oracles},
        {7, "root-counting-oracles", false, 120.0, [seed] { return exact_root_counting_oracles(seed); }},
        {8, "geometric-weight-identity", false, 0.0, exact_geometric_weights},
        {9, "mc-unit-conditioned-mean", true, 300.0,
         [seed, worker_count] { return mc_unit_conditioned(seed, worker_count); }},
        {10, "mc-unit-or-zero-mean", true, 300.0,
         [seed, worker_count] { return mc_unit_or_zero(seed, worker_count); }},
        {11, "mc-truncated-model-mean", true, 0.0,
         [seed, worker_count] { return mc_truncated_model(seed, worker_count); }},
        {12, "mc-root-count-tail", true, 0.0, [seed, worker_count] { return mc_tail(seed, worker_count); }},
        {13, "mc-determinism", true, 0.0, [seed, worker_count] { return mc_determinism(seed, worker_count); }},
        {14, "asymptotic-decay", false, 0.0, exact_asymptotic_decay},
    };

    std::vector<CriterionResult> out;
    for (const CriterionSpec& spec : specs) {
        if (suite == CriterionSuite::exact && spec.stochastic) continue;
        if (suite == CriterionSuite::stochastic && !spec.stochastic) continue;
        CriterionResult result;
        result.id = spec.id;
        result.name = spec.name;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            auto [ok, detail] = spec.fn();
            result.passed = ok;
            result.detail = std::move(detail);
        } catch (const std::exception& e) {
            result.passed = false;
            result.detail = std::string("exception: ") + e.what();
        }
        const auto t1 = std::chrono::steady_clock::now();
        result.seconds = std::chrono::duration<double>(t1 - t0).count();
        if (spec.budget_seconds > 0 && result.seconds > spec.budget_seconds) {
            result.passed = false;
            result.detail += " [runtime " + std::to_string(result.seconds) + "s over the " +
                             std::to_string(spec.budget_seconds) + "s budget]";
        }
        if (on_result) on_result(result);
        out.push_back(std::move(result));
    }
    return out;
}

} // namespace padic
