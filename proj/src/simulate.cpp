#include "padicroots/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>
#include <utility>

#include "padicroots/root_counting.hpp"

namespace padic {

namespace {

// How a drawn sample is turned into a root count.
struct SamplePlan {
    bool scale_by_p = false;       // count roots of f(pX) built from a haar-uniform monic f
    unsigned long level = 0;       // certification level; 0 = exact counting
    bool allow_escalation = false; // may redraw deeper digits while certification fails
};

struct SampleOutcome {
    std::uint64_t roots = 0;
    bool certified = true;
};

struct WorkerTotals {
    mpz_class sum_zd;
    mpz_class sum_zd_sq;
    mpz_class sum_n;
    mpz_class sum_n_sq;
    mpz_class sum_z2;
    std::uint64_t used = 0;
    std::uint64_t rejected = 0;
    std::uint64_t uncertified = 0;
    std::uint64_t tail_hits = 0;
    std::uint64_t split_hits = 0;
    std::uint64_t max_roots = 0;
};

/** Draws one sample and counts its distinct roots along the configured path. */
class SampleEngine {
public:
    SampleEngine(const ExperimentConfig& config, const SamplePlan& plan)
        : cfg_(config), plan_(plan), p_(config.distribution.prime()) {
        const CoeffDistribution& dist = cfg_.distribution;
        switch (dist.kind()) {
        case DistKind::finite_support:
            break;
        case DistKind::haar:
            base_bound_ = p_.pow(dist.precision());
            break;
        case DistKind::haar_multiple_of_p:
            base_bound_ = p_.pow(dist.precision() - 1);
            break;
        case DistKind::upsilon: {
            const unsigned long k = dist.level();
            upsilon_bounds_.reserve(k);
            for (unsigned long i = 0; i < k; ++i) upsilon_bounds_.push_back(p_.pow(k - i));
            break;
        }
        }
    }

    // std::nullopt marks a sample rejected by the conditioning.
    std::optional<SampleOutcome> draw(Xoshiro256pp& rng) const {
        switch (cfg_.distribution.kind()) {
        case DistKind::finite_support:
            return draw_exact(rng);
        case DistKind::haar:
        case DistKind::haar_multiple_of_p:
            return draw_haar(rng);
        case DistKind::upsilon:
            return draw_upsilon(rng);
        }
        throw std::logic_error("unhandled coefficient model kind");
    }

private:
    bool rejected_by_condition(const mpz_class& constant_term) const {
        if (cfg_.condition != Condition::unit_constant_term) return false;
        return mpz_divisible_p(constant_term.get_mpz_t(), p_.mpz().get_mpz_t()) != 0;
    }

    std::optional<SampleOutcome> draw_exact(Xoshiro256pp& rng) const {
        const unsigned long n = cfg_.degree;
        std::vector<mpz_class> coeffs(n + 1);
        coeffs[0] = cfg_.distribution.sample_value(rng);
        if (rejected_by_condition(coeffs[0])) return std::nullopt;
        for (unsigned long i = 1; i < n; ++i) coeffs[i] = cfg_.distribution.sample_value(rng);
        coeffs[n] = 1;
        IntPolynomial f(std::move(coeffs));
        if (plan_.scale_by_p) f = shift_scale(f, mpz_class(0), p_);
        const RootCount rc = count_roots_zp_fast(f, p_);
        return SampleOutcome{rc.total, true};
    }

    std::optional<SampleOutcome> draw_haar(Xoshiro256pp& rng) const {
        const unsigned long n = cfg_.degree;
        const bool mult = cfg_.distribution.kind() == DistKind::haar_multiple_of_p;
        unsigned long precision = cfg_.distribution.precision();
        unsigned long level = plan_.level;
        std::vector<mpz_class> xi(n + 1);
        for (unsigned long i = 0; i < n; ++i) {
            mpz_class digits = rng.below(base_bound_);
            if (mult) digits *= p_.mpz();
            if (i == 0 && rejected_by_condition(digits)) return std::nullopt;
            xi[i] = std::move(digits);
        }
        xi[n] = 1;

        for (unsigned long attempt = 0;; ++attempt) {
            const HenselianReport rep = count_henselian_roots(build_haar_poly(xi, precision), level);
            if (rep.all_simple || !plan_.allow_escalation || attempt == 3) {
                return SampleOutcome{rep.henselian_count, rep.all_simple};
            }
            // Certification failed: double the level and extend every
            // coefficient with fresh uniform digits. Appending digits above
            // the old precision leaves the coefficient law unchanged (also
            // for multiples of p, where it extends the cofactor digits).
            const unsigned long next_level = 2 * level;
            const unsigned long next_precision = 2 * next_level - 1;
            const mpz_class step = p_.pow(precision);
            const mpz_class ext_bound = p_.pow(next_precision - precision);
            for (unsigned long i = 0; i < n; ++i) xi[i] += step * rng.below(ext_bound);
            precision = next_precision;
            level = next_level;
        }
    }

    PAdicApproxPolynomial build_haar_poly(const std::vector<mpz_class>& xi, unsigned long precision) const {
        if (!plan_.scale_by_p) return PAdicApproxPolynomial(p_, precision, xi, cfg_.degree);
        // residues of f(pX): coefficient i picks up a factor p^i
        const mpz_class modulus = p_.pow(precision);
        std::vector<mpz_class> res(xi.size());
        mpz_class power(1);
        for (std::size_t i = 0; i < xi.size(); ++i) {
            res[i] = mod_canonical(xi[i] * power, modulus);
            power *= p_.mpz();
        }
        return PAdicApproxPolynomial(p_, precision, std::move(res), cfg_.degree);
    }

    std::optional<SampleOutcome> draw_upsilon(Xoshiro256pp& rng) const {
        const unsigned long k = cfg_.distribution.level();
        const unsigned long deg_used = std::max(cfg_.degree, k - 1);
        std::vector<mpz_class> res(deg_used + 1);
        mpz_class power(1);
        for (unsigned long i = 0; i < k; ++i) {
            res[i] = power * rng.below(upsilon_bounds_[i]);
            if (i == 0 && rejected_by_condition(res[0])) return std::nullopt;
            power *= p_.mpz();
        }
        PAdicApproxPolynomial g(p_, k, std::move(res), deg_used);
        const HenselianReport rep = count_henselian_roots(g, plan_.level);
        return SampleOutcome{rep.henselian_count, rep.all_simple};
    }

    const ExperimentConfig& cfg_;
    const SamplePlan& plan_;
    const Prime& p_;
    mpz_class base_bound_;
    std::vector<mpz_class> upsilon_bounds_;
};

WorkerTotals run_worker(const SampleEngine& engine, const ExperimentConfig& cfg, std::uint64_t worker_index,
                        std::uint64_t quota, std::uint64_t threshold) {
    Xoshiro256pp rng(cfg.seed, worker_index);
    WorkerTotals t;
    while (t.used < quota) {
        const std::optional<SampleOutcome> sample = engine.draw(rng);
        if (!sample) {
            ++t.rejected;
            continue;
        }
        ++t.used;
        if (!sample->certified) ++t.uncertified;
        const std::uint64_t roots = sample->roots;
        const mpz_class zd = d_set_count(roots, cfg.d);
        t.sum_zd += zd;
        t.sum_zd_sq += zd * zd;
        t.sum_n += roots;
        t.sum_n_sq += mpz_class(roots) * roots;
        t.sum_z2 += d_set_count(roots, 2);
        if (roots >= threshold) ++t.tail_hits;
        if (roots >= cfg.degree) ++t.split_hits;
        t.max_roots = std::max(t.max_roots, roots);
    }
    return t;
}

// Fixed accepted-sample quotas per worker and one RNG stream per worker
// index make the merged totals independent of thread scheduling.
WorkerTotals run_experiment(const ExperimentConfig& cfg, const SamplePlan& plan, std::uint64_t threshold,
                            unsigned long& workers_out) {
    const SampleEngine engine(cfg, plan);
    std::uint64_t workers = cfg.worker_count == 0 ? 1 : cfg.worker_count;
    workers = std::min<std::uint64_t>(workers, cfg.sample_count);
    workers_out = static_cast<unsigned long>(workers);
    const std::uint64_t base_quota = cfg.sample_count / workers;
    const std::uint64_t remainder = cfg.sample_count % workers;
    std::vector<WorkerTotals> parts(workers);
    if (workers == 1) {
        parts[0] = run_worker(engine, cfg, 0, cfg.sample_count, threshold);
    } else {
        std::vector<std::thread> threads;
        std::vector<std::exception_ptr> errors(workers);
        threads.reserve(workers);
        for (std::uint64_t w = 0; w < workers; ++w) {
            const std::uint64_t quota = base_quota + (w < remainder ? 1 : 0);
            threads.emplace_back([&engine, &cfg, &parts, &errors, w, quota, threshold] {
                try {
                    parts[w] = run_worker(engine, cfg, w, quota, threshold);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (std::thread& th : threads) th.join();
        for (const std::exception_ptr& err : errors) {
            if (err) std::rethrow_exception(err);
        }
    }
    WorkerTotals total;
    for (const WorkerTotals& part : parts) {
        total.sum_zd += part.sum_zd;
        total.sum_zd_sq += part.sum_zd_sq;
        total.sum_n += part.sum_n;
        total.sum_n_sq += part.sum_n_sq;
        total.sum_z2 += part.sum_z2;
        total.used += part.used;
        total.rejected += part.rejected;
        total.uncertified += part.uncertified;
        total.tail_hits += part.tail_hits;
        total.split_hits += part.split_hits;
        total.max_roots = std::max(total.max_roots, part.max_roots);
    }
    return total;
}

SamplePlan plan_for(const ExperimentConfig& cfg, bool scaled) {
    SamplePlan plan;
    plan.scale_by_p = scaled;
    switch (cfg.distribution.kind()) {
    case DistKind::finite_support:
        break;
    case DistKind::haar:
    case DistKind::haar_multiple_of_p:
        plan.level = cfg.henselian_level;
        plan.allow_escalation = true;
        break;
    case DistKind::upsilon:
        // the model carries k digits and no more, which certifies exactly
        // up to level floor(k/2); escalation has nothing to draw from
        plan.level = cfg.distribution.level() / 2;
        break;
    }
    return plan;
}

void validate_config(const ExperimentConfig& cfg, const SamplePlan& plan) {
    if (cfg.sample_count == 0) throw std::invalid_argument("sample_count must be at least 1");
    if (cfg.degree == 0) throw std::invalid_argument("degree must be at least 1");
    const CoeffDistribution& dist = cfg.distribution;
    if (cfg.condition == Condition::unit_constant_term && sgn(dist.unit_mass()) == 0) {
        throw std::invalid_argument("conditioning on a unit constant term is impossible: "
                                    "the constant coefficient is never a p-unit under this model");
    }
    if (dist.kind() == DistKind::haar || dist.kind() == DistKind::haar_multiple_of_p) {
        if (plan.level == 0) throw std::invalid_argument("henselian_level must be at least 1");
        if (dist.precision() < 2 * plan.level - 1) {
            throw std::invalid_argument("model precision too low for certification: "
                                        "need precision >= 2*henselian_level - 1");
        }
    }
}

EstimateReport summarize(const ExperimentConfig& cfg, const WorkerTotals& t, unsigned long workers) {
    EstimateReport rep;
    rep.samples_used = t.used;
    rep.samples_rejected = t.rejected;
    rep.samples_uncertified = t.uncertified;
    rep.seed = cfg.seed;
    rep.worker_count = workers;
    rep.sum_zd = t.sum_zd;
    rep.sum_zd_sq = t.sum_zd_sq;
    rep.sum_n = t.sum_n;
    rep.sum_n_sq = t.sum_n_sq;
    rep.sum_z2 = t.sum_z2;
    const mpz_class used(static_cast<unsigned long>(t.used));
    rep.mean_exact = Rational(t.sum_zd, used);
    rep.mean_exact.canonicalize();
    rep.mean = rep.mean_exact.get_d();
    if (t.used >= 2) {
        // squared standard error of the mean from the exact sums:
        // (n sum(x^2) - sum(x)^2) / (n^2 (n - 1))
        Rational se_sq(t.sum_zd_sq * used - t.sum_zd * t.sum_zd, used * used * (used - 1));
        se_sq.canonicalize();
        rep.std_error = std::sqrt(se_sq.get_d());
    }
    rep.bias_bound = static_cast<double>(t.uncertified) / static_cast<double>(t.used);
    return rep;
}

void attach_target(EstimateReport& rep, Rational target) {
    target.canonicalize();
    rep.target = target;
    if (rep.std_error > 0) {
        rep.z_score = (rep.mean - target.get_d()) / rep.std_error;
    } else if (rep.mean_exact == target) {
        rep.z_score = 0.0;
    }
    // otherwise the sample was degenerate away from the target; no z-score
}

EstimateReport run_estimate(const ExperimentConfig& cfg, bool scaled) {
    const SamplePlan plan = plan_for(cfg, scaled);
    validate_config(cfg, plan);
    unsigned long workers = 1;
    const WorkerTotals totals =
        run_experiment(cfg, plan, std::numeric_limits<std::uint64_t>::max(), workers);
    return summarize(cfg, totals, workers);
}

} // namespace

IntPolynomial sample_int_polynomial(const CoeffDistribution& dist, unsigned long degree, Xoshiro256pp& rng) {
    if (dist.kind() != DistKind::finite_support) {
        throw std::invalid_argument("exact sampling needs a finite-support model; use sample_approx_polynomial");
    }
    if (degree == 0) throw std::invalid_argument("degree must be at least 1");
    std::vector<mpz_class> coeffs(degree + 1);
    for (unsigned long i = 0; i < degree; ++i) coeffs[i] = dist.sample_value(rng);
    coeffs[degree] = 1;
    return IntPolynomial(std::move(coeffs));
}

PAdicApproxPolynomial sample_approx_polynomial(const CoeffDistribution& dist, unsigned long degree,
                                               Xoshiro256pp& rng) {
    if (degree == 0) throw std::invalid_argument("degree must be at least 1");
    const Prime& p = dist.prime();
    switch (dist.kind()) {
    case DistKind::haar:
    case DistKind::haar_multiple_of_p: {
        const unsigned long precision = dist.precision();
        const bool mult = dist.kind() == DistKind::haar_multiple_of_p;
        const mpz_class bound = p.pow(mult ? precision - 1 : precision);
        std::vector<mpz_class> res(degree + 1);
        for (unsigned long i = 0; i < degree; ++i) {
            mpz_class digits = rng.below(bound);
            if (mult) digits *= p.mpz();
            res[i] = std::move(digits);
        }
        res[degree] = 1;
        return PAdicApproxPolynomial(p, precision, std::move(res), degree);
    }
    case DistKind::upsilon: {
        const unsigned long k = dist.level();
        const unsigned long deg_used = std::max(degree, k - 1);
        std::vector<mpz_class> res(deg_used + 1);
        mpz_class power(1);
        for (unsigned long i = 0; i < k; ++i) {
            res[i] = power * rng.below(p.pow(k - i));
            power *= p.mpz();
        }
        return PAdicApproxPolynomial(p, k, std::move(res), deg_used);
    }
    case DistKind::finite_support:
        throw std::invalid_argument("finite-support samples are exact; use sample_int_polynomial");
    }
    throw std::logic_error("unhandled coefficient model kind");
}

EstimateReport estimate_zd(const ExperimentConfig& config) {
    return run_estimate(config, false);
}

EstimateReport verify_main_theorem(const ExperimentConfig& config, MomentTable& table) {
    const DistKind kind = config.distribution.kind();
    if (kind != DistKind::finite_support && kind != DistKind::haar) {
        throw std::invalid_argument("main-theorem verification needs a finite-support or haar coefficient model");
    }
    tau_diagnostic(config.distribution); // AssumptionError when the collision deficit vanishes
    ExperimentConfig run = config;
    run.condition = Condition::unit_constant_term;
    EstimateReport rep = run_estimate(run, false);
    attach_target(rep, table.gamma(run.d));
    return rep;
}

EstimateReport verify_nonunit_theorem(const ExperimentConfig& config, MomentTable& table) {
    if (config.distribution.kind() != DistKind::finite_support) {
        throw std::invalid_argument("non-unit-model verification needs a finite-support coefficient model");
    }
    if (!config.distribution.unit_or_zero_support()) {
        throw std::invalid_argument("non-unit-model verification requires every coefficient value "
                                    "to be zero or a p-unit");
    }
    tau_diagnostic(config.distribution);
    ExperimentConfig run = config;
    run.condition = Condition::none;
    EstimateReport rep = run_estimate(run, false);
    Rational target = table.gamma(run.d);
    // binom(N, d) picks d roots; a non-unit root can absorb one of them,
    // weighted by the chance that the constant coefficient vanishes
    if (run.d >= 1) target += config.distribution.mass_at_zero() * table.gamma(run.d - 1);
    attach_target(rep, target);
    return rep;
}

EstimateReport verify_scaled_haar(const ExperimentConfig& config, MomentTable& table) {
    if (config.distribution.kind() != DistKind::haar) {
        throw std::invalid_argument("scaled-model verification needs a haar coefficient model");
    }
    if (2 * config.d > config.degree) {
        throw std::invalid_argument("scaled-model verification requires d <= degree/2, "
                                    "where the moment no longer depends on the degree");
    }
    ExperimentConfig run = config;
    run.condition = Condition::none;
    EstimateReport rep = run_estimate(run, true);
    attach_target(rep, table.beta_stable(run.d));
    return rep;
}

EstimateReport verify_upsilon(const ExperimentConfig& config, MomentTable& table) {
    if (config.distribution.kind() != DistKind::upsilon) {
        throw std::invalid_argument("upsilon verification needs an upsilon coefficient model");
    }
    ExperimentConfig run = config;
    run.condition = Condition::none;
    EstimateReport rep = run_estimate(run, false);
    attach_target(rep, table.beta_stable(run.d));
    return rep;
}

TailReport tail_probability(const ExperimentConfig& config, ThresholdKind kind, double lambda) {
    const SamplePlan plan = plan_for(config, false);
    validate_config(config, plan);
    std::uint64_t threshold = 0;
    const double n = static_cast<double>(config.degree);
    if (kind == ThresholdKind::log_n) {
        threshold = static_cast<std::uint64_t>(std::ceil(std::log(n)));
    } else {
        if (!(lambda > 0)) throw std::invalid_argument("tail exponent lambda must be positive");
        threshold = static_cast<std::uint64_t>(std::ceil(std::pow(n, lambda) - 1e-9));
    }
    unsigned long workers = 1;
    const WorkerTotals totals = run_experiment(config, plan, threshold, workers);
    TailReport rep;
    rep.threshold = threshold;
    rep.hit_count = totals.tail_hits;
    rep.fraction = static_cast<double>(totals.tail_hits) / static_cast<double>(totals.used);
    rep.split_count = totals.split_hits;
    rep.max_root_count = totals.max_roots;
    rep.samples_used = totals.used;
    rep.samples_rejected = totals.rejected;
    rep.samples_uncertified = totals.uncertified;
    rep.tau = tau_value(config.distribution);
    rep.seed = config.seed;
    rep.worker_count = workers;
    return rep;
}

} // namespace padic
