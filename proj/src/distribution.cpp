#include "padicroots/distribution.hpp"

#include <map>

#include "padicroots/poly.hpp"

namespace padic {

namespace {

void check_precision(unsigned long precision) {
    if (precision < 1) throw std::invalid_argument("residue precision must be >= 1");
}

} // namespace

CoeffDistribution CoeffDistribution::finite_support(const Prime& p, std::vector<mpz_class> values,
                                                    std::vector<Rational> probabilities) {
    if (values.empty() || values.size() != probabilities.size()) {
        throw std::invalid_argument("finite support needs matching nonempty value and probability lists");
    }
    Rational total(0);
    for (const Rational& q : probabilities) {
        if (sgn(q) < 0) throw std::invalid_argument("probabilities must be nonnegative");
        total += q;
    }
    if (total != 1) throw std::invalid_argument("probabilities must sum to 1");

    CoeffDistribution dist(DistKind::finite_support, p);
    dist.values_ = std::move(values);
    dist.probs_ = std::move(probabilities);
    // cumulative numerators over the common denominator, for one-draw sampling
    mpz_class den = 1;
    for (const Rational& q : dist.probs_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
    dist.common_den_ = den;
    mpz_class acc = 0;
    for (const Rational& q : dist.probs_) {
        acc += q.get_num() * (den / q.get_den());
        dist.cumulative_.push_back(acc);
    }
    return dist;
}

CoeffDistribution CoeffDistribution::uniform_on(const Prime& p, std::vector<mpz_class> values) {
    const std::vector<Rational> probs(values.size(), Rational(1) / Rational(static_cast<unsigned long>(values.size())));
    return finite_support(p, std::move(values), probs);
}

CoeffDistribution CoeffDistribution::haar(const Prime& p, unsigned long precision) {
    check_precision(precision);
    CoeffDistribution dist(DistKind::haar, p);
    dist.precision_ = precision;
    return dist;
}

CoeffDistribution CoeffDistribution::haar_multiple_of_p(const Prime& p, unsigned long precision) {
    check_precision(precision);
    CoeffDistribution dist(DistKind::haar_multiple_of_p, p);
    dist.precision_ = precision;
    return dist;
}

CoeffDistribution CoeffDistribution::upsilon(const Prime& p, unsigned long level) {
    if (level < 2) throw std::invalid_argument("upsilon model needs level k >= 2");
    CoeffDistribution dist(DistKind::upsilon, p);
    dist.level_ = level;
    dist.precision_ = level; // samples are exact mod p^k
    return dist;
}

mpz_class CoeffDistribution::sample_value(Xoshiro256pp& rng) const {
    if (kind_ != DistKind::finite_support) {
        throw std::logic_error("sample_value is only defined for finite-support distributions");
    }
    const mpz_class u = rng.below(common_den_);
    for (size_t i = 0; i < cumulative_.size(); ++i) {
        if (u < cumulative_[i]) return values_[i];
    }
    return values_.back(); // unreachable: cumulative_ ends at the common denominator
}

Rational CoeffDistribution::mass_at_zero() const {
    if (kind_ != DistKind::finite_support) return Rational(0);
    Rational mass(0);
    for (size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] == 0) mass += probs_[i];
    }
    return mass;
}

Rational CoeffDistribution::unit_mass() const {
    switch (kind_) {
        case DistKind::finite_support: {
            Rational mass(0);
            for (size_t i = 0; i < values_.size(); ++i) {
                if (!mpz_divisible_p(values_[i].get_mpz_t(), p_.mpz().get_mpz_t())) mass += probs_[i];
            }
            return mass;
        }
        case DistKind::haar:
        case DistKind::upsilon: {
            // residue mod p is uniform, so the unit mass is 1 - 1/p
            Rational one_over_p(mpz_class(1), p_.mpz());
            one_over_p.canonicalize();
            return Rational(1) - one_over_p;
        }
        case DistKind::haar_multiple_of_p:
            return Rational(0);
    }
    throw std::logic_error("unknown distribution kind");
}

bool CoeffDistribution::unit_or_zero_support() const {
    if (kind_ != DistKind::finite_support) return false;
    for (const mpz_class& v : values_) {
        if (v != 0 && mpz_divisible_p(v.get_mpz_t(), p_.mpz().get_mpz_t())) return false;
    }
    return true;
}

std::optional<Rational> tau_value(const CoeffDistribution& dist) {
    const Prime& p = dist.prime();
    Rational collision(0);
    switch (dist.kind()) {
        case DistKind::finite_support: {
            std::map<mpz_class, Rational> residue_mass;
            for (size_t i = 0; i < dist.values().size(); ++i) {
                residue_mass[mod_canonical(dist.values()[i], p.mpz())] += dist.probabilities()[i];
            }
            for (const auto& [r, mass] : residue_mass) collision += mass * mass;
            break;
        }
        case DistKind::haar:
            // p residues of mass 1/p each
            collision = Rational(mpz_class(1), p.mpz());
            collision.canonicalize();
            break;
        default:
            return std::nullopt;
    }
    return Rational(1) - collision;
}

Rational tau_diagnostic(const CoeffDistribution& dist) {
    const std::optional<Rational> tau = tau_value(dist);
    if (!tau) {
        throw std::invalid_argument("collision diagnostic is defined for finite-support and haar models only");
    }
    if (sgn(*tau) == 0) {
        throw AssumptionError("collision deficit tau is zero: the coefficient is constant modulo " +
                              std::to_string(dist.prime().value()));
    }
    return *tau;
}

} // namespace padic
