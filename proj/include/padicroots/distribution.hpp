#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>
#include <gmpxx.h>

#include "padicroots/moments.hpp"
#include "padicroots/prime.hpp"
#include "padicroots/rng.hpp"

namespace padic {

/**
 * Raised when a coefficient model violates the positivity assumption on the
 * collision deficit (tau = 0: some coefficient is constant modulo p). The CLI
 * maps this exception to its model-assumption exit code.
 */
class AssumptionError : public std::runtime_error {
public:
    explicit AssumptionError(const std::string& what) : std::runtime_error(what) {}
};

enum class DistKind {
    finite_support,     // xi takes finitely many integer values with rational masses
    haar,               // xi uniform on Z_p, realized as uniform residues mod p^K
    haar_multiple_of_p, // xi uniform on p Z_p, realized mod p^K
    upsilon             // coefficient i equals a_i p^i with a_i uniform mod p^(k-i)
};

/**
 * Distribution of a single polynomial coefficient, fixed per experiment.
 *
 * finite_support models are exact (samples are integers); the other kinds are
 * finite-precision p-adic models sampled as residues. For upsilon the object
 * describes the whole coefficient vector at once: coefficient i of the
 * sampled polynomial is a_i p^i with a_i uniform mod p^(k-i), so the
 * polynomial is known exactly mod p^k and has degree at most k-1.
 */
class CoeffDistribution {
public:
    static CoeffDistribution finite_support(const Prime& p, std::vector<mpz_class> values,
                                            std::vector<Rational> probabilities);
    /// Equiprobable finite support.
    static CoeffDistribution uniform_on(const Prime& p, std::vector<mpz_class> values);
    static CoeffDistribution haar(const Prime& p, unsigned long precision);
    static CoeffDistribution haar_multiple_of_p(const Prime& p, unsigned long precision);
    static CoeffDistribution upsilon(const Prime& p, unsigned long level);

    DistKind kind() const { return kind_; }
    const Prime& prime() const { return p_; }
    const std::vector<mpz_class>& values() const { return values_; }
    const std::vector<Rational>& probabilities() const { return probs_; }

    /// Residue digits K carried by haar / haar_multiple_of_p samples.
    unsigned long precision() const { return precision_; }
    /// Level k of the upsilon model.
    unsigned long level() const { return level_; }

    /// True for the models whose samples are residue approximations.
    bool finite_precision() const { return kind_ != DistKind::finite_support; }

    /// Draw one exact coefficient value (finite_support only).
    mpz_class sample_value(Xoshiro256pp& rng) const;

    /// Pr(xi = 0) exactly; zero for the atomless models.
    Rational mass_at_zero() const;

    /// Pr(xi is a p-adic unit).
    Rational unit_mass() const;

    /// True iff every finite-support value is 0 or a p-adic unit.
    bool unit_or_zero_support() const;

private:
    CoeffDistribution(DistKind kind, const Prime& p) : kind_(kind), p_(p) {}

    DistKind kind_;
    Prime p_;
    std::vector<mpz_class> values_;
    std::vector<Rational> probs_;
    unsigned long precision_ = 0;
    unsigned long level_ = 0;
    // sampling tables for finite support: cumulative numerators over a common denominator
    mpz_class common_den_ = 1;
    std::vector<mpz_class> cumulative_;
};

/**
 * Collision deficit tau = 1 - sum_r Pr(xi = r mod p)^2, the quantity whose
 * positivity the random-coefficient model assumes. Defined for finite_support
 * and haar distributions; throws AssumptionError when tau = 0 (the coefficient
 * is constant modulo p) and std::invalid_argument for the other kinds.
 */
Rational tau_diagnostic(const CoeffDistribution& dist);

/**
 * Non-throwing variant: the collision deficit when it is defined for the
 * model (finite_support and haar), std::nullopt otherwise. Zero is reported,
 * not raised, so diagnostic paths can show it without failing.
 */
std::optional<Rational> tau_value(const CoeffDistribution& dist);

} // namespace padic
