#include "doctest.h"

#include <map>
#include <stdexcept>

#include <gmpxx.h>

#include "padicroots/distribution.hpp"
#include "padicroots/prime.hpp"
#include "padicroots/rng.hpp"

using namespace padic;

TEST_CASE("finite-support construction validates its masses") {
    const Prime p(3);
    CHECK_THROWS_AS(CoeffDistribution::finite_support(p, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(
        CoeffDistribution::finite_support(p, {mpz_class(1)}, {Rational(1, 2), Rational(1, 2)}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        CoeffDistribution::finite_support(p, {mpz_class(0), mpz_class(1)},
                                          {Rational(3, 2), Rational(-1, 2)}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        CoeffDistribution::finite_support(p, {mpz_class(0), mpz_class(1)},
                                          {Rational(1, 2), Rational(1, 3)}),
        std::invalid_argument);
    CHECK_THROWS_AS(CoeffDistribution::haar(p, 0), std::invalid_argument);
    CHECK_THROWS_AS(CoeffDistribution::upsilon(p, 1), std::invalid_argument);
}

TEST_CASE("mass queries split units, zero, and the rest") {
    const Prime p(3);
    const auto pm1 = CoeffDistribution::uniform_on(p, {mpz_class(-1), mpz_class(1)});
    CHECK(pm1.unit_mass() == 1);
    CHECK(pm1.mass_at_zero() == 0);
    CHECK(pm1.unit_or_zero_support());

    const auto zero_one = CoeffDistribution::uniform_on(p, {mpz_class(0), mpz_class(1)});
    CHECK(zero_one.unit_mass() == Rational(1, 2));
    CHECK(zero_one.mass_at_zero() == Rational(1, 2));
    CHECK(zero_one.unit_or_zero_support());

    const auto with_three = CoeffDistribution::uniform_on(p, {mpz_class(0), mpz_class(3)});
    CHECK_FALSE(with_three.unit_or_zero_support()); // 3 is neither 0 nor a unit mod 3
    CHECK(with_three.unit_mass() == 0);

    const auto haar = CoeffDistribution::haar(p, 9);
    CHECK(haar.mass_at_zero() == 0);
    CHECK(haar.unit_mass() == Rational(2, 3));
    CHECK(haar.finite_precision());
    CHECK_FALSE(pm1.finite_precision());
}

TEST_CASE("collision deficit is the residue-mass complement") {
    const Prime p3(3);
    const auto pm1_p3 = CoeffDistribution::uniform_on(p3, {mpz_class(-1), mpz_class(1)});
    CHECK(tau_diagnostic(pm1_p3) == Rational(1, 2));
    CHECK(tau_value(pm1_p3) == Rational(1, 2));

    const auto three_point = CoeffDistribution::uniform_on(
        p3, {mpz_class(-1), mpz_class(0), mpz_class(1)});
    CHECK(tau_diagnostic(three_point) == Rational(2, 3));

    const auto haar5 = CoeffDistribution::haar(Prime(5), 9);
    CHECK(tau_diagnostic(haar5) == Rational(4, 5));

    // constant modulo 2: defined but zero, so the diagnostic raises
    const auto pm1_p2 = CoeffDistribution::uniform_on(Prime(2), {mpz_class(-1), mpz_class(1)});
    CHECK(tau_value(pm1_p2) == Rational(0));
    CHECK_THROWS_AS(tau_diagnostic(pm1_p2), AssumptionError);

    // undefined for the scaled models: reported as absent, raised as misuse
    const auto upsilon = CoeffDistribution::upsilon(Prime(2), 6);
    CHECK_FALSE(tau_value(upsilon).has_value());
    CHECK_THROWS_AS(tau_diagnostic(upsilon), std::invalid_argument);
    const auto mult = CoeffDistribution::haar_multiple_of_p(Prime(2), 9);
    CHECK_FALSE(tau_value(mult).has_value());
    CHECK_THROWS_AS(tau_diagnostic(mult), std::invalid_argument);
}

TEST_CASE("finite-support sampling respects the support and the masses") {
    const Prime p(5);
    const auto dist = CoeffDistribution::finite_support(
        p, {mpz_class(-1), mpz_class(7)}, {Rational(3, 4), Rational(1, 4)});
    Xoshiro256pp rng(42, 0);
    std::map<long, int> freq;
    const int draws = 8000;
    for (int i = 0; i < draws; ++i) {
        const mpz_class v = dist.sample_value(rng);
        REQUIRE((v == -1 || v == 7));
        freq[v.get_si()] += 1;
    }
    // 3:1 masses, generous tolerance: each side within 5 sigma of its mean
    CHECK(freq[-1] > draws / 2);
    CHECK(freq[7] > draws / 8);
    CHECK(freq[7] < (3 * draws) / 8);

    const auto haar = CoeffDistribution::haar(p, 4);
    CHECK_THROWS_AS(haar.sample_value(rng), std::logic_error);
}
