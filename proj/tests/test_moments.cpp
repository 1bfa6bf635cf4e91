#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "padicroots/moments.hpp"
#include "padicroots/prime.hpp"

using namespace padic;

// Both enumeration oracles run before any recurrence value is trusted.
TEST_CASE("rootless polynomial counts match exhaustive enumeration") {
    for (std::uint64_t pv : {2ull, 3ull}) {
        const Prime p(pv);
        for (unsigned long m = 0; m <= 5; ++m)
            CHECK(no_root_poly_count(m, p) == no_root_poly_count_brute(m, p));
    }
}

TEST_CASE("recurrence alpha matches the direct average over all monic polynomials") {
    {
        const Prime p(2);
        MomentTable table(p);
        for (unsigned long n = 1; n <= 5; ++n)
            for (unsigned long d = 0; d <= 2 && d <= n; ++d)
                CHECK(alpha_direct_oracle(table, n, d) == table.alpha(n, d));
    }
    {
        const Prime p(3);
        MomentTable table(p);
        for (unsigned long n = 1; n <= 3; ++n)
            CHECK(alpha_direct_oracle(table, n, 1) == table.alpha(n, 1));
    }
}

TEST_CASE("first moment has the closed form (p-1)/(p+1)") {
    for (std::uint64_t pv : {2ull, 3ull, 5ull, 7ull}) {
        const Prime p(pv);
        MomentTable table(p);
        Rational expected(pv - 1, pv + 1);
        expected.canonicalize(); // e.g. 6/8 -> 3/4; mpq equality needs lowest terms
        CHECK(table.gamma(1) == expected);
    }
}

TEST_CASE("frozen second-moment values") {
    MomentTable t2((Prime(2)));
    CHECK(t2.gamma(2) == Rational(13, 558));
    const auto [mean2, var2] = theoretical_mean_variance(Prime(2));
    CHECK(mean2 == Rational(1, 3));
    CHECK(var2 == Rational(25, 93));
    const auto [mean3, var3] = theoretical_mean_variance(Prime(3));
    CHECK(mean3 == Rational(1, 2));
    CHECK(var3 == Rational(50, 121));
}

TEST_CASE("variance equals the moment combination 2 gamma(2) + gamma(1) - gamma(1)^2") {
    for (std::uint64_t pv : {2ull, 3ull, 5ull}) {
        const Prime p(pv);
        MomentTable table(p);
        const auto [mean, variance] = theoretical_mean_variance(p);
        CHECK(mean == table.gamma(1));
        Rational combo = 2 * table.gamma(2) + table.gamma(1) - table.gamma(1) * table.gamma(1);
        combo.canonicalize();
        CHECK(variance == combo);
    }
}

TEST_CASE("moments stabilize once the degree reaches 2d") {
    for (std::uint64_t pv : {2ull, 3ull}) {
        const Prime p(pv);
        MomentTable table(p);
        for (unsigned long d = 0; d <= 4; ++d) {
            CHECK_NOTHROW(table.alpha_stable(d, true)); // verify mode compares n = 2d, 2d+1, 2d+2
            CHECK_NOTHROW(table.beta_stable(d, true));
            CHECK(table.alpha_stable(d) == table.alpha(2 * d + 2, d));
            CHECK(table.beta_stable(d) == table.beta(2 * d + 1, d));
        }
    }
}

TEST_CASE("generating series tie alpha, beta, gamma together") {
    for (std::uint64_t pv : {2ull, 3ull}) {
        const Prime p(pv);
        MomentTable table(p);
        CHECK(series_identity_check(table, 5));
    }
}

TEST_CASE("geometric weights reproduce the stable beta") {
    for (std::uint64_t pv : {2ull, 3ull}) {
        const Prime p(pv);
        MomentTable table(p);
        for (unsigned long d = 0; d <= 3; ++d) {
            CHECK(geometric_weight_check(table, d, 2 * d + 3));
            CHECK(geometric_weight_check(table, d, 2 * d + 5));
        }
        CHECK_THROWS_AS(geometric_weight_check(table, 2, 4), std::invalid_argument);
    }
}

TEST_CASE("initial conditions of the coupled recurrence") {
    for (std::uint64_t pv : {2ull, 3ull}) {
        const Prime p(pv);
        MomentTable table(p);
        for (unsigned long d = 1; d <= 6; ++d)
            for (unsigned long n = 0; n < d; ++n) {
                CHECK(table.alpha(n, d) == 0);
                CHECK(table.beta(n, d) == 0);
            }
        for (unsigned long n = 0; n <= 8; ++n) {
            CHECK(table.alpha(n, 0) == 1);
            CHECK(table.beta(n, 0) == 1);
        }
        CHECK(table.alpha(1, 1) == 1);
        CHECK(table.beta(1, 1) == 1);
    }
}

TEST_CASE("Stirling numbers and the factorial-to-raw moment conversion") {
    CHECK(stirling2(0, 0) == 1);
    CHECK(stirling2(4, 0) == 0);
    CHECK(stirling2(4, 2) == 7);
    CHECK(stirling2(5, 3) == 25);
    CHECK(stirling2(3, 5) == 0);

    // For the constant variable N = c the d-th factorial moment is binom(c, d)
    // (entry d-1 of the vector), so raw moments come back as plain powers c^m.
    const long c = 3;
    const std::vector<Rational> factorial = {Rational(c), Rational(3), Rational(1)};
    CHECK(factorial_to_raw_moments(factorial, 1) == Rational(c));
    CHECK(factorial_to_raw_moments(factorial, 2) == Rational(c * c));
    CHECK(factorial_to_raw_moments(factorial, 3) == Rational(c * c * c));
}

TEST_CASE("entropy and the tail error exponent follow their closed forms") {
    const Prime p(2);
    CHECK(entropy_base_p(0.0, p) == doctest::Approx(0.0));
    CHECK(entropy_base_p(0.5, p) == doctest::Approx(1.0)); // maximal for base 2
    CHECK_THROWS_AS(entropy_base_p(1.0, p), std::domain_error);
    CHECK_THROWS_AS(entropy_base_p(-0.1, p), std::domain_error);

    CHECK(error_exponent_C(0.0, p) == doctest::Approx(0.25)); // h_p(0) = 0
    const double small = 0.1; // 4 log(2) * 0.1 < 1, inside the entropy domain
    const double c = error_exponent_C(small, p);
    CHECK(c > 0.0);
    CHECK(c < 0.25);
    CHECK(c == doctest::Approx(0.25 * (1.0 - entropy_base_p(4.0 * std::log(2.0) * small, p))));
    CHECK_THROWS_AS(error_exponent_C(1.0, p), std::domain_error);
    CHECK(error_exponent_C(Rational(1, 10), p) == doctest::Approx(c));

    CHECK(log_base_p(Rational(8), p) == doctest::Approx(3.0));
    CHECK(log_base_p(Rational(1, 4), p) == doctest::Approx(-2.0));
    CHECK_THROWS_AS(log_base_p(Rational(0), p), std::domain_error);
}

TEST_CASE("asymptotic table exposes the quadratic-exponent decay") {
    const Prime p(2);
    MomentTable table(p);
    const auto rows = asymptotic_table(table, 10);
    REQUIRE(rows.size() == 10);
    for (const auto& row : rows) {
        CHECK(row.gamma > 0);
        CHECK(row.beta > 0);
        CHECK(row.gamma == table.gamma(row.d));
    }
    // frozen from the exact table: log_2 gamma(10) / 100
    CHECK(rows.back().log_p_gamma_over_d2 == doctest::Approx(-1.13577).epsilon(1e-4));
    for (const auto& row : rows)
        if (row.d >= 6) CHECK(row.log_p_gamma_over_d2 <= -0.25);
}
