#include "doctest.h"

#include <set>

#include <gmpxx.h>

#include "padicroots/poly.hpp"
#include "padicroots/prime.hpp"
#include "padicroots/rng.hpp"

using namespace padic;

namespace {

IntPolynomial random_poly(Xoshiro256pp& rng, unsigned long degree, long spread) {
    std::vector<mpz_class> c(degree + 1);
    for (auto& a : c) a = static_cast<long>(rng.below(2 * spread + 1)) - spread;
    if (c.back() == 0) c.back() = 1;
    return IntPolynomial(c);
}

} // namespace

TEST_CASE("primality check hits known values") {
    CHECK_FALSE(is_prime_u64(0));
    CHECK_FALSE(is_prime_u64(1));
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(3));
    CHECK_FALSE(is_prime_u64(561)); // Carmichael number
    CHECK(is_prime_u64(1000003));
    CHECK(is_prime_u64((1ull << 61) - 1));
    CHECK_FALSE(is_prime_u64((1ull << 62) - 1));
    CHECK_THROWS_AS(Prime(6), std::invalid_argument);
    CHECK(Prime(7).value() == 7);
}

TEST_CASE("valuation and canonical residues") {
    const Prime p2(2);
    CHECK(valuation(mpz_class(12), p2) == Valuation(2));
    CHECK(valuation(mpz_class(-8), p2) == Valuation(3));
    CHECK(valuation(mpz_class(7), p2) == Valuation(0));
    CHECK_FALSE(valuation(mpz_class(0), p2).has_value());
    CHECK(mod_canonical(mpz_class(-1), mpz_class(5)) == 4);
    CHECK(mod_canonical(mpz_class(12), mpz_class(5)) == 2);
}

TEST_CASE("polynomial construction trims high zeros") {
    const IntPolynomial f(std::vector<mpz_class>{1, 2, 0, 0});
    CHECK(f.degree() == 1);
    CHECK(f.coeff(1) == 2);
    CHECK(f.coeff(7) == 0);
    CHECK(IntPolynomial().is_zero());
    CHECK(IntPolynomial().degree() == -1);
    CHECK(IntPolynomial::from_ints({0, 0, 1}).is_monic());
}

TEST_CASE("exact and modular evaluation agree") {
    Xoshiro256pp rng(101, 0);
    const Prime p(3);
    for (int trial = 0; trial < 50; ++trial) {
        const IntPolynomial f = random_poly(rng, 1 + rng.below(5), 20);
        const mpz_class x = static_cast<long>(rng.below(41)) - 20;
        const unsigned long K = 1 + rng.below(6);
        CHECK(eval_mod(f, x, p, K) == mod_canonical(eval(f, x), p.pow(K)));
    }
}

TEST_CASE("hasse derivatives expand the shifted polynomial") {
    Xoshiro256pp rng(102, 0);
    const Prime p(5);
    for (int trial = 0; trial < 25; ++trial) {
        const IntPolynomial f = random_poly(rng, 1 + rng.below(5), 9);
        const mpz_class r = static_cast<long>(rng.below(11)) - 5;
        const IntPolynomial shifted = shift_scale(f, r, p);
        // coefficient j of f(r + pX) is D^j f(r) p^j
        for (unsigned long j = 0; j <= static_cast<unsigned long>(f.degree()); ++j)
            CHECK(shifted.coeff(j) == eval(hasse_derivative(f, j), r) * p.pow(j));
    }
}

TEST_CASE("shifted polynomial evaluates consistently") {
    Xoshiro256pp rng(103, 0);
    const Prime p(7);
    for (int trial = 0; trial < 25; ++trial) {
        const IntPolynomial f = random_poly(rng, 1 + rng.below(4), 9);
        const mpz_class r = static_cast<long>(rng.below(9)) - 4;
        const mpz_class x = static_cast<long>(rng.below(9)) - 4;
        CHECK(eval(shift_scale(f, r, p), x) == eval(f, r + p.mpz() * x));
    }
}

TEST_CASE("derivative matches the power rule") {
    const IntPolynomial f = IntPolynomial::from_ints({4, 0, -3, 1}); // 4 - 3x^2 + x^3
    CHECK(derivative(f) == IntPolynomial::from_ints({0, -6, 3}));
    CHECK(derivative(IntPolynomial::from_ints({9})).is_zero());
}

TEST_CASE("content compression removes exactly the p-power content") {
    const Prime p(3);
    const IntPolynomial f = IntPolynomial::from_ints({9, 27, 18});
    const auto [g, m] = content_compress(f, p);
    CHECK(m == 2);
    CHECK(g == IntPolynomial::from_ints({1, 3, 2}));
    bool has_unit = false;
    for (const auto& c : g.coeffs()) has_unit = has_unit || (c % 3 != 0);
    CHECK(has_unit);
    CHECK_THROWS_AS(content_compress(IntPolynomial(), p), std::invalid_argument);
}

TEST_CASE("residue polynomials reduce and evaluate mod p^j") {
    const Prime p(2);
    const IntPolynomial f = IntPolynomial::from_ints({-17, 0, 1});
    const auto g = PAdicApproxPolynomial::reduce(f, p, 5);
    CHECK(g.precision() == 5);
    CHECK(g.degree() == 2);
    CHECK(g.residues()[0] == mod_canonical(mpz_class(-17), p.pow(5)));
    for (long x = 0; x < 8; ++x)
        CHECK(g.eval_mod(x, 3) == eval_mod(f, x, p, 3));
    CHECK_THROWS_AS(PAdicApproxPolynomial(p, 0, {mpz_class(1)}, 0), std::invalid_argument);
    CHECK_THROWS_AS(PAdicApproxPolynomial(p, 3, {mpz_class(1)}, 1), std::invalid_argument);
}

TEST_CASE("random streams are deterministic and stream-separated") {
    Xoshiro256pp a(7, 0);
    Xoshiro256pp b(7, 0);
    Xoshiro256pp c(7, 1);
    bool all_equal_same_stream = true;
    bool any_differs_across_streams = false;
    for (int i = 0; i < 100; ++i) {
        const std::uint64_t x = a.next();
        all_equal_same_stream = all_equal_same_stream && (x == b.next());
        any_differs_across_streams = any_differs_across_streams || (x != c.next());
    }
    CHECK(all_equal_same_stream);
    CHECK(any_differs_across_streams);
}

TEST_CASE("bounded draws stay in range and reach every residue") {
    Xoshiro256pp rng(11, 3);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t x = rng.below(7);
        CHECK(x < 7);
        seen.insert(x);
    }
    CHECK(seen.size() == 7);

    const mpz_class bound = mpz_class("340282366920938463463374607431768211457"); // 2^128 + 1
    for (int i = 0; i < 20; ++i) {
        const mpz_class x = rng.below(bound);
        CHECK(x >= 0);
        CHECK(x < bound);
    }
}
