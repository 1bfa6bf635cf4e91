#include "doctest.h"

#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "padicroots/poly.hpp"
#include "padicroots/prime.hpp"
#include "padicroots/rng.hpp"
#include "padicroots/root_counting.hpp"

using namespace padic;

namespace {

IntPolynomial random_poly(Xoshiro256pp& rng, unsigned long degree, long spread) {
    std::vector<mpz_class> c(degree + 1);
    for (auto& a : c) a = static_cast<long>(rng.below(2 * spread + 1)) - spread;
    if (c.back() == 0) c.back() = 1;
    return IntPolynomial(c);
}

IntPolynomial multiply(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<mpz_class> c(a.coeffs().size() + b.coeffs().size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            c[i + j] += a.coeffs()[i] * b.coeffs()[j];
    return IntPolynomial(c);
}

} // namespace

// The enumeration oracle is validated first; everything later that leans on
// the digit DFS inherits its trust from this agreement.
TEST_CASE("digit DFS matches exhaustive Henselian enumeration") {
    Xoshiro256pp rng(201, 0);
    for (std::uint64_t pv : {2ull, 3ull}) {
        const Prime p(pv);
        for (unsigned long k : {1ul, 2ul}) {
            const unsigned long K = 2 * k - 1;
            const mpz_class modulus = p.pow(K);
            for (int trial = 0; trial < 60; ++trial) {
                const unsigned long degree = 1 + rng.below(3);
                std::vector<mpz_class> res(degree + 1);
                for (auto& r : res) r = rng.below(modulus);
                const PAdicApproxPolynomial g(p, K, res, degree);
                const HenselianReport brute = henselian_enumerate(g, k);
                const HenselianReport dfs = count_henselian_roots(g, k);
                CHECK(brute.henselian_count == dfs.henselian_count);
                CHECK(brute.all_simple == dfs.all_simple);
            }
        }
    }
}

TEST_CASE("known root counts over small p") {
    const Prime p2(2);
    const Prime p3(3);
    const Prime p7(7);

    // x^2 - 1 = (x-1)(x+1): both roots odd
    RootCount rc = count_roots_zp(IntPolynomial::from_ints({-1, 0, 1}), p2);
    CHECK(rc.total == 2);
    CHECK(rc.per_residue == std::vector<std::uint64_t>{0, 2});

    // 17 is a square in Z_2 (17 = 1 mod 8), 3 and 2 are not
    CHECK(count_roots_zp(IntPolynomial::from_ints({-17, 0, 1}), p2).total == 2);
    CHECK(count_roots_zp(IntPolynomial::from_ints({-3, 0, 1}), p2).total == 0);
    CHECK(count_roots_zp(IntPolynomial::from_ints({-2, 0, 1}), p2).total == 0);

    // x^2 + x + 1 has no roots at p = 3 (disc -3 is not a square in Z_3)
    // and two at p = 7 (-3 = 4 mod 7)
    CHECK(count_roots_zp(IntPolynomial::from_ints({1, 1, 1}), p3).total == 0);
    CHECK(count_roots_zp(IntPolynomial::from_ints({1, 1, 1}), p7).total == 2);

    // x^5: the single root 0, despite the multiplicity
    rc = count_roots_zp(IntPolynomial::from_ints({0, 0, 0, 0, 0, 1}), p3);
    CHECK(rc.total == 1);
    CHECK(rc.per_residue == std::vector<std::uint64_t>{1, 0, 0});

    // (x+1)^2: the single root -1
    CHECK(count_roots_zp(IntPolynomial::from_ints({1, 2, 1}), p3).total == 1);

    // x^2 - x: 0 and 1 at every prime
    CHECK(count_roots_zp(IntPolynomial::from_ints({0, -1, 1}), p2).total == 2);
    CHECK(count_roots_zp(IntPolynomial::from_ints({0, -1, 1}), p7).total == 2);

    CHECK_THROWS_AS(count_roots_zp(IntPolynomial(), p2), std::invalid_argument);
}

TEST_CASE("fast counting equals rigorous counting, repeated factors included") {
    Xoshiro256pp rng(202, 0);
    for (std::uint64_t pv : {2ull, 3ull, 5ull}) {
        const Prime p(pv);
        for (int trial = 0; trial < 40; ++trial) {
            const IntPolynomial f = random_poly(rng, 1 + rng.below(6), 9);
            const RootCount a = count_roots_zp(f, p);
            const RootCount b = count_roots_zp_fast(f, p);
            CHECK(a.total == b.total);
            CHECK(a.per_residue == b.per_residue);

            // the square, a zero-root power, and a shifted repeated root
            const IntPolynomial square = multiply(f, f);
            const IntPolynomial with_x3 = multiply(f, IntPolynomial::from_ints({0, 0, 0, 1}));
            const IntPolynomial shifted_sq =
                multiply(multiply(IntPolynomial::from_ints({1, 1}), IntPolynomial::from_ints({1, 1})), f);
            for (const IntPolynomial& g : {square, with_x3, shifted_sq}) {
                const RootCount x = count_roots_zp(g, p);
                const RootCount y = count_roots_zp_fast(g, p);
                CHECK(x.total == y.total);
                CHECK(x.per_residue == y.per_residue);
            }
        }
    }
}

TEST_CASE("root sets split by residue class") {
    Xoshiro256pp rng(203, 0);
    for (std::uint64_t pv : {2ull, 3ull, 5ull}) {
        const Prime p(pv);
        for (int trial = 0; trial < 15; ++trial) {
            const IntPolynomial f = random_poly(rng, 6, 9);
            for (std::uint64_t d : {1ull, 2ull, 3ull})
                CHECK(residue_partition_check(f, p, d));
        }
    }
}

TEST_CASE("subset counts and gcd helpers") {
    CHECK(d_set_count(5, 2) == 10);
    CHECK(d_set_count(3, 0) == 1);
    CHECK(d_set_count(2, 5) == 0);

    const IntPolynomial a = IntPolynomial::from_ints({-1, 1});      // x - 1
    const IntPolynomial b = IntPolynomial::from_ints({2, 1});       // x + 2
    const IntPolynomial c = IntPolynomial::from_ints({1, 0, 1});    // x^2 + 1
    CHECK(polynomial_gcd(multiply(a, c), multiply(a, b)) == a);

    // res(x - a, x - b) = a - b with the Sylvester convention
    CHECK(resultant(IntPolynomial::from_ints({-3, 1}), IntPolynomial::from_ints({-5, 1})) == 3 - 5);
    CHECK(resultant(multiply(a, a), derivative(multiply(a, a))) == 0);
    CHECK(resultant(c, derivative(c)) != 0);
}

TEST_CASE("squarefree reduction keeps each root once") {
    const IntPolynomial a = IntPolynomial::from_ints({-1, 1}); // x - 1
    const IntPolynomial b = IntPolynomial::from_ints({1, 1});  // x + 1
    const IntPolynomial f = multiply(multiply(a, a), b);       // (x-1)^2 (x+1)
    CHECK(squarefree_part(f) == multiply(a, b));
    CHECK(squarefree_part(IntPolynomial::from_ints({0, 0, 0, 1})) ==
          IntPolynomial::from_ints({0, 1}));
    // content is stripped too
    CHECK(squarefree_part(IntPolynomial::from_ints({6, 6})) == IntPolynomial::from_ints({1, 1}));
}

TEST_CASE("Henselian counting guards its precision and node budget") {
    const Prime p(2);
    const PAdicApproxPolynomial g(p, 3, {mpz_class(7), mpz_class(0), mpz_class(1)}, 2);
    CHECK_THROWS_AS(count_henselian_roots(g, 3), std::invalid_argument); // needs K >= 5
    CHECK_THROWS_AS(count_henselian_roots(g, 0), std::invalid_argument);
    // x^2 explores more than one node at any usable level
    const PAdicApproxPolynomial degenerate(p, 3, {mpz_class(0), mpz_class(0), mpz_class(1)}, 2);
    CHECK_THROWS_AS(count_henselian_roots(degenerate, 2, 1), std::runtime_error);
}
