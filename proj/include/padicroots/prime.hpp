#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <gmpxx.h>

namespace padic {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t acc = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) acc = mulmod_u64(acc, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return acc;
}

} // namespace detail

// Deterministic Miller-Rabin, exact for every n < 2^64 with this base set.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

/**
 * A verified prime. Construction rejects composites, so every consumer may
 * assume primality without rechecking.
 */
class Prime {
public:
    explicit Prime(std::uint64_t p) : p_(p) {
        if (!is_prime_u64(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
        pz_ = mpz_class(static_cast<unsigned long>(p));
    }

    std::uint64_t value() const { return p_; }
    const mpz_class& mpz() const { return pz_; }

    // p^e as an exact integer.
    mpz_class pow(unsigned long e) const {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), pz_.get_mpz_t(), e);
        return r;
    }

    bool operator==(const Prime& o) const { return p_ == o.p_; }
    bool operator!=(const Prime& o) const { return p_ != o.p_; }

private:
    std::uint64_t p_;
    mpz_class pz_;
};

} // namespace padic
