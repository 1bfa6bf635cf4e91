#pragma once

#include <cstdint>
#include <gmpxx.h>

namespace padic {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/**
 * xoshiro256++ with splitmix64 stream derivation. Streams derived from
 * (seed, stream_index) are deterministic across platforms; worker w of a
 * simulation always owns stream w.
 */
class Xoshiro256pp {
public:
    Xoshiro256pp(std::uint64_t seed, std::uint64_t stream_index) {
        std::uint64_t sm = seed ^ (0x6a09e667f3bcc909ull * (stream_index + 1));
        for (auto& w : s_) w = splitmix64(sm);
        // A degenerate all-zero state would be a fixed point.
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 0x9e3779b97f4a7c15ull;
    }

    std::uint64_t next() {
        auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
        std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0, bound), bound >= 1, by rejection; unbiased.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t limit = 0 - (0 - bound) % bound; // largest multiple of bound, as u64 wraparound
        std::uint64_t x;
        do { x = next(); } while (limit != 0 && x >= limit);
        return x % bound;
    }

    // Uniform on [0, bound) for arbitrary-precision bound >= 1, by rejection
    // on fixed-width draws of bitlen(bound) bits rounded up to whole words.
    mpz_class below(const mpz_class& bound) {
        size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
        size_t words = (bits + 63) / 64;
        mpz_class x;
        while (true) {
            x = 0;
            for (size_t i = 0; i < words; ++i) {
                x <<= 64;
                x += mpz_class(static_cast<unsigned long>(next()));
            }
            // Keep only bitlen(bound) low bits so the acceptance rate is >= 1/2.
            mpz_class mask = (mpz_class(1) << bits) - 1;
            x &= mask;
            if (x < bound) return x;
        }
    }

private:
    std::uint64_t s_[4];
};

} // namespace padic
