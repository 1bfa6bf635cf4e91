#pragma once

#include <optional>
#include <utility>
#include <vector>
#include <string>
#include <gmpxx.h>

#include "padicroots/prime.hpp"

namespace padic {

// p-adic valuation; empty optional is the +infinity sentinel (x = 0).
using Valuation = std::optional<unsigned long>;

inline Valuation valuation(const mpz_class& x, const Prime& p) {
    if (x == 0) return std::nullopt;
    mpz_class reduced;
    unsigned long v = mpz_remove(reduced.get_mpz_t(), x.get_mpz_t(), p.mpz().get_mpz_t());
    return v;
}

// Canonical residue in [0, m).
inline mpz_class mod_canonical(const mpz_class& x, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

/**
 * Polynomial with exact integer coefficients, index i holding the
 * coefficient of X^i. Immutable after construction; the coefficient
 * vector never carries high zero entries, so degree() is its size - 1.
 * The zero polynomial has an empty vector and degree -1.
 */
class IntPolynomial {
public:
    IntPolynomial() = default;

    explicit IntPolynomial(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    static IntPolynomial from_ints(const std::vector<long>& v) {
        std::vector<mpz_class> c(v.begin(), v.end());
        return IntPolynomial(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }

    const mpz_class& coeff(std::size_t i) const {
        static const mpz_class zero = 0;
        return i < c_.size() ? c_[i] : zero;
    }

    const std::vector<mpz_class>& coeffs() const { return c_; }

    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }
    bool operator!=(const IntPolynomial& o) const { return c_ != o.c_; }

    std::string to_string() const;

private:
    std::vector<mpz_class> c_;
};

// Exact evaluation by Horner.
mpz_class eval(const IntPolynomial& f, const mpz_class& x);

// f(x) mod p^K, result in [0, p^K). Well-defined on residues: shifting x by
// a multiple of p^K cannot change the result.
mpz_class eval_mod(const IntPolynomial& f, const mpz_class& x, const Prime& p, unsigned long K);

// D^(j) f = sum_i coeff_i * C(i,j) * X^(i-j). j=0 is f itself, j=1 the
// formal derivative.
IntPolynomial hasse_derivative(const IntPolynomial& f, unsigned long j);

inline IntPolynomial derivative(const IntPolynomial& f) { return hasse_derivative(f, 1); }

// f(r + pX), computed exactly. Coefficient j of the result equals
// D^(j) f(r) * p^j.
IntPolynomial shift_scale(const IntPolynomial& f, const mpz_class& r, const Prime& p);

// Divide out the largest power p^m dividing every coefficient; the returned
// polynomial has at least one p-unit coefficient. Errors on the zero
// polynomial (every x would be a root).
std::pair<IntPolynomial, unsigned long> content_compress(const IntPolynomial& f, const Prime& p);

/**
 * Polynomial whose coefficients are only known modulo p^K. The degree is
 * tracked separately because a leading coefficient may reduce to 0 mod p^K
 * while the underlying polynomial has known larger degree.
 */
class PAdicApproxPolynomial {
public:
    PAdicApproxPolynomial(Prime p, unsigned long K, std::vector<mpz_class> residues,
                          unsigned long degree)
        : p_(std::move(p)), K_(K), modulus_(p_.pow(K)), res_(std::move(residues)), degree_(degree) {
        if (K_ < 1) throw std::invalid_argument("precision must be >= 1");
        if (res_.size() != degree_ + 1)
            throw std::invalid_argument("residue count must equal degree + 1");
        for (auto& r : res_) r = mod_canonical(r, modulus_);
    }

    static PAdicApproxPolynomial reduce(const IntPolynomial& f, const Prime& p, unsigned long K);

    const Prime& prime() const { return p_; }
    unsigned long precision() const { return K_; }
    const mpz_class& modulus() const { return modulus_; }
    unsigned long degree() const { return degree_; }
    const std::vector<mpz_class>& residues() const { return res_; }

    // f(x) mod p^j for j <= K, result in [0, p^j).
    mpz_class eval_mod(const mpz_class& x, unsigned long j) const;

    // Derivative residues at the same precision (coefficient i*c_i of X^(i-1)).
    PAdicApproxPolynomial derivative() const;

private:
    Prime p_;
    unsigned long K_;
    mpz_class modulus_;
    std::vector<mpz_class> res_;
    unsigned long degree_;
};

} // namespace padic
