#include "padicroots/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace padic {

std::string IntPolynomial::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long i = degree(); i >= 0; --i) {
        const mpz_class& a = coeff(i);
        if (a == 0) continue;
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0) os << "-";
        mpz_class mag = abs(a);
        if (i == 0 || mag != 1) os << mag.get_str();
        if (i > 0) os << "X";
        if (i > 1) os << "^" << i;
        first = false;
    }
    return os.str();
}

mpz_class eval(const IntPolynomial& f, const mpz_class& x) {
    mpz_class acc = 0;
    for (long i = f.degree(); i >= 0; --i) {
        acc *= x;
        acc += f.coeff(i);
    }
    return acc;
}

mpz_class eval_mod(const IntPolynomial& f, const mpz_class& x, const Prime& p, unsigned long K) {
    if (K < 1) throw std::invalid_argument("precision must be >= 1");
    mpz_class m = p.pow(K);
    mpz_class xr = mod_canonical(x, m);
    mpz_class acc = 0;
    for (long i = f.degree(); i >= 0; --i) {
        acc *= xr;
        acc += f.coeff(i);
        acc = mod_canonical(acc, m);
    }
    return acc;
}

IntPolynomial hasse_derivative(const IntPolynomial& f, unsigned long j) {
    if (j == 0) return f;
    if (f.degree() < static_cast<long>(j)) return IntPolynomial();
    std::vector<mpz_class> out(f.degree() - j + 1);
    mpz_class binom;
    for (std::size_t i = j; i <= static_cast<std::size_t>(f.degree()); ++i) {
        mpz_bin_uiui(binom.get_mpz_t(), i, j);
        out[i - j] = f.coeff(i) * binom;
    }
    return IntPolynomial(std::move(out));
}

IntPolynomial shift_scale(const IntPolynomial& f, const mpz_class& r, const Prime& p) {
    if (f.is_zero()) return f;
    std::vector<mpz_class> c = f.coeffs();
    long n = f.degree();
    // Taylor shift to f(X + r) by repeated synthetic division.
    for (long i = 0; i < n; ++i)
        for (long k = n - 1; k >= i; --k)
            c[k] += r * c[k + 1];
    // Substitute X -> pX.
    mpz_class pj = 1;
    for (long k = 1; k <= n; ++k) {
        pj *= p.mpz();
        c[k] *= pj;
    }
    return IntPolynomial(std::move(c));
}

std::pair<IntPolynomial, unsigned long> content_compress(const IntPolynomial& f, const Prime& p) {
    if (f.is_zero()) throw std::invalid_argument("zero polynomial has every x as root");
    unsigned long m = 0;
    bool seen = false;
    for (const auto& a : f.coeffs()) {
        if (a == 0) continue;
        Valuation v = valuation(a, p);
        if (!seen || *v < m) { m = *v; seen = true; }
        if (m == 0) break;
    }
    if (m == 0) return {f, 0};
    mpz_class pm = p.pow(m);
    std::vector<mpz_class> out;
    out.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) out.push_back(a / pm);
    return {IntPolynomial(std::move(out)), m};
}

PAdicApproxPolynomial PAdicApproxPolynomial::reduce(const IntPolynomial& f, const Prime& p,
                                                    unsigned long K) {
    if (f.is_zero()) throw std::invalid_argument("zero polynomial has no well-defined degree");
    mpz_class m = p.pow(K);
    std::vector<mpz_class> res;
    res.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) res.push_back(mod_canonical(a, m));
    return PAdicApproxPolynomial(p, K, std::move(res), static_cast<unsigned long>(f.degree()));
}

mpz_class PAdicApproxPolynomial::eval_mod(const mpz_class& x, unsigned long j) const {
    if (j > K_) throw std::invalid_argument("evaluation precision exceeds stored precision");
    mpz_class m = p_.pow(j);
    mpz_class xr = mod_canonical(x, m);
    mpz_class acc = 0;
    for (std::size_t i = res_.size(); i > 0; --i) {
        acc *= xr;
        acc += res_[i - 1];
        acc = mod_canonical(acc, m);
    }
    return acc;
}

PAdicApproxPolynomial PAdicApproxPolynomial::derivative() const {
    if (degree_ == 0)
        return PAdicApproxPolynomial(p_, K_, {mpz_class(0)}, 0);
    std::vector<mpz_class> out(degree_);
    for (std::size_t i = 1; i < res_.size(); ++i)
        out[i - 1] = mod_canonical(res_[i] * static_cast<unsigned long>(i), modulus_);
    return PAdicApproxPolynomial(p_, K_, std::move(out), degree_ - 1);
}

} // namespace padic
