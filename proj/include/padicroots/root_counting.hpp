#pragma once

#include <cstdint>
#include <vector>
#include <gmpxx.h>

#include "padicroots/poly.hpp"
#include "padicroots/prime.hpp"

namespace padic {

/**
 * Exact distinct-root count over Z_p, partitioned by residue class mod p.
 * total always equals the sum of per_residue.
 */
struct RootCount {
    std::uint64_t total = 0;
    std::vector<std::uint64_t> per_residue; // index r in [0, p)
};

/**
 * Result of counting k-Henselian roots of a finite-precision polynomial:
 * residues x mod p^k with g'(x) nonzero mod p^k and a lift y mod p^(2k-1)
 * with g(y) = 0 mod p^(2k-1). When all_simple is true (no root mod p^k had
 * vanishing derivative mod p^k), henselian_count equals the exact Z_p root
 * count of every lift of g.
 */
struct HenselianReport {
    std::uint64_t henselian_count = 0;
    bool all_simple = true;
    unsigned long k = 0;
};

// Primitive gcd of two integer polynomials (subresultant algorithm,
// fraction-free). Result is primitive with positive leading coefficient.
IntPolynomial polynomial_gcd(const IntPolynomial& u, const IntPolynomial& v);

// Resultant of u and v via fraction-free elimination of the Sylvester
// matrix. Zero iff u and v share a factor.
mpz_class resultant(const IntPolynomial& u, const IntPolynomial& v);

// Primitive squarefree polynomial with the same roots as f, each simple:
// pp(f) / gcd(pp(f), pp(f)'), sign-normalized to a positive leading
// coefficient. Monic input yields monic output.
IntPolynomial squarefree_part(const IntPolynomial& f);

// Exact number of distinct roots of f in Z_p. Monic not required. Reduces
// to the squarefree part, then descends residue by residue: a simple root
// mod p lifts uniquely; a non-simple one recurses on the compressed
// shift f(r + pX); an exact zero root is peeled off before either. The
// recursion depth of a squarefree polynomial is at most v_p(disc) + 1,
// so it is capped by a Hadamard bit-size bound on the discriminant and
// the implementation fails loudly if that budget is ever exceeded.
RootCount count_roots_zp(const IntPolynomial& f, const Prime& p);

// Same result as count_roots_zp. Tries the descent without the squarefree
// reduction first (sampling hot path); reroutes to the rigorous path if a
// small depth cap is hit, which only repeated or nearly coincident Z_p
// roots can cause.
RootCount count_roots_zp_fast(const IntPolynomial& f, const Prime& p);

// Digit-DFS count of k-Henselian roots. Requires g.precision() >= 2k-1.
// Never enumerates all p^k residues: children of a node are the digit
// extensions on which g still vanishes at the next precision. Throws when
// more than node_cap nodes are explored (degenerate input, raise precision).
HenselianReport count_henselian_roots(const PAdicApproxPolynomial& g, unsigned long k,
                                      std::uint64_t node_cap = 1000000);

// Brute-force oracle for count_henselian_roots: enumerates every residue
// mod p^k and every lift mod p^(2k-1), straight from the definition.
// Exponential in k; only for small p^k.
HenselianReport henselian_enumerate(const PAdicApproxPolynomial& g, unsigned long k);

// Binomial coefficient C(N, d): the number of d-element subsets of a root
// set of size N. Zero when d > N, one when d = 0.
mpz_class d_set_count(std::uint64_t N, std::uint64_t d);

// Self-test of the residue partition identity: C(N(f), d) equals the sum
// over compositions d_0+...+d_{p-1} = d of the products of per-residue
// d-set counts, where the residue-r factor counts roots of f(r + pX).
// Each side is computed by independent root counts.
bool residue_partition_check(const IntPolynomial& f, const Prime& p, std::uint64_t d);

} // namespace padic
