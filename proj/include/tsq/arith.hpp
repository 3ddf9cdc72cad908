#ifndef TSQ_ARITH_HPP
#define TSQ_ARITH_HPP

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "tsq/modmath.hpp"

namespace tsq {

// Default caps. All of them are adjustable per call (and via CLI flags);
// exceeding a cap raises too_large_error, never an OOM.
inline constexpr u64 kFactorCap = 1'000'000'000'000ull; // 10^12
inline constexpr u64 kSieveCap = 100'000'000ull;        // 10^8

// Ordered prime factorization p1^e1 * ... * pk^ek, primes strictly
// increasing, exponents >= 1. Empty for n = 1.
struct Factorization {
    std::vector<std::pair<u64, unsigned>> factors;

    mpz_class reconstruct() const;
    bool valid() const; // primality + ordering + exponent invariants
};

// Inverse of x modulo m >= 2, in [1, m). Throws NotCoprime.
mpz_class mod_inverse(const mpz_class& x, const mpz_class& m);

// Combine congruences r_i (mod m_i) with pairwise coprime moduli; returns
// (R, M) with 0 <= R < M = prod m_i. Throws ModuliNotCoprime.
std::pair<mpz_class, mpz_class>
crt_combine(const std::vector<std::pair<mpz_class, mpz_class>>& residues);

// Exponent of p in n (n >= 1, p prime).
unsigned nu_p(const mpz_class& n, const mpz_class& p);

// n = d1 * d2^2 with d1 square-free.
std::pair<mpz_class, mpz_class> squarefree_decompose(const mpz_class& n,
                                                     u64 factor_cap = kFactorCap);

// Trial division backed by a sieve of the needed primes.
Factorization factorize(const mpz_class& n, u64 factor_cap = kFactorCap);

// All primes in [2, z], ascending.
std::vector<u64> primes_upto(u64 z, u64 sieve_cap = kSieveCap);

// Floor square root, exact at any size.
mpz_class isqrt(const mpz_class& n);

// sigma_*(n) = sum of divisors of n not divisible by 4, from a factorization.
mpz_class sigma_star_from_factors(const Factorization& f);

} // namespace tsq

#endif
