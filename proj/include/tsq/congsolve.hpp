#ifndef TSQ_CONGSOLVE_HPP
#define TSQ_CONGSOLVE_HPP

#include <gmpxx.h>

#include <utility>

#include "tsq/repcount.hpp"

namespace tsq {

inline constexpr u64 kPrimePowerCap = 1'000'000'000ull; // p^e <= 10^9

// Solution of the two simultaneous congruences
//   y1^2 + y2^2 + y3^2 + y4^2 = 1   (mod modulus)
//   x1*y1 + x2*y2 + x3*y3 + x4*y4 = 0 (mod modulus)
// for the x it was built from. Q = sum of squares of the representatives
// lifted to [0, modulus); Q = 1 for modulus 1 by convention.
struct CongruenceSolution {
    ResidueVec4 y;
    u64 modulus = 1;
    mpz_class Q = 1;
};

// Solve a1*u^2 + b1*v^2 = d (mod p^e) for an odd prime p with a1, b1, d all
// coprime to p. Base point found by an ascending scan mod p, then lifted on
// the coordinate with unit derivative.
std::pair<u64, u64> solve_binary_form(u64 a1, u64 b1, u64 d, u64 p, unsigned e,
                                      u64 pp_cap = kPrimePowerCap);

// The p = 2 solver: exhaustive for e <= 3, otherwise the base construction
// lifted one power at a time.
CongruenceSolution solve_mod_2e(const ResidueVec4& x, const mpz_class& a, unsigned e);

// Odd prime powers: per-permutation completed squares, then the (r, s)
// parametrization as a last resort.
CongruenceSolution solve_mod_pe_odd(const ResidueVec4& x, const mpz_class& a,
                                    u64 p, unsigned e, u64 pp_cap = kPrimePowerCap);

// General modulus: per-prime-power solves joined coordinate-wise by CRT.
CongruenceSolution solve_mod_m(const ResidueVec4& x, const mpz_class& a, u64 m,
                               u64 factor_cap = kFactorCap,
                               u64 pp_cap = kPrimePowerCap);

// True iff both congruences hold. Throws ModulusMismatch.
bool verify_solution(const ResidueVec4& x, const ResidueVec4& y, u64 m);

} // namespace tsq

#endif
