#ifndef TSQ_REDUCTION_HPP
#define TSQ_REDUCTION_HPP

#include <gmpxx.h>

#include <string>

#include "tsq/repcount.hpp"

namespace tsq {

enum class ShiftCase {
    kROdd,
    kREvenSLeR,      // r even, s <= r
    kREvenSNearR,    // r even, s in {r+1, r+2}
    kREvenSFar,      // r even, s >= r+3
    kAZeroPromoted,  // a = 0 replaced by m before the branch machinery
};

std::string to_string(ShiftCase c);

struct ShiftResult {
    u64 a_prime = 0;
    u64 d_scale = 0; // reduced mod m
    ShiftCase tag = ShiftCase::kROdd;
};

// Witness that (a mod m) reduces to a square-free target a' with a = a'*d^2
// (mod m), plus the modulus enlargement M = t*m that forces p^2 | M for
// every prime p | a'.
struct ReductionCertificate {
    u64 a_in = 0;
    u64 m_in = 1;
    u64 a_prime = 0;
    u64 d_scale = 0;
    mpz_class t = 1;
    mpz_class M = 1;
    ShiftCase tag = ShiftCase::kROdd;
    bool advisory_large_modulus = false; // M exceeds the pipeline modulus cap
};

// Square-free shift: a' square-free in [1, 5m] with a = a'*d^2 (mod m) and
// a' still a sum of three squares mod m. Pre: c_am(a, m) > 0.
ShiftResult squarefree_shift(u64 a, u64 m, u64 cam_cap = kCamCap);

// M = 7 * prod_{p | a'} p^max(2, nu_p(m)) * prod_{p | m, p !| a'} p^nu_p(m),
// t = M / m (always an integer >= 7).
std::pair<mpz_class, mpz_class> t_multiplier(u64 a_prime, u64 m,
                                             u64 factor_cap = kFactorCap);

ReductionCertificate reduce_full(u64 a, u64 m, u64 cam_cap = kCamCap,
                                 u64 modulus_cap = kModulusCap,
                                 u64 factor_cap = kFactorCap);

} // namespace tsq

#endif
