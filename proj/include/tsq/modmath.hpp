#ifndef TSQ_MODMATH_HPP
#define TSQ_MODMATH_HPP

#include <cstdint>
#include <optional>

// Fixed-width modular kernels. Everything here assumes moduli < 2^32 or
// values whose squares fit in unsigned __int128; callers are responsible for
// the range pre-checks (the public entry points enforce them via caps).

namespace tsq {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u128)a * b % m; }

inline u64 addmod(u64 a, u64 b, u64 m) {
    a %= m;
    b %= m;
    u64 s = a + b;
    if (s < a || s >= m) s -= m;
    return s;
}

inline u64 submod(u64 a, u64 b, u64 m) {
    a %= m;
    b %= m;
    return a >= b ? a - b : a + (m - b);
}

u64 powmod(u64 base, u64 exp, u64 m);

// Inverse of a modulo m; nullopt when gcd(a, m) != 1.
std::optional<u64> invmod(u64 a, u64 m);

// Largest r with r*r <= n, exact for all u64.
u64 isqrt_u64(u64 n);

inline bool is_square_u64(u64 n) {
    u64 r = isqrt_u64(n);
    return r * r == n;
}

// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime_u64(u64 n);

// 2-adic valuation; v2(0) is undefined (asserts).
unsigned v2_u64(u64 n);

// Legendre symbol (a/p) for odd prime p: returns -1, 0 or 1.
int legendre_symbol(u64 a, u64 p);

// Square root of a modulo an odd prime p (a must be a QR); returns the
// smaller of the two roots. Tonelli-Shanks with the first non-residue found
// by ascending scan, so the result is deterministic.
u64 sqrt_mod_p(u64 a, u64 p);

} // namespace tsq

#endif
