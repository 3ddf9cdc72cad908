#include "tsq/modmath.hpp"

#include <cassert>
#include <cmath>
#include <numeric>

namespace tsq {

u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

std::optional<u64> invmod(u64 a, u64 m) {
    // extended Euclid on signed 128-bit to dodge overflow for m near 2^63
    i128 t = 0, new_t = 1;
    i128 r = (i128)m, new_r = (i128)(a % m);
    while (new_r != 0) {
        i128 q = r / new_r;
        i128 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) return std::nullopt;
    if (t < 0) t += m;
    return (u64)t;
}

u64 isqrt_u64(u64 n) {
    if (n == 0) return 0;
    u64 r = (u64)std::sqrt((double)n);
    // fix up the double rounding; compare in 128 bits, r*r overflows near 2^64
    while (r > 0 && (u128)r * r > n) --r;
    while ((u128)(r + 1) * (r + 1) <= n) ++r;
    return r;
}

static bool mr_witness(u64 n, u64 a, u64 d, int s) {
    u64 x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true; // composite witness
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // this base set is deterministic for all n < 2^64
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (mr_witness(n, a, d, s)) return false;
    }
    return true;
}

unsigned v2_u64(u64 n) {
    assert(n != 0);
    return (unsigned)__builtin_ctzll(n);
}

int legendre_symbol(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    u64 e = powmod(a, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

u64 sqrt_mod_p(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    assert(legendre_symbol(a, p) == 1);
    u64 r;
    if (p % 4 == 3) {
        r = powmod(a, (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks
        u64 q = p - 1;
        unsigned s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        u64 z = 2;
        while (legendre_symbol(z, p) != -1) ++z;
        u64 m = s;
        u64 c = powmod(z, q, p);
        u64 t = powmod(a, q, p);
        r = powmod(a, (q + 1) / 2, p);
        while (t != 1) {
            u64 t2 = t;
            u64 i = 0;
            while (t2 != 1) {
                t2 = mulmod(t2, t2, p);
                ++i;
            }
            u64 b = powmod(c, (u64)1 << (m - i - 1), p);
            m = i;
            c = mulmod(b, b, p);
            t = mulmod(t, c, p);
            r = mulmod(r, b, p);
        }
    }
    return r <= p - r ? r : p - r;
}

} // namespace tsq
