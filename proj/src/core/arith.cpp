#include "tsq/arith.hpp"

#include <algorithm>
#include <cassert>

#include "tsq/errors.hpp"

namespace tsq {

mpz_class Factorization::reconstruct() const {
    mpz_class n = 1;
    for (const auto& [p, e] : factors) {
        mpz_class pe;
        mpz_ui_pow_ui(pe.get_mpz_t(), p, e);
        n *= pe;
    }
    return n;
}

bool Factorization::valid() const {
    u64 prev = 1;
    for (const auto& [p, e] : factors) {
        if (p <= prev || e < 1 || !is_prime_u64(p)) return false;
        prev = p;
    }
    return true;
}

mpz_class mod_inverse(const mpz_class& x, const mpz_class& m) {
    if (m < 2) throw precondition_error("BadModulus", "modulus must be >= 2");
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw precondition_error("NotCoprime",
                                 "gcd(" + x.get_str() + ", " + m.get_str() + ") != 1");
    }
    return r;
}

std::pair<mpz_class, mpz_class>
crt_combine(const std::vector<std::pair<mpz_class, mpz_class>>& residues) {
    mpz_class r = 0, m = 1;
    for (const auto& [ri, mi] : residues) {
        if (mi < 1) throw precondition_error("BadModulus", "modulus must be >= 1");
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), mi.get_mpz_t());
        if (g != 1)
            throw precondition_error("ModuliNotCoprime",
                                     "gcd of moduli is " + g.get_str());
        if (mi == 1) continue;
        // r' = r + m * ((ri - r) * m^-1 mod mi)
        mpz_class t = ((ri - r) % mi + mi) % mi;
        t = (t * mod_inverse(m % mi, mi)) % mi;
        r += m * t;
        m *= mi;
    }
    r %= m;
    if (r < 0) r += m;
    return {r, m};
}

unsigned nu_p(const mpz_class& n, const mpz_class& p) {
    if (n < 1) throw precondition_error("BadArgument", "nu_p needs n >= 1");
    if (p < 2) throw precondition_error("BadArgument", "nu_p needs a prime p");
    mpz_class q = n;
    unsigned e = 0;
    while (mpz_divisible_p(q.get_mpz_t(), p.get_mpz_t())) {
        q /= p;
        ++e;
    }
    return e;
}

std::vector<u64> primes_upto(u64 z, u64 sieve_cap) {
    if (z > sieve_cap)
        throw too_large_error("sieve bound " + std::to_string(z), "sieve-cap");
    std::vector<u64> primes;
    if (z < 2) return primes;
    std::vector<bool> comp(z + 1, false);
    for (u64 i = 2; i * i <= z; ++i) {
        if (comp[i]) continue;
        for (u64 j = i * i; j <= z; j += i) comp[j] = true;
    }
    for (u64 i = 2; i <= z; ++i)
        if (!comp[i]) primes.push_back(i);
    return primes;
}

Factorization factorize(const mpz_class& n, u64 factor_cap) {
    if (n < 1) throw precondition_error("BadArgument", "factorize needs n >= 1");
    if (n > mpz_class(factor_cap) || !n.fits_ulong_p())
        throw too_large_error("factoring " + n.get_str(), "factor-cap");
    u64 v = mpz_get_ui(n.get_mpz_t());
    Factorization f;
    for (u64 p = 2; (u128)p * p <= v; p += (p == 2 ? 1 : 2)) {
        if (v % p) continue;
        unsigned e = 0;
        while (v % p == 0) {
            v /= p;
            ++e;
        }
        f.factors.emplace_back(p, e);
    }
    if (v > 1) f.factors.emplace_back(v, 1);
    return f;
}

std::pair<mpz_class, mpz_class> squarefree_decompose(const mpz_class& n,
                                                     u64 factor_cap) {
    Factorization f = factorize(n, factor_cap);
    mpz_class d1 = 1, d2 = 1;
    for (const auto& [p, e] : f.factors) {
        if (e & 1) d1 *= p;
        mpz_class ph;
        mpz_ui_pow_ui(ph.get_mpz_t(), p, e / 2);
        d2 *= ph;
    }
    return {d1, d2};
}

mpz_class isqrt(const mpz_class& n) {
    if (n < 0) throw precondition_error("BadArgument", "isqrt needs n >= 0");
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

mpz_class sigma_star_from_factors(const Factorization& f) {
    // divisors not divisible by 4 split as (2-part in {1,2}) * odd divisor
    mpz_class s = 1;
    for (const auto& [p, e] : f.factors) {
        if (p == 2) {
            s *= 3; // 1 + 2, any higher power of 2 is excluded
        } else {
            mpz_class pe1;
            mpz_ui_pow_ui(pe1.get_mpz_t(), p, e + 1);
            s *= (pe1 - 1) / (p - 1);
        }
    }
    return s;
}

} // namespace tsq
