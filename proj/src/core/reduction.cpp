#include "tsq/reduction.hpp"

#include <cassert>

#include "tsq/errors.hpp"

namespace tsq {

std::string to_string(ShiftCase c) {
    switch (c) {
        case ShiftCase::kROdd: return "r-odd";
        case ShiftCase::kREvenSLeR: return "r-even-s<=r";
        case ShiftCase::kREvenSNearR: return "r-even-s-in-r+1-r+2";
        case ShiftCase::kREvenSFar: return "r-even-s>=r+3";
        case ShiftCase::kAZeroPromoted: return "a-zero-promoted";
    }
    return "?";
}

namespace {

bool is_squarefree_u64(u64 n) {
    Factorization f = factorize(mpz_class((unsigned long)n));
    for (const auto& [p, e] : f.factors)
        if (e > 1) return false;
    return true;
}

std::pair<u64, u64> squarefree_split(u64 n) {
    auto [d1, d2] = squarefree_decompose(mpz_class((unsigned long)n));
    return {mpz_get_ui(d1.get_mpz_t()), mpz_get_ui(d2.get_mpz_t())};
}

} // namespace

ShiftResult squarefree_shift(u64 a, u64 m, u64 cam_cap) {
    if (m < 1) throw precondition_error("BadModulus", "m must be >= 1");
    if (a >= m) throw precondition_error("BadArgument", "need 0 <= a < m");
    if (c_am(a, m, cam_cap) == 0)
        throw precondition_error("NotRepresentable",
                                 "a is not a sum of three squares mod m");

    ShiftResult out;
    bool promoted = (a == 0);
    u64 aa = promoted ? m : a;

    if (!promoted && is_squarefree_u64(aa)) {
        // a itself already satisfies every requirement of the lemma
        out.a_prime = aa;
        out.d_scale = 1 % m;
        unsigned r = v2_u64(aa), s = m % 2 == 0 ? v2_u64(m) : 0;
        out.tag = (r % 2 == 1)        ? ShiftCase::kROdd
                  : (s <= r)          ? ShiftCase::kREvenSLeR
                  : (s <= r + 2)      ? ShiftCase::kREvenSNearR
                                      : ShiftCase::kREvenSFar;
        return out;
    }

    unsigned r = v2_u64(aa);
    unsigned s = m % 2 == 0 ? v2_u64(m) : 0;
    u64 a0 = aa >> r;
    u64 m0 = m >> s;

    u64 a_prime, d_scale;
    ShiftCase tag;
    if (r % 2 == 1) {
        // odd valuation: the square-free part keeps a factor 2 and is a sum
        // of three squares outright
        auto [d1, d2] = squarefree_split(aa);
        a_prime = d1;
        d_scale = d2 % m;
        tag = ShiftCase::kROdd;
    } else if (s <= r) {
        // one of a0 + 2*m0, a0 + 4*m0 is 1 mod 4
        unsigned ell = (a0 + 2 * m0) % 4 == 1 ? 1 : 2;
        u64 cand = a0 + 2 * ell * m0;
        assert(cand % 4 == 1);
        auto [d1, d2] = squarefree_split(cand);
        a_prime = d1;
        d_scale = (d2 % m) * ((u64)1 << (r / 2)) % m;
        tag = ShiftCase::kREvenSLeR;
    } else if (s <= r + 2) {
        // odd cofactors of a + m and a + 2m differ mod 8; pick the one != 7
        u64 c1 = a0 + ((u64)1 << (s - r)) * m0;      // (a + m) / 2^r
        u64 c2 = a0 + ((u64)1 << (s - r + 1)) * m0;  // (a + 2m) / 2^r
        u64 cand = c1 % 8 != 7 ? c1 : c2;
        assert(cand % 8 != 7);
        auto [d1, d2] = squarefree_split(cand);
        a_prime = d1;
        d_scale = (d2 % m) * ((u64)1 << (r / 2)) % m;
        tag = ShiftCase::kREvenSNearR;
    } else {
        // s >= r+3: the odd square-free part works by the descent argument
        auto [d1, d2] = squarefree_split(aa);
        a_prime = d1;
        d_scale = d2 % m;
        tag = ShiftCase::kREvenSFar;
    }

    out.a_prime = a_prime;
    out.d_scale = d_scale;
    out.tag = promoted ? ShiftCase::kAZeroPromoted : tag;

    if (!is_squarefree_u64(out.a_prime) || out.a_prime < 1 || out.a_prime > 5 * m)
        throw internal_error("shift produced a' outside the lemma's range");
    if ((mulmod(out.a_prime % m, mulmod(out.d_scale, out.d_scale, m), m)) != a % m)
        throw internal_error("shift lost the congruence a = a'*d^2 (mod m)");
    if (c_am(out.a_prime % m, m, cam_cap) == 0)
        throw internal_error("shifted class lost three-square solvability");
    return out;
}

std::pair<mpz_class, mpz_class> t_multiplier(u64 a_prime, u64 m, u64 factor_cap) {
    if (m < 1) throw precondition_error("BadModulus", "m must be >= 1");
    if (a_prime < 1 || a_prime > 5 * m || !is_squarefree_u64(a_prime))
        throw precondition_error("PreconditionViolation",
                                 "a' must be square-free in [1, 5m]");
    Factorization fa = factorize(mpz_class((unsigned long)a_prime), factor_cap);
    Factorization fm = factorize(mpz_class((unsigned long)m), factor_cap);
    mpz_class M = 7;
    for (const auto& [p, e] : fa.factors) {
        unsigned em = 0;
        for (const auto& [q, eq] : fm.factors)
            if (q == p) em = eq;
        mpz_class pe;
        mpz_ui_pow_ui(pe.get_mpz_t(), p, std::max(2u, em));
        M *= pe;
    }
    for (const auto& [p, e] : fm.factors) {
        if (a_prime % p == 0) continue;
        mpz_class pe;
        mpz_ui_pow_ui(pe.get_mpz_t(), p, e);
        M *= pe;
    }
    mpz_class t = M / (unsigned long)m;
    assert(t * (unsigned long)m == M && t >= 7);
    assert(M > (unsigned long)a_prime);
    return {t, M};
}

ReductionCertificate reduce_full(u64 a, u64 m, u64 cam_cap, u64 modulus_cap,
                                 u64 factor_cap) {
    ShiftResult shift = squarefree_shift(a % m, m, cam_cap);
    auto [t, M] = t_multiplier(shift.a_prime, m, factor_cap);

    ReductionCertificate cert;
    cert.a_in = a % m;
    cert.m_in = m;
    cert.a_prime = shift.a_prime;
    cert.d_scale = shift.d_scale;
    cert.t = t;
    cert.M = M;
    cert.tag = shift.tag;
    cert.advisory_large_modulus = M > mpz_class((unsigned long)modulus_cap);

    // local three-square solvability of a' at every prime power of M; the
    // paper's Legendre analysis says this cannot fail given c_am(a, m) > 0
    Factorization fM = factorize(M, factor_cap);
    for (const auto& [p, e] : fM.factors) {
        if (!local_three_square_solvable(cert.a_prime, p, e))
            throw internal_error("a' lost local solvability at " +
                                 std::to_string(p) + "^" + std::to_string(e));
        if (cert.a_prime % p == 0 && e < 2)
            throw internal_error("t-multiplier failed to square prime " +
                                 std::to_string(p));
    }
    if (M <= mpz_class((unsigned long)cam_cap)) {
        u64 Mu = mpz_get_ui(M.get_mpz_t());
        if (c_am(cert.a_prime % Mu, Mu, cam_cap) == 0)
            throw internal_error("c_{a', M} vanished despite the lemma");
    }
    return cert;
}

} // namespace tsq
