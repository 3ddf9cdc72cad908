#include "tsq/chowla.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>

#include "tsq/errors.hpp"

namespace tsq {

BuildN build_N(u64 a_prime, u64 M, u64 z, u64 sieve_cap) {
    if (M < 2)
        throw precondition_error("BadModulus",
                                 "build_N needs M >= 2 (M = 1 is the pipeline "
                                 "short-circuit)");
    if (a_prime < 1 || a_prime >= M)
        throw precondition_error("BadArgument", "need 1 <= a' < M");
    BuildN out;
    for (u64 p : primes_upto(z, sieve_cap))
        if (M % p != 0) out.primes.push_back(p);
    for (u64 p : out.primes) out.N1 *= (unsigned long)p;
    // N1 is coprime to M by construction (empty product gives N1 = 1)
    out.d_inv = mpz_get_ui(
        mod_inverse(out.N1 % (unsigned long)M, mpz_class((unsigned long)M)).get_mpz_t());
    out.N = mpz_class((unsigned long)a_prime) * (unsigned long)out.d_inv * out.N1;
    assert(out.N % (unsigned long)M == (unsigned long)(a_prime % M));
    return out;
}

std::array<mpz_class, 4> euler_transform(const std::array<mpz_class, 4>& y,
                                         const std::array<mpz_class, 4>& k) {
    return {
        y[0] * k[0] + y[1] * k[1] + y[2] * k[2] + y[3] * k[3],
        -y[1] * k[0] + y[0] * k[1] - y[3] * k[2] + y[2] * k[3],
        -y[2] * k[0] + y[3] * k[1] + y[0] * k[2] - y[1] * k[3],
        -y[3] * k[0] - y[2] * k[1] + y[1] * k[2] + y[0] * k[3],
    };
}

SelectedBucket select_bucket(const mpz_class& N, u64 M, u64 a_prime,
                             const PipelineCaps& caps) {
    BucketTable table = r4_buckets(N, M, caps.bucket_cap, caps.modulus_cap,
                                   caps.threads);
    if (table.entries.empty())
        throw precondition_error("EmptyBuckets", "r4(N) = 0 cannot happen for N >= 1");
    SelectedBucket out;
    out.r4N = table.total;
    bool found = false;
    for (const auto& [key, count] : table.entries) {
        u64 s = 0;
        for (u64 c : key) s = addmod(s, mulmod(c % M, c % M, M), M);
        if (s != a_prime % M) continue; // keys of other residues never occur
        if (!found || count > out.bucket_count) {
            out.x_star.coords = key;
            out.x_star.modulus = M;
            out.bucket_count = count;
            found = true;
        }
    }
    if (!found)
        throw internal_error("no bucket matches the target residue class");
    mpz_class jac = r4_jacobi(N, caps.factor_cap);
    if (jac != table.total)
        throw internal_error("bucket total disagrees with the divisor formula");
    return out;
}

namespace {

// Signed pairs (k1, k2), k1 = r1, k2 = r2 (mod M), k1^2 + k2^2 <= n, grouped
// by the value k1^2 + k2^2 via a counting-sort arena.
struct PairArena {
    std::vector<std::uint32_t> off; // n + 2 entries
    std::vector<std::pair<std::int32_t, std::int32_t>> pairs;

    void build(u64 n, u64 M, u64 r1, u64 r2) {
        off.assign(n + 2, 0);
        i64 root = (i64)isqrt_u64(n);
        auto first_ge = [&](i64 lo, u64 r) {
            i64 k = lo + (i64)(((i64)r - lo % (i64)M + 2 * (i64)M) % (i64)M);
            return k;
        };
        for (i64 k1 = first_ge(-root, r1); k1 <= root; k1 += (i64)M) {
            u64 k1s = (u64)(k1 * k1);
            i64 root2 = (i64)isqrt_u64(n - k1s);
            for (i64 k2 = first_ge(-root2, r2); k2 <= root2; k2 += (i64)M)
                ++off[k1s + (u64)(k2 * k2) + 1];
        }
        for (u64 s = 0; s <= n; ++s) off[s + 1] += off[s];
        pairs.resize(off[n + 1]);
        std::vector<std::uint32_t> cursor(off.begin(), off.end() - 1);
        for (i64 k1 = first_ge(-root, r1); k1 <= root; k1 += (i64)M) {
            u64 k1s = (u64)(k1 * k1);
            i64 root2 = (i64)isqrt_u64(n - k1s);
            for (i64 k2 = first_ge(-root2, r2); k2 <= root2; k2 += (i64)M) {
                u64 s = k1s + (u64)(k2 * k2);
                pairs[cursor[s]++] = {(std::int32_t)k1, (std::int32_t)k2};
            }
        }
    }
};

ShiftCase classify_tag(u64 a, u64 m) {
    unsigned r = v2_u64(a);
    unsigned s = m % 2 == 0 ? v2_u64(m) : 0;
    if (r % 2 == 1) return ShiftCase::kROdd;
    if (s <= r) return ShiftCase::kREvenSLeR;
    if (s <= r + 2) return ShiftCase::kREvenSNearR;
    return ShiftCase::kREvenSFar;
}

} // namespace

ChowlaWitness extract_witness(u64 a, u64 m, u64 z, const WitnessOptions& opts) {
    const PipelineCaps& caps = opts.caps;
    if (m < 1) throw precondition_error("BadModulus", "m must be >= 1");
    a %= m;
    if (c_am(a, m, caps.cam_cap) == 0)
        throw precondition_error("NotRepresentable",
                                 "a is not a sum of three squares mod m");

    ChowlaWitness w;
    w.a = a;
    w.m = m;
    w.z = z;
    w.skip_reduction = opts.skip_reduction;

    if (m == 1) {
        w.certificate = {0, 1, 1, 1, 1, 1, ShiftCase::kREvenSLeR, false};
    } else if (opts.skip_reduction) {
        Factorization fa =
            a > 0 ? factorize(mpz_class((unsigned long)a), caps.factor_cap)
                  : Factorization{};
        if (a == 0)
            throw precondition_error("PreconditionViolation",
                                     "skip_reduction needs a square-free a >= 1");
        for (const auto& [p, e] : fa.factors) {
            if (e > 1)
                throw precondition_error("PreconditionViolation",
                                         "skip_reduction needs square-free a");
            if (nu_p(mpz_class((unsigned long)m), mpz_class((unsigned long)p)) < 2)
                throw precondition_error("PreconditionViolation",
                                         "skip_reduction needs p^2 | m for every "
                                         "prime p | a");
        }
        if (a % 4 == 0)
            throw precondition_error("PreconditionViolation", "4 must not divide a");
        w.certificate = {a, m, a, 1, 1, mpz_class((unsigned long)m),
                         classify_tag(a, m),
                         mpz_class((unsigned long)m) > (unsigned long)caps.modulus_cap};
    } else {
        w.certificate =
            reduce_full(a, m, caps.cam_cap, caps.modulus_cap, caps.factor_cap);
    }

    if (w.certificate.M > mpz_class((unsigned long)caps.modulus_cap))
        throw too_large_error("pipeline modulus M=" + w.certificate.M.get_str() +
                                  " (certificate valid; advisory flag set)",
                              "modulus-cap");
    u64 M = mpz_get_ui(w.certificate.M.get_mpz_t());
    u64 a_prime = w.certificate.a_prime % std::max<u64>(M, 1);
    if (M > 1 && a_prime == 0)
        throw internal_error("a' = 0 (mod M) contradicts a' < M");

    // N and its factorization-backed r4
    if (M == 1) {
        w.primes = primes_upto(z, caps.sieve_cap);
        w.N1 = 1;
        for (u64 p : w.primes) w.N1 *= (unsigned long)p;
        w.d_inv = 1;
        w.N = w.N1;
    } else {
        BuildN bn = build_N(a_prime, M, z, caps.sieve_cap);
        w.primes = bn.primes;
        w.N1 = bn.N1;
        w.d_inv = bn.d_inv;
        w.N = bn.N;
    }
    w.degenerate_primes = w.primes.empty();
    for (u64 p : w.primes) w.euler_product *= mpq_class((unsigned long)(p + 1), (unsigned long)p);
    w.euler_product.canonicalize();

    if (w.N > mpz_class((unsigned long)caps.bucket_cap))
        throw too_large_error("pipeline N=" + w.N.get_str() +
                                  (w.certificate.advisory_large_modulus
                                       ? " (certificate advisory: large modulus)"
                                       : ""),
                              "bucket-cap");
    u64 n = mpz_get_ui(w.N.get_mpz_t());

    SelectedBucket sel = select_bucket(w.N, M, a_prime, caps);
    w.x_star = sel.x_star;
    w.bucket_count = sel.bucket_count;
    w.r4N = sel.r4N;
    mpz_class M4 = mpz_class((unsigned long)M);
    M4 = M4 * M4 * M4 * M4;
    if (mpz_class((unsigned long)w.bucket_count) * M4 < w.r4N)
        throw internal_error("heaviest bucket fell below the pigeonhole average");

    // y and the transform
    w.y = solve_mod_m(w.x_star, mpz_class((unsigned long)a_prime), M,
                      caps.factor_cap, caps.prime_power_cap);
    w.Q = w.y.Q;
    std::array<i64, 4> yv;
    if (M == 1) {
        yv = {1, 0, 0, 0};
    } else {
        auto res = w.y.y.residues();
        for (int i = 0; i < 4; ++i) yv[i] = (i64)res[i];
    }

    mpz_class NQ = w.N * w.Q;
    mpz_class rootNQ = isqrt(NQ);
    w.K = 2 * (rootNQ / (unsigned long)M) + 1;

    // enumerate the x_star representations via two synchronized pair arenas
    auto xres = w.x_star.residues();
    PairArena front, back;
    front.build(n, M, xres[0], xres[1]);
    back.build(n, M, xres[2], xres[3]);

    std::map<i64, u64> groups;
    u64 seen = 0;
    auto for_each_tuple = [&](auto&& fn) {
        for (u64 s = 0; s <= n; ++s) {
            u64 t = n - s;
            if (front.off[s] == front.off[s + 1]) continue;
            for (u64 i = front.off[s]; i < front.off[s + 1]; ++i)
                for (u64 j = back.off[t]; j < back.off[t + 1]; ++j) {
                    const auto& [k1, k2] = front.pairs[i];
                    const auto& [k3, k4] = back.pairs[j];
                    fn((i64)k1, (i64)k2, (i64)k3, (i64)k4);
                }
        }
    };
    for_each_tuple([&](i64 k1, i64 k2, i64 k3, i64 k4) {
        i64 z1 = yv[0] * k1 + yv[1] * k2 + yv[2] * k3 + yv[3] * k4;
        if (z1 % (i64)M != 0)
            throw internal_error("transformed first coordinate not divisible by M");
        ++groups[z1];
        ++seen;
    });
    if (seen != w.bucket_count)
        throw internal_error("bucket re-enumeration count mismatch");

    // k* = argmax group, ties to smaller |k|, then to the positive one
    i64 kstar = 0;
    u64 best = 0;
    bool have = false;
    for (const auto& [k, cnt] : groups) {
        bool take = !have || cnt > best;
        if (!take && cnt == best) {
            u64 ak = (u64)(k < 0 ? -k : k), ab = (u64)(kstar < 0 ? -kstar : kstar);
            take = ak < ab || (ak == ab && k > 0 && kstar < 0);
        }
        if (take) {
            kstar = k;
            best = cnt;
            have = true;
        }
    }
    w.k_star = (long)kstar;
    w.certified_count = (unsigned long)best;
    w.n_local = NQ - w.k_star * w.k_star;

    // collect the certified triples and check injectivity on the group
    {
        std::vector<std::array<i64, 3>> triples;
        triples.reserve(best);
        for_each_tuple([&](i64 k1, i64 k2, i64 k3, i64 k4) {
            i64 z1 = yv[0] * k1 + yv[1] * k2 + yv[2] * k3 + yv[3] * k4;
            if (z1 != kstar) return;
            i64 z2 = -yv[1] * k1 + yv[0] * k2 - yv[3] * k3 + yv[2] * k4;
            i64 z3 = -yv[2] * k1 + yv[3] * k2 + yv[0] * k3 - yv[1] * k4;
            i64 z4 = -yv[3] * k1 - yv[2] * k2 + yv[1] * k3 + yv[0] * k4;
            mpz_class norm = mpz_class((long)z1) * (long)z1 + mpz_class((long)z2) * (long)z2 +
                             mpz_class((long)z3) * (long)z3 + mpz_class((long)z4) * (long)z4;
            if (norm != NQ) throw internal_error("transform broke the norm identity");
            triples.push_back({z2, z3, z4});
        });
        std::sort(triples.begin(), triples.end());
        if (std::adjacent_find(triples.begin(), triples.end()) != triples.end())
            throw internal_error("duplicate transformed tuples (injectivity)");
        if (triples.size() != best)
            throw internal_error("certified group re-count mismatch");
    }

    // counting chain: certified >= ceil(bucket/K) >= ceil((r4N/M^4)/K)
    mpz_class denom = M4 * w.K;
    mpz_class bound;
    mpz_cdiv_q(bound.get_mpz_t(), w.r4N.get_mpz_t(), denom.get_mpz_t());
    w.pigeonhole_bound = bound;
    mpz_class chain;
    {
        mpz_class bc = (unsigned long)w.bucket_count;
        mpz_cdiv_q(chain.get_mpz_t(), bc.get_mpz_t(), w.K.get_mpz_t());
    }
    if (w.certified_count < chain || chain < w.pigeonhole_bound)
        throw internal_error("pigeonhole counting chain failed");

    if (opts.verify_exact) {
        w.r3_exact = r3_bruteforce(w.n_local, caps.r3_cap, caps.threads);
        if (*w.r3_exact < w.certified_count)
            throw internal_error("exact r3 below the certified count");
    }

    mpz_class d2 = mpz_class((unsigned long)w.certificate.d_scale);
    w.n_final = w.n_local * d2 * d2;

    // end-to-end congruences
    if (M > 1 && w.n_local % (unsigned long)M != (unsigned long)a_prime)
        throw internal_error("n_local escaped its residue class");
    if (m > 1 && w.n_final % (unsigned long)m != (unsigned long)a)
        throw internal_error("n_final escaped its residue class");
    return w;
}

HurwitzWitness hurwitz_witness(u64 a, u64 m, u64 z, const WitnessOptions& opts) {
    if (m < 1) throw precondition_error("BadModulus", "m must be >= 1");
    a %= m;
    unsigned s2 = m % 2 == 0 ? v2_u64(m) : 0;
    HurwitzWitness out;
    if (s2 >= 2) {
        if (a % 4 == 0)
            throw precondition_error("PreconditionViolation",
                                     "4 | m requires 4 to not divide a");
        out.b = a;
        out.modulus_used = m;
        out.witness = extract_witness(a, m, z, opts);
    } else {
        // pick i with v2(a + i*m) <= 1, then the candidate of the pair
        // b, b + 4m/2^v2(m) that Legendre admits
        u64 b0;
        if (a != 0 && v2_u64(a) <= 1)
            b0 = a;
        else
            b0 = a + m; // v2(a + m) = v2(m) <= 1 here
        u64 step = 4 * m >> s2;
        u64 c1 = b0, c2 = b0 + step;
        u64 b = legendre_is_sum3(mpz_class((unsigned long)c1)) ? c1 : c2;
        if (!legendre_is_sum3(mpz_class((unsigned long)b)))
            throw internal_error("both candidates are 7 mod 8");
        out.b = b;
        out.modulus_used = 4 * m;
        out.witness = extract_witness(b % (4 * m), 4 * m, z, opts);
    }

    const mpz_class& nf = out.witness.n_final;
    u64 mod8 = mpz_fdiv_ui(nf.get_mpz_t(), 8);
    if (mod8 % 4 == 0)
        throw internal_error("n_final divisible by 4");
    if (mod8 == 7)
        throw internal_error("n_final is 7 mod 8 despite a positive count");
    if (mod8 == 3) {
        out.final_case = 2; // r3(n) = 24*H(n)
        out.h_bound = mpq_class(out.witness.certified_count, 24);
    } else {
        out.final_case = 1; // r3(n) = 12*H(4n)
        out.h_bound = mpq_class(out.witness.certified_count, 12);
    }
    out.h_bound.canonicalize();
    return out;
}

LowerBoundReport lower_bound_report(const ChowlaWitness& w) {
    LowerBoundReport rep;
    rep.certified_count = w.certified_count;
    rep.pigeonhole_bound = w.pigeonhole_bound;
    rep.K = w.K;
    rep.degenerate_primes = w.degenerate_primes;
    mpz_class NQ = w.N * w.Q;
    double m3 = std::pow(mpz_get_d(w.certificate.M.get_mpz_t()), 3.0);
    rep.paper_form_bound = mpz_get_d(w.r4N.get_mpz_t()) /
                           ((2.0 * std::sqrt(mpz_get_d(NQ.get_mpz_t())) + 1.0) * m3);
    rep.r4N_over_8N = mpq_class(w.r4N, 8 * w.N);
    rep.r4N_over_8N.canonicalize();
    rep.euler_product = w.euler_product;
    double nf = mpz_get_d(w.n_final.get_mpz_t());
    rep.certified_over_sqrt_n =
        nf > 0 ? mpz_get_d(w.certified_count.get_mpz_t()) / std::sqrt(nf) : 0.0;
    return rep;
}

} // namespace tsq
