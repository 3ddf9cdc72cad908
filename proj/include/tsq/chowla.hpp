#ifndef TSQ_CHOWLA_HPP
#define TSQ_CHOWLA_HPP

#include <gmpxx.h>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tsq/congsolve.hpp"
#include "tsq/reduction.hpp"

namespace tsq {

struct PipelineCaps {
    u64 cam_cap = kCamCap;
    u64 modulus_cap = kModulusCap;
    u64 bucket_cap = kBucketCap;
    u64 r3_cap = kR3Cap;
    u64 factor_cap = kFactorCap;
    u64 sieve_cap = kSieveCap;
    u64 prime_power_cap = kPrimePowerCap;
    unsigned threads = 0;
};

struct BuildN {
    std::vector<u64> primes; // the set P: primes <= z coprime to the modulus
    mpz_class N1 = 1;        // product over P
    u64 d_inv = 1;           // inverse of N1 modulo M
    mpz_class N = 1;         // a' * d_inv * N1
};

// P = primes <= z not dividing M; N = a' * inv(N1 mod M) * N1 = a' (mod M).
BuildN build_N(u64 a_prime, u64 M, u64 z, u64 sieve_cap = kSieveCap);

// S(k) for the Euler four-square matrix built from y; exact on any integers,
// with |S(k)|^2 = (sum y_j^2) * |k|^2.
std::array<mpz_class, 4> euler_transform(const std::array<mpz_class, 4>& y,
                                         const std::array<mpz_class, 4>& k);

struct SelectedBucket {
    ResidueVec4 x_star;
    u64 bucket_count = 0;
    mpz_class r4N = 0;
};

// Heaviest residue class of four-square representations of N over modulus M,
// among keys with sum of squares = a' (mod M). Ties break to the smallest
// canonical key.
SelectedBucket select_bucket(const mpz_class& N, u64 M, u64 a_prime,
                             const PipelineCaps& caps = {});

// One full pipeline run.
struct ChowlaWitness {
    u64 a = 0;
    u64 m = 1;
    u64 z = 0;
    ReductionCertificate certificate;
    bool skip_reduction = false;

    std::vector<u64> primes;
    mpz_class N1 = 1;
    u64 d_inv = 1;
    mpz_class N = 1;
    mpz_class r4N = 0;

    ResidueVec4 x_star;
    u64 bucket_count = 0;

    CongruenceSolution y;
    mpz_class Q = 1;

    mpz_class K = 1;        // count of admissible k: 2*floor(sqrt(NQ)/M) + 1
    mpz_class k_star = 0;   // chosen first coordinate, k = 0 (mod M)
    mpz_class n_local = 0;  // N*Q - k_star^2
    mpz_class certified_count = 0;
    mpz_class pigeonhole_bound = 0;
    std::optional<mpz_class> r3_exact;
    mpz_class n_final = 0; // n_local * d_scale^2
    mpq_class euler_product = 1;
    bool degenerate_primes = false; // P was empty
};

struct WitnessOptions {
    bool skip_reduction = false;
    bool verify_exact = false;
    PipelineCaps caps = {};
};

ChowlaWitness extract_witness(u64 a, u64 m, u64 z, const WitnessOptions& opts = {});

struct HurwitzWitness {
    ChowlaWitness witness;
    u64 b = 0;            // class actually fed to the pipeline
    u64 modulus_used = 1; // 4m when nu2(m) <= 1, else m
    mpq_class h_bound = 0;
    int final_case = 0; // 1: n = 1,2 (mod 4) [H(4n)]; 2: n = 3 (mod 8) [H(n)]
};

HurwitzWitness hurwitz_witness(u64 a, u64 m, u64 z, const WitnessOptions& opts = {});

// Comparison of the certified count against the pigeonhole bound and the
// displayed denominator form, plus the r4(N)/(8N) vs prod(1+1/p) diagnostic.
struct LowerBoundReport {
    mpz_class certified_count;
    mpz_class pigeonhole_bound;
    mpz_class K;
    double paper_form_bound = 0; // r4N / ((2*sqrt(NQ)+1) * M^3)
    mpq_class r4N_over_8N;
    mpq_class euler_product;
    double certified_over_sqrt_n = 0;
    bool degenerate_primes = false;
};

LowerBoundReport lower_bound_report(const ChowlaWitness& w);

} // namespace tsq

#endif
