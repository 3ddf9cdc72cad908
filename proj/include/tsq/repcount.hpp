#ifndef TSQ_REPCOUNT_HPP
#define TSQ_REPCOUNT_HPP

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "tsq/arith.hpp"

namespace tsq {

inline constexpr u64 kR3Cap = 1'000'000'000ull;     // 10^9
inline constexpr u64 kR4Cap = 10'000'000ull;        // 10^7
inline constexpr u64 kBucketCap = 10'000'000ull;    // 10^7 (N)
inline constexpr u64 kBucketModCap = 24ull;         // m for full tables
inline constexpr u64 kModulusCap = 10'000ull;       // pipeline modulus
inline constexpr u64 kCamCap = 10'000ull;           // 10^4
inline constexpr u64 kSumCap = 100'000'000ull;      // 10^8
inline constexpr u64 kScanCap = 10'000'000ull;      // 10^7

// Four residues modulo m, canonical representatives in [1, m] (the value m
// stands for residue 0, so every representative is non-zero).
struct ResidueVec4 {
    std::array<u64, 4> coords{1, 1, 1, 1};
    u64 modulus = 1;

    static ResidueVec4 from_residues(const std::array<u64, 4>& r, u64 m);
    std::array<u64, 4> residues() const; // lifted to [0, m)
    bool operator==(const ResidueVec4&) const = default;
    bool operator<(const ResidueVec4& o) const { return coords < o.coords; }
};

// Per-residue-class counts of four-square representations of one target.
struct BucketTable {
    u64 modulus = 1;
    mpz_class total = 0;                // equals r4(N)
    std::map<std::array<u64, 4>, u64> entries; // canonical key -> count >= 1
};

// true iff n is a sum of three squares (n != 4^u(8v+7)).
bool legendre_is_sum3(const mpz_class& n);

// Exact counts of signed ordered representations.
mpz_class r3_bruteforce(const mpz_class& n, u64 r3_cap = kR3Cap, unsigned threads = 0);
mpz_class r4_bruteforce(const mpz_class& n, u64 r4_cap = kR4Cap);

// r4 via 8 * sigma_*(n).
mpz_class r4_jacobi(const mpz_class& n, u64 factor_cap = kFactorCap);
mpz_class sigma_star(const mpz_class& n, u64 factor_cap = kFactorCap);

// Solutions of x1^2+x2^2+x3^2 = a over (Z/m)^3.
u64 c_am(u64 a, u64 m, u64 cam_cap = kCamCap);
// All residues at once (same O(m^2) cost as one query).
std::vector<u64> c_am_all(u64 m, u64 cam_cap = kCamCap);

// Whether a is a sum of three squares modulo p^e (p prime).
bool local_three_square_solvable(u64 a, u64 p, unsigned e);

// Full bucket table of N over modulus m. `mod_cap` protects the table size
// (the CLI keeps the spec default 24; the pipeline passes a larger bound and
// gets a sparse table).
BucketTable r4_buckets(const mpz_class& N, u64 m, u64 bucket_cap = kBucketCap,
                       u64 mod_cap = kBucketModCap, unsigned threads = 0);

// Sum of r3(n) for n <= x, optionally restricted to n = a (mod m). One pass
// over the (A, B) lattice disk; the third coordinate is counted per residue
// class in closed form.
mpz_class sum_r3_upto(u64 x, std::optional<std::pair<u64, u64>> ap = std::nullopt,
                      u64 sum_cap = kSumCap, unsigned threads = 0);

// r3 values for all n <= x via an r2 sieve and one quadratic convolution.
std::vector<std::uint32_t> r3_table(u64 x, u64 scan_cap = kScanCap,
                                    unsigned threads = 0);

struct ScanRecord {
    u64 n = 0;
    u64 r3 = 0;
    double ratio = 0.0; // r3/sqrt(n)
};

// Streams (n, r3(n), r3/sqrt(n), is_record) over n = a (mod m), n <= max_n.
// Returns the record table (strictly increasing r3/sqrt(n), compared exactly).
// `row` may be null when only the records are wanted.
std::vector<ScanRecord>
scan_r3(u64 a, u64 m, u64 max_n,
        const std::function<void(u64 n, u64 r3, double ratio, bool record)>& row,
        u64 scan_cap = kScanCap, unsigned threads = 0);

} // namespace tsq

#endif
