#include "tsq/repcount.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <unordered_map>

#include "tsq/errors.hpp"
#include "tsq/parallel.hpp"

namespace tsq {

ResidueVec4 ResidueVec4::from_residues(const std::array<u64, 4>& r, u64 m) {
    ResidueVec4 v;
    v.modulus = m;
    for (int i = 0; i < 4; ++i) {
        u64 c = r[i] % m;
        v.coords[i] = c == 0 ? m : c;
    }
    return v;
}

std::array<u64, 4> ResidueVec4::residues() const {
    std::array<u64, 4> r;
    for (int i = 0; i < 4; ++i) r[i] = coords[i] % modulus;
    return r;
}

bool legendre_is_sum3(const mpz_class& n) {
    if (n < 0) throw precondition_error("BadArgument", "n must be >= 0");
    if (n == 0) return true;
    mpz_class q = n;
    while (mpz_divisible_ui_p(q.get_mpz_t(), 4)) q /= 4;
    return mpz_fdiv_ui(q.get_mpz_t(), 8) != 7;
}

namespace {

u64 orbit3(u64 a, u64 b, u64 c) {
    // a <= b <= c; ordered signed triples in the orbit of (a, b, c)
    u64 perms = (a == b && b == c) ? 1 : (a == b || b == c) ? 3 : 6;
    unsigned nz = (a > 0) + (b > 0) + (c > 0);
    return perms << nz;
}

u64 orbit4(u64 a, u64 b, u64 c, u64 d) {
    unsigned m1 = 1 + (a == b) + (a == c) + (a == d);
    unsigned perms;
    if (m1 == 4) {
        perms = 1;
    } else {
        // multiset permutation count 4!/prod(mult!)
        u64 v[4] = {a, b, c, d};
        unsigned mult[4] = {0, 0, 0, 0};
        unsigned k = 0;
        for (int i = 0; i < 4; ++i) {
            bool seen = false;
            for (unsigned j = 0; j < k; ++j)
                if (v[i] == v[j]) { seen = true; break; }
            if (!seen) {
                for (int j = 0; j < 4; ++j) mult[k] += (v[j] == v[i]);
                ++k;
            }
        }
        static const unsigned fact[5] = {1, 1, 2, 6, 24};
        perms = 24;
        for (unsigned j = 0; j < k; ++j) perms /= fact[mult[j]];
    }
    unsigned nz = (a > 0) + (b > 0) + (c > 0) + (d > 0);
    return (u64)perms << nz;
}

// Count of representations n = a^2+b^2+c^2 with 0 <= a <= b <= c weighted by
// orbit size, for a in [a_lo, a_hi). Two-pointer on c, no divisions inside.
u64 r3_range(u64 n, u64 a_lo, u64 a_hi) {
    u64 count = 0;
    for (u64 a = a_lo; a < a_hi; ++a) {
        u64 aa = a * a;
        if (3 * aa > n) break;
        u64 R = n - aa;
        u64 c = isqrt_u64(R - aa); // b starts at a
        for (u64 b = a, bb = a * a; 2 * bb <= R; ++b, bb += 2 * b - 1) {
            u64 rem = R - bb;
            while (c * c > rem) --c;
            if (c < b) break;
            if (c * c == rem) count += orbit3(a, b, c);
        }
    }
    return count;
}

} // namespace

mpz_class r3_bruteforce(const mpz_class& n, u64 r3_cap, unsigned threads) {
    if (n < 0) throw precondition_error("BadArgument", "n must be >= 0");
    if (n > mpz_class(r3_cap) || !n.fits_ulong_p() ||
        mpz_get_ui(n.get_mpz_t()) > (u64)4e18)
        throw too_large_error("r3 of " + n.get_str(), "r3-cap");
    u64 v = mpz_get_ui(n.get_mpz_t());
    if (v == 0) return 1;
    u64 a_max = isqrt_u64(v / 3) + 1;
    mpz_class total = 0;
    parallel_chunks<u64>(
        0, a_max, threads,
        [&](u64 lo, u64 hi, u64& part) { part = r3_range(v, lo, hi); },
        [&](const u64& part) { total += part; });
    return total;
}

mpz_class r4_bruteforce(const mpz_class& n, u64 r4_cap) {
    if (n < 0) throw precondition_error("BadArgument", "n must be >= 0");
    if (n > mpz_class(r4_cap) || !n.fits_ulong_p())
        throw too_large_error("r4 of " + n.get_str(), "r4-cap");
    u64 v = mpz_get_ui(n.get_mpz_t());
    if (v == 0) return 1;
    u64 count = 0;
    for (u64 a = 0; 4 * a * a <= v; ++a) {
        u64 ra = v - a * a;
        for (u64 b = a; 3 * b * b <= ra; ++b) {
            u64 rb = ra - b * b;
            u64 d = isqrt_u64(rb - b * b);
            for (u64 c = b, cc = b * b; 2 * cc <= rb; ++c, cc += 2 * c - 1) {
                u64 rem = rb - cc;
                while (d * d > rem) --d;
                if (d < c) break;
                if (d * d == rem) count += orbit4(a, b, c, d);
            }
        }
    }
    return count;
}

mpz_class sigma_star(const mpz_class& n, u64 factor_cap) {
    if (n < 1) throw precondition_error("BadArgument", "n must be >= 1");
    return sigma_star_from_factors(factorize(n, factor_cap));
}

mpz_class r4_jacobi(const mpz_class& n, u64 factor_cap) {
    return 8 * sigma_star(n, factor_cap);
}

std::vector<u64> c_am_all(u64 m, u64 cam_cap) {
    if (m < 1) throw precondition_error("BadModulus", "m must be >= 1");
    if (m > cam_cap)
        throw too_large_error("c_am with m=" + std::to_string(m), "cam-cap");
    std::vector<u64> sq(m, 0);
    for (u64 x = 0; x < m; ++x) ++sq[x * x % m];
    std::vector<u64> nz;
    for (u64 r = 0; r < m; ++r)
        if (sq[r]) nz.push_back(r);
    std::vector<u64> two(m, 0);
    for (u64 r1 : nz)
        for (u64 r2 : nz) two[(r1 + r2) % m] += sq[r1] * sq[r2];
    std::vector<u64> three(m, 0);
    for (u64 r = 0; r < m; ++r) {
        if (!two[r]) continue;
        for (u64 r3 : nz) three[(r + r3) % m] += two[r] * sq[r3];
    }
    return three;
}

u64 c_am(u64 a, u64 m, u64 cam_cap) {
    return c_am_all(m, cam_cap)[a % m];
}

bool local_three_square_solvable(u64 a, u64 p, unsigned e) {
    if (p != 2) {
        // Every residue mod p^e is a sum of three squares: mod p the values
        // x^2+y^2 already cover Z/p (Cauchy-Davenport on the (p+1)/2 squares),
        // a representation with a unit coordinate can always be arranged, and
        // Hensel lifts it to p^e.
        return true;
    }
    if (e >= 63) throw too_large_error("2-adic exponent " + std::to_string(e), "modulus-cap");
    u64 pe = (u64)1 << e;
    a &= pe - 1;
    if (a == 0) return true; // 0+0+0
    unsigned u = 0;
    u64 b = a;
    while (b % 4 == 0) {
        b /= 4;
        ++u;
    }
    // the class 4^u * (7 mod 8) contains no sums of three squares once the
    // modulus pins the cofactor mod 8; with fewer fixed digits some shift of
    // the cofactor escapes 7 mod 8
    if (e >= 2 * u + 3) return b % 8 != 7;
    return true;
}

BucketTable r4_buckets(const mpz_class& N, u64 m, u64 bucket_cap, u64 mod_cap,
                       unsigned threads) {
    if (N < 1) throw precondition_error("BadArgument", "N must be >= 1");
    if (m < 1) throw precondition_error("BadModulus", "m must be >= 1");
    if (N > mpz_class(bucket_cap) || !N.fits_ulong_p())
        throw too_large_error("buckets of N=" + N.get_str(), "bucket-cap");
    if (m > mod_cap)
        throw too_large_error("buckets with m=" + std::to_string(m), "modulus-cap");
    u64 n = mpz_get_ui(N.get_mpz_t());

    // pass 1: count two-square decompositions per value s = k1^2+k2^2
    u64 root = isqrt_u64(n);
    std::vector<std::uint32_t> off(n + 2, 0);
    for (u64 a = 0; a * a <= n; ++a) {
        u64 w1 = a ? 2 : 1;
        for (u64 b = 0, s = a * a; s <= n; ++b, s = a * a + b * b)
            off[s + 1] += (std::uint32_t)(w1 * (b ? 2 : 1));
    }
    for (u64 s = 0; s <= n; ++s) off[s + 1] += off[s];

    // pass 2: fill one packed residue pair (r1*m + r2) per signed pair
    std::vector<std::uint32_t> arena(off[n + 1]);
    {
        std::vector<std::uint32_t> cursor(off.begin(), off.end() - 1);
        auto put = [&](i64 k1, i64 k2, u64 s) {
            u64 r1 = (u64)(((k1 % (i64)m) + (i64)m) % (i64)m);
            u64 r2 = (u64)(((k2 % (i64)m) + (i64)m) % (i64)m);
            arena[cursor[s]++] = (std::uint32_t)(r1 * m + r2);
        };
        for (u64 a = 0; a * a <= n; ++a) {
            for (u64 b = 0, s = a * a; s <= n; ++b, s = a * a + b * b) {
                put((i64)a, (i64)b, s);
                if (b) put((i64)a, -(i64)b, s);
                if (a) {
                    put(-(i64)a, (i64)b, s);
                    if (b) put(-(i64)a, -(i64)b, s);
                }
            }
        }
    }
    (void)root;

    BucketTable table;
    table.modulus = m;
    const u64 m2 = m * m;

    auto emit_key = [&](u64 packed4) {
        std::array<u64, 4> key;
        u64 v = packed4;
        for (int i = 3; i >= 0; --i) {
            u64 r = v % m;
            key[i] = r == 0 ? m : r;
            v /= m;
        }
        return key;
    };

    if (m <= kBucketModCap) {
        // dense accumulator over m^4 cells
        u64 cells = m2 * m2;
        std::vector<u64> acc;
        parallel_chunks<std::vector<u64>>(
            0, n + 1, threads,
            [&](u64 lo, u64 hi, std::vector<u64>& part) {
                part.assign(cells, 0);
                for (u64 s = lo; s < hi; ++s) {
                    u64 t = n - s;
                    for (u64 i = off[s]; i < off[s + 1]; ++i)
                        for (u64 j = off[t]; j < off[t + 1]; ++j)
                            ++part[(u64)arena[i] * m2 + arena[j]];
                }
            },
            [&](const std::vector<u64>& part) {
                if (acc.empty())
                    acc = part;
                else
                    for (u64 i = 0; i < cells; ++i) acc[i] += part[i];
            });
        for (u64 idx = 0; idx < cells; ++idx) {
            if (!acc[idx]) continue;
            table.entries.emplace(emit_key(idx), acc[idx]);
            table.total += acc[idx];
        }
    } else {
        std::unordered_map<u64, u64> acc;
        for (u64 s = 0; s <= n; ++s) {
            u64 t = n - s;
            for (u64 i = off[s]; i < off[s + 1]; ++i)
                for (u64 j = off[t]; j < off[t + 1]; ++j)
                    ++acc[(u64)arena[i] * m2 + arena[j]];
        }
        for (const auto& [idx, cnt] : acc) {
            table.entries.emplace(emit_key(idx), cnt);
            table.total += cnt;
        }
    }
    return table;
}

namespace {

inline i64 floordiv(i64 a, i64 b) {
    i64 q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

} // namespace

mpz_class sum_r3_upto(u64 x, std::optional<std::pair<u64, u64>> ap, u64 sum_cap,
                      unsigned threads) {
    if (x > sum_cap)
        throw too_large_error("sum_r3_upto x=" + std::to_string(x), "sum-cap");

    u64 m = 1, a = 0;
    std::vector<std::vector<u64>> roots; // roots[t] = {c0 : c0^2 = t (mod m)}
    if (ap) {
        a = ap->first;
        m = ap->second;
        if (m < 1) throw precondition_error("BadModulus", "m must be >= 1");
        a %= m;
        roots.assign(m, {});
        for (u64 c0 = 0; c0 < m; ++c0) roots[c0 * c0 % m].push_back(c0);
    }

    u64 a_max = isqrt_u64(x) + 1;
    mpz_class total = 0;
    parallel_chunks<u64>(
        0, a_max, threads,
        [&](u64 lo, u64 hi, u64& part) {
            u64 sum = 0;
            for (u64 A = lo; A < hi; ++A) {
                u64 AA = A * A;
                if (AA > x) break;
                u64 wa = A ? 2 : 1;
                for (u64 B = 0, BB = 0; AA + BB <= x; ++B, BB = B * B) {
                    u64 w = wa * (B ? 2 : 1);
                    u64 L = isqrt_u64(x - AA - BB);
                    if (!ap) {
                        sum += w * (2 * L + 1);
                    } else {
                        u64 t = (a + 2 * m - (AA + BB) % m) % m;
                        u64 cnt = 0;
                        for (u64 c0 : roots[t])
                            cnt += (u64)(floordiv((i64)L - (i64)c0, (i64)m) +
                                         floordiv((i64)L + (i64)c0, (i64)m) + 1);
                        sum += w * cnt;
                    }
                }
            }
            part = sum;
        },
        [&](const u64& part) { total += part; });
    return total;
}

std::vector<std::uint32_t> r3_table(u64 x, u64 scan_cap, unsigned threads) {
    if (x > scan_cap)
        throw too_large_error("r3 table to " + std::to_string(x), "scan-cap");
    std::vector<std::uint32_t> r2(x + 1, 0);
    for (u64 a = 0; a * a <= x; ++a) {
        std::uint32_t w1 = a ? 2 : 1;
        for (u64 b = 0, s = a * a; s <= x; ++b, s = a * a + b * b)
            r2[s] += w1 * (b ? 2 : 1);
    }
    std::vector<std::uint32_t> r3(r2); // c = 0 term
    u64 cmax = isqrt_u64(x);
    // partition destinations so the adds stay deterministic and race-free
    parallel_chunks<int>(
        0, x + 1, threads,
        [&](u64 lo, u64 hi, int&) {
            for (u64 c = 1; c <= cmax; ++c) {
                u64 cc = c * c;
                if (cc >= hi) break;
                u64 d0 = std::max(lo, cc);
                const std::uint32_t* src = r2.data() + (d0 - cc);
                std::uint32_t* dst = r3.data() + d0;
                u64 len = hi - d0;
                for (u64 i = 0; i < len; ++i) dst[i] += 2 * src[i];
            }
        },
        [](const int&) {});
    return r3;
}

std::vector<ScanRecord>
scan_r3(u64 a, u64 m, u64 max_n,
        const std::function<void(u64, u64, double, bool)>& row, u64 scan_cap,
        unsigned threads) {
    if (m < 1) throw precondition_error("BadModulus", "m must be >= 1");
    auto table = r3_table(max_n, scan_cap, threads);
    std::vector<ScanRecord> records;
    u64 best_r = 0, best_n = 1;
    u64 start = a % m;
    if (start == 0) start = m; // ratios are per positive n
    for (u64 n = start; n <= max_n; n += m) {
        u64 r = table[n];
        double ratio = (double)r / std::sqrt((double)n);
        // exact comparison: r/sqrt(n) > best_r/sqrt(best_n)
        bool record = r > 0 && (u128)r * r * best_n > (u128)best_r * best_r * n;
        if (record) {
            best_r = r;
            best_n = n;
            records.push_back({n, r, ratio});
        }
        if (row) row(n, r, ratio, record);
    }
    return records;
}

} // namespace tsq
