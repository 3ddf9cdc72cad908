#ifndef TSQ_TEST_ORACLES_HPP
#define TSQ_TEST_ORACLES_HPP

// Deliberately dumb reference implementations. These stay independent of the
// library code paths they check: plain nested loops, no shared helpers.

#include <array>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// signed ordered triples with a^2+b^2+c^2 = n
inline u64 r3_dumb(u64 n) {
    u64 count = 0;
    i64 r = 0;
    while ((r + 1) * (r + 1) <= (i64)n) ++r;
    for (i64 a = -r; a <= r; ++a)
        for (i64 b = -r; b <= r; ++b) {
            i64 rem = (i64)n - a * a - b * b;
            if (rem < 0) continue;
            for (i64 c = -r; c <= r; ++c)
                if (c * c == rem) ++count;
        }
    return count;
}

// signed ordered quadruples with a^2+b^2+c^2+d^2 = n
inline u64 r4_dumb(u64 n) {
    u64 count = 0;
    i64 r = 0;
    while ((r + 1) * (r + 1) <= (i64)n) ++r;
    for (i64 a = -r; a <= r; ++a)
        for (i64 b = -r; b <= r; ++b) {
            i64 rem2 = (i64)n - a * a - b * b;
            if (rem2 < 0) continue;
            for (i64 c = -r; c <= r; ++c) {
                i64 rem = rem2 - c * c;
                if (rem < 0) continue;
                for (i64 d = -r; d <= r; ++d)
                    if (d * d == rem) ++count;
            }
        }
    return count;
}

// sigma_*(n) by direct divisor scan
inline u64 sigma_star_dumb(u64 n) {
    u64 s = 0;
    for (u64 d = 1; d <= n; ++d)
        if (n % d == 0 && d % 4 != 0) s += d;
    return s;
}

inline u64 c_am_dumb(u64 a, u64 m) {
    u64 count = 0;
    for (u64 x = 0; x < m; ++x)
        for (u64 y = 0; y < m; ++y)
            for (u64 z = 0; z < m; ++z)
                if ((x * x + y * y + z * z) % m == a % m) ++count;
    return count;
}

// reduced forms of discriminant -n by raw triple scan
inline std::vector<std::array<i64, 3>> forms_dumb(u64 n) {
    std::vector<std::array<i64, 3>> out;
    for (i64 A = 1; A * A * 3 <= (i64)(n + 3); ++A)
        for (i64 B = -A + 1; B <= A; ++B)
            for (i64 C = A; 4 * A * C <= (i64)n + B * B + 4 * A * A; ++C) {
                if (B * B - 4 * A * C != -(i64)n) continue;
                if (!(A <= C)) continue;
                if (A == C && B < 0) continue;
                out.push_back({A, B, C});
            }
    return out;
}

// per-residue-class counts of four-square tuples, brute force
inline std::map<std::array<u64, 4>, u64> buckets_dumb(u64 n, u64 m) {
    std::map<std::array<u64, 4>, u64> out;
    i64 r = 0;
    while ((r + 1) * (r + 1) <= (i64)n) ++r;
    auto canon = [m](i64 k) {
        u64 v = (u64)(((k % (i64)m) + (i64)m) % (i64)m);
        return v == 0 ? m : v;
    };
    for (i64 a = -r; a <= r; ++a)
        for (i64 b = -r; b <= r; ++b)
            for (i64 c = -r; c <= r; ++c) {
                i64 rem = (i64)n - a * a - b * b - c * c;
                if (rem < 0) continue;
                for (i64 d = -r; d <= r; ++d)
                    if (d * d == rem)
                        ++out[{canon(a), canon(b), canon(c), canon(d)}];
            }
    return out;
}

} // namespace oracle

#endif
