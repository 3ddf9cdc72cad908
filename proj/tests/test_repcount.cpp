#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "tsq/errors.hpp"
#include "tsq/repcount.hpp"

using namespace tsq;

TEST_CASE("legendre examples") {
    CHECK_FALSE(legendre_is_sum3(7));
    CHECK(legendre_is_sum3(68)); // 68 = 6^2 + 4^2 + 4^2
    CHECK_FALSE(legendre_is_sum3(28));
    CHECK(legendre_is_sum3(0));
}

TEST_CASE("r3 examples and oracle") {
    CHECK(r3_bruteforce(0) == 1);
    CHECK(r3_bruteforce(1) == 6);
    CHECK(r3_bruteforce(7) == 0);
    CHECK(r3_bruteforce(68) == 48); // (±6,±4,±4) perms + (±8,±2,0) perms
    for (u64 n = 0; n <= 400; ++n)
        CHECK(r3_bruteforce((unsigned long)n) == (unsigned long)oracle::r3_dumb(n));
    CHECK_THROWS_AS((void)r3_bruteforce(mpz_class("2000000000")), too_large_error);
}

TEST_CASE("r3 thread count does not change results") {
    for (u64 n : {12345, 99991, 100000}) {
        mpz_class one = r3_bruteforce((unsigned long)n, kR3Cap, 1);
        mpz_class four = r3_bruteforce((unsigned long)n, kR3Cap, 4);
        CHECK(one == four);
    }
}

TEST_CASE("r4 brute examples and oracle") {
    CHECK(r4_bruteforce(1) == 8);
    CHECK(r4_bruteforce(4) == 24);
    CHECK(r4_bruteforce(12) == 96);
    for (u64 n = 0; n <= 200; ++n)
        CHECK(r4_bruteforce((unsigned long)n) == (unsigned long)oracle::r4_dumb(n));
}

TEST_CASE("r4 jacobi examples") {
    CHECK(r4_jacobi(1) == 8);
    CHECK(r4_jacobi(4) == 24);
    CHECK(r4_jacobi(70) == 1152); // sigma_*(70) = 144
    CHECK(sigma_star(70) == 144);
    for (u64 n = 1; n <= 400; ++n)
        CHECK(sigma_star((unsigned long)n) == (unsigned long)oracle::sigma_star_dumb(n));
}

TEST_CASE("jacobi equals brute force") {
    for (u64 n = 1; n <= 2000; ++n)
        CHECK(r4_jacobi((unsigned long)n) == r4_bruteforce((unsigned long)n));
}

TEST_CASE("legendre criterion matches brute positivity") {
    for (u64 n = 0; n <= 3000; ++n)
        CHECK(legendre_is_sum3((unsigned long)n) ==
              (r3_bruteforce((unsigned long)n) > 0));
}

TEST_CASE("r3(4n) = r3(n)") {
    for (u64 n = 0; n <= 5000; n += 13)
        CHECK(r3_bruteforce((unsigned long)(4 * n)) ==
              r3_bruteforce((unsigned long)n));
}

TEST_CASE("c_am examples and oracle") {
    CHECK(c_am(0, 1) == 1);
    CHECK(c_am(1, 2) == 4);
    CHECK(c_am(7, 40) == 0); // squares mod 8 never sum to 7
    for (u64 m = 1; m <= 30; ++m)
        for (u64 a = 0; a < m; ++a)
            CHECK(c_am(a, m) == oracle::c_am_dumb(a, m));
    CHECK_THROWS_AS((void)c_am(1, 20000), too_large_error);
}

TEST_CASE("local three-square solvability agrees with c_am on prime powers") {
    for (u64 p : {2, 3, 5, 7, 11, 13}) {
        for (unsigned e = 1;; ++e) {
            u64 pe = 1;
            for (unsigned i = 0; i < e; ++i) pe *= p;
            if (pe > 2048) break;
            auto all = c_am_all(pe);
            for (u64 a = 0; a < pe; ++a)
                CHECK(local_three_square_solvable(a, p, e) == (all[a] > 0));
        }
    }
}

TEST_CASE("bucket tables") {
    SUBCASE("N=4, m=2 matches the brute tuple list") {
        BucketTable t = r4_buckets(4, 2);
        CHECK(t.total == 24);
        auto dumb = oracle::buckets_dumb(4, 2);
        CHECK(t.entries.size() == dumb.size());
        for (const auto& [key, count] : dumb) {
            REQUIRE(t.entries.count(key) == 1);
            CHECK(t.entries.at(key) == count);
        }
        CHECK(t.entries.at({1, 1, 1, 1}) == 16);
        CHECK(t.entries.at({2, 2, 2, 2}) == 8);
    }
    SUBCASE("m=1 collapses to one bucket") {
        BucketTable t = r4_buckets(1, 1);
        CHECK(t.total == 8);
        REQUIRE(t.entries.size() == 1);
        CHECK(t.entries.begin()->first == std::array<u64, 4>{1, 1, 1, 1});
        CHECK(t.entries.begin()->second == 8);
    }
    SUBCASE("N=70, m=3: total and pigeonhole") {
        BucketTable t = r4_buckets(70, 3);
        CHECK(t.total == 1152);
        u64 maxc = 0;
        for (const auto& [k, c] : t.entries) maxc = std::max(maxc, c);
        CHECK(maxc >= 15); // ceil(1152 / 3^4)
    }
    SUBCASE("caps") {
        CHECK_THROWS_AS((void)r4_buckets(mpz_class("100000000"), 2), too_large_error);
        CHECK_THROWS_AS((void)r4_buckets(100, 25), too_large_error);
    }
}

TEST_CASE("bucket invariants across N and m") {
    for (u64 N = 1; N <= 300; N += 7) {
        for (u64 m = 1; m <= 8; ++m) {
            BucketTable t = r4_buckets((unsigned long)N, m);
            CHECK(t.total == r4_jacobi((unsigned long)N));
            mpz_class sum = 0;
            u64 target = N % m;
            for (const auto& [key, count] : t.entries) {
                CHECK(count >= 1);
                sum += count;
                u64 s = 0;
                for (u64 c : key) {
                    CHECK(c >= 1);
                    CHECK(c <= m);
                    s += c * c;
                }
                CHECK(s % m == target);
            }
            CHECK(sum == t.total);
        }
    }
}

TEST_CASE("buckets identical across thread counts") {
    BucketTable a = r4_buckets(1234, 6, kBucketCap, kBucketModCap, 1);
    BucketTable b = r4_buckets(1234, 6, kBucketCap, kBucketModCap, 4);
    CHECK(a.total == b.total);
    CHECK(a.entries == b.entries);
}

TEST_CASE("sum_r3_upto") {
    CHECK(sum_r3_upto(0) == 1);
    // matches the per-n brute sum
    mpz_class acc = 0;
    for (u64 n = 0; n <= 2000; ++n) {
        acc += r3_bruteforce((unsigned long)n);
        if (n % 500 == 0 || n == 2000) CHECK(sum_r3_upto(n) == acc);
    }
    // x = 100 lands within 8% of (4pi/3) * 1000
    double sphere = 4.0 * 3.14159265358979 / 3.0 * 1000.0;
    double got = mpz_get_d(sum_r3_upto(100).get_mpz_t());
    CHECK(std::abs(got - sphere) / sphere < 0.08);
}

TEST_CASE("sum_r3_upto restricted to classes") {
    for (u64 m : {3, 4, 5}) {
        for (u64 a = 0; a < m; ++a) {
            mpz_class acc = 0;
            for (u64 n = a % m; n <= 1500; n += m)
                acc += r3_bruteforce((unsigned long)n);
            CHECK(sum_r3_upto(1500, std::pair<u64, u64>{a, m}) == acc);
        }
    }
    // threads do not change the value
    CHECK(sum_r3_upto(40000, std::pair<u64, u64>{1, 4}, kSumCap, 1) ==
          sum_r3_upto(40000, std::pair<u64, u64>{1, 4}, kSumCap, 4));
}

TEST_CASE("r3_table matches brute values") {
    auto t = r3_table(3000);
    for (u64 n = 0; n <= 3000; n += 11)
        CHECK(t[n] == mpz_get_ui(r3_bruteforce((unsigned long)n).get_mpz_t()));
    auto t1 = r3_table(3000, kScanCap, 1);
    CHECK(t == t1);
}

TEST_CASE("scan_r3 records") {
    std::vector<u64> ns;
    auto records = scan_r3(1, 4, 2000, [&](u64 n, u64, double, bool) {
        ns.push_back(n);
    });
    // rows strictly increasing through the class
    REQUIRE(StepAllGood(ns));
    REQUIRE(!records.empty());
    CHECK(records.front().n == 1);
    CHECK(records.front().r3 == 6);
    // record ratios strictly increase (exact comparison in the library)
    for (size_t i = 1; i < records.size(); ++i) {
        const auto& p = records[i - 1];
        const auto& q = records[i];
        CHECK((unsigned __int128)q.r3 * q.r3 * p.n >
              (unsigned __int128)p.r3 * p.r3 * q.n);
    }
}
