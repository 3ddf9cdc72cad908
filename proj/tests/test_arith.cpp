#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tsq/arith.hpp"
#include "tsq/errors.hpp"

using namespace tsq;

TEST_CASE("mod_inverse") {
    CHECK(mod_inverse(3, 10) == 7);
    CHECK(mod_inverse(70, 3) == 1);
    CHECK_THROWS_AS((void)mod_inverse(2, 4), precondition_error);
    // result always lands in [1, m)
    for (u64 m = 2; m <= 50; ++m)
        for (u64 x = 1; x < m; ++x) {
            if (std::gcd(x, m) != 1) continue;
            mpz_class inv = mod_inverse((unsigned long)x, (unsigned long)m);
            CHECK(inv >= 1);
            CHECK(inv < (unsigned long)m);
            CHECK((inv * (unsigned long)x) % (unsigned long)m == 1);
        }
}

TEST_CASE("crt_combine examples") {
    auto [r1, m1] = crt_combine({{2, 3}, {3, 5}});
    CHECK(r1 == 8);
    CHECK(m1 == 15);
    auto [r2, m2] = crt_combine({{0, 1}});
    CHECK(r2 == 0);
    CHECK(m2 == 1);
    auto [r3, m3] = crt_combine({{1, 4}, {2, 9}, {3, 5}});
    // frozen from the brute scan below: 137 is the unique hit in [0, 180)
    CHECK(r3 == 137);
    CHECK(m3 == 180);
    CHECK_THROWS_AS((void)crt_combine({{1, 4}, {1, 6}}), precondition_error);
}

TEST_CASE("crt_combine against brute scan") {
    // all residue systems over moduli (4, 9, 25) and (3, 5, 7)
    for (std::array<u64, 3> mods : {std::array<u64, 3>{4, 9, 25},
                                    std::array<u64, 3>{3, 5, 7}}) {
        u64 M = mods[0] * mods[1] * mods[2];
        for (u64 seed = 0; seed < M; seed += 97) {
            std::vector<std::pair<mpz_class, mpz_class>> sys;
            for (u64 m : mods)
                sys.push_back({(unsigned long)(seed % m), (unsigned long)m});
            auto [r, mm] = crt_combine(sys);
            CHECK(mm == (unsigned long)M);
            u64 hits = 0, hit = 0;
            for (u64 x = 0; x < M; ++x) {
                bool ok = true;
                for (u64 m : mods) ok &= (x % m == seed % m);
                if (ok) {
                    ++hits;
                    hit = x;
                }
            }
            CHECK(hits == 1);
            CHECK(r == (unsigned long)hit);
        }
    }
}

TEST_CASE("nu_p") {
    CHECK(nu_p(40, 2) == 3);
    CHECK(nu_p(28, 2) == 2); // 28 = 2^2 * 7
    CHECK(nu_p(7, 2) == 0);
    CHECK(nu_p(243, 3) == 5);
}

TEST_CASE("squarefree_decompose") {
    auto [a1, b1] = squarefree_decompose(48);
    CHECK(a1 == 3);
    CHECK(b1 == 4);
    auto [a2, b2] = squarefree_decompose(17);
    CHECK(a2 == 17);
    CHECK(b2 == 1);
    auto [a3, b3] = squarefree_decompose(200);
    CHECK(a3 == 2);
    CHECK(b3 == 10);

    // d1*d2^2 = n and d1 square-free, via factorization
    for (u64 n = 1; n <= 100000; n += 7) {
        auto [d1, d2] = squarefree_decompose((unsigned long)n);
        CHECK(d1 * d2 * d2 == (unsigned long)n);
        for (const auto& [p, e] : factorize(d1).factors) CHECK(e == 1);
    }
}

TEST_CASE("factorize") {
    Factorization f = factorize(40);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == std::pair<u64, unsigned>{2, 3});
    CHECK(f.factors[1] == std::pair<u64, unsigned>{5, 1});
    CHECK(factorize(1).factors.empty());
    Factorization g = factorize(30030);
    std::vector<u64> ps;
    for (auto& [p, e] : g.factors) {
        ps.push_back(p);
        CHECK(e == 1);
    }
    CHECK(ps == std::vector<u64>{2, 3, 5, 7, 11, 13});
    CHECK_THROWS_AS((void)factorize(mpz_class("10000000000000")), too_large_error);

    for (u64 n = 1; n <= 1000000; n += 9173) {
        Factorization h = factorize((unsigned long)n);
        CHECK(h.valid());
        CHECK(h.reconstruct() == (unsigned long)n);
    }
}

TEST_CASE("primes_upto") {
    CHECK(primes_upto(13) == std::vector<u64>{2, 3, 5, 7, 11, 13});
    CHECK(primes_upto(1).empty());
    auto p100 = primes_upto(100);
    CHECK(p100.size() == 25);
    CHECK(p100.back() == 97);
    CHECK_THROWS_AS((void)primes_upto(200'000'000), too_large_error);
}

TEST_CASE("isqrt") {
    CHECK(isqrt(10) == 3);
    CHECK(isqrt(0) == 0);
    CHECK(isqrt(48000000) == 6928); // 6928^2 = 47997184
    // perfect squares near the 2^63 boundary (k around 2^31)
    for (u64 k = (1ull << 31) - 50; k <= (1ull << 31) + 50; ++k) {
        mpz_class kk = mpz_class((unsigned long)k) * (unsigned long)k;
        CHECK(isqrt(kk) == (unsigned long)k);
        CHECK(isqrt(kk - 1) == (unsigned long)(k - 1));
        CHECK(isqrt(kk + 1) == (unsigned long)k);
        CHECK(isqrt_u64(k * k) == k);
        CHECK(isqrt_u64(k * k - 1) == k - 1);
    }
}

TEST_CASE("sigma_star_from_factors") {
    CHECK(sigma_star_from_factors(factorize(1)) == 1);
    CHECK(sigma_star_from_factors(factorize(4)) == 3);
    CHECK(sigma_star_from_factors(factorize(70)) == 144);
}

TEST_CASE("u64 primality") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(1000000007ull));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(561)); // Carmichael
    std::vector<u64> small;
    for (u64 n = 0; n <= 1000; ++n)
        if (is_prime_u64(n)) small.push_back(n);
    CHECK(small.size() == 168);
}
