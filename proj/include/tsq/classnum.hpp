#ifndef TSQ_CLASSNUM_HPP
#define TSQ_CLASSNUM_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "tsq/repcount.hpp"

namespace tsq {

inline constexpr u64 kFormsCap = 1'000'000'000ull; // 10^9

// Reduced positive-definite binary quadratic form Ax^2 + Bxy + Cy^2 of
// discriminant B^2 - 4AC = -N, with -A < B <= A <= C and B >= 0 when A = C.
struct ReducedForm {
    i64 a = 0;
    i64 b = 0;
    i64 c = 0;
    bool operator==(const ReducedForm&) const = default;
};

// 12*H(N), H the Hurwitz class number. Exact: H(N) = twelve_h / 12.
struct HurwitzValue {
    mpz_class twelve_h = 0;
};

// Complete list of reduced forms (primitive and imprimitive) of discriminant
// -N. Requires N = 0 or 3 (mod 4); throws NotADiscriminant otherwise.
std::vector<ReducedForm> reduced_forms(const mpz_class& N, u64 forms_cap = kFormsCap);

// Weighted form count: weight 1, except 1/3 for (A,A,A) and 1/2 for (A,0,A).
// Returns 0 for N = 1, 2 (mod 4).
HurwitzValue hurwitz_twelve(const mpz_class& N, u64 forms_cap = kFormsCap);

struct GaussReport {
    mpz_class n;
    int case_id = 0;       // 1: n=1,2 (4); 2: n=3 (8); 3: n=7 (8); 4: n=0 (4)
    std::string relation;  // human-readable statement of the case
    mpz_class lhs;         // r3(n)
    mpz_class rhs;
    bool pass = false;
};

// Verifies the case of the r3 <-> class number relation that applies to n
// (n = 1,2 mod 4 checked against 12*H(4n)). A mismatch is reported, not thrown.
GaussReport gauss_relation_check(const mpz_class& n, u64 r3_cap = kR3Cap,
                                 u64 forms_cap = kFormsCap, unsigned threads = 0);

} // namespace tsq

#endif
