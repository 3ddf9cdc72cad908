#include "tsq/classnum.hpp"

#include "tsq/errors.hpp"
#include "tsq/repcount.hpp"

namespace tsq {

namespace {

u64 check_forms_arg(const mpz_class& N, u64 forms_cap) {
    if (N < 1) throw precondition_error("BadArgument", "N must be >= 1");
    if (N > mpz_class(forms_cap) || !N.fits_ulong_p())
        throw too_large_error("forms of N=" + N.get_str(), "forms-cap");
    return mpz_get_ui(N.get_mpz_t());
}

} // namespace

std::vector<ReducedForm> reduced_forms(const mpz_class& N, u64 forms_cap) {
    u64 n = check_forms_arg(N, forms_cap);
    u64 r = n % 4;
    if (r == 1 || r == 2)
        throw precondition_error("NotADiscriminant",
                                 "-" + N.get_str() + " is not 0 or 1 mod 4");
    std::vector<ReducedForm> forms;
    // B runs over the correct parity with 3B^2 <= N; 4AC = B^2 + N
    for (u64 B = n % 2; 3 * B * B <= n; B += 2) {
        u64 m4 = (B * B + n) / 4;
        for (u64 A = std::max<u64>(B, 1); A * A <= m4; ++A) {
            if (m4 % A) continue;
            u64 C = m4 / A;
            forms.push_back({(i64)A, (i64)B, (i64)C});
            if (B > 0 && B < A && A < C) forms.push_back({(i64)A, -(i64)B, (i64)C});
        }
    }
    return forms;
}

HurwitzValue hurwitz_twelve(const mpz_class& N, u64 forms_cap) {
    u64 n = check_forms_arg(N, forms_cap);
    u64 r = n % 4;
    HurwitzValue h;
    if (r == 1 || r == 2) return h;
    // same enumeration as reduced_forms, accumulating weights in twelfths
    mpz_class total = 0;
    for (u64 B = n % 2; 3 * B * B <= n; B += 2) {
        u64 m4 = (B * B + n) / 4;
        for (u64 A = std::max<u64>(B, 1); A * A <= m4; ++A) {
            if (m4 % A) continue;
            u64 C = m4 / A;
            if (A == B && B == C)
                total += 4; // (A,A,A): weight 1/3
            else if (B == 0 && A == C)
                total += 6; // (A,0,A): weight 1/2
            else
                total += (B > 0 && B < A && A < C) ? 24 : 12; // counts (A,±B,C)
        }
    }
    h.twelve_h = total;
    return h;
}

GaussReport gauss_relation_check(const mpz_class& n, u64 r3_cap, u64 forms_cap,
                                 unsigned threads) {
    if (n < 1) throw precondition_error("BadArgument", "n must be >= 1");
    GaussReport rep;
    rep.n = n;
    rep.lhs = r3_bruteforce(n, r3_cap, threads);
    u64 mod8 = mpz_fdiv_ui(n.get_mpz_t(), 8);
    if (mod8 % 4 == 1 || mod8 % 4 == 2) {
        rep.case_id = 1;
        rep.relation = "r3(n) = 12*H(4n)";
        rep.rhs = hurwitz_twelve(4 * n, forms_cap).twelve_h;
    } else if (mod8 == 3) {
        rep.case_id = 2;
        rep.relation = "r3(n) = 24*H(n)";
        rep.rhs = 2 * hurwitz_twelve(n, forms_cap).twelve_h;
    } else if (mod8 == 7) {
        rep.case_id = 3;
        rep.relation = "r3(n) = 0";
        rep.rhs = 0;
    } else {
        rep.case_id = 4;
        rep.relation = "r3(n) = r3(n/4)";
        rep.rhs = r3_bruteforce(n / 4, r3_cap, threads);
    }
    rep.pass = (rep.lhs == rep.rhs);
    return rep;
}

} // namespace tsq
