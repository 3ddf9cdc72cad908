#include "tsq/congsolve.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "tsq/errors.hpp"

namespace tsq {

namespace {

u64 pow_u64(u64 p, unsigned e) {
    u64 r = 1;
    while (e--) r *= p;
    return r;
}

u64 checked_pow(u64 p, unsigned e, u64 cap, const char* cap_name) {
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > cap / p)
            throw too_large_error("p^e with p=" + std::to_string(p) +
                                      ", e=" + std::to_string(e),
                                  cap_name);
        r *= p;
    }
    if (r > cap)
        throw too_large_error("p^e with p=" + std::to_string(p) +
                                  ", e=" + std::to_string(e),
                              cap_name);
    return r;
}

u64 reduce_mpz(const mpz_class& a, u64 m) {
    mpz_class r = a % (unsigned long)m;
    if (r < 0) r += (unsigned long)m;
    return mpz_get_ui(r.get_mpz_t());
}

u64 dot_mod(const std::array<u64, 4>& x, const std::array<u64, 4>& y, u64 m) {
    u64 s = 0;
    for (int i = 0; i < 4; ++i) s = addmod(s, mulmod(x[i] % m, y[i] % m, m), m);
    return s;
}

u64 norm_mod(const std::array<u64, 4>& v, u64 m) { return dot_mod(v, v, m); }

CongruenceSolution make_solution(const std::array<u64, 4>& y_res, u64 m) {
    CongruenceSolution s;
    s.modulus = m;
    s.y = ResidueVec4::from_residues(y_res, m);
    if (m == 1) {
        s.Q = 1; // convention for the degenerate modulus
    } else {
        mpz_class q = 0;
        for (u64 r : s.y.residues()) q += mpz_class((unsigned long)r) * (unsigned long)r;
        s.Q = q;
    }
    return s;
}

} // namespace

bool verify_solution(const ResidueVec4& x, const ResidueVec4& y, u64 m) {
    if (x.modulus != m || y.modulus != m)
        throw precondition_error("ModulusMismatch",
                                 "x, y and m must share one modulus");
    if (m == 1) return true;
    return norm_mod(y.coords, m) == 1 % m && dot_mod(x.coords, y.coords, m) == 0;
}

std::pair<u64, u64> solve_binary_form(u64 a1, u64 b1, u64 d, u64 p, unsigned e,
                                      u64 pp_cap) {
    if (p == 2 || !is_prime_u64(p))
        throw precondition_error("PreconditionViolation", "p must be an odd prime");
    if (e < 1) throw precondition_error("PreconditionViolation", "e must be >= 1");
    u64 pe = checked_pow(p, e, pp_cap, "prime-power-cap");
    a1 %= pe;
    b1 %= pe;
    d %= pe;
    if (a1 % p == 0 || b1 % p == 0 || d % p == 0)
        throw precondition_error("PreconditionViolation",
                                 "a1, b1, d must be coprime to p");

    // base solution modulo p: ascending u, smallest v root
    u64 inv_b = *invmod(b1 % p, p);
    u64 u0 = 0, v0 = 0;
    bool found = false;
    for (u64 u = 0; u < p; ++u) {
        u64 w = mulmod(submod(d, mulmod(mulmod(u, u, p), a1, p), p), inv_b, p);
        if (w == 0) {
            u0 = u;
            v0 = 0;
            found = true;
            break;
        }
        if (legendre_symbol(w, p) == 1) {
            u0 = u;
            v0 = sqrt_mod_p(w, p);
            found = true;
            break;
        }
    }
    if (!found)
        throw internal_error("binary form has no solution mod p (contradicts "
                             "Cauchy-Davenport)");

    // lift the coordinate with unit derivative one power at a time
    bool lift_u = (u0 % p) != 0;
    u64 mod = p;
    for (unsigned k = 1; k < e; ++k) {
        u64 next = mod * p;
        u64 f = submod(addmod(mulmod(mulmod(u0, u0, next), a1, next),
                              mulmod(mulmod(v0, v0, next), b1, next), next),
                       d, next);
        // f = 0 (mod `mod`); correct t in y += t*mod using f/mod * inv(2*c*y)
        u64 fm = (f / mod) % p;
        if (lift_u) {
            u64 der = mulmod(2 * a1 % p, u0 % p, p);
            u64 t = mulmod(submod(0, fm, p), *invmod(der, p), p);
            u0 += t * mod;
        } else {
            u64 der = mulmod(2 * b1 % p, v0 % p, p);
            u64 t = mulmod(submod(0, fm, p), *invmod(der, p), p);
            v0 += t * mod;
        }
        mod = next;
    }
    u0 %= pe;
    v0 %= pe;
    u64 check = addmod(mulmod(mulmod(u0, u0, pe), a1, pe),
                       mulmod(mulmod(v0, v0, pe), b1, pe), pe);
    if (check != d) throw internal_error("binary form lift failed verification");
    return {u0, v0};
}

namespace {

// ---- p = 2 ----------------------------------------------------------------

struct SortedX {
    std::array<u64, 4> x;   // representatives, sorted by 2-adic valuation
    std::array<int, 4> perm; // x[i] = original[perm[i]]
    std::array<unsigned, 4> r;
};

SortedX sort_by_v2(const ResidueVec4& xin) {
    SortedX s;
    std::array<int, 4> idx{0, 1, 2, 3};
    std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) {
        return v2_u64(xin.coords[i]) < v2_u64(xin.coords[j]);
    });
    for (int i = 0; i < 4; ++i) {
        s.perm[i] = idx[i];
        s.x[i] = xin.coords[idx[i]];
        s.r[i] = v2_u64(s.x[i]);
    }
    return s;
}

// exhaustive lexicographic search over residues [0, 2^e)^4, optionally
// constrained to the structured shape the induction needs
std::optional<std::array<u64, 4>>
search_mod_2e(const std::array<u64, 4>& x, unsigned e, bool structured,
              unsigned r4) {
    u64 pe = (u64)1 << e;
    for (u64 y1 = 0; y1 < pe; ++y1) {
        if (structured && (y1 == 0 || v2_u64(y1) != r4)) continue;
        for (u64 y2 = 0; y2 < pe; ++y2) {
            if (structured && y2 != 0) continue;
            for (u64 y3 = 0; y3 < pe; ++y3) {
                for (u64 y4 = 0; y4 < pe; ++y4) {
                    if (structured && (y4 & 1) == 0) continue;
                    std::array<u64, 4> y{y1, y2, y3, y4};
                    if (norm_mod(y, pe) != 1) continue;
                    if (dot_mod(x, y, pe) != 0) continue;
                    return y;
                }
            }
        }
    }
    return std::nullopt;
}

} // namespace

CongruenceSolution solve_mod_2e(const ResidueVec4& x, const mpz_class& a,
                                unsigned e) {
    if (e < 1 || e >= 31)
        throw too_large_error("2^e with e=" + std::to_string(e), "prime-power-cap");
    u64 pe = (u64)1 << e;
    if (x.modulus != pe)
        throw precondition_error("ModulusMismatch", "x must be given mod 2^e");
    for (u64 c : x.coords)
        if (c < 1 || c > pe)
            throw precondition_error("PreconditionViolation",
                                     "representatives must lie in [1, 2^e]");
    u64 am = reduce_mpz(a, pe);
    if (norm_mod(x.coords, pe) != am)
        throw precondition_error("PreconditionViolation",
                                 "sum of x_j^2 != a (mod 2^e)");
    if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 0)
        throw precondition_error("PreconditionViolation", "4 divides a");
    bool some_odd = false;
    for (u64 c : x.coords) some_odd |= (c & 1);
    if (!some_odd)
        throw precondition_error("PreconditionViolation", "all x_j are even");
    if (mpz_even_p(a.get_mpz_t()) && e < 2)
        throw precondition_error("PreconditionViolation",
                                 "2 | a requires e >= 2");
    if (e >= 3 && mpz_fdiv_ui(a.get_mpz_t(), 8) == 7)
        throw precondition_error("PreconditionViolation",
                                 "a = 7 (mod 8) is not a sum of three squares "
                                 "mod 2^e for e >= 3");

    if (e <= 3) {
        auto y = search_mod_2e(x.coords, e, false, 0);
        if (!y) throw internal_error("no solution found mod 2^" + std::to_string(e));
        auto sol = make_solution(*y, pe);
        if (!verify_solution(x, sol.y, pe))
            throw internal_error("mod 2^e search verification failed");
        return sol;
    }

    SortedX s = sort_by_v2(x);
    unsigned r4 = s.r[3];
    if (s.r[0] != 0 || r4 < 1)
        throw internal_error("valuation pattern violates the p=2 setup");

    std::array<u64, 4> y;
    unsigned e0;
    if (e <= r4 + 1) {
        // base construction is already valid at the target power
        e0 = e;
        y = {r4 >= e ? 0 : pow_u64(2, r4), 0, 0, 1};
    } else {
        e0 = std::max(3u, r4 + 1);
        if (r4 + 1 >= 3) {
            y = {pow_u64(2, r4), 0, 0, 1};
        } else {
            // r4 = 1: the base construction stops short of 2^3; fetch a
            // structured solution mod 8 by bounded search
            auto found = search_mod_2e({s.x[0] % 8 == 0 ? 8 : s.x[0] % 8,
                                        s.x[1] % 8 == 0 ? 8 : s.x[1] % 8,
                                        s.x[2] % 8 == 0 ? 8 : s.x[2] % 8,
                                        s.x[3] % 8 == 0 ? 8 : s.x[3] % 8},
                                       3, true, r4);
            if (!found)
                throw internal_error("no structured base mod 8 (excluded by "
                                     "the a != 7 mod 8 precondition)");
            y = *found;
        }
    }

    // induction e' -> e'+1: u in {1, 2^e'+1}, v in {0, 2^e'}
    for (unsigned ecur = e0; ecur < e; ++ecur) {
        u64 mod = (u64)1 << ecur;
        u64 next = mod << 1;
        u64 u = norm_mod(y, next);
        u64 v = dot_mod(s.x, y, next);
        if (u != 1 && u != mod + 1)
            throw internal_error("lift invariant broken: norm residue");
        if (v != 0 && v != mod)
            throw internal_error("lift invariant broken: dot residue");
        bool fix_u = (u != 1);
        bool fix_v = (v != 0);
        if (!fix_u && fix_v) {
            y[0] += mod;
        } else if (fix_u) {
            bool bump_y4_only = (!fix_v && r4 >= 2) || (fix_v && r4 == 1);
            if (bump_y4_only) {
                y[3] += mod >> 1;
            } else {
                y[0] += mod;
                y[3] += mod >> 1;
            }
        }
        for (auto& c : y) c %= next;
        if (norm_mod(y, next) != 1 || dot_mod(s.x, y, next) != 0)
            throw internal_error("lift failed at 2^" + std::to_string(ecur + 1));
    }

    // undo the valuation sort
    std::array<u64, 4> yout;
    for (int i = 0; i < 4; ++i) yout[s.perm[i]] = y[i] % pe;
    auto sol = make_solution(yout, pe);
    if (!verify_solution(x, sol.y, pe))
        throw internal_error("mod 2^e lift verification failed");
    return sol;
}

CongruenceSolution solve_mod_pe_odd(const ResidueVec4& x, const mpz_class& a,
                                    u64 p, unsigned e, u64 pp_cap) {
    if (p == 2 || !is_prime_u64(p))
        throw precondition_error("PreconditionViolation", "p must be an odd prime");
    if (e < 1)
        throw precondition_error("PreconditionViolation", "e must be >= 1");
    u64 pe = checked_pow(p, e, pp_cap, "prime-power-cap");
    if (x.modulus != pe)
        throw precondition_error("ModulusMismatch", "x must be given mod p^e");
    u64 am = reduce_mpz(a, pe);
    if (norm_mod(x.coords, pe) != am)
        throw precondition_error("PreconditionViolation",
                                 "sum of x_j^2 != a (mod p^e)");
    bool some_unit = false;
    for (u64 c : x.coords) some_unit |= (c % p != 0);
    if (!some_unit)
        throw precondition_error("PreconditionViolation",
                                 "all x_j divisible by p");

    static constexpr int kPerms[24][4] = {
        {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}, {0, 2, 3, 1}, {0, 3, 1, 2},
        {0, 3, 2, 1}, {1, 0, 2, 3}, {1, 0, 3, 2}, {1, 2, 0, 3}, {1, 2, 3, 0},
        {1, 3, 0, 2}, {1, 3, 2, 0}, {2, 0, 1, 3}, {2, 0, 3, 1}, {2, 1, 0, 3},
        {2, 1, 3, 0}, {2, 3, 0, 1}, {2, 3, 1, 0}, {3, 0, 1, 2}, {3, 0, 2, 1},
        {3, 1, 0, 2}, {3, 1, 2, 0}, {3, 2, 0, 1}, {3, 2, 1, 0}};

    for (const auto& sigma : kPerms) {
        u64 x1 = x.coords[sigma[0]] % pe, x2 = x.coords[sigma[1]] % pe,
            x3 = x.coords[sigma[2]] % pe, x4 = x.coords[sigma[3]] % pe;
        if (x1 % p == 0) continue;
        u64 s13 = addmod(mulmod(x1, x1, pe), mulmod(x3, x3, pe), pe);
        if (s13 % p == 0) continue;
        u64 inv13 = *invmod(s13, pe);
        u64 inv_x1 = *invmod(x1, pe);
        u64 x1sq = mulmod(x1, x1, pe);

        std::array<u64, 4> y{};
        bool solved = false;
        u64 t2 = submod(am, mulmod(x2, x2, pe), pe); // a - x2^2
        u64 t4 = submod(am, mulmod(x4, x4, pe), pe); // a - x4^2
        if (t2 % p != 0) {
            // y2 = 0; complete the square in the (y3, y4) form
            u64 b1 = mulmod(mulmod(x1sq, t2, pe), inv13, pe);
            auto [U, V] = solve_binary_form(s13, b1, x1sq, p, e, pp_cap);
            u64 c = mulmod(mulmod(x3, x4, pe), inv13, pe);
            u64 y4 = V;
            u64 y3 = submod(U, mulmod(c, V, pe), pe);
            u64 y1 = mulmod(submod(0, addmod(mulmod(x3, y3, pe),
                                             mulmod(x4, y4, pe), pe), pe),
                            inv_x1, pe);
            y = {y1, 0, y3, y4};
            solved = true;
        } else if (t4 % p != 0) {
            // y4 = 0; same completion with x2 in place of x4
            u64 b1 = mulmod(mulmod(x1sq, t4, pe), inv13, pe);
            auto [U, V] = solve_binary_form(s13, b1, x1sq, p, e, pp_cap);
            u64 c = mulmod(mulmod(x2, x3, pe), inv13, pe);
            u64 y2 = V;
            u64 y3 = submod(U, mulmod(c, V, pe), pe);
            u64 y1 = mulmod(submod(0, addmod(mulmod(x2, y2, pe),
                                             mulmod(x3, y3, pe), pe), pe),
                            inv_x1, pe);
            y = {y1, y2, y3, 0};
            solved = true;
        } else {
            // x2^2 = x4^2 = a (mod p), so p divides neither x2, x4 nor a;
            // use the (r, s) parametrization
            if (x4 % p == 0) continue;
            u64 s24 = addmod(mulmod(x2, x2, pe), mulmod(x4, x4, pe), pe);
            if (s24 % p == 0) continue;
            u64 x4sq = mulmod(x4, x4, pe);
            u64 A = mulmod(x4sq, s13, pe);
            u64 B = mulmod(x1sq, s24, pe);
            u64 D = mulmod(x1sq, x4sq, pe);
            auto [R, S] = solve_binary_form(A, B, D, p, e, pp_cap);
            u64 inv_x4 = *invmod(x4, pe);
            u64 y1 = mulmod(submod(0, mulmod(R, x3, pe), pe), inv_x1, pe);
            u64 y4 = mulmod(submod(0, mulmod(S, x2, pe), pe), inv_x4, pe);
            y = {y1, S, R, y4};
            solved = true;
        }
        if (!solved) continue;

        // map back through the permutation and verify
        std::array<u64, 4> yout{};
        for (int i = 0; i < 4; ++i) yout[sigma[i]] = y[i];
        auto sol = make_solution(yout, pe);
        if (verify_solution(x, sol.y, pe)) return sol;
        throw internal_error("odd-p branch produced an invalid solution");
    }
    throw internal_error("no permutation admits a unit x1^2+x3^2 (contradicts "
                         "the pairwise-sum argument)");
}

CongruenceSolution solve_mod_m(const ResidueVec4& x, const mpz_class& a, u64 m,
                               u64 factor_cap, u64 pp_cap) {
    if (m < 1) throw precondition_error("BadModulus", "m must be >= 1");
    if (x.modulus != m)
        throw precondition_error("ModulusMismatch", "x must be given mod m");
    if (m == 1) return make_solution({0, 0, 0, 0}, 1);

    u64 am = reduce_mpz(a, m);
    if (norm_mod(x.coords, m) != am)
        throw precondition_error("PreconditionViolation",
                                 "sum of x_j^2 != a (mod m)");
    if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 0)
        throw precondition_error("PreconditionViolation", "4 divides a");

    Factorization f = factorize(mpz_class((unsigned long)m), factor_cap);
    for (const auto& [p, e] : f.factors) {
        bool unit = false;
        for (u64 c : x.coords) unit |= (c % p != 0);
        if (!unit)
            throw precondition_error("PreconditionViolation",
                                     "all x_j divisible by prime " +
                                         std::to_string(p) + " of m");
        if (am % p == 0 && e < 2)
            throw precondition_error("PreconditionViolation",
                                     "p | gcd(a, m) needs nu_p(m) >= 2 (p=" +
                                         std::to_string(p) + ")");
    }

    std::array<std::vector<std::pair<mpz_class, mpz_class>>, 4> congruences;
    for (const auto& [p, e] : f.factors) {
        u64 pe = pow_u64(p, e);
        ResidueVec4 xl = ResidueVec4::from_residues(
            {x.coords[0] % pe, x.coords[1] % pe, x.coords[2] % pe,
             x.coords[3] % pe},
            pe);
        CongruenceSolution local =
            p == 2 ? solve_mod_2e(xl, a, e) : solve_mod_pe_odd(xl, a, p, e, pp_cap);
        auto res = local.y.residues();
        for (int i = 0; i < 4; ++i)
            congruences[i].emplace_back(mpz_class((unsigned long)res[i]),
                                        mpz_class((unsigned long)pe));
    }

    std::array<u64, 4> yres{};
    for (int i = 0; i < 4; ++i) {
        auto [R, M] = crt_combine(congruences[i]);
        assert(M == mpz_class((unsigned long)m));
        yres[i] = mpz_get_ui(R.get_mpz_t());
    }
    auto sol = make_solution(yres, m);
    if (!verify_solution(x, sol.y, m))
        throw internal_error("CRT assembly failed verification");
    return sol;
}

} // namespace tsq
