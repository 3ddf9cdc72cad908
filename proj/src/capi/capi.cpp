#include "tsq.h"

#include <cstring>
#include <sstream>
#include <string>

#include "tsq/errors.hpp"
#include "tsq/serialize.hpp"

using namespace tsq;

struct tsq_ctx {
    PipelineCaps caps;
    u64 r4_cap = kR4Cap;
    u64 bucket_mod_cap = kBucketModCap;
    u64 sum_cap = kSumCap;
    u64 scan_cap = kScanCap;
    u64 forms_cap = kFormsCap;
    std::string last_error;
    std::string last_condition;
};

namespace {

mpz_class parse_int(const char* s, const char* what) {
    if (!s) throw std::invalid_argument(std::string(what) + " is null");
    try {
        return mpz_class(s);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument(std::string(what) + ": '" + s +
                                    "' is not a decimal integer");
    }
}

u64 parse_u64(const char* s, const char* what) {
    mpz_class v = parse_int(s, what);
    if (v < 0 || !v.fits_ulong_p())
        throw std::invalid_argument(std::string(what) + " out of range: " +
                                    std::string(s));
    return mpz_get_ui(v.get_mpz_t());
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
tsq_status guard(tsq_ctx* ctx, char** out, Fn fn) {
    if (!ctx) return TSQ_EINVAL;
    ctx->last_error.clear();
    ctx->last_condition.clear();
    try {
        json j = fn();
        if (out) *out = dup_string(j.dump());
        return TSQ_OK;
    } catch (const precondition_error& e) {
        ctx->last_error = e.what();
        ctx->last_condition = e.condition();
        return TSQ_EPRECOND;
    } catch (const too_large_error& e) {
        ctx->last_error = e.what();
        return TSQ_ETOOLARGE;
    } catch (const internal_error& e) {
        ctx->last_error = e.what();
        return TSQ_EINTERNAL;
    } catch (const std::invalid_argument& e) {
        ctx->last_error = e.what();
        return TSQ_EINVAL;
    } catch (const std::exception& e) {
        ctx->last_error = e.what();
        return TSQ_EINTERNAL;
    }
}

WitnessOptions make_opts(const tsq_ctx* ctx, bool skip, bool exact) {
    WitnessOptions o;
    o.skip_reduction = skip;
    o.verify_exact = exact;
    o.caps = ctx->caps;
    return o;
}

} // namespace

extern "C" {

tsq_ctx* tsq_ctx_new(void) { return new tsq_ctx; }

void tsq_ctx_free(tsq_ctx* ctx) { delete ctx; }

const char* tsq_version(void) { return "1.0.0"; }

const char* tsq_last_error(const tsq_ctx* ctx) {
    return ctx ? ctx->last_error.c_str() : "null context";
}

const char* tsq_last_error_condition(const tsq_ctx* ctx) {
    return ctx ? ctx->last_condition.c_str() : "";
}

tsq_status tsq_ctx_set_threads(tsq_ctx* ctx, unsigned threads) {
    if (!ctx) return TSQ_EINVAL;
    ctx->caps.threads = threads;
    return TSQ_OK;
}

tsq_status tsq_ctx_set_cap(tsq_ctx* ctx, const char* name, const char* value) {
    return guard(ctx, nullptr, [&]() -> json {
        std::string n = name ? name : "";
        u64 v = parse_u64(value, "cap value");
        if (n == "factor") ctx->caps.factor_cap = v;
        else if (n == "sieve") ctx->caps.sieve_cap = v;
        else if (n == "r3") ctx->caps.r3_cap = v;
        else if (n == "r4") ctx->r4_cap = v;
        else if (n == "bucket") ctx->caps.bucket_cap = v;
        else if (n == "bucket-mod") ctx->bucket_mod_cap = v;
        else if (n == "modulus") ctx->caps.modulus_cap = v;
        else if (n == "cam") ctx->caps.cam_cap = v;
        else if (n == "sum") ctx->sum_cap = v;
        else if (n == "scan") ctx->scan_cap = v;
        else if (n == "forms") ctx->forms_cap = v;
        else if (n == "prime-power") ctx->caps.prime_power_cap = v;
        else throw std::invalid_argument("unknown cap: " + n);
        return json{};
    });
}

void tsq_string_free(char* s) { delete[] s; }

tsq_status tsq_r3(tsq_ctx* ctx, const char* n, char** out_json) {
    return guard(ctx, out_json, [&]() -> json {
        mpz_class v = parse_int(n, "n");
        return json{{"n", dec(v)},
                    {"count", dec(r3_bruteforce(v, ctx->caps.r3_cap,
                                                ctx->caps.threads))}};
    });
}

tsq_status tsq_r4(tsq_ctx* ctx, const char* n, const char* method,
                  char** out_json) {
    return guard(ctx, out_json, [&]() -> json {
        mpz_class v = parse_int(n, "n");
        std::string meth = method ? method : "jacobi";
        mpz_class count;
        if (meth == "jacobi")
            count = r4_jacobi(v, ctx->caps.factor_cap);
        else if (meth == "brute")
            count = r4_bruteforce(v, ctx->r4_cap);
        else
            throw std::invalid_argument("method must be jacobi or brute");
        return json{{"n", dec(v)}, {"method", meth}, {"count", dec(count)}};
    });
}

tsq_status tsq_sigma_star(tsq_ctx* ctx, const char* n, char** out_json) {
    return guard(ctx, out_json, [&]() -> json {
        mpz_class v = parse_int(n, "n");
        return json{{"n", dec(v)},
                    {"value", dec(sigma_star(v, ctx->caps.factor_cap))}};
    });
}

tsq_status tsq_legendre(tsq_ctx* ctx, const char* n, char** out_json) {
    return guard(ctx, out_json, [&]() -> json {
        mpz_class v = parse_int(n, "n");
        return json{{"n", dec(v)},
                    {"is_sum_of_three_squares", legendre_is_sum3(v)}};
    });
}

tsq_status tsq_cam(tsq_ctx* ctx, const char* a, const char* m, char** out_json) {
    return guard(ctx, out_json, [&]() -> json {
        u64 av = parse_u64(a, "a"), mv = parse_u64(m, "m");
        return json{{"a", std::to_string(av)},
                    {"m", std::to_string(mv)},
                    {"count", std::to_string(c_am(av, mv, ctx->caps.cam_cap))}};
    });
}

tsq_status tsq_hurwitz(tsq_ctx* ctx, const char* n, char** out_json) {
    return guard(ctx, out_json, [&]() -> json {
        mpz_class v = parse_int(n, "n");
        HurwitzValue h = hurwitz_twelve(v, ctx->forms_cap);
        mpq_class hq(h.twelve_h, 12);
        hq.canonicalize();
        return json{{"n", dec(v)}, {"twelve_h", dec(h.twelve_h)}, {"h", rat(hq)}};
    });
}

tsq_status tsq_forms(tsq_ctx* ctx, const char* n, char** out_json) {
    return guard(ctx, out_json, [&]() -> json {
        mpz_class v = parse_int(n, "n");
        json forms = json::array();
        for (const auto& f : reduced_forms(v, ctx->forms_cap))
            forms.push_back(to_json(f));
        return json{{"n", dec(v)},
                    {"count", std::to_string(forms.size())},
                    {"forms", forms}};
    });
}

tsq_status tsq_gauss_check(tsq_ctx* ctx, const char* n, char** out_json) {
    return guard(ctx, out_json, [&]() -> json {
        mpz_class v = parse_int(n, "n");
        return to_json(gauss_relation_check(v, ctx->caps.r3_cap, ctx->forms_cap,
                                            ctx->caps.threads));
    });
}

tsq_status tsq_reduce(tsq_ctx* ctx, const char* a, const char* m, char** out_json) {
    return guard(ctx, out_json, [&]() -> json {
        u64 av = parse_u64(a, "a"), mv = parse_u64(m, "m");
        return to_json(reduce_full(av, mv, ctx->caps.cam_cap,
                                   ctx->caps.modulus_cap, ctx->caps.factor_cap));
    });
}

tsq_status tsq_solve_y(tsq_ctx* ctx, const char* x1, const char* x2,
                       const char* x3, const char* x4, const char* a,
                       const char* m, char** out_json) {
    return guard(ctx, out_json, [&]() -> json {
        u64 mv = parse_u64(m, "m");
        if (mv < 1) throw precondition_error("BadModulus", "m must be >= 1");
        std::array<u64, 4> xs{parse_u64(x1, "x1"), parse_u64(x2, "x2"),
                              parse_u64(x3, "x3"), parse_u64(x4, "x4")};
        ResidueVec4 x = ResidueVec4::from_residues(xs, mv);
        mpz_class av = parse_int(a, "a");
        return to_json(solve_mod_m(x, av, mv, ctx->caps.factor_cap,
                                   ctx->caps.prime_power_cap));
    });
}

tsq_status tsq_binary_form(tsq_ctx* ctx, const char* a1, const char* b1,
                           const char* d, const char* p, const char* e,
                           char** out_json) {
    return guard(ctx, out_json, [&]() -> json {
        auto [u, v] = solve_binary_form(parse_u64(a1, "a1"), parse_u64(b1, "b1"),
                                        parse_u64(d, "d"), parse_u64(p, "p"),
                                        (unsigned)parse_u64(e, "e"),
                                        ctx->caps.prime_power_cap);
        return json{{"u", std::to_string(u)}, {"v", std::to_string(v)}};
    });
}

tsq_status tsq_build_n(tsq_ctx* ctx, const char* a_prime, const char* modulus,
                       const char* z, char** out_json) {
    return guard(ctx, out_json, [&]() -> json {
        BuildN bn = build_N(parse_u64(a_prime, "a_prime"),
                            parse_u64(modulus, "modulus"), parse_u64(z, "z"),
                            ctx->caps.sieve_cap);
        json primes = json::array();
        for (u64 p : bn.primes) primes.push_back(std::to_string(p));
        return json{{"primes", primes},
                    {"N1", dec(bn.N1)},
                    {"d_inv", std::to_string(bn.d_inv)},
                    {"N", dec(bn.N)}};
    });
}

tsq_status tsq_buckets(tsq_ctx* ctx, const char* n, const char* m, char** out_json) {
    return guard(ctx, out_json, [&]() -> json {
        return to_json(r4_buckets(parse_int(n, "n"), parse_u64(m, "m"),
                                  ctx->caps.bucket_cap, ctx->bucket_mod_cap,
                                  ctx->caps.threads));
    });
}

tsq_status tsq_chowla(tsq_ctx* ctx, const char* a, const char* m, const char* z,
                      int skip_reduction, int verify_exact, int with_report,
                      char** out_json) {
    return guard(ctx, out_json, [&]() -> json {
        ChowlaWitness w =
            extract_witness(parse_u64(a, "a"), parse_u64(m, "m"),
                            parse_u64(z, "z"),
                            make_opts(ctx, skip_reduction != 0, verify_exact != 0));
        json j = to_json(w);
        if (with_report) j["report"] = to_json(lower_bound_report(w));
        return j;
    });
}

tsq_status tsq_hurwitz_witness(tsq_ctx* ctx, const char* a, const char* m,
                               const char* z, char** out_json) {
    return guard(ctx, out_json, [&]() -> json {
        return to_json(hurwitz_witness(parse_u64(a, "a"), parse_u64(m, "m"),
                                       parse_u64(z, "z"),
                                       make_opts(ctx, false, false)));
    });
}

tsq_status tsq_crt(tsq_ctx* ctx, const char* pairs, char** out_json) {
    return guard(ctx, out_json, [&]() -> json {
        if (!pairs) throw std::invalid_argument("pairs is null");
        std::vector<std::pair<mpz_class, mpz_class>> rs;
        std::stringstream ss(pairs);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto colon = item.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("pairs must look like r1:m1,r2:m2");
            rs.emplace_back(parse_int(item.substr(0, colon).c_str(), "residue"),
                            parse_int(item.substr(colon + 1).c_str(), "modulus"));
        }
        if (rs.empty()) throw std::invalid_argument("no congruences given");
        auto [r, mm] = crt_combine(rs);
        return json{{"remainder", dec(r)}, {"modulus", dec(mm)}};
    });
}

tsq_status tsq_sum_check(tsq_ctx* ctx, const char* x, const char* a,
                         const char* m, char** out_json) {
    return guard(ctx, out_json, [&]() -> json {
        u64 xv = parse_u64(x, "x");
        std::optional<std::pair<u64, u64>> ap;
        json j{{"x", std::to_string(xv)}};
        double main_term = 4.0 * 3.14159265358979323846 / 3.0 *
                           std::pow((double)xv, 1.5);
        if (a && m) {
            u64 av = parse_u64(a, "a"), mv = parse_u64(m, "m");
            ap = {av, mv};
            u64 c = c_am(av, mv, ctx->caps.cam_cap);
            j["a"] = std::to_string(av);
            j["m"] = std::to_string(mv);
            j["c_am"] = std::to_string(c);
            main_term *= (double)c / ((double)mv * mv * mv);
        }
        mpz_class sum = sum_r3_upto(xv, ap, ctx->sum_cap, ctx->caps.threads);
        double s = mpz_get_d(sum.get_mpz_t());
        j["sum"] = dec(sum);
        j["main_term"] = main_term;
        j["relative_error"] =
            main_term != 0 ? std::abs(s - main_term) / main_term : 0.0;
        return j;
    });
}

tsq_status tsq_scan(tsq_ctx* ctx, const char* a, const char* m,
                    const char* max_n, tsq_row_cb cb, void* user,
                    char** out_json) {
    return guard(ctx, out_json, [&]() -> json {
        u64 av = parse_u64(a, "a"), mv = parse_u64(m, "m"),
            xv = parse_u64(max_n, "max_n");
        struct AbortScan {};
        std::vector<ScanRecord> records;
        try {
            records = scan_r3(
                av, mv, xv,
                cb ? std::function<void(u64, u64, double, bool)>(
                         [&](u64 n, u64 r, double ratio, bool rec) {
                             char buf[96];
                             std::snprintf(buf, sizeof buf, "%llu\t%llu\t%.6f\t%d",
                                           (unsigned long long)n,
                                           (unsigned long long)r, ratio, rec ? 1 : 0);
                             if (cb(buf, user) != 0) throw AbortScan{};
                         })
                   : std::function<void(u64, u64, double, bool)>(),
                ctx->scan_cap, ctx->caps.threads);
        } catch (const AbortScan&) {
            throw std::invalid_argument("scan aborted by caller");
        }
        json recs = json::array();
        for (const auto& r : records)
            recs.push_back(json{{"n", std::to_string(r.n)},
                                {"r3", std::to_string(r.r3)},
                                {"ratio", r.ratio}});
        return json{{"a", std::to_string(av)},
                    {"m", std::to_string(mv)},
                    {"max_n", std::to_string(xv)},
                    {"records", recs}};
    });
}

} // extern "C"
