// tsq - command line front end. Talks to the library exclusively through the
// C API in tsq.h; every integer crosses the boundary as a decimal string.

#include <chrono>
#include <cstdio>
#include <map>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tsq.h"

using nlohmann::json;

namespace {

struct CtxDeleter {
    void operator()(tsq_ctx* c) const { tsq_ctx_free(c); }
};

struct Options {
    std::string format = "json";
    std::string threads = "0";
    std::map<std::string, std::string> caps; // cap name -> decimal value
};

int exit_code_for(tsq_status st) {
    switch (st) {
        case TSQ_OK: return 0;
        case TSQ_EPRECOND: return 2;
        case TSQ_ETOOLARGE: return 3;
        case TSQ_EINVAL: return 64;
        case TSQ_EINTERNAL: return 70;
    }
    return 70;
}

void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
                    out);
    } else if (j.is_array()) {
        for (size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else if (j.is_string()) {
        out.emplace_back(prefix, j.get<std::string>());
    } else {
        out.emplace_back(prefix, j.dump());
    }
}

void emit_envelope(const std::string& command,
                   const std::map<std::string, std::string>& inputs,
                   const json& result, long long ms, const std::string& format) {
    json env{{"command", command},
             {"inputs", json(inputs)},
             {"result", result},
             {"timing_ms", std::to_string(ms)}};
    if (format == "tsv") {
        std::vector<std::pair<std::string, std::string>> rows;
        flatten(env, "", rows);
        for (const auto& [k, v] : rows) std::printf("%s\t%s\n", k.c_str(), v.c_str());
    } else {
        std::printf("%s\n", env.dump(2).c_str());
    }
}

int report_failure(tsq_ctx* ctx, tsq_status st) {
    const char* cond = tsq_last_error_condition(ctx);
    if (cond && *cond)
        std::fprintf(stderr, "error: %s\n", tsq_last_error(ctx));
    else
        std::fprintf(stderr, "error: %s\n", tsq_last_error(ctx));
    return exit_code_for(st);
}

// Applies context-wide settings, runs the operation, prints the envelope.
int run_op(const Options& opt, const std::string& command,
           const std::map<std::string, std::string>& inputs,
           tsq_status (*fn)(tsq_ctx*, const std::map<std::string, std::string>&,
                            char**)) {
    std::unique_ptr<tsq_ctx, CtxDeleter> ctx(tsq_ctx_new());
    tsq_ctx_set_threads(ctx.get(), (unsigned)std::stoul(opt.threads));
    for (const auto& [name, value] : opt.caps) {
        if (tsq_ctx_set_cap(ctx.get(), name.c_str(), value.c_str()) != TSQ_OK) {
            std::fprintf(stderr, "error: bad cap %s\n", name.c_str());
            return 64;
        }
    }
    char* out = nullptr;
    auto t0 = std::chrono::steady_clock::now();
    tsq_status st = fn(ctx.get(), inputs, &out);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (st != TSQ_OK) return report_failure(ctx.get(), st);
    json result = json::parse(out);
    tsq_string_free(out);
    emit_envelope(command, inputs, result, ms, opt.format);
    return 0;
}

const char* arg(const std::map<std::string, std::string>& in, const char* key) {
    auto it = in.find(key);
    return it == in.end() ? nullptr : it->second.c_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"three-squares toolkit: representation counts, Hurwitz class "
                 "numbers, and certified residue-class witnesses"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--format", opt.format, "Output format: json or tsv")
        ->check(CLI::IsMember({"json", "tsv"}));
    app.add_option("--threads", opt.threads,
                   "Worker threads (0 = all cores); results are identical for "
                   "any value");
    for (const char* capovr :
         {"factor", "sieve", "r3", "r4", "bucket", "bucket-mod", "modulus",
          "cam", "sum", "scan", "forms", "prime-power"}) {
        std::string name = capovr;
        app.add_option_function<std::string>(
            "--" + name + "-cap",
            [&opt, name](const std::string& v) { opt.caps[name] = v; },
            "Override the " + name + " cap");
    }

    std::map<std::string, std::string> in;

    auto positional = [&](CLI::App* sub, const char* key, const char* desc) {
        sub->add_option_function<std::string>(
               key, [&in, key = std::string(key)](const std::string& v) { in[key] = v; },
               desc)
            ->required();
    };
    auto named = [&](CLI::App* sub, const char* flag, const char* key,
                     const char* desc, bool required = true) {
        auto* o = sub->add_option_function<std::string>(
            flag, [&in, key = std::string(key)](const std::string& v) { in[key] = v; },
            desc);
        if (required) o->required();
    };

    // --- simple unary commands -------------------------------------------
    auto* c_r3 = app.add_subcommand("r3", "Exact r3(n) by lattice scan");
    positional(c_r3, "n", "target integer");

    auto* c_r4 = app.add_subcommand("r4", "r4(n) via the divisor formula or brute force");
    positional(c_r4, "n", "target integer");
    named(c_r4, "--method", "method", "jacobi (default) or brute", false);

    auto* c_ss = app.add_subcommand("sigma-star", "Sum of divisors not divisible by 4");
    positional(c_ss, "n", "target integer");

    auto* c_leg = app.add_subcommand("legendre", "Three-square admissibility test");
    positional(c_leg, "n", "target integer");

    auto* c_hur = app.add_subcommand("hurwitz", "12*H(n) by reduced form enumeration");
    positional(c_hur, "n", "target integer");

    auto* c_forms = app.add_subcommand("forms", "Reduced forms of discriminant -n");
    positional(c_forms, "n", "target integer");

    auto* c_gauss = app.add_subcommand("gauss-check", "Verify the r3/class-number case for n");
    positional(c_gauss, "n", "target integer");

    auto* c_cam = app.add_subcommand("cam", "Count x^2+y^2+z^2 = a over Z/m");
    named(c_cam, "--a", "a", "residue");
    named(c_cam, "--m", "m", "modulus");

    auto* c_crt = app.add_subcommand("crt", "Combine congruences r:m,...");
    named(c_crt, "--pairs", "pairs", "comma list r1:m1,r2:m2,...");

    auto* c_red = app.add_subcommand("reduce", "Square-free shift and t-multiplier certificate");
    named(c_red, "--a", "a", "residue");
    named(c_red, "--m", "m", "modulus");

    auto* c_sy = app.add_subcommand("solve-y", "Solve the two simultaneous congruences");
    named(c_sy, "--x", "x", "four comma-separated residues x1,x2,x3,x4");
    named(c_sy, "--a", "a", "target residue");
    named(c_sy, "--m", "m", "modulus");

    auto* c_bf = app.add_subcommand("binary-form", "Solve a1*u^2 + b1*v^2 = d mod p^e");
    named(c_bf, "--a1", "a1", "coefficient");
    named(c_bf, "--b1", "b1", "coefficient");
    named(c_bf, "--d", "d", "target");
    named(c_bf, "--p", "p", "odd prime");
    named(c_bf, "--e", "e", "exponent");

    auto* c_bn = app.add_subcommand("build-n", "Primorial representative of a class");
    named(c_bn, "--a-prime", "a_prime", "target residue");
    named(c_bn, "--modulus", "modulus", "modulus M");
    named(c_bn, "--z", "z", "prime cutoff");

    auto* c_bk = app.add_subcommand("buckets", "Residue-class table of four-square tuples");
    named(c_bk, "--n", "n", "represented integer");
    named(c_bk, "--m", "m", "modulus");

    auto* c_ch = app.add_subcommand("chowla", "Full witness extraction");
    named(c_ch, "--a", "a", "residue");
    named(c_ch, "--m", "m", "modulus");
    named(c_ch, "--z", "z", "prime cutoff");
    bool skip_reduction = false, verify_exact = false, with_report = false;
    c_ch->add_flag("--skip-reduction", skip_reduction,
                   "a is already square-free with p^2 | m for p | a");
    c_ch->add_flag("--verify-exact", verify_exact, "brute-force r3(n_local)");
    c_ch->add_flag("--report", with_report, "attach the lower-bound report");

    auto* c_hw = app.add_subcommand("hurwitz-witness", "Witness with a class-number bound");
    named(c_hw, "--a", "a", "residue");
    named(c_hw, "--m", "m", "modulus");
    named(c_hw, "--z", "z", "prime cutoff");

    auto* c_scan = app.add_subcommand("scan", "Stream r3 over a residue class (TSV)");
    named(c_scan, "--a", "a", "residue");
    named(c_scan, "--m", "m", "modulus");
    named(c_scan, "--max-n", "max_n", "upper bound");
    bool records_only = false;
    c_scan->add_flag("--records-only", records_only,
                     "print only rows that set a new r3/sqrt(n) record");

    auto* c_sum = app.add_subcommand("sum-check", "Partial sum vs the sphere main term");
    named(c_sum, "--x", "x", "upper bound");
    named(c_sum, "--a", "a", "residue (optional)", false);
    named(c_sum, "--m", "m", "modulus (optional)", false);

    // allow --format/--threads/cap flags after the subcommand
    for (auto* sc : app.get_subcommands([](CLI::App*) { return true; }))
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    if (c_ch->parsed()) {
        in["skip_reduction"] = skip_reduction ? "1" : "0";
        in["verify_exact"] = verify_exact ? "1" : "0";
        in["report"] = with_report ? "1" : "0";
    }

    if (c_r3->parsed())
        return run_op(opt, "r3", in, [](tsq_ctx* c, const auto& i, char** o) {
            return tsq_r3(c, arg(i, "n"), o);
        });
    if (c_r4->parsed())
        return run_op(opt, "r4", in, [](tsq_ctx* c, const auto& i, char** o) {
            const char* m = arg(i, "method");
            return tsq_r4(c, arg(i, "n"), m ? m : "jacobi", o);
        });
    if (c_ss->parsed())
        return run_op(opt, "sigma-star", in, [](tsq_ctx* c, const auto& i, char** o) {
            return tsq_sigma_star(c, arg(i, "n"), o);
        });
    if (c_leg->parsed())
        return run_op(opt, "legendre", in, [](tsq_ctx* c, const auto& i, char** o) {
            return tsq_legendre(c, arg(i, "n"), o);
        });
    if (c_hur->parsed())
        return run_op(opt, "hurwitz", in, [](tsq_ctx* c, const auto& i, char** o) {
            return tsq_hurwitz(c, arg(i, "n"), o);
        });
    if (c_forms->parsed())
        return run_op(opt, "forms", in, [](tsq_ctx* c, const auto& i, char** o) {
            return tsq_forms(c, arg(i, "n"), o);
        });
    if (c_gauss->parsed())
        return run_op(opt, "gauss-check", in, [](tsq_ctx* c, const auto& i, char** o) {
            return tsq_gauss_check(c, arg(i, "n"), o);
        });
    if (c_cam->parsed())
        return run_op(opt, "cam", in, [](tsq_ctx* c, const auto& i, char** o) {
            return tsq_cam(c, arg(i, "a"), arg(i, "m"), o);
        });
    if (c_crt->parsed())
        return run_op(opt, "crt", in, [](tsq_ctx* c, const auto& i, char** o) {
            return tsq_crt(c, arg(i, "pairs"), o);
        });
    if (c_red->parsed())
        return run_op(opt, "reduce", in, [](tsq_ctx* c, const auto& i, char** o) {
            return tsq_reduce(c, arg(i, "a"), arg(i, "m"), o);
        });
    if (c_sy->parsed()) {
        // split x1,x2,x3,x4
        std::string xs = in["x"];
        std::array<std::string, 4> parts;
        size_t pos = 0;
        for (int k = 0; k < 4; ++k) {
            size_t comma = xs.find(',', pos);
            if (comma == std::string::npos && k < 3) {
                std::fprintf(stderr, "error: --x needs four comma-separated values\n");
                return 64;
            }
            parts[k] = xs.substr(pos, comma == std::string::npos ? std::string::npos
                                                                 : comma - pos);
            pos = comma + 1;
        }
        in["x1"] = parts[0];
        in["x2"] = parts[1];
        in["x3"] = parts[2];
        in["x4"] = parts[3];
        return run_op(opt, "solve-y", in, [](tsq_ctx* c, const auto& i, char** o) {
            return tsq_solve_y(c, arg(i, "x1"), arg(i, "x2"), arg(i, "x3"),
                               arg(i, "x4"), arg(i, "a"), arg(i, "m"), o);
        });
    }
    if (c_bf->parsed())
        return run_op(opt, "binary-form", in, [](tsq_ctx* c, const auto& i, char** o) {
            return tsq_binary_form(c, arg(i, "a1"), arg(i, "b1"), arg(i, "d"),
                                   arg(i, "p"), arg(i, "e"), o);
        });
    if (c_bn->parsed())
        return run_op(opt, "build-n", in, [](tsq_ctx* c, const auto& i, char** o) {
            return tsq_build_n(c, arg(i, "a_prime"), arg(i, "modulus"),
                               arg(i, "z"), o);
        });
    if (c_bk->parsed())
        return run_op(opt, "buckets", in, [](tsq_ctx* c, const auto& i, char** o) {
            return tsq_buckets(c, arg(i, "n"), arg(i, "m"), o);
        });
    if (c_ch->parsed())
        return run_op(opt, "chowla", in, [](tsq_ctx* c, const auto& i, char** o) {
            return tsq_chowla(c, arg(i, "a"), arg(i, "m"), arg(i, "z"),
                              *arg(i, "skip_reduction") == '1',
                              *arg(i, "verify_exact") == '1',
                              *arg(i, "report") == '1', o);
        });
    if (c_hw->parsed())
        return run_op(opt, "hurwitz-witness", in, [](tsq_ctx* c, const auto& i, char** o) {
            return tsq_hurwitz_witness(c, arg(i, "a"), arg(i, "m"), arg(i, "z"), o);
        });
    if (c_sum->parsed())
        return run_op(opt, "sum-check", in, [](tsq_ctx* c, const auto& i, char** o) {
            return tsq_sum_check(c, arg(i, "x"), arg(i, "a"), arg(i, "m"), o);
        });

    if (c_scan->parsed()) {
        // scan streams TSV rows; no envelope
        std::unique_ptr<tsq_ctx, CtxDeleter> ctx(tsq_ctx_new());
        tsq_ctx_set_threads(ctx.get(), (unsigned)std::stoul(opt.threads));
        for (const auto& [name, value] : opt.caps)
            if (tsq_ctx_set_cap(ctx.get(), name.c_str(), value.c_str()) != TSQ_OK) {
                std::fprintf(stderr, "error: bad cap %s\n", name.c_str());
                return 64;
            }
        bool only = records_only;
        auto cb = [](const char* row, void* user) -> int {
            bool records = *(bool*)user;
            if (records) {
                size_t len = std::strlen(row);
                if (len < 1 || row[len - 1] != '1') return 0;
            }
            std::fputs(row, stdout);
            std::fputc('\n', stdout);
            return 0;
        };
        char* out = nullptr;
        tsq_status st = tsq_scan(ctx.get(), arg(in, "a"), arg(in, "m"),
                                 arg(in, "max_n"), cb, &only, &out);
        if (st != TSQ_OK) return report_failure(ctx.get(), st);
        tsq_string_free(out);
        return 0;
    }

    std::fprintf(stderr, "error: no subcommand\n");
    return 64;
}
