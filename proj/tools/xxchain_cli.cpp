// Command-line front end.  Links the C API only; all numerics live behind it.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "xxchain/capi.h"

namespace {

int fail(int code) {
    std::cerr << "error: " << xx_last_error() << "\n";
    return code;
}

int emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return 0;
    }
    std::FILE* f = std::fopen(out_path.c_str(), "wb");
    if (!f) {
        std::cerr << "error: cannot open " << out_path << "\n";
        return 3;
    }
    std::fwrite(content.data(), 1, content.size(), f);
    std::fclose(f);
    return 0;
}

std::string grab(char* s) {
    std::string out = s ? s : "";
    xx_free(s);
    return out;
}

struct Options {
    int sites = 5;
    int max_sites = 0;
    double g = 1.0;
    std::string theta = "0.5pi";
    std::string variant = "H";
    double sector = 0.0;
    bool sector_set = false;
    int order = 3;
    std::string out;
    std::string format = "csv";
    double tolerance = 0.0;
    bool force = false;
    std::string emit_kind = "p-table";
    std::string algebra = "uqsl2";
    std::string suite = "fast";
};

int run_spectrum(const Options& opt) {
    double theta = 0.0;
    if (int rc = xx_parse_angle(opt.theta.c_str(), &theta)) return fail(rc);
    std::string all;
    const int lo = opt.max_sites > 0 ? 2 : opt.sites;
    const int hi = opt.max_sites > 0 ? opt.max_sites : opt.sites;
    bool off_circle = false;
    for (int M = lo; M <= hi; ++M) {
        xx_chain* chain = nullptr;
        if (int rc = xx_chain_create(M, opt.g, theta, opt.variant.c_str(), &chain))
            return fail(rc);
        char* csv = nullptr;
        int rc;
        if (opt.sector_set) {
            const int twice_sz = int(std::lround(2.0 * opt.sector));
            rc = xx_sector_spectrum_csv(chain, twice_sz, &csv);
        } else {
            int on_circle = 1;
            rc = xx_spectrum_csv(chain, opt.tolerance, &on_circle, &csv);
            if (!on_circle) off_circle = true;
        }
        xx_chain_destroy(chain);
        if (rc) return fail(rc);
        all += grab(csv);
    }
    if (off_circle) std::cerr << "regime: OffCircle\n";
    return emit(opt.out, all);
}

int run_metric(const Options& opt) {
    double theta = 0.0;
    if (int rc = xx_parse_angle(opt.theta.c_str(), &theta)) return fail(rc);
    xx_chain* chain = nullptr;
    if (int rc = xx_chain_create(opt.sites, opt.g, theta, opt.variant.c_str(), &chain))
        return fail(rc);
    char* js = nullptr;
    const int rc = xx_metric_json(chain, opt.force ? 1 : 0, &js);
    xx_chain_destroy(chain);
    if (rc) return fail(rc);
    return emit(opt.out, grab(js));
}

int run_perturb(const Options& opt) {
    double theta = 0.0;
    if (int rc = xx_parse_angle(opt.theta.c_str(), &theta)) return fail(rc);
    char* s = nullptr;
    int rc;
    if (opt.emit_kind == "lambdas") {
        rc = xx_lambda_json(opt.order, 0, &s);
    } else if (opt.emit_kind == "lambdas-prime") {
        rc = xx_lambda_json(opt.order, 1, &s);
    } else if (opt.emit_kind == "series") {
        rc = xx_series_json(opt.sites, opt.order, theta, &s);
    } else if (opt.emit_kind == "p-table") {
        rc = xx_ptable_csv(opt.sites, opt.order, &s);
    } else {
        std::cerr << "error: unknown --emit kind " << opt.emit_kind << "\n";
        return 2;
    }
    if (rc) return fail(rc);
    return emit(opt.out, grab(s));
}

int run_algebra(const Options& opt) {
    double theta = 0.0;
    if (int rc = xx_parse_angle(opt.theta.c_str(), &theta)) return fail(rc);
    char* s = nullptr;
    if (int rc = xx_algebra_json(opt.algebra.c_str(), opt.sites, opt.g, theta,
                                 opt.force ? 1 : 0, &s))
        return fail(rc);
    return emit(opt.out, grab(s));
}

int run_gram(const Options& opt) {
    char* s = nullptr;
    const int m = opt.sector_set ? int(std::lround(opt.sites / 2.0 - opt.sector)) : 2;
    if (int rc = xx_gram_json(opt.sites, m, &s)) return fail(rc);
    return emit(opt.out, grab(s));
}

int run_verify(const Options& opt) {
    char* report = nullptr;
    int failures = 0;
    const int rc = xx_verify(opt.suite == "full" ? 1 : 0, 0, &report, &failures);
    std::string table = grab(report);
    std::fwrite(table.data(), 1, table.size(), stdout);
    if (!opt.out.empty()) emit(opt.out, table);
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-Hermitian XX chain toolkit"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--sites", opt.sites, "chain length M");
        cmd->add_option("--g", opt.g, "boundary coupling strength");
        cmd->add_option("--theta", opt.theta, "boundary phase; accepts e.g. 0.5pi");
        cmd->add_option("--variant", opt.variant, "H, Hprime, Hg, HgTruncated, Periodic");
        cmd->add_option("--out", opt.out, "output file (default stdout)");
        cmd->add_option("--format", opt.format, "json or csv (per-command default)");
        cmd->add_option("--tolerance", opt.tolerance, "residual tolerance override");
        cmd->add_flag("--force", opt.force, "proceed outside the quasi-Hermitian region");
    };

    auto* spectrum = app.add_subcommand("spectrum", "Bethe / dense sector eigenvalues");
    add_common(spectrum);
    spectrum->add_option("--sector", opt.sector, "S^z sector (dense diagonalization)")
        ->each([&](const std::string&) { opt.sector_set = true; });
    spectrum->add_option("--max-sites", opt.max_sites, "scan sites 2..N");

    auto* metric = app.add_subcommand("metric", "eta, h, C with residual summary");
    add_common(metric);

    auto* perturb = app.add_subcommand("perturb", "series coefficient tables");
    add_common(perturb);
    perturb->add_option("--order", opt.order, "series order");
    perturb->add_option("--emit", opt.emit_kind,
                        "lambdas, lambdas-prime, series or p-table");

    auto* algebra = app.add_subcommand("algebra", "relation audit report");
    add_common(algebra);
    algebra->add_option("--algebra", opt.algebra, "gl11, uqsl2, uqgl11, tl, hecke");

    auto* gram = app.add_subcommand("gram", "sector Gram matrix data at g=1");
    add_common(gram);
    gram->add_option("--sector", opt.sector, "S^z sector")
        ->each([&](const std::string&) { opt.sector_set = true; });

    auto* verify = app.add_subcommand("verify", "invariant suites (fast | full)");
    verify->add_option("suite", opt.suite, "fast or full");
    verify->add_option("--out", opt.out, "also write the table to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (spectrum->parsed()) return run_spectrum(opt);
    if (metric->parsed()) return run_metric(opt);
    if (perturb->parsed()) return run_perturb(opt);
    if (algebra->parsed()) return run_algebra(opt);
    if (gram->parsed()) return run_gram(opt);
    if (verify->parsed()) return run_verify(opt);
    return 2;
}
