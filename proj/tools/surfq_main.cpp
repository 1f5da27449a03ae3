// Verification CLI.  Talks to the core exclusively through the C API.

#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "surfq/surfq.h"

namespace {

struct CommonOpts {
    std::optional<std::string> config_file;
    std::optional<std::string> surface;
    std::optional<std::string> a, b, c, amp, shape, freq;
    std::optional<std::string> n, n_xi, n_zeta, margin, fd_order, seed, hbar, mass;
    std::optional<std::string> factor_slope_cap;
    std::optional<std::string> json, csv_dir;
    bool inject_corrupt_normal = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_file, "key=value config file (flags win)");
    cmd->add_option("--surface", o.surface,
                    "plane, monge, sphere, spheroid, torus, cylinder, catenoid");
    cmd->add_option("--a", o.a, "surface parameter a");
    cmd->add_option("--b", o.b, "surface parameter b");
    cmd->add_option("--c", o.c, "surface parameter c (catenoid)");
    cmd->add_option("--amp", o.amp, "monge height amplitude");
    cmd->add_option("--shape", o.shape, "monge height shape: 0 bump, 1 sinusoid");
    cmd->add_option("--freq", o.freq, "monge sinusoid frequency");
    cmd->add_option("--n", o.n, "grid points per coordinate");
    cmd->add_option("--n-xi", o.n_xi, "grid points, first coordinate");
    cmd->add_option("--n-zeta", o.n_zeta, "grid points, second coordinate");
    cmd->add_option("--margin", o.margin, "trim from non-periodic coordinate ends");
    cmd->add_option("--fd-order", o.fd_order, "finite-difference order: 2, 4 or 6");
    cmd->add_option("--seed", o.seed, "seed for test fields");
    cmd->add_option("--hbar", o.hbar, "hbar");
    cmd->add_option("--mass", o.mass, "particle mass");
    cmd->add_option("--factor-slope-cap", o.factor_slope_cap,
                    "|d ln f| cap for the ordered-kinetic evaluation subdomain");
    cmd->add_option("--json", o.json, "write the JSON report to this path");
    cmd->add_option("--csv-dir", o.csv_dir, "write CSV exports into this directory");
    cmd->add_flag("--inject-corrupt-normal", o.inject_corrupt_normal,
                  "debug: corrupt normals so the Weingarten check fails");
}

int fail_status(const char* context, surfq_status st) {
    std::fprintf(stderr, "surfq: %s: %s: %s\n", context, surfq_status_name(st),
                 surfq_last_error_message());
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    // --tol-<check> <value> flags are dynamic; peel them off before CLI11.
    std::vector<std::string> args;
    std::vector<std::pair<std::string, std::string>> tols;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a.rfind("--tol-", 0) == 0) {
            const std::string rest = a.substr(6);
            const auto eq = rest.find('=');
            if (eq != std::string::npos) {
                tols.emplace_back(rest.substr(0, eq), rest.substr(eq + 1));
            } else {
                if (i + 1 >= argc) {
                    std::fprintf(stderr, "surfq: missing value for %s\n", a.c_str());
                    return 2;
                }
                tols.emplace_back(rest, argv[++i]);
            }
        } else {
            args.push_back(a);
        }
    }

    CLI::App app{"numerical checks for quantum operators on embedded surfaces"};
    app.require_subcommand(1);
    CommonOpts opts;
    const char* commands[5] = {"geom", "check", "ordering", "factors", "hermiticity"};
    const char* descr[5] = {
        "export pointwise geometry (H, K, n, metric) as CSV",
        "geometry identity suite",
        "kinetic operator orderings vs the Laplace-Beltrami route",
        "ordering-factor ODE solve, residuals and closed-form comparison",
        "Hermiticity defects of the momentum operators",
    };
    for (int k = 0; k < 5; ++k) add_common(app.add_subcommand(commands[k], descr[k]), opts);

    std::vector<const char*> cargv;
    cargv.push_back(argc > 0 ? argv[0] : "surfq");
    for (const auto& s : args) cargv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    surfq_config* cfg = nullptr;
    surfq_status st = surfq_config_create(&cfg);
    if (st != SURFQ_OK) return fail_status("config", st);

    if (opts.config_file) {
        st = surfq_config_load_file(cfg, opts.config_file->c_str());
        if (st != SURFQ_OK) {
            surfq_config_destroy(cfg);
            return fail_status("config file", st);
        }
    }
    const std::pair<const char*, const std::optional<std::string>*> keyed[] = {
        {"surface", &opts.surface}, {"a", &opts.a},
        {"b", &opts.b},             {"c", &opts.c},
        {"amp", &opts.amp},         {"shape", &opts.shape},
        {"freq", &opts.freq},       {"n", &opts.n},
        {"n_xi", &opts.n_xi},       {"n_zeta", &opts.n_zeta},
        {"margin", &opts.margin},   {"fd_order", &opts.fd_order},
        {"seed", &opts.seed},       {"hbar", &opts.hbar},
        {"mass", &opts.mass},       {"json", &opts.json},
        {"factor_slope_cap", &opts.factor_slope_cap},
        {"csv_dir", &opts.csv_dir},
    };
    for (const auto& [key, val] : keyed) {
        if (!*val) continue;
        st = surfq_config_set(cfg, key, (*val)->c_str());
        if (st != SURFQ_OK) {
            surfq_config_destroy(cfg);
            return fail_status(key, st);
        }
    }
    if (opts.inject_corrupt_normal) surfq_config_set(cfg, "inject_corrupt_normal", "1");
    for (const auto& [name, value] : tols) {
        const std::string key = "tol." + name;
        st = surfq_config_set(cfg, key.c_str(), value.c_str());
        if (st != SURFQ_OK) {
            surfq_config_destroy(cfg);
            return fail_status(key.c_str(), st);
        }
    }

    surfq_report* report = nullptr;
    st = surfq_run(cfg, command.c_str(), &report);
    surfq_config_destroy(cfg);
    if (st != SURFQ_OK) return fail_status(command.c_str(), st);

    const char* table = nullptr;
    surfq_report_table(report, &table);
    std::fputs(table, stdout);

    int passed = 0;
    surfq_report_passed(report, &passed);
    surfq_report_destroy(report);
    return passed ? 0 : 1;
}
