#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "core/chart.hpp"
#include "core/checks.hpp"
#include "core/config.hpp"
#include "core/error.hpp"
#include "core/grid.hpp"
#include "core/report.hpp"

using namespace surfq;

TEST_CASE("config keys parse and validate") {
    RunConfig cfg;
    cfg.set("surface", "torus");
    cfg.set("a", "2.5");
    cfg.set("n", "64");
    cfg.set("fd_order", "6");
    cfg.set("seed", "9");
    cfg.set("tol.delta_duality", "1e-9");
    CHECK(cfg.surface_params.at("a") == 2.5);
    CHECK(cfg.n_xi == 64);
    CHECK(cfg.n_zeta == 64);
    CHECK(cfg.tol("delta_duality", 1e-10) == 1e-9);
    CHECK(cfg.tol("other", 1e-10) == 1e-10);
    cfg.validate();

    CHECK_THROWS_AS(cfg.set("unknown_key", "1"), Error);
    CHECK_THROWS_AS(cfg.set("a", "x"), Error);
    CHECK_THROWS_AS(cfg.set("n", "12.5"), Error);
    RunConfig bad;
    bad.fd_order = 5;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad.fd_order = 4;
    bad.hbar = -1.0;
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("config file round trip with comments and overrides") {
    const char* path = "test_config_tmp.cfg";
    {
        std::ofstream f(path);
        f << "# comment line\n";
        f << "surface = spheroid\n";
        f << "a = 1.0   # trailing comment\n";
        f << "b = 2.0\n";
        f << "n_xi = 48\n";
        f << "tol.weingarten = 1e-4\n";
    }
    RunConfig cfg = RunConfig::from_file(path);
    CHECK(cfg.surface == "spheroid");
    CHECK(cfg.surface_params.at("b") == 2.0);
    CHECK(cfg.n_xi == 48);
    CHECK(cfg.n_zeta == 128);
    CHECK(cfg.tol("weingarten", 1e-5) == 1e-4);
    std::remove(path);

    CHECK_THROWS_AS(RunConfig::from_file("no_such_file.cfg"), Error);
    {
        std::ofstream f(path);
        f << "just some words\n";
    }
    CHECK_THROWS_AS(RunConfig::from_file(path), Error);
    std::remove(path);
}

TEST_CASE("check suite passes on a small plane grid") {
    RunConfig cfg;
    cfg.surface = "plane";
    cfg.n_xi = cfg.n_zeta = 32;
    cfg.margin = 0.0;
    Report r = run_command("check", cfg);
    CHECK(r.passed);
    CHECK(r.command == "check");
    CHECK(!r.checks.empty());
}

TEST_CASE("corrupted normals break the Weingarten contraction") {
    RunConfig cfg;
    cfg.surface = "torus";
    cfg.n_xi = cfg.n_zeta = 32;
    cfg.inject_corrupt_normal = true;
    const Report r = run_command("check", cfg);
    CHECK_FALSE(r.passed);
    bool weingarten_failed = false;
    for (const auto& c : r.checks)
        if (c.name == "weingarten") weingarten_failed = !c.pass;
    CHECK(weingarten_failed);
}

TEST_CASE("reports are deterministic, sorted and valid JSON") {
    RunConfig cfg;
    cfg.surface = "torus";
    cfg.n_xi = cfg.n_zeta = 32;
    cfg.seed = 5;
    const Report r1 = run_command("check", cfg);
    const Report r2 = run_command("check", cfg);
    const std::string j1 = report_json(r1);
    const std::string j2 = report_json(r2);
    CHECK(j1 == j2);  // byte-for-byte given (config, seed, version)

    const auto parsed = nlohmann::json::parse(j1);
    CHECK(parsed.at("command") == "check");
    CHECK(parsed.at("passed").is_boolean());
    CHECK(parsed.at("config").at("surface") == "torus");
    CHECK(parsed.at("checks").is_array());
    CHECK(parsed.at("checks").size() == r1.checks.size());
    for (const auto& c : parsed.at("checks")) {
        CHECK(c.contains("name"));
        CHECK(c.contains("max_residual"));
        CHECK(c.contains("tolerance"));
        CHECK(c.contains("pass"));
    }
    for (std::size_t i = 1; i < r1.checks.size(); ++i)
        CHECK(r1.checks[i - 1].name <= r1.checks[i].name);
    CHECK(parsed.find("wall_seconds") == parsed.end());

    // timing is opt-in and breaks byte-reproducibility by design
    const std::string with_t = report_json(r1, true);
    CHECK(nlohmann::json::parse(with_t).contains("wall_seconds"));
}

TEST_CASE("reference_check: closed-form agreement and the missing-data path") {
    RunConfig cfg;
    auto torus = make_grid(make_surface("torus", {{"a", 2.0}, {"b", 1.0}}),
                           GridSpec{48, 48, 0.05, 4});
    const Report rt = reference_check(torus, cfg);
    CHECK(rt.checks.size() == 2);
    for (const auto& c : rt.checks) CHECK(c.max_residual < 1e-10);

    auto sphero = make_grid(make_surface("spheroid", {{"a", 1.0}, {"b", 2.0}}),
                            GridSpec{48, 48, 0.05, 4});
    const Report rs = reference_check(sphero, cfg);
    CHECK(rs.checks.size() == 4);  // H, n, G, F
    for (const auto& c : rs.checks) CHECK(c.max_residual < 1e-10);

    auto monge = make_grid(make_surface("monge", {{"amp", 0.3}}), GridSpec{32, 32, 0.0, 4});
    CHECK_THROWS_AS((void)reference_check(monge, cfg), Error);
}

TEST_CASE("ordering suite exercises the excess profile on a non-revolution chart") {
    RunConfig cfg;
    cfg.surface = "monge";
    cfg.surface_params = {{"amp", 0.3}};
    const Report r = run_command("ordering", cfg);
    CHECK(r.passed);
    bool saw_excess = false, saw_constant_collapse = false;
    for (const auto& c : r.checks) {
        if (c.name == "naive_excess_h2") saw_excess = c.pass;
        if (c.name == "ordering_T_constant") saw_constant_collapse = c.pass;
    }
    CHECK(saw_excess);
    CHECK(saw_constant_collapse);
}

TEST_CASE("unknown command is a config error") {
    RunConfig cfg;
    CHECK_THROWS_AS((void)run_command("fly", cfg), Error);
    try {
        (void)run_command("fly", cfg);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::config_error);
    }
}

TEST_CASE("hermiticity suite on a small grid produces the negative control") {
    RunConfig cfg;
    cfg.surface = "torus";
    cfg.n_xi = cfg.n_zeta = 48;
    // defect tolerances at 48^2 are looser than the 128^2 defaults
    cfg.set("tol.hermiticity_p_x", "1e-3");
    cfg.set("tol.hermiticity_p_y", "1e-3");
    cfg.set("tol.hermiticity_p_z", "1e-3");
    cfg.set("tol.hermiticity_p_theta", "1e-3");
    cfg.set("tol.hermiticity_p_phi", "1e-3");
    const Report r = run_command("hermiticity", cfg);
    bool has_control = false;
    for (const auto& c : r.checks) {
        if (c.name == "bare_momentum_control") {
            has_control = true;
            CHECK(c.kind == "lower");
            CHECK(c.max_residual > 1e-2);
            CHECK(c.pass);
        }
    }
    CHECK(has_control);
    CHECK(r.passed);
}

TEST_CASE("geom export writes closed-form comparison and CSV files") {
    RunConfig cfg;
    cfg.surface = "torus";
    cfg.n_xi = cfg.n_zeta = 24;
    cfg.csv_dir = "geom_csv_tmp";
    const Report r = run_command("geom", cfg);
    CHECK(r.passed);
    bool has_h = false;
    for (const auto& c : r.checks)
        if (c.name == "h_closed_form") has_h = c.pass;
    CHECK(has_h);
    std::ifstream csv("geom_csv_tmp/mean_curvature.csv");
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "theta,phi,H");
    std::filesystem::remove_all("geom_csv_tmp");
}
