#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "surfq/surfq.h"

TEST_CASE("version and status names") {
    CHECK(std::string(surfq_version()) == "0.1.0");
    CHECK(std::string(surfq_status_name(SURFQ_OK)) == "OK");
    CHECK(std::string(surfq_status_name(SURFQ_ERR_DEGENERATE_CHART)) == "DegenerateChart");
}

TEST_CASE("surface creation, frames and error reporting") {
    surfq_surface* s = nullptr;
    const char* keys[2] = {"a", "b"};
    const double vals[2] = {2.0, 1.0};
    REQUIRE(surfq_surface_create("torus", keys, vals, 2, &s) == SURFQ_OK);

    surfq_frame fr;
    REQUIRE(surfq_surface_frame(s, 1.5707963267948966, 0.0, &fr) == SURFQ_OK);
    CHECK(fr.mean_curv == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
    CHECK(fr.normal[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fr.det_g == doctest::Approx(9.0).epsilon(1e-12));  // b^2 (a+b)^2

    double lo[2], hi[2];
    int per[2];
    REQUIRE(surfq_surface_domain(s, lo, hi, per) == SURFQ_OK);
    CHECK(per[0] == 1);
    CHECK(per[1] == 1);
    surfq_surface_destroy(s);

    // invalid params carry a message
    surfq_surface* bad = nullptr;
    const double vals_bad[2] = {0.5, 1.0};
    CHECK(surfq_surface_create("torus", keys, vals_bad, 2, &bad) ==
          SURFQ_ERR_INVALID_PARAMS);
    CHECK(std::strlen(surfq_last_error_message()) > 0);
    CHECK(surfq_surface_create(nullptr, nullptr, nullptr, 0, &bad) ==
          SURFQ_ERR_NULL_ARGUMENT);
}

TEST_CASE("degenerate chart point maps to the right status") {
    surfq_surface* s = nullptr;
    REQUIRE(surfq_surface_create("spheroid", nullptr, nullptr, 0, &s) == SURFQ_OK);
    surfq_frame fr;
    CHECK(surfq_surface_frame(s, 0.0, 0.0, &fr) == SURFQ_ERR_DEGENERATE_CHART);
    surfq_surface_destroy(s);
}

TEST_CASE("grid, fields, operators through the C surface") {
    surfq_surface* s = nullptr;
    const char* keys[2] = {"a", "b"};
    const double vals[2] = {2.0, 1.0};
    REQUIRE(surfq_surface_create("torus", keys, vals, 2, &s) == SURFQ_OK);
    surfq_grid* g = nullptr;
    REQUIRE(surfq_grid_create(s, 48, 48, 0.05, 4, &g) == SURFQ_OK);
    int nx = 0, nz = 0;
    surfq_grid_size(g, &nx, &nz);
    CHECK(nx == 48);

    surfq_field* one = nullptr;
    REQUIRE(surfq_field_constant(g, 1.0, 0.0, &one) == SURFQ_OK);
    double re = 0.0, im = 0.0;
    REQUIRE(surfq_inner_product(one, one, &re, &im) == SURFQ_OK);
    CHECK(re == doctest::Approx(4.0 * M_PI * M_PI * 2.0).epsilon(1e-9));

    surfq_field* psi = nullptr;
    REQUIRE(surfq_field_random(g, 42, 2, &psi) == SURFQ_OK);
    REQUIRE(surfq_field_export_csv(psi, "capi_field_tmp.csv") == SURFQ_OK);
    {
        std::ifstream csv("capi_field_tmp.csv");
        std::string header;
        std::getline(csv, header);
        CHECK(header == "theta,phi,re,im");
        std::remove("capi_field_tmp.csv");
    }
    surfq_field* lap = nullptr;
    REQUIRE(surfq_apply(g, SURFQ_OP_LAPLACE_BELTRAMI, 1.0, 1.0, psi, &lap) == SURFQ_OK);
    std::vector<double> lre(48 * 48), lim(48 * 48);
    REQUIRE(surfq_field_values(lap, lre.data(), lim.data(), lre.size()) == SURFQ_OK);
    double peak = 0.0;
    for (double v : lre) peak = std::max(peak, std::abs(v));
    CHECK(peak > 1e-3);

    surfq_factors* f = nullptr;
    REQUIRE(surfq_factors_solve(g, &f) == SURFQ_OK);
    surfq_field* t = nullptr;
    REQUIRE(surfq_apply_ordered(g, SURFQ_ORDERING_T, 1.0, 1.0, f, psi, &t) == SURFQ_OK);
    std::vector<double> fz(48 * 48);
    REQUIRE(surfq_factors_values(f, 2, fz.data(), fz.size()) == SURFQ_OK);
    CHECK(surfq_factors_values(f, 5, fz.data(), fz.size()) == SURFQ_ERR_INVALID_PARAMS);

    surfq_field_destroy(t);
    surfq_factors_destroy(f);
    surfq_field_destroy(lap);
    surfq_field_destroy(psi);
    surfq_field_destroy(one);
    surfq_grid_destroy(g);
    surfq_surface_destroy(s);
}

TEST_CASE("closed-form factors require reference data") {
    surfq_surface* s = nullptr;
    REQUIRE(surfq_surface_create("catenoid", nullptr, nullptr, 0, &s) == SURFQ_OK);
    surfq_grid* g = nullptr;
    REQUIRE(surfq_grid_create(s, 32, 32, 0.05, 4, &g) == SURFQ_OK);
    surfq_factors* f = nullptr;
    CHECK(surfq_factors_closed_form(g, &f) == SURFQ_ERR_MISSING_REFERENCE);
    surfq_grid_destroy(g);
    surfq_surface_destroy(s);
}

TEST_CASE("config + run + report round trip") {
    surfq_config* cfg = nullptr;
    REQUIRE(surfq_config_create(&cfg) == SURFQ_OK);
    REQUIRE(surfq_config_set(cfg, "surface", "torus") == SURFQ_OK);
    REQUIRE(surfq_config_set(cfg, "n", "32") == SURFQ_OK);
    // the default grid-FD tolerance targets 128^2; 32^2 is 256x coarser
    REQUIRE(surfq_config_set(cfg, "tol.laplace_embedding", "1e-3") == SURFQ_OK);
    CHECK(surfq_config_set(cfg, "banana", "1") == SURFQ_ERR_CONFIG);

    surfq_report* rep = nullptr;
    REQUIRE(surfq_run(cfg, "check", &rep) == SURFQ_OK);
    int passed = 0;
    REQUIRE(surfq_report_passed(rep, &passed) == SURFQ_OK);
    CHECK(passed == 1);

    size_t count = 0;
    REQUIRE(surfq_report_check_count(rep, &count) == SURFQ_OK);
    CHECK(count > 5);
    const char* name = nullptr;
    double resid = 0.0, tol = 0.0;
    int pass = 0;
    REQUIRE(surfq_report_check(rep, 0, &name, &resid, &tol, &pass) == SURFQ_OK);
    CHECK(name != nullptr);

    const char* json = nullptr;
    REQUIRE(surfq_report_json(rep, &json) == SURFQ_OK);
    const auto parsed = nlohmann::json::parse(json);
    CHECK(parsed.at("passed") == true);
    const char* table = nullptr;
    REQUIRE(surfq_report_table(rep, &table) == SURFQ_OK);
    CHECK(std::string(table).find("PASS") != std::string::npos);

    surfq_report_destroy(rep);
    // unknown command
    surfq_report* rep2 = nullptr;
    CHECK(surfq_run(cfg, "fly", &rep2) == SURFQ_ERR_CONFIG);
    surfq_config_destroy(cfg);
}
