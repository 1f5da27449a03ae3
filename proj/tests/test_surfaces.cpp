#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/chart.hpp"
#include "core/error.hpp"
#include "core/frame.hpp"
#include "core/grid.hpp"

using namespace surfq;

namespace {
constexpr double kPi = std::numbers::pi;

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected surfq::Error");
    return Errc::invalid_params;
}
} // namespace

TEST_CASE("parameter validation names the violated constraint") {
    CHECK(code_of([] { make_surface("torus", {{"a", 0.5}, {"b", 1.0}}); }) ==
          Errc::invalid_params);
    CHECK(code_of([] { make_surface("torus", {{"a", 0.0}, {"b", 1.0}}); }) ==
          Errc::invalid_params);
    CHECK(code_of([] { make_surface("torus", {{"a", 2.0}, {"b", -1.0}}); }) ==
          Errc::invalid_params);
    CHECK(code_of([] { make_surface("nonexistent"); }) == Errc::invalid_params);
    CHECK(code_of([] { make_surface("torus", {{"radius", 2.0}}); }) == Errc::invalid_params);
    CHECK(code_of([] { make_surface("monge", {{"shape", 2.0}}); }) == Errc::invalid_params);
    CHECK(code_of([] { make_surface("spheroid", {{"a", -1.0}}); }) == Errc::invalid_params);
    try {
        make_surface("torus", {{"a", 0.5}, {"b", 1.0}});
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("a > b") != std::string::npos);
    }
}

TEST_CASE("domains and periodicity metadata") {
    auto torus = make_surface("torus");
    CHECK(torus->domain().periodic[0]);
    CHECK(torus->domain().periodic[1]);
    CHECK(torus->domain().span(0) == doctest::Approx(2 * kPi));

    auto spheroid = make_surface("spheroid");
    CHECK_FALSE(spheroid->domain().periodic[0]);  // colatitude, poles excluded
    CHECK(spheroid->domain().periodic[1]);
    CHECK(spheroid->domain().span(0) == doctest::Approx(kPi));

    auto plane = make_surface("plane");
    CHECK_FALSE(plane->domain().periodic[0]);
    CHECK_FALSE(plane->domain().periodic[1]);
}

TEST_CASE("periodic embeddings repeat") {
    auto torus = make_surface("torus", {{"a", 2.0}, {"b", 1.0}});
    for (double th : {0.3, 2.0}) {
        const Vec3 p0 = torus->position(th, 0.77);
        const Vec3 p1 = torus->position(th + 2 * kPi, 0.77);
        const Vec3 p2 = torus->position(th, 0.77 + 2 * kPi);
        CHECK(norm(p0 - p1) < 1e-13);
        CHECK(norm(p0 - p2) < 1e-13);
    }
}

TEST_CASE("reference cross-check: torus frame H and n against closed forms") {
    auto torus = make_surface("torus", {{"a", 2.0}, {"b", 1.0}});
    auto grid = make_grid(torus, GridSpec{64, 64, 0.05, 4});
    double dh = 0.0, dn = 0.0;
    for (int i = 0; i < grid->n(0); ++i)
        for (int j = 0; j < grid->n(1); ++j) {
            const double th = grid->coord(0, i), ph = grid->coord(1, j);
            const GeomFrame& fr = grid->frame(i, j);
            dh = std::max(dh, std::abs(fr.mean_curv - torus->reference_mean_curvature(th, ph)));
            dn = std::max(dn, norm(fr.normal - torus->reference_normal(th, ph)));
        }
    CHECK(dh < 1e-12);
    CHECK(dn < 1e-12);
}

TEST_CASE("reference cross-check: spheroid normal closed form") {
    auto spheroid = make_surface("spheroid", {{"a", 1.0}, {"b", 2.0}});
    auto grid = make_grid(spheroid, GridSpec{48, 48, 0.1, 4});
    double dn = 0.0, dh = 0.0;
    for (int i = 0; i < grid->n(0); ++i)
        for (int j = 0; j < grid->n(1); ++j) {
            const double th = grid->coord(0, i), ph = grid->coord(1, j);
            const GeomFrame& fr = grid->frame(i, j);
            dn = std::max(dn, norm(fr.normal - spheroid->reference_normal(th, ph)));
            dh = std::max(dh,
                          std::abs(fr.mean_curv - spheroid->reference_mean_curvature(th, ph)));
        }
    CHECK(dn < 1e-12);
    CHECK(dh < 1e-12);
}

TEST_CASE("monge patch has no closed-form reference") {
    auto monge = make_surface("monge", {{"amp", 0.3}});
    CHECK_FALSE(monge->has_reference_curvature());
    CHECK(code_of([&] { (void)monge->reference_mean_curvature(0.1, 0.1); }) ==
          Errc::missing_reference);
    // but it bends: H != 0 somewhere
    const GeomFrame fr = frame_at(*monge, 0.3, 0.2);
    CHECK(std::abs(fr.mean_curv) > 1e-3);
}

TEST_CASE("catenoid is minimal but curved") {
    auto cat = make_surface("catenoid", {{"c", 1.0}});
    for (double t : {-0.8, -0.2, 0.0, 0.5, 0.9}) {
        for (double ph : {0.1, 2.0, 4.4}) {
            const GeomFrame fr = frame_at(*cat, t, ph);
            CHECK(std::abs(fr.mean_curv) < 1e-12);
            CHECK(fr.gauss_curv < 0.0);
            CHECK(norm(fr.normal - cat->reference_normal(t, ph)) < 1e-12);
        }
    }
}

TEST_CASE("cylinder H = -1/(2a)") {
    auto cyl = make_surface("cylinder", {{"a", 0.7}});
    const GeomFrame fr = frame_at(*cyl, 0.2, 1.1);
    CHECK(fr.mean_curv == doctest::Approx(-1.0 / 1.4).epsilon(1e-13));
    CHECK(fr.gauss_curv == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("sphere limit of the torus: a -> 0 gives H -> -1/b") {
    // a = 0 itself is rejected, the limit is probed at a = 1e-6
    CHECK(code_of([] { make_surface("torus", {{"a", 0.0}, {"b", 1.0}}); }) ==
          Errc::invalid_params);
    auto limit = make_surface("torus", {{"a", 1e-6}, {"b", 1.0}});
    double worst = 0.0;
    for (double th = 0.1; th < kPi - 0.1; th += 0.05)
        worst = std::max(worst, std::abs(frame_at(*limit, th, 0.3).mean_curv + 1.0));
    CHECK(worst < 1e-5);
}

TEST_CASE("spheroid a=b reduces to the sphere closed forms") {
    auto sphere_like = make_surface("spheroid", {{"a", 1.0}, {"b", 1.0}});
    for (double th : {0.4, 1.0, 2.3}) {
        CHECK(spheroid_G(1.0, 1.0, th) == doctest::Approx(1.0));
        CHECK(spheroid_F(1.0, 1.0, th) == doctest::Approx(1.0));
        CHECK(sphere_like->reference_mean_curvature(th, 0.0) == doctest::Approx(-1.0));
        CHECK(sphere_like->reference_factor(2, th) == doctest::Approx(std::sin(th)));
        CHECK(sphere_like->reference_factor(0, th) ==
              doctest::Approx(std::pow(std::abs(std::cos(th)), 1.0)));
    }
}

TEST_CASE("grid construction validates counts and margins") {
    auto torus = make_surface("torus");
    CHECK(code_of([&] { make_grid(torus, GridSpec{8, 64, 0.05, 4}); }) ==
          Errc::grid_too_coarse);
    CHECK(code_of([&] { make_grid(torus, GridSpec{64, 64, 0.05, 3}); }) == Errc::config_error);
    auto spheroid = make_surface("spheroid");
    CHECK(code_of([&] { make_grid(spheroid, GridSpec{32, 32, 10.0, 4}); }) ==
          Errc::config_error);
    // periodic spacing times count equals the period
    auto g = make_grid(torus, GridSpec{32, 48, 0.05, 4});
    CHECK(g->h(0) * g->n(0) == doctest::Approx(2 * kPi).epsilon(1e-15));
    CHECK(g->h(1) * g->n(1) == doctest::Approx(2 * kPi).epsilon(1e-15));
}
