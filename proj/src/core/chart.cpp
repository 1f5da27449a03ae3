#include "chart.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace surfq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// |base|^e with the 0^0 = 1 convention, for the printed factor formulas whose
// bases change sign inside the coordinate range.
double powabs(double base, double e) {
    if (e == 0.0) return 1.0;
    return std::pow(std::abs(base), e);
}

void check_known_keys(const std::string& chart, const std::map<std::string, double>& given,
                      const std::set<std::string>& known) {
    for (const auto& [k, v] : given) {
        (void)v;
        if (!known.count(k)) {
            throw Error(Errc::invalid_params,
                        "unknown parameter '" + k + "' for chart '" + chart + "'");
        }
    }
}

double get_or(const std::map<std::string, double>& m, const std::string& k, double dflt) {
    auto it = m.find(k);
    return it == m.end() ? dflt : it->second;
}

class PlaneChart final : public ChartBase<PlaneChart> {
public:
    explicit PlaneChart(std::map<std::string, double> params)
        : ChartBase(
              "plane", std::move(params),
              ChartDomain{{-1.0, -1.0}, {1.0, 1.0}, {false, false}},
              {"xi", "zeta"}, false) {}

    template <class T>
    V3<T> map(T xi, T zeta) const {
        return {xi, zeta, T(0.0)};
    }

    bool has_reference_curvature() const override { return true; }
    double reference_mean_curvature(double, double) const override { return 0.0; }
    bool has_reference_normal() const override { return true; }
    Vec3 reference_normal(double, double) const override { return {0.0, 0.0, 1.0}; }
};

// Monge patch z = h(xi, zeta) with a built-in height function:
// shape 0 is the quadratic bump amp (1-xi^2)(1-zeta^2), shape 1 the sinusoid
// amp sin(pi freq xi) sin(pi freq zeta).
class MongeChart final : public ChartBase<MongeChart> {
public:
    explicit MongeChart(std::map<std::string, double> params)
        : ChartBase("monge", std::move(params),
                    ChartDomain{{-1.0, -1.0}, {1.0, 1.0}, {false, false}},
                    {"xi", "zeta"}, false),
          amp_(param("amp")),
          shape_(static_cast<int>(param("shape"))),
          freq_(param("freq")) {}

    template <class T>
    V3<T> map(T xi, T zeta) const {
        using std::sin;
        using ad::sin;
        if (shape_ == 0)
            return {xi, zeta, amp_ * ((T(1.0) - xi * xi) * (T(1.0) - zeta * zeta))};
        return {xi, zeta, amp_ * (sin(T(kPi * freq_) * xi) * sin(T(kPi * freq_) * zeta))};
    }

private:
    double amp_;
    int shape_;
    double freq_;
};

// r = (a sin th cos ph, a sin th sin ph, b cos th), th in (0, pi), ph periodic.
// The th range is the standard colatitude; the chart is injective only there.
class SpheroidChart final : public ChartBase<SpheroidChart> {
public:
    SpheroidChart(std::string name, std::map<std::string, double> params)
        : ChartBase(std::move(name), std::move(params),
                    ChartDomain{{0.0, 0.0}, {kPi, kTwoPi}, {false, true}},
                    {"theta", "phi"}, true),
          a_(param("a")),
          b_(param("b")),
          eps_(b_ / a_) {}

    template <class T>
    V3<T> map(T th, T ph) const {
        using std::cos;
        using std::sin;
        using ad::cos;
        using ad::sin;
        return {a_ * (sin(th) * cos(ph)), a_ * (sin(th) * sin(ph)), b_ * cos(th)};
    }

    double a() const { return a_; }
    double b() const { return b_; }
    double epsilon() const { return eps_; }

    double G(double th) const { return spheroid_G(a_, b_, th); }
    double F(double th) const { return spheroid_F(a_, b_, th); }

    bool has_reference_curvature() const override { return true; }
    double reference_mean_curvature(double th, double) const override {
        const double g = G(th);
        return -b_ / (4.0 * a_ * a_) *
               (3.0 + eps_ * eps_ + (1.0 - eps_ * eps_) * std::cos(2.0 * th)) * g * std::sqrt(g);
    }
    bool has_reference_normal() const override { return true; }
    Vec3 reference_normal(double th, double ph) const override {
        const double rg = std::sqrt(G(th));
        return {rg * eps_ * std::sin(th) * std::cos(ph), rg * eps_ * std::sin(th) * std::sin(ph),
                rg * std::cos(th)};
    }

    bool has_reference_factors() const override { return true; }
    double reference_factor(int axis, double th) const override {
        const double g4 = std::pow(G(th), 0.25);
        if (axis == 2) return g4 * std::sin(th);
        const double ex = (a_ * a_ + b_ * b_) / (2.0 * a_ * a_);
        return g4 * powabs(std::cos(th), ex);
    }
    double reference_factor_ln_slope(int axis, double th) const override {
        // d/dth ln G^{1/4} = (1 - eps^2) sin 2th G / 4
        const double common = 0.25 * (1.0 - eps_ * eps_) * std::sin(2.0 * th) * G(th);
        if (axis == 2) return common + std::cos(th) / std::sin(th);
        const double ex = (a_ * a_ + b_ * b_) / (2.0 * a_ * a_);
        return common - ex * std::tan(th);
    }
    std::array<double, 2> reference_factor_band(int axis) const override {
        if (axis == 2) return {0.0, kPi};
        return {0.0, kPi / 2.0};  // (cos th)^ex needs cos th > 0
    }

private:
    double a_, b_, eps_;
};

// r = ((a + b sin th) cos ph, (a + b sin th) sin ph, b cos th), both periodic.
class TorusChart final : public ChartBase<TorusChart> {
public:
    explicit TorusChart(std::map<std::string, double> params)
        : ChartBase("torus", std::move(params),
                    ChartDomain{{0.0, 0.0}, {kTwoPi, kTwoPi}, {true, true}},
                    {"theta", "phi"}, true),
          a_(param("a")),
          b_(param("b")) {}

    template <class T>
    V3<T> map(T th, T ph) const {
        using std::cos;
        using std::sin;
        using ad::cos;
        using ad::sin;
        T w = T(a_) + b_ * sin(th);
        return {w * cos(ph), w * sin(ph), b_ * cos(th)};
    }

    double a() const { return a_; }
    double b() const { return b_; }

    bool has_reference_curvature() const override { return true; }
    double reference_mean_curvature(double th, double) const override {
        const double s = std::sin(th);
        return -(a_ + 2.0 * b_ * s) / (2.0 * b_ * (a_ + b_ * s));
    }
    bool has_reference_normal() const override { return true; }
    Vec3 reference_normal(double th, double ph) const override {
        return {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
    }

    bool has_reference_factors() const override { return true; }
    double reference_factor(int axis, double th) const override {
        const double s = std::sin(th);
        if (axis == 2) return std::sqrt(std::abs((a_ + b_ * s) * s));
        const double e1 = 0.5 * a_ * a_ / (a_ * a_ - b_ * b_);
        const double e2 = 0.25 * (a_ - 2.0 * b_) / (a_ - b_);
        const double e3 = 0.25 * (a_ + 2.0 * b_) / (a_ + b_);
        return powabs(a_ + b_ * s, e1) * powabs(1.0 + s, e2) * powabs(s - 1.0, e3);
    }
    double reference_factor_ln_slope(int axis, double th) const override {
        const double s = std::sin(th);
        const double c = std::cos(th);
        if (axis == 2) return 0.5 * c * (a_ + 2.0 * b_ * s) / ((a_ + b_ * s) * s);
        const double e1 = 0.5 * a_ * a_ / (a_ * a_ - b_ * b_);
        const double e2 = 0.25 * (a_ - 2.0 * b_) / (a_ - b_);
        const double e3 = 0.25 * (a_ + 2.0 * b_) / (a_ + b_);
        return e1 * b_ * c / (a_ + b_ * s) + e2 * c / (1.0 + s) + e3 * c / (s - 1.0);
    }
    std::array<double, 2> reference_factor_band(int axis) const override {
        if (axis == 2) return {0.0, kPi};
        return {0.0, kPi / 2.0};
    }

private:
    double a_, b_;
};

// r = (a cos ph, a sin ph, -t); the sign of z keeps n = r_t x r_ph outward.
class CylinderChart final : public ChartBase<CylinderChart> {
public:
    explicit CylinderChart(std::map<std::string, double> params)
        : ChartBase("cylinder", std::move(params),
                    ChartDomain{{-1.0, 0.0}, {1.0, kTwoPi}, {false, true}},
                    {"t", "phi"}, true),
          a_(param("a")) {}

    template <class T>
    V3<T> map(T t, T ph) const {
        using std::cos;
        using std::sin;
        using ad::cos;
        using ad::sin;
        return {a_ * cos(ph), a_ * sin(ph), -t};
    }

    bool has_reference_curvature() const override { return true; }
    double reference_mean_curvature(double, double) const override { return -1.0 / (2.0 * a_); }
    bool has_reference_normal() const override { return true; }
    Vec3 reference_normal(double, double ph) const override {
        return {std::cos(ph), std::sin(ph), 0.0};
    }

private:
    double a_;
};

// Minimal surface with H = 0 everywhere but K < 0:
// r = (c cosh t cos ph, c cosh t sin ph, -c t).
class CatenoidChart final : public ChartBase<CatenoidChart> {
public:
    explicit CatenoidChart(std::map<std::string, double> params)
        : ChartBase("catenoid", std::move(params),
                    ChartDomain{{-1.0, 0.0}, {1.0, kTwoPi}, {false, true}},
                    {"t", "phi"}, true),
          c_(param("c")) {}

    template <class T>
    V3<T> map(T t, T ph) const {
        using std::cos;
        using std::cosh;
        using std::sin;
        using ad::cos;
        using ad::cosh;
        using ad::sin;
        return {c_ * (cosh(t) * cos(ph)), c_ * (cosh(t) * sin(ph)), -c_ * t};
    }

    bool has_reference_curvature() const override { return true; }
    double reference_mean_curvature(double, double) const override { return 0.0; }
    bool has_reference_normal() const override { return true; }
    Vec3 reference_normal(double t, double ph) const override {
        const double sech = 1.0 / std::cosh(t);
        return {std::cos(ph) * sech, std::sin(ph) * sech, std::tanh(t)};
    }

private:
    double c_;
};

} // namespace

double spheroid_G(double a, double b, double theta) {
    const double eps = b / a;
    return 2.0 / (1.0 + eps * eps + (1.0 - eps * eps) * std::cos(2.0 * theta));
}

double spheroid_F(double a, double b, double theta) {
    const double eps = b / a;
    const double g = spheroid_G(a, b, theta);
    return eps * eps * (3.0 + eps * eps + (1.0 - eps * eps) * std::cos(2.0 * theta)) * g * g /
           4.0;
}

std::shared_ptr<const Chart> make_surface(const std::string& name,
                                          const std::map<std::string, double>& params) {
    auto require_positive = [&](const std::string& key, double v) {
        if (!(v > 0.0)) {
            std::ostringstream os;
            os << "chart '" << name << "' requires " << key << " > 0 (got " << v << ")";
            throw Error(Errc::invalid_params, os.str());
        }
    };

    if (name == "plane") {
        check_known_keys(name, params, {});
        return std::make_shared<PlaneChart>(params);
    }
    if (name == "monge") {
        check_known_keys(name, params, {"amp", "shape", "freq"});
        std::map<std::string, double> p = params;
        p["amp"] = get_or(params, "amp", 0.25);
        p["shape"] = get_or(params, "shape", 0.0);
        p["freq"] = get_or(params, "freq", 1.0);
        if (p["shape"] != 0.0 && p["shape"] != 1.0)
            throw Error(Errc::invalid_params, "monge shape must be 0 (bump) or 1 (sinusoid)");
        require_positive("freq", p["freq"]);
        return std::make_shared<MongeChart>(p);
    }
    if (name == "sphere") {
        check_known_keys(name, params, {"a"});
        const double a = get_or(params, "a", 1.0);
        require_positive("a", a);
        return std::make_shared<SpheroidChart>("sphere",
                                               std::map<std::string, double>{{"a", a}, {"b", a}});
    }
    if (name == "spheroid") {
        check_known_keys(name, params, {"a", "b"});
        std::map<std::string, double> p{{"a", get_or(params, "a", 1.0)},
                                        {"b", get_or(params, "b", 2.0)}};
        require_positive("a", p["a"]);
        require_positive("b", p["b"]);
        return std::make_shared<SpheroidChart>("spheroid", p);
    }
    if (name == "torus") {
        check_known_keys(name, params, {"a", "b"});
        std::map<std::string, double> p{{"a", get_or(params, "a", 2.0)},
                                        {"b", get_or(params, "b", 1.0)}};
        require_positive("a", p["a"]);
        require_positive("b", p["b"]);
        // Ring torus needs a > b.  The near-sphere regime a <= 1e-3 b is also
        // accepted for limit studies (H -> -1/b as a -> 0); intermediate
        // spindle tori are rejected.
        const bool ring = p["a"] > p["b"];
        const bool sphere_limit = p["a"] <= 1e-3 * p["b"];
        if (!ring && !sphere_limit) {
            std::ostringstream os;
            os << "torus requires a > b (got a = " << p["a"] << ", b = " << p["b"] << ")";
            throw Error(Errc::invalid_params, os.str());
        }
        return std::make_shared<TorusChart>(p);
    }
    if (name == "cylinder") {
        check_known_keys(name, params, {"a"});
        const double a = get_or(params, "a", 1.0);
        require_positive("a", a);
        return std::make_shared<CylinderChart>(std::map<std::string, double>{{"a", a}});
    }
    if (name == "catenoid") {
        check_known_keys(name, params, {"c"});
        const double c = get_or(params, "c", 1.0);
        require_positive("c", c);
        return std::make_shared<CatenoidChart>(std::map<std::string, double>{{"c", c}});
    }
    throw Error(Errc::invalid_params, "unknown surface '" + name + "'");
}

} // namespace surfq
