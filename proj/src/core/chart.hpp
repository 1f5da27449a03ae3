#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>

#include "error.hpp"
#include "jet.hpp"
#include "vecmat.hpp"

namespace surfq {

// Embedding value r(xi, zeta) plus all first and second partials.
// d2 is symmetric in the two coordinate indices by construction.
struct EmbeddingJet {
    Vec3 value{};
    std::array<Vec3, 2> d1{};
    std::array<std::array<Vec3, 2>, 2> d2{};
};

struct ChartDomain {
    std::array<double, 2> lo{};
    std::array<double, 2> hi{};
    std::array<bool, 2> periodic{};

    double span(int mu) const { return hi[mu] - lo[mu]; }
};

// A parametrized surface patch (xi, zeta) -> R^3.  Charts are immutable
// after construction and freely shared across threads.
class Chart {
public:
    virtual ~Chart() = default;

    const std::string& name() const { return name_; }
    const std::map<std::string, double>& params() const { return params_; }
    const ChartDomain& domain() const { return domain_; }
    const std::array<std::string, 2>& coord_names() const { return coord_names_; }

    double param(const std::string& key) const { return params_.at(key); }

    // max(|a|,|b|,1); used for dimensionally consistent degeneracy thresholds.
    double length_scale() const { return length_scale_; }

    // Surface of revolution about z with coords (profile, azimuth).
    bool revolution_about_z() const { return revolution_; }

    virtual Vec3 position(double xi, double zeta) const = 0;
    virtual EmbeddingJet jet(double xi, double zeta) const = 0;

    // Closed-form reference quantities, where the chart has them.
    virtual bool has_reference_curvature() const { return false; }
    virtual double reference_mean_curvature(double, double) const {
        throw Error(Errc::missing_reference, "no closed-form H for chart '" + name_ + "'");
    }
    virtual bool has_reference_normal() const { return false; }
    virtual Vec3 reference_normal(double, double) const {
        throw Error(Errc::missing_reference, "no closed-form normal for chart '" + name_ + "'");
    }

    // Ordering-factor closed forms f_i(theta) for revolution charts.
    virtual bool has_reference_factors() const { return false; }
    virtual double reference_factor(int, double) const {
        throw Error(Errc::missing_reference, "no closed-form factors for chart '" + name_ + "'");
    }
    virtual double reference_factor_ln_slope(int, double) const {
        throw Error(Errc::missing_reference, "no closed-form factors for chart '" + name_ + "'");
    }
    // Profile-coordinate band where the printed factor formula for an axis is
    // real-valued and differentiable.
    virtual std::array<double, 2> reference_factor_band(int) const {
        throw Error(Errc::missing_reference, "no closed-form factors for chart '" + name_ + "'");
    }

protected:
    Chart(std::string name, std::map<std::string, double> params, ChartDomain dom,
          std::array<std::string, 2> coord_names, bool revolution)
        : name_(std::move(name)),
          params_(std::move(params)),
          domain_(dom),
          coord_names_(coord_names),
          revolution_(revolution) {
        length_scale_ = 1.0;
        for (const auto& [k, v] : params_) {
            (void)k;
            length_scale_ = std::max(length_scale_, std::abs(v));
        }
    }

private:
    std::string name_;
    std::map<std::string, double> params_;
    ChartDomain domain_;
    std::array<std::string, 2> coord_names_;
    bool revolution_ = false;
    double length_scale_ = 1.0;
};

// Derived charts implement map<T>(xi, zeta) once; position() evaluates it on
// doubles and jet() on second-order AD scalars.
template <class Derived>
class ChartBase : public Chart {
public:
    using Chart::Chart;

    Vec3 position(double xi, double zeta) const final {
        return static_cast<const Derived&>(*this).template map<double>(xi, zeta);
    }

    EmbeddingJet jet(double xi, double zeta) const override {
        const V3<ad::Jet> p = static_cast<const Derived&>(*this).template map<ad::Jet>(
            ad::Jet::variable(xi, 0), ad::Jet::variable(zeta, 1));
        EmbeddingJet out;
        for (int i = 0; i < 3; ++i) {
            out.value[i] = p[i].v;
            out.d1[0][i] = p[i].g[0];
            out.d1[1][i] = p[i].g[1];
            out.d2[0][0][i] = p[i].h[0];
            out.d2[0][1][i] = p[i].h[1];
            out.d2[1][0][i] = p[i].h[1];
            out.d2[1][1][i] = p[i].h[2];
        }
        return out;
    }
};

// Factory for the built-in chart set.  Throws InvalidParams for unknown
// names, unknown parameter keys, or parameter values violating the chart's
// constraints (the violated constraint is named in the message).
std::shared_ptr<const Chart> make_surface(const std::string& name,
                                          const std::map<std::string, double>& params = {});

// Spheroid closed forms (eps = b/a):
//   G = 2 / (1 + eps^2 + (1 - eps^2) cos 2 theta)
//   F = eps^2 (3 + eps^2 + (1 - eps^2) cos 2 theta) G^2 / 4
// Frame-side recomputations: G = a^2 g^{theta theta}, F = -H b sqrt(G).
double spheroid_G(double a, double b, double theta);
double spheroid_F(double a, double b, double theta);

} // namespace surfq
