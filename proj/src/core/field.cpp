#include "field.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "error.hpp"
#include "fdstencil.hpp"

namespace surfq {

namespace {

void require_same_grid(const ScalarField& a, const ScalarField& b) {
    if (a.grid_ptr() != b.grid_ptr())
        throw Error(Errc::grid_mismatch, "fields live on different grids");
}

} // namespace

bool ScalarField::all_finite() const {
    for (const auto& z : v_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    require_same_grid(*this, o);
    for (std::size_t k = 0; k < v_.size(); ++k) v_[k] += o.v_[k];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
    require_same_grid(*this, o);
    for (std::size_t k = 0; k < v_.size(); ++k) v_[k] -= o.v_[k];
    return *this;
}

ScalarField& ScalarField::operator*=(complexd s) {
    for (auto& z : v_) z *= s;
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(complexd s, ScalarField a) { return a *= s; }

ScalarField partial(const ScalarField& f, int mu) {
    const Grid& g = f.grid();
    const int order = g.fd_order();
    const int n = g.n(mu);
    const int m = g.n(1 - mu);
    if (n < order + 1) {
        std::ostringstream os;
        os << "coordinate " << mu << " has " << n << " nodes, stencil needs " << order + 1;
        throw Error(Errc::grid_too_coarse, os.str());
    }
    const double h = g.h(mu);
    const int radius = order / 2;

    ScalarField out(f.grid_ptr());
    auto line_value = [&](int a, int b) -> const complexd& {
        return (mu == 0) ? f.at(a, b) : f.at(b, a);
    };
    auto line_out = [&](int a, int b) -> complexd& {
        return (mu == 0) ? out.at(a, b) : out.at(b, a);
    };

    if (g.periodic(mu)) {
        const Stencil st = first_derivative_stencil(order, radius, radius);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < m; ++b) {
                complexd acc{0.0, 0.0};
                for (std::size_t k = 0; k < st.offsets.size(); ++k) {
                    int aw = a + st.offsets[k];
                    aw -= n * static_cast<int>(std::floor(static_cast<double>(aw) / n));
                    acc += st.weights[k] * line_value(aw, b);
                }
                line_out(a, b) = acc / h;
            }
        }
    } else {
        for (int a = 0; a < n; ++a) {
            const Stencil st = first_derivative_stencil(order, a, n - 1 - a);
            for (int b = 0; b < m; ++b) {
                complexd acc{0.0, 0.0};
                for (std::size_t k = 0; k < st.offsets.size(); ++k)
                    acc += st.weights[k] * line_value(a + st.offsets[k], b);
                line_out(a, b) = acc / h;
            }
        }
    }
    return out;
}

complexd inner_product(const ScalarField& phi, const ScalarField& psi) {
    require_same_grid(phi, psi);
    const Grid& g = phi.grid();
    const auto& w0 = g.quad_weights(0);
    const auto& w1 = g.quad_weights(1);
    complexd acc{0.0, 0.0};
    for (int i = 0; i < g.n(0); ++i) {
        complexd row{0.0, 0.0};
        for (int j = 0; j < g.n(1); ++j) {
            const std::size_t k = g.index(i, j);
            row += std::conj(phi[k]) * psi[k] * (std::sqrt(g.frame(k).det_g) * w1[j]);
        }
        acc += w0[i] * row;
    }
    return acc;
}

double norm_l2(const ScalarField& f) { return std::sqrt(std::abs(inner_product(f, f))); }

double max_abs(const ScalarField& f, const std::vector<std::uint8_t>* mask) {
    double m = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (mask && !(*mask)[k]) continue;
        m = std::max(m, std::abs(f[k]));
    }
    return m;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kTaper = 0.4;  // spectral decay per mode index

double unit_symmetric(std::mt19937_64& rng) {
    return ((rng() >> 11) * 0x1.0p-53) * 2.0 - 1.0;
}

} // namespace

RandomTestField::RandomTestField(std::shared_ptr<const Grid> grid, std::uint64_t seed,
                                 int bandlimit)
    : grid_(std::move(grid)), bandlimit_(bandlimit) {
    if (bandlimit < 0) throw Error(Errc::invalid_params, "bandlimit must be >= 0");
    for (int mu = 0; mu < 2; ++mu) {
        if (grid_->periodic(mu) && bandlimit > grid_->n(mu) / 4) {
            std::ostringstream os;
            os << "bandlimit " << bandlimit << " exceeds n/4 = " << grid_->n(mu) / 4
               << " for periodic coordinate " << mu;
            throw Error(Errc::invalid_params, os.str());
        }
    }
    const int c0 = grid_->periodic(0) ? 2 * bandlimit + 1 : bandlimit + 1;
    const int c1 = grid_->periodic(1) ? 2 * bandlimit + 1 : bandlimit + 1;
    coef_.resize(static_cast<std::size_t>(c0) * c1);
    std::mt19937_64 rng(seed);
    for (int k = 0; k < c0; ++k) {
        for (int l = 0; l < c1; ++l) {
            const int deg0 = grid_->periodic(0) ? std::abs(k - bandlimit) : k;
            const int deg1 = grid_->periodic(1) ? std::abs(l - bandlimit) : l;
            const double re = unit_symmetric(rng);
            const double im = unit_symmetric(rng);
            coef_[static_cast<std::size_t>(k) * c1 + l] =
                complexd{re, im} * std::pow(kTaper, deg0 + deg1);
        }
    }
    norm_ = 1.0;
    double peak = 0.0;
    for (int i = 0; i < grid_->n(0); ++i)
        for (int j = 0; j < grid_->n(1); ++j)
            peak = std::max(peak, std::abs(value(grid_->coord(0, i), grid_->coord(1, j))));
    if (peak > 0.0) norm_ = peak;
}

complexd RandomTestField::term(int k, int l, double xi, double zeta, int deriv_mu) const {
    const double co[2] = {xi, zeta};
    const int idx[2] = {k, l};
    complexd prod{1.0, 0.0};
    for (int mu = 0; mu < 2; ++mu) {
        complexd factor;
        if (grid_->periodic(mu)) {
            const int mode = idx[mu] - bandlimit_;
            const double omega =
                2.0 * std::numbers::pi / grid_->chart().domain().span(mu) * mode;
            const double ph = omega * (co[mu] - grid_->chart().domain().lo[mu]);
            factor = complexd{std::cos(ph), std::sin(ph)};
            if (deriv_mu == mu) factor *= complexd{0.0, omega};
        } else {
            const int j = idx[mu];
            const double c = std::cos(co[mu]);
            if (deriv_mu == mu) {
                factor = (j == 0) ? complexd{0.0, 0.0}
                                  : complexd{-j * std::pow(c, j - 1) * std::sin(co[mu]), 0.0};
            } else {
                factor = complexd{std::pow(c, j), 0.0};
            }
        }
        prod *= factor;
    }
    return prod;
}

complexd RandomTestField::value(double xi, double zeta) const {
    const int c0 = grid_->periodic(0) ? 2 * bandlimit_ + 1 : bandlimit_ + 1;
    const int c1 = grid_->periodic(1) ? 2 * bandlimit_ + 1 : bandlimit_ + 1;
    complexd acc{0.0, 0.0};
    for (int k = 0; k < c0; ++k)
        for (int l = 0; l < c1; ++l)
            acc += coef_[static_cast<std::size_t>(k) * c1 + l] * term(k, l, xi, zeta, -1);
    if (bandlimit_ == 0) return acc / norm_;
    // C^3 window vanishing at the ends of non-periodic coordinates keeps
    // integration-by-parts boundary terms negligible.
    double w = 1.0;
    const double co[2] = {xi, zeta};
    for (int mu = 0; mu < 2; ++mu) {
        if (grid_->periodic(mu)) continue;
        const double u = (co[mu] - grid_->coord_lo(mu)) / (grid_->coord_hi(mu) - grid_->coord_lo(mu));
        const double s = std::sin(std::numbers::pi * u);
        w *= s * s * s * s;
    }
    return acc * w / norm_;
}

complexd RandomTestField::derivative(int mu, double xi, double zeta) const {
    const int c0 = grid_->periodic(0) ? 2 * bandlimit_ + 1 : bandlimit_ + 1;
    const int c1 = grid_->periodic(1) ? 2 * bandlimit_ + 1 : bandlimit_ + 1;
    complexd raw{0.0, 0.0}, draw{0.0, 0.0};
    for (int k = 0; k < c0; ++k)
        for (int l = 0; l < c1; ++l) {
            const complexd c = coef_[static_cast<std::size_t>(k) * c1 + l];
            raw += c * term(k, l, xi, zeta, -1);
            draw += c * term(k, l, xi, zeta, mu);
        }
    if (bandlimit_ == 0) return {0.0, 0.0};

    double w[2] = {1.0, 1.0};
    double dw[2] = {0.0, 0.0};
    const double co[2] = {xi, zeta};
    for (int nu = 0; nu < 2; ++nu) {
        if (grid_->periodic(nu)) continue;
        const double span = grid_->coord_hi(nu) - grid_->coord_lo(nu);
        const double u = (co[nu] - grid_->coord_lo(nu)) / span;
        const double s = std::sin(std::numbers::pi * u);
        const double c = std::cos(std::numbers::pi * u);
        w[nu] = s * s * s * s;
        dw[nu] = 4.0 * s * s * s * c * std::numbers::pi / span;
    }
    return (draw * (w[0] * w[1]) + raw * (dw[mu] * w[1 - mu])) / norm_;
}

ScalarField RandomTestField::sample() const {
    ScalarField f(grid_);
    for (int i = 0; i < grid_->n(0); ++i)
        for (int j = 0; j < grid_->n(1); ++j)
            f.at(i, j) = value(grid_->coord(0, i), grid_->coord(1, j));
    return f;
}

ScalarField RandomTestField::sample_offset(double offset) const {
    ScalarField f = sample();
    for (std::size_t k = 0; k < f.size(); ++k) f[k] += offset;
    return f;
}

} // namespace surfq
