#include "operators.hpp"

#include <cmath>

#include "error.hpp"

namespace surfq {

ScalarField laplace_beltrami(const ScalarField& psi) {
    const Grid& g = psi.grid();
    ScalarField d0 = partial(psi, 0);
    ScalarField d1 = partial(psi, 1);
    ScalarField flux0(psi.grid_ptr()), flux1(psi.grid_ptr());
    for (std::size_t k = 0; k < psi.size(); ++k) {
        const GeomFrame& fr = g.frame(k);
        const double sg = std::sqrt(fr.det_g);
        flux0[k] = sg * (fr.metric_inv[0][0] * d0[k] + fr.metric_inv[0][1] * d1[k]);
        flux1[k] = sg * (fr.metric_inv[1][0] * d0[k] + fr.metric_inv[1][1] * d1[k]);
    }
    ScalarField out = partial(flux0, 0);
    out += partial(flux1, 1);
    for (std::size_t k = 0; k < psi.size(); ++k) out[k] /= std::sqrt(g.frame(k).det_g);
    return out;
}

namespace {

ScalarField momentum_impl(const ScalarField& psi, int axis, const PhysicalParams& pp,
                          bool with_curvature_term) {
    const Grid& g = psi.grid();
    ScalarField d0 = partial(psi, 0);
    ScalarField d1 = partial(psi, 1);
    ScalarField out(psi.grid_ptr());
    const complexd mih{0.0, -pp.hbar};
    for (std::size_t k = 0; k < psi.size(); ++k) {
        const GeomFrame& fr = g.frame(k);
        complexd acc = fr.x_contra(axis, 0) * d0[k] + fr.x_contra(axis, 1) * d1[k];
        if (with_curvature_term) acc += fr.mean_curv * fr.normal[axis] * psi[k];
        out[k] = mih * acc;
    }
    return out;
}

} // namespace

ScalarField cartesian_momentum(const ScalarField& psi, int axis, const PhysicalParams& pp) {
    return momentum_impl(psi, axis, pp, true);
}

ScalarField cartesian_momentum_bare(const ScalarField& psi, int axis, const PhysicalParams& pp) {
    return momentum_impl(psi, axis, pp, false);
}

ScalarField generalized_momentum(const ScalarField& psi, int mu, const PhysicalParams& pp) {
    const Grid& g = psi.grid();
    ScalarField out = partial(psi, mu);
    const complexd mih{0.0, -pp.hbar};
    for (std::size_t k = 0; k < psi.size(); ++k)
        out[k] = mih * (out[k] + 0.5 * g.frame(k).gamma_contracted[mu] * psi[k]);
    return out;
}

ScalarField kinetic_curved(const ScalarField& psi, const PhysicalParams& pp) {
    const Grid& g = psi.grid();
    // innermost g^{-1/4}
    ScalarField u(psi.grid_ptr());
    for (std::size_t k = 0; k < psi.size(); ++k)
        u[k] = psi[k] / std::pow(g.frame(k).det_g, 0.25);
    // p_nu, then the g^{1/4} g^{mu nu} g^{1/4} sandwich
    ScalarField v0 = generalized_momentum(u, 0, pp);
    ScalarField v1 = generalized_momentum(u, 1, pp);
    ScalarField w0(psi.grid_ptr()), w1(psi.grid_ptr());
    for (std::size_t k = 0; k < psi.size(); ++k) {
        const GeomFrame& fr = g.frame(k);
        const double sg = std::sqrt(fr.det_g);
        w0[k] = sg * (fr.metric_inv[0][0] * v0[k] + fr.metric_inv[0][1] * v1[k]);
        w1[k] = sg * (fr.metric_inv[1][0] * v0[k] + fr.metric_inv[1][1] * v1[k]);
    }
    ScalarField out = generalized_momentum(w0, 0, pp);
    out += generalized_momentum(w1, 1, pp);
    for (std::size_t k = 0; k < psi.size(); ++k)
        out[k] /= 2.0 * pp.mass * std::pow(g.frame(k).det_g, 0.25);
    return out;
}

ScalarField naive_p_squared(const ScalarField& psi, const PhysicalParams& pp) {
    ScalarField out(psi.grid_ptr());
    for (int axis = 0; axis < 3; ++axis)
        out += cartesian_momentum(cartesian_momentum(psi, axis, pp), axis, pp);
    out *= complexd{1.0 / (2.0 * pp.mass), 0.0};
    return out;
}

std::vector<std::uint8_t> metric_resolvability_mask(const Grid& grid, double slope_cap) {
    std::vector<std::uint8_t> mask = grid.interior_mask(2);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto& gc = grid.frame(k).gamma_contracted;
        if (std::abs(gc[0]) > slope_cap || std::abs(gc[1]) > slope_cap) mask[k] = 0;
    }
    return mask;
}

double hermiticity_defect(const std::shared_ptr<const Grid>& grid, const FieldOp& op,
                          std::uint64_t seed, int pairs, int bandlimit) {
    double worst = 0.0;
    for (int p = 0; p < pairs; ++p) {
        const ScalarField phi = RandomTestField(grid, seed + 2 * p, bandlimit).sample();
        const ScalarField psi = RandomTestField(grid, seed + 2 * p + 1, bandlimit).sample();
        const complexd lhs = inner_product(phi, op(psi));
        const complexd rhs = inner_product(op(phi), psi);
        const double d = std::abs(lhs - rhs) / (norm_l2(phi) * norm_l2(psi));
        worst = std::max(worst, d);
    }
    return worst;
}

std::vector<complexd> assemble_dense(const std::shared_ptr<const Grid>& grid, const FieldOp& op) {
    const std::size_t n = grid->size();
    if (n > 48u * 48u)
        throw Error(Errc::invalid_params, "dense assembly limited to grids up to 48x48");
    std::vector<complexd> M(n * n);
    ScalarField e(grid);
    for (std::size_t col = 0; col < n; ++col) {
        e[col] = {1.0, 0.0};
        const ScalarField out = op(e);
        for (std::size_t row = 0; row < n; ++row) M[row * n + col] = out[row];
        e[col] = {0.0, 0.0};
    }
    return M;
}

double dense_symmetry_defect(const Grid& grid, const std::vector<complexd>& M) {
    const std::size_t n = grid.size();
    std::vector<double> w(n);
    for (int i = 0; i < grid.n(0); ++i)
        for (int j = 0; j < grid.n(1); ++j)
            w[grid.index(i, j)] = std::sqrt(grid.frame(grid.index(i, j)).det_g) *
                                  grid.quad_weights(0)[i] * grid.quad_weights(1)[j];
    double defect = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const complexd a = w[i] * M[i * n + j];
            const complexd b = std::conj(M[j * n + i]) * w[j];
            defect = std::max(defect, std::abs(a - b));
            scale = std::max(scale, std::abs(a));
        }
    return defect / scale;
}

} // namespace surfq
