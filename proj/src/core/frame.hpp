#pragma once

#include "chart.hpp"
#include "vecmat.hpp"

namespace surfq {

// Pointwise geometric dictionary of an embedded surface:
//   r_mu, r^mu, g_{mu nu}, g^{mu nu}, g, n, b_{mu nu}, Gamma^gamma_{mu nu},
//   Gamma_mu = Gamma^nu_{mu nu}, H, K.
struct GeomFrame {
    Vec3 position{};
    std::array<Vec3, 2> r_cov{};     // r_mu = d_mu r
    std::array<Vec3, 2> r_contra{};  // r^mu = g^{mu nu} r_nu
    Mat2 metric{};                   // g_{mu nu} = r_mu . r_nu
    Mat2 metric_inv{};
    double det_g = 0.0;
    Vec3 normal{};                   // unit, along r_xi x r_zeta
    Mat2 second_form{};              // b_{mu nu} = n . d_mu d_nu r
    std::array<std::array<std::array<double, 2>, 2>, 2> christoffel{};  // [gamma][mu][nu]
    std::array<double, 2> gamma_contracted{};  // Gamma_mu = Gamma^nu_{mu nu}
    double mean_curv = 0.0;                    // H = (1/2) g^{mu nu} b_{mu nu}
    double gauss_curv = 0.0;                   // K = det b / det g

    // Cartesian component i of r^mu.
    double x_contra(int axis, int mu) const { return r_contra[mu][axis]; }
};

GeomFrame frame_from_jet(const EmbeddingJet& jet, double eps_reg);

// Throws DegenerateChart when |r_xi x r_zeta| < 1e-12 * length_scale^2
// (coordinate singularity, e.g. a spheroid pole).
GeomFrame frame_at(const Chart& chart, double xi, double zeta);

// H n; by the contracted Gauss formula this equals (1/2) Lap r.
Vec3 mean_curvature_vector(const GeomFrame& frame);

} // namespace surfq
