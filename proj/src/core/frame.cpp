#include "frame.hpp"

#include <cmath>
#include <sstream>

#include "error.hpp"

namespace surfq {

GeomFrame frame_from_jet(const EmbeddingJet& jet, double eps_reg) {
    GeomFrame f;
    f.position = jet.value;
    f.r_cov = jet.d1;

    const Vec3 cr = cross(jet.d1[0], jet.d1[1]);
    const double crn = norm(cr);
    if (crn < eps_reg) {
        std::ostringstream os;
        os << "|r_xi x r_zeta| = " << crn << " < " << eps_reg << " (coordinate singularity)";
        throw Error(Errc::degenerate_chart, os.str());
    }
    f.normal = {cr[0] / crn, cr[1] / crn, cr[2] / crn};

    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu) f.metric[mu][nu] = dot(jet.d1[mu], jet.d1[nu]);
    f.det_g = det2(f.metric);
    f.metric_inv = inv2(f.metric);

    for (int mu = 0; mu < 2; ++mu) {
        f.r_contra[mu] = f.metric_inv[mu][0] * jet.d1[0] + f.metric_inv[mu][1] * jet.d1[1];
    }

    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu) f.second_form[mu][nu] = dot(f.normal, jet.d2[mu][nu]);

    // Gauss formula d_mu d_nu r = Gamma^gamma_{mu nu} r_gamma + b_{mu nu} n,
    // so Gamma^gamma_{mu nu} = r^gamma . d_mu d_nu r.
    for (int gamma = 0; gamma < 2; ++gamma)
        for (int mu = 0; mu < 2; ++mu)
            for (int nu = 0; nu < 2; ++nu)
                f.christoffel[gamma][mu][nu] = dot(f.r_contra[gamma], jet.d2[mu][nu]);

    for (int mu = 0; mu < 2; ++mu)
        f.gamma_contracted[mu] = f.christoffel[0][mu][0] + f.christoffel[1][mu][1];

    double trace = 0.0;
    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu) trace += f.metric_inv[mu][nu] * f.second_form[mu][nu];
    f.mean_curv = 0.5 * trace;
    f.gauss_curv = det2(f.second_form) / f.det_g;
    return f;
}

GeomFrame frame_at(const Chart& chart, double xi, double zeta) {
    const double scale = chart.length_scale();
    return frame_from_jet(chart.jet(xi, zeta), 1e-12 * scale * scale);
}

Vec3 mean_curvature_vector(const GeomFrame& frame) {
    return frame.mean_curv * frame.normal;
}

} // namespace surfq
