#pragma once

#include <functional>

#include "field.hpp"

namespace surfq {

struct PhysicalParams {
    double hbar = 1.0;
    double mass = 1.0;
};

// (1/sqrt(g)) d_mu (g^{mu nu} sqrt(g) d_nu psi), with the analytic metric
// factors at the nodes and FD derivatives of the product.
ScalarField laplace_beltrami(const ScalarField& psi);

// p_i psi = -i hbar (x_i^mu d_mu psi + H n_i psi), i in {0,1,2} = {x,y,z}.
ScalarField cartesian_momentum(const ScalarField& psi, int axis, const PhysicalParams& pp = {});

// The non-Hermitized -i hbar x_i^mu d_mu, kept as a negative control: its
// anti-Hermitian part is exactly the dropped H n_i term.
ScalarField cartesian_momentum_bare(const ScalarField& psi, int axis,
                                    const PhysicalParams& pp = {});

// p_mu psi = -i hbar (d_mu psi + (1/2) Gamma_mu psi).
ScalarField generalized_momentum(const ScalarField& psi, int mu, const PhysicalParams& pp = {});

// T = (1/2m) g^{-1/4} p_mu g^{1/4} g^{mu nu} g^{1/4} p_nu g^{-1/4}, composed
// literally from generalized_momentum and pointwise multiplications.
ScalarField kinetic_curved(const ScalarField& psi, const PhysicalParams& pp = {});

// (1/2m)(p_x^2 + p_y^2 + p_z^2) by double momentum application; carries the
// excess (hbar^2/2m) H^2 relative to -(hbar^2/2m) Lap.
ScalarField naive_p_squared(const ScalarField& psi, const PhysicalParams& pp = {});

using FieldOp = std::function<ScalarField(const ScalarField&)>;

// Nodes where the g^{1/4}-sandwiched compositions are resolved by the grid:
// excludes bands where |Gamma_mu| exceeds the slope cap (metric factors too
// steep for the stencil, e.g. near coordinate poles) plus the standard
// two-application interior trim.
std::vector<std::uint8_t> metric_resolvability_mask(const Grid& grid, double slope_cap = 1.5);

// max over seeded field pairs of |<phi, Op psi> - <Op phi, psi>| / (|phi| |psi|).
double hermiticity_defect(const std::shared_ptr<const Grid>& grid, const FieldOp& op,
                          std::uint64_t seed, int pairs, int bandlimit);

// Dense assembly of a field operator (grids up to 48x48): column k is Op
// applied to the k-th unit node field.  Supports the direct symmetry oracle
// w_i M_ij == conj(M_ji) w_j against the quadrature weights.
std::vector<complexd> assemble_dense(const std::shared_ptr<const Grid>& grid, const FieldOp& op);
double dense_symmetry_defect(const Grid& grid, const std::vector<complexd>& M);

} // namespace surfq
