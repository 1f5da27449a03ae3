#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "field.hpp"
#include "operators.hpp"

namespace surfq {

enum class FactorOrigin { closed_form_paper, ode_solved, constant };

// A point where d ln f_i / dc blows up: f ~ |c - location|^exponent locally.
// Fractional exponents are branch kinks that FD cannot resolve nearby, so
// they get a stricter slope cap in the evaluation mask.
struct FactorSingularity {
    double location = 0.0;
    double exponent = 0.0;
    bool fractional = false;
};

// The three kinetic-energy orderings built from the same factors:
//   symmetric  (1/f) p f^2 p (1/f)
//   left       (1/f) p f p
//   right      p f p (1/f)
enum class Ordering { symmetric, left, right };

// Operator-ordering factor triple (f_x, f_y, f_z) over a grid.  On surfaces
// of revolution each factor is a function of a single coordinate (the
// profile angle, or the azimuth when the profile component of r^mu vanishes
// identically for that axis, as happens for x and y on the cylinder).
class FactorSet {
public:
    // |d ln f / dc| cap near fractional-exponent kinks, used by the
    // evaluation mask.  0.3 holds the composed-operator error below 1e-4 on
    // the torus at 128^2; charts with milder kinks (cylinder, spheroid)
    // support larger values.
    static constexpr double kDefaultFracSlopeCap = 0.3;

    static FactorSet constant(std::shared_ptr<const Grid> grid);

    // The printed closed forms for the chart; MissingReference when absent.
    static FactorSet closed_form(std::shared_ptr<const Grid> grid,
                                 double frac_slope_cap = kDefaultFracSlopeCap);

    // Integrates d(ln f_i)/dc = H n_i / x_i^c per axis with an adaptive
    // 4th/5th-order one-step method, restarting on subintervals between
    // zeros of x_i^c (each with its own multiplicative constant, fixed by
    // f = 1 at the segment midpoint).
    static FactorSet solve_revolution(std::shared_ptr<const Grid> grid,
                                      double frac_slope_cap = kDefaultFracSlopeCap);

    // Arbitrary gridded values (no 1D structure); used for fault injection.
    static FactorSet from_node_values(std::shared_ptr<const Grid> grid,
                                      std::array<std::vector<double>, 3> values);

    FactorOrigin origin() const { return origin_; }
    const Grid& grid() const { return *grid_; }
    const std::shared_ptr<const Grid>& grid_ptr() const { return grid_; }

    double node_value(int axis, std::size_t k) const { return node_values_[axis][k]; }
    const std::vector<double>& node_values(int axis) const { return node_values_[axis]; }

    bool has_eval(int axis) const;
    double eval(int axis, double c) const;  // f_i along its own coordinate
    int coordinate(int axis) const;
    double ln_slope(int axis, double c) const;
    const std::vector<FactorSingularity>& singularities(int axis) const;
    // Segment boundaries of the per-axis 1D reduction (ODE restarts); the
    // interior entries are the zeros of x_i^c.
    const std::vector<double>& segment_boundaries(int axis) const;

    // Nodes where the ordered kinetic operators are resolved: |f_i| above
    // the 1e-6 relative floor, ln-slopes under the per-singularity caps,
    // eroded by the composed stencil width.
    const std::vector<std::uint8_t>& evaluation_mask() const { return mask_; }

    // Throws FactorNonpositive if any f_i <= 0 on the evaluation mask.
    void require_positive() const;

private:
    struct AxisData {
        int coord = 0;
        bool has_line = false;
        std::vector<double> line_f;    // per line node; 0 where undefined
        std::function<double(double)> eval;
        std::function<double(double)> slope;  // d ln f / dc
        std::vector<FactorSingularity> sing;
        std::vector<double> seg_bounds;
    };

    FactorSet(std::shared_ptr<const Grid> grid, FactorOrigin origin);
    void broadcast_lines();
    void build_mask();

    std::shared_ptr<const Grid> grid_;
    FactorOrigin origin_;
    double frac_slope_cap_ = kDefaultFracSlopeCap;
    std::array<AxisData, 3> axes_;
    std::array<std::vector<double>, 3> node_values_;
    std::vector<std::uint8_t> mask_;
};

ScalarField kinetic_ordered(const ScalarField& psi, const FactorSet& f, Ordering ord,
                            const PhysicalParams& pp = {});

// Residuals of the factor condition R_i = H n_i and of the full nonlinear
// second-parenthesis condition, plus the two per-ordering equation sets.
// R_i = x_i^mu d_mu ln f_i uses an FD derivative of ln f_i (fine-step when
// the factor is evaluable off-grid, grid-step otherwise); H and n are
// analytic from the frames.
struct FactorResidual {
    std::array<std::vector<double>, 3> axis_residual;  // |R_i - H n_i|
    // where the fine-step FD of ln f_i is clean for that axis alone
    std::array<std::vector<std::uint8_t>, 3> axis_mask;
    std::vector<double> nonlinear;       // |r^mu.(d_mu H - d_mu R) + H.H - R.R|
    std::vector<double> tangent;         // max_mu |R . r^mu|
    std::vector<double> set1_magnitude;  // |-H^2 + R.H|
    std::vector<double> set2_magnitude;  // |r^mu.(d_mu H - d_mu R) + H.(H - R)|
    // joint region for the derivative-bearing combinations (all axes clean,
    // eroded by the grid stencil used for d_mu R)
    std::vector<std::uint8_t> mask;
};

FactorResidual factor_residual(const FactorSet& f, double fd_step = 5e-4);

} // namespace surfq
