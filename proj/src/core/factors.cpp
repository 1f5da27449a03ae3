#include "factors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "error.hpp"
#include "frame.hpp"

namespace surfq {

namespace {

constexpr double kFloorRel = 1e-6;         // |f| floor relative to max|f|
constexpr double kAnalyticSlopeCap = 1.5;  // |d ln f| cap near analytic zeros
constexpr double kPoleProbe = 1e-4;

double integrate_lnf(const std::function<double(double)>& slope, double lnf0, double from,
                     double to) {
    namespace ode = boost::numeric::odeint;
    if (from == to) return lnf0;
    double state = lnf0;
    auto rhs = [&slope](const double&, double& dxdt, double t) { dxdt = slope(t); };
    auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<double>>(1e-13, 1e-13);
    ode::integrate_adaptive(stepper, rhs, state, from, to, (to - from) / 16.0);
    return state;
}

// Zeros of fn on [lo, hi] by dense sampling plus bisection.
std::vector<double> find_zeros(const std::function<double(double)>& fn, double lo, double hi,
                               int samples) {
    std::vector<double> zeros;
    double pc = lo, pv = fn(lo);
    if (pv == 0.0) zeros.push_back(lo);
    for (int s = 1; s <= samples; ++s) {
        const double c = lo + (hi - lo) * s / samples;
        const double v = fn(c);
        if (v == 0.0) {
            zeros.push_back(c);
        } else if ((pv < 0.0) != (v < 0.0) && pv != 0.0) {
            double a = pc, b = c, fa = pv;
            for (int it = 0; it < 80; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = fn(m);
                if (fm == 0.0) {
                    a = b = m;
                    break;
                }
                if ((fa < 0.0) != (fm < 0.0))
                    b = m;
                else {
                    a = m;
                    fa = fm;
                }
            }
            zeros.push_back(0.5 * (a + b));
        }
        pc = c;
        pv = v;
    }
    std::sort(zeros.begin(), zeros.end());
    std::vector<double> out;
    for (double z : zeros)
        if (out.empty() || z - out.back() > 1e-9 * (hi - lo)) out.push_back(z);
    return out;
}

std::optional<FactorSingularity> probe_pole(const std::function<double(double)>& slope,
                                            double loc) {
    const double d = kPoleProbe;
    const double kr = slope(loc + d) * d;
    const double kl = slope(loc - d) * (-d);
    const double k = 0.5 * (kr + kl);
    if (std::abs(k) < 0.02) return std::nullopt;  // slope stays bounded here
    const bool frac = std::abs(k - std::round(k)) > 0.05 || std::round(k) == 0.0;
    return FactorSingularity{loc, k, frac};
}

// Poles of a ln-slope function: sign changes with large magnitude on both
// sides, refined by bisecting 1/slope; plus virtual poles just outside
// non-periodic line ends, recovered from a linear fit of 1/slope.
std::vector<FactorSingularity> scan_singularities(const std::function<double(double)>& slope,
                                                  double lo, double hi, bool periodic,
                                                  int samples) {
    std::vector<double> cands;
    const double pad = periodic ? 0.01 * (hi - lo) : 0.0;
    const double slo = lo - pad, shi = hi + pad;
    double pc = slo, pv = slope(slo);
    for (int s = 1; s <= samples; ++s) {
        const double c = slo + (shi - slo) * s / samples;
        const double v = slope(c);
        if ((pv < 0.0) != (v < 0.0) && std::min(std::abs(pv), std::abs(v)) > 4.0) {
            double a = pc, b = c, ga = 1.0 / pv;
            for (int it = 0; it < 80; ++it) {
                const double m = 0.5 * (a + b);
                const double gm = 1.0 / slope(m);
                if ((ga < 0.0) != (gm < 0.0))
                    b = m;
                else {
                    a = m;
                    ga = gm;
                }
            }
            cands.push_back(0.5 * (a + b));
        }
        pc = c;
        pv = v;
    }
    if (!periodic) {
        // Virtual poles just outside the line: recover location and residue
        // from a linear fit of 1/slope, sharpened by re-probing next to the
        // estimate (the first fit is biased by the regular part of slope).
        const double span = hi - lo;
        for (int side = 0; side < 2; ++side) {
            const double end = side == 0 ? lo : hi;
            const double dir = side == 0 ? 1.0 : -1.0;
            if (std::abs(slope(end)) < 4.0) continue;
            double q1 = end, q2 = end + dir * 0.02 * span;
            double loc = 0.0;
            bool ok = false;
            for (int it = 0; it < 3; ++it) {
                const double s1 = slope(q1), s2 = slope(q2);
                if (s1 == 0.0 || s2 == 0.0) break;
                const double i1 = 1.0 / s1, i2 = 1.0 / s2;
                if (std::abs(i2 - i1) < 1e-300) break;
                const double k = (q2 - q1) / (i2 - i1);
                loc = q1 - k * i1;
                if (std::abs(loc - end) > 0.5 * span) break;
                ok = true;
                const double d = 1e-6 * span;
                q1 = loc + d;
                q2 = loc + 2.0 * d;
            }
            if (ok) cands.push_back(loc);
        }
    }
    std::sort(cands.begin(), cands.end());
    std::vector<FactorSingularity> out;
    for (double c : cands) {
        if (!out.empty() && std::abs(c - out.back().location) < 1e-6 * (hi - lo)) continue;
        if (auto s = probe_pole(slope, c)) out.push_back(*s);
    }
    return out;
}

// Shared state of a per-axis 1D solution: node table plus on-demand
// re-integration for off-node queries (used by the fine-step residual FD).
struct LineSolution {
    std::vector<double> pos;
    std::vector<double> lnf;
    std::vector<std::uint8_t> valid;
    std::vector<double> bounds;    // segment boundaries incl. line ends
    std::vector<double> singular;  // zeros of the denominator (f -> 0 or inf)
    std::vector<double> anchors;   // one per segment, lnf = 0 there
    std::function<double(double)> slope;
    bool periodic = false;
    double period = 0.0;

    int segment_of(double c) const {
        auto it = std::upper_bound(bounds.begin(), bounds.end(), c);
        int idx = static_cast<int>(it - bounds.begin()) - 1;
        return std::clamp(idx, 0, static_cast<int>(bounds.size()) - 2);
    }

    double eval(double c) const {
        if (periodic) {
            // map into the solved range; f repeats with the chart
            while (c < bounds.front()) c += period;
            while (c >= bounds.back()) c -= period;
        }
        const int seg = segment_of(c);
        for (double z : singular)
            if (std::abs(c - z) < 1e-9) return 0.0;  // f undefined at the zero itself
        // nearest valid node in the same segment
        const double h = pos.size() > 1 ? pos[1] - pos[0] : 1.0;
        int a = static_cast<int>(std::lround((c - pos.front()) / h));
        a = std::clamp(a, 0, static_cast<int>(pos.size()) - 1);
        int best = -1;
        for (int off = 0; off < static_cast<int>(pos.size()); ++off) {
            for (int sgn = -1; sgn <= 1; sgn += 2) {
                const int cand = a + sgn * off;
                if (cand < 0 || cand >= static_cast<int>(pos.size())) continue;
                if (valid[cand] && segment_of(pos[cand]) == seg) {
                    best = cand;
                    break;
                }
            }
            if (best >= 0) break;
        }
        double from, lnf0;
        if (best >= 0) {
            from = pos[best];
            lnf0 = lnf[best];
        } else {
            from = anchors[seg];
            lnf0 = 0.0;
        }
        if (segment_of(from) != seg) return 0.0;
        // never integrate across a denominator zero
        for (double z : singular)
            if ((from - z) * (c - z) < 0.0) return 0.0;
        return std::exp(integrate_lnf(slope, lnf0, from, c));
    }
};

} // namespace

FactorSet::FactorSet(std::shared_ptr<const Grid> grid, FactorOrigin origin)
    : grid_(std::move(grid)), origin_(origin) {}

bool FactorSet::has_eval(int axis) const { return static_cast<bool>(axes_[axis].eval); }

double FactorSet::eval(int axis, double c) const {
    if (!axes_[axis].eval)
        throw Error(Errc::missing_reference, "factor axis has no off-grid evaluator");
    return axes_[axis].eval(c);
}

int FactorSet::coordinate(int axis) const { return axes_[axis].coord; }

double FactorSet::ln_slope(int axis, double c) const {
    if (!axes_[axis].slope)
        throw Error(Errc::missing_reference, "factor axis has no slope evaluator");
    return axes_[axis].slope(c);
}

const std::vector<FactorSingularity>& FactorSet::singularities(int axis) const {
    return axes_[axis].sing;
}

const std::vector<double>& FactorSet::segment_boundaries(int axis) const {
    return axes_[axis].seg_bounds;
}

void FactorSet::broadcast_lines() {
    const Grid& g = *grid_;
    for (int axis = 0; axis < 3; ++axis) {
        auto& vals = node_values_[axis];
        vals.assign(g.size(), 0.0);
        const auto& ax = axes_[axis];
        for (int i = 0; i < g.n(0); ++i)
            for (int j = 0; j < g.n(1); ++j)
                vals[g.index(i, j)] = ax.line_f[ax.coord == 0 ? i : j];
    }
}

void FactorSet::build_mask() {
    const Grid& g = *grid_;
    mask_ = g.interior_mask(2);
    const int erosion = 2 * g.stencil_radius() + 2;

    for (int axis = 0; axis < 3; ++axis) {
        double peak = 0.0;
        for (double v : node_values_[axis]) peak = std::max(peak, std::abs(v));
        const double floor = kFloorRel * peak;

        const auto& ax = axes_[axis];
        if (ax.has_line) {
            const int nc = g.n(ax.coord);
            const bool per = g.periodic(ax.coord);
            // Nodes below the |f| floor hold no usable value, and stencils
            // touching them inherit the garbage: erode that set by the
            // composed stencil width.  The slope cap is a pure accuracy
            // criterion and needs no erosion.
            std::vector<std::uint8_t> ok_floor(nc, 1), ok_slope(nc, 1);
            for (int a = 0; a < nc; ++a) {
                const double c = g.coord(ax.coord, a);
                if (!(std::abs(ax.line_f[a]) > floor)) ok_floor[a] = 0;
                if (ax.slope) {
                    double cap = kAnalyticSlopeCap;
                    double best = std::numeric_limits<double>::infinity();
                    for (const auto& s : ax.sing) {
                        double d = std::abs(c - s.location);
                        if (per) d = std::min(d, g.n(ax.coord) * g.h(ax.coord) - d);
                        if (d < best) {
                            best = d;
                            cap = s.fractional ? frac_slope_cap_ : kAnalyticSlopeCap;
                        }
                    }
                    if (std::abs(ax.slope(c)) > cap) ok_slope[a] = 0;
                }
            }
            std::vector<std::uint8_t> eroded = ok_floor;
            for (int a = 0; a < nc; ++a) {
                for (int k = -erosion; k <= erosion && eroded[a]; ++k) {
                    int w = a + k;
                    if (per)
                        w = (w % nc + nc) % nc;
                    else if (w < 0 || w >= nc)
                        continue;
                    if (!ok_floor[w]) eroded[a] = 0;
                }
            }
            for (int i = 0; i < g.n(0); ++i)
                for (int j = 0; j < g.n(1); ++j) {
                    const int a = ax.coord == 0 ? i : j;
                    if (!eroded[a] || !ok_slope[a]) mask_[g.index(i, j)] = 0;
                }
        } else {
            for (std::size_t k = 0; k < g.size(); ++k)
                if (!(std::abs(node_values_[axis][k]) > floor)) mask_[k] = 0;
        }
    }
}

void FactorSet::require_positive() const {
    const Grid& g = *grid_;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!mask_[k]) continue;
        for (int axis = 0; axis < 3; ++axis) {
            if (node_values_[axis][k] <= 0.0) {
                std::ostringstream os;
                os << "f_" << "xyz"[axis] << " = " << node_values_[axis][k]
                   << " <= 0 on the evaluation subdomain";
                throw Error(Errc::factor_nonpositive, os.str());
            }
        }
    }
}

FactorSet FactorSet::constant(std::shared_ptr<const Grid> grid) {
    FactorSet f(std::move(grid), FactorOrigin::constant);
    const Grid& g = *f.grid_;
    for (int axis = 0; axis < 3; ++axis) {
        auto& ax = f.axes_[axis];
        ax.coord = 0;
        ax.has_line = true;
        ax.line_f.assign(g.n(0), 1.0);
        ax.eval = [](double) { return 1.0; };
        ax.slope = [](double) { return 0.0; };
        ax.seg_bounds = {g.coord_lo(0), g.coord_hi(0)};
    }
    f.broadcast_lines();
    f.build_mask();
    return f;
}

FactorSet FactorSet::closed_form(std::shared_ptr<const Grid> grid, double frac_slope_cap) {
    const auto chart = grid->chart_ptr();
    if (!chart->has_reference_factors())
        throw Error(Errc::missing_reference,
                    "chart '" + chart->name() + "' has no printed factor functions");
    FactorSet f(std::move(grid), FactorOrigin::closed_form_paper);
    f.frac_slope_cap_ = frac_slope_cap;
    const Grid& g = *f.grid_;
    const bool per = g.periodic(0);
    const double lo = g.coord_lo(0);
    const double hi = per ? lo + g.n(0) * g.h(0) : g.coord_hi(0);
    for (int axis = 0; axis < 3; ++axis) {
        auto& ax = f.axes_[axis];
        ax.coord = 0;
        ax.has_line = true;
        ax.eval = [chart, axis](double c) { return chart->reference_factor(axis, c); };
        ax.slope = [chart, axis](double c) { return chart->reference_factor_ln_slope(axis, c); };
        ax.line_f.resize(g.n(0));
        for (int a = 0; a < g.n(0); ++a) ax.line_f[a] = ax.eval(g.coord(0, a));
        ax.sing = scan_singularities(ax.slope, lo, hi, per, 8 * g.n(0));
        ax.seg_bounds = {lo, hi};
    }
    f.broadcast_lines();
    f.build_mask();
    return f;
}

FactorSet FactorSet::from_node_values(std::shared_ptr<const Grid> grid,
                                      std::array<std::vector<double>, 3> values) {
    FactorSet f(std::move(grid), FactorOrigin::constant);
    for (int axis = 0; axis < 3; ++axis) {
        if (values[axis].size() != f.grid_->size())
            throw Error(Errc::invalid_params, "factor value array size mismatch");
        f.node_values_[axis] = std::move(values[axis]);
        f.axes_[axis].has_line = false;
    }
    f.build_mask();
    return f;
}

FactorSet FactorSet::solve_revolution(std::shared_ptr<const Grid> grid,
                                      double frac_slope_cap) {
    const auto chart = grid->chart_ptr();
    if (!chart->revolution_about_z())
        throw Error(Errc::invalid_params,
                    "factor ODE reduction requires a surface of revolution (chart '" +
                        chart->name() + "')");
    FactorSet f(std::move(grid), FactorOrigin::ode_solved);
    f.frac_slope_cap_ = frac_slope_cap;
    const Grid& g = *f.grid_;
    const double scale = chart->length_scale();
    const double den_tiny = 1e-12 / scale;

    for (int axis = 0; axis < 3; ++axis) {
        auto& ax = f.axes_[axis];
        ax.has_line = true;

        // Azimuth value where the common azimuthal factor of H n_i and
        // x_i^mu equals one (phi = 0 for x and z, phi = pi/2 for y).
        const double az_ref = axis == 1 ? std::numbers::pi / 2.0 : 0.0;

        // Pick the integration coordinate: the profile angle unless x_i^theta
        // vanishes identically along the line (cylinder x and y), in which
        // case the reduction runs in the azimuth.
        int coord = -1;
        double other = 0.0;
        for (int cand = 0; cand < 2; ++cand) {
            const double oth = cand == 0 ? az_ref
                                         : 0.5 * (g.coord_lo(0) + g.coord_hi(0));
            double peak = 0.0;
            for (int s = 0; s <= 64; ++s) {
                const double lo = g.coord_lo(cand);
                const double hi = g.periodic(cand) ? lo + g.n(cand) * g.h(cand)
                                                   : g.coord_hi(cand);
                const double c = lo + (hi - lo) * s / 64.0;
                const double xi = cand == 0 ? c : oth;
                const double zeta = cand == 0 ? oth : c;
                peak = std::max(peak,
                                std::abs(frame_at(*chart, xi, zeta).x_contra(axis, cand)));
            }
            if (peak > 1e-8 / scale) {
                coord = cand;
                other = oth;
                break;
            }
        }
        if (coord < 0) {
            std::ostringstream os;
            os << "x_" << "xyz"[axis] << "^mu vanishes along both coordinate lines";
            throw Error(Errc::singular_ode, os.str());
        }
        ax.coord = coord;

        auto at = [chart, coord, other](double c) {
            const double xi = coord == 0 ? c : other;
            const double zeta = coord == 0 ? other : c;
            return frame_at(*chart, xi, zeta);
        };
        auto den_fn = [at, axis, coord](double c) { return at(c).x_contra(axis, coord); };
        ax.slope = [at, axis, coord, den_tiny, scale](double c) {
            const GeomFrame fr = at(c);
            const double num = fr.mean_curv * fr.normal[axis];
            double den = fr.x_contra(axis, coord);
            if (std::abs(den) < den_tiny) {
                if (std::abs(num) < 1e-10 / scale) return 0.0;
                den = std::copysign(den_tiny, den == 0.0 ? 1.0 : den);
            }
            return num / den;
        };

        const bool per = g.periodic(coord);
        const double lo = g.coord_lo(coord);
        const double hi = per ? lo + g.n(coord) * g.h(coord) : g.coord_hi(coord);
        const int nc = g.n(coord);
        const double h = g.h(coord);

        std::vector<double> zeros = find_zeros(den_fn, lo, hi, 8 * nc);
        ax.seg_bounds.clear();
        ax.seg_bounds.push_back(lo);
        for (double z : zeros)
            if (z > lo + 1e-12 && z < hi - 1e-12) ax.seg_bounds.push_back(z);
        ax.seg_bounds.push_back(hi);

        auto sol = std::make_shared<LineSolution>();
        sol->slope = ax.slope;
        sol->bounds = ax.seg_bounds;
        sol->singular = zeros;
        sol->periodic = per;
        sol->period = hi - lo;
        sol->pos.resize(nc);
        sol->lnf.assign(nc, 0.0);
        sol->valid.assign(nc, 0);
        for (int a = 0; a < nc; ++a) sol->pos[a] = g.coord(coord, a);

        auto near_singular = [&](double c) {
            for (double z : zeros)
                if (std::abs(c - z) < 1e-9) return true;
            return false;
        };

        const int nseg = static_cast<int>(sol->bounds.size()) - 1;
        for (int s = 0; s < nseg; ++s) {
            const double s0 = sol->bounds[s], s1 = sol->bounds[s + 1];
            sol->anchors.push_back(0.5 * (s0 + s1));
            if (s1 - s0 < 4.0 * h) continue;  // unresolvable sliver
            const double anchor = sol->anchors.back();
            // nodes inside this segment, split at the anchor; line ends are
            // benign but the denominator zeros themselves are not
            std::vector<int> right, left;
            for (int a = 0; a < nc; ++a) {
                const double c = sol->pos[a];
                if (c < s0 - 1e-12 || c > s1 + 1e-12) continue;
                if (sol->valid[a] || near_singular(c)) continue;
                (c >= anchor ? right : left).push_back(a);
            }
            std::sort(right.begin(), right.end());
            std::sort(left.rbegin(), left.rend());
            double state = 0.0, from = anchor;
            for (int a : right) {
                state = integrate_lnf(ax.slope, state, from, sol->pos[a]);
                from = sol->pos[a];
                sol->lnf[a] = state;
                sol->valid[a] = 1;
            }
            state = 0.0;
            from = anchor;
            for (int a : left) {
                state = integrate_lnf(ax.slope, state, from, sol->pos[a]);
                from = sol->pos[a];
                sol->lnf[a] = state;
                sol->valid[a] = 1;
            }
        }

        ax.line_f.assign(nc, 0.0);
        for (int a = 0; a < nc; ++a)
            if (sol->valid[a]) ax.line_f[a] = std::exp(sol->lnf[a]);
        ax.eval = [sol](double c) { return sol->eval(c); };

        ax.sing = scan_singularities(ax.slope, lo, hi, per, 8 * nc);
    }
    f.broadcast_lines();
    f.build_mask();
    return f;
}

// ---------------------------------------------------------------------------

ScalarField kinetic_ordered(const ScalarField& psi, const FactorSet& f, Ordering ord,
                            const PhysicalParams& pp) {
    if (psi.grid_ptr() != f.grid_ptr())
        throw Error(Errc::grid_mismatch, "factor set and field live on different grids");
    f.require_positive();
    const Grid& g = psi.grid();
    const std::size_t N = g.size();

    ScalarField total(psi.grid_ptr());
    for (int axis = 0; axis < 3; ++axis) {
        const auto& fv = f.node_values(axis);
        double peak = 0.0;
        for (double v : fv) peak = std::max(peak, std::abs(v));
        const double floor = kFloorRel * peak;
        std::vector<double> inv(N, 0.0);
        for (std::size_t k = 0; k < N; ++k)
            if (std::abs(fv[k]) > floor) inv[k] = 1.0 / fv[k];

        ScalarField t = psi;
        if (ord != Ordering::left)
            for (std::size_t k = 0; k < N; ++k) t[k] *= inv[k];
        t = cartesian_momentum(t, axis, pp);
        if (ord == Ordering::symmetric)
            for (std::size_t k = 0; k < N; ++k) t[k] *= fv[k] * fv[k];
        else
            for (std::size_t k = 0; k < N; ++k) t[k] *= fv[k];
        t = cartesian_momentum(t, axis, pp);
        if (ord != Ordering::right)
            for (std::size_t k = 0; k < N; ++k) t[k] *= inv[k];
        total += t;
    }
    total *= complexd{1.0 / (2.0 * pp.mass), 0.0};
    return total;
}

FactorResidual factor_residual(const FactorSet& f, double fd_step) {
    const Grid& g = f.grid();
    const auto gp = f.grid_ptr();
    const std::size_t N = g.size();

    FactorResidual out;

    // R_i = x_i^mu d_mu ln f_i as gridded real fields.
    std::array<ScalarField, 3> R{ScalarField(gp), ScalarField(gp), ScalarField(gp)};
    static const std::array<double, 5> w5{1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0};

    for (int axis = 0; axis < 3; ++axis) {
        out.axis_mask[axis].assign(N, 1);
        if (f.has_eval(axis)) {
            const int coord = f.coordinate(axis);
            const int nc = g.n(coord);
            std::vector<double> m(nc, 0.0);
            std::vector<std::uint8_t> ok(nc, 1);
            for (int a = 0; a < nc; ++a) {
                const double c = g.coord(coord, a);
                double acc = 0.0;
                bool good = true;
                for (int k = -2; k <= 2 && good; ++k) {
                    if (k == 0) continue;
                    const double v = f.eval(axis, c + k * fd_step);
                    if (!(v > 0.0) || !std::isfinite(v))
                        good = false;
                    else
                        acc += w5[k + 2] * std::log(v);
                }
                m[a] = good ? acc / fd_step : 0.0;
                // the window must also resolve ln f; the cap keeps the
                // 4th-order FD error of a k/delta slope below ~1e-8
                if (good && std::abs(m[a]) * fd_step > 0.005) good = false;
                if (!good) ok[a] = 0;
            }
            for (int i = 0; i < g.n(0); ++i)
                for (int j = 0; j < g.n(1); ++j) {
                    const std::size_t k = g.index(i, j);
                    const int a = coord == 0 ? i : j;
                    if (!ok[a]) out.axis_mask[axis][k] = 0;
                    R[axis][k] = g.frame(k).x_contra(axis, coord) * m[a];
                }
        } else {
            ScalarField lnf(gp);
            std::vector<std::uint8_t> good(N, 1);
            for (std::size_t k = 0; k < N; ++k) {
                const double v = f.node_value(axis, k);
                if (v > 0.0)
                    lnf[k] = std::log(v);
                else
                    good[k] = 0;
            }
            const ScalarField d0 = partial(lnf, 0);
            const ScalarField d1 = partial(lnf, 1);
            const auto interior = g.interior_mask(1);
            for (std::size_t k = 0; k < N; ++k) {
                R[axis][k] = g.frame(k).x_contra(axis, 0) * d0[k].real() +
                             g.frame(k).x_contra(axis, 1) * d1[k].real();
                if (!good[k] || !interior[k]) out.axis_mask[axis][k] = 0;
            }
        }
    }

    // joint mask for the derivative-bearing residuals: all axes clean,
    // eroded by the grid stencil radius used for d_mu R, d_mu H
    out.mask = g.interior_mask(1);
    {
        std::vector<std::uint8_t> allax(N, 1);
        for (std::size_t k = 0; k < N; ++k)
            allax[k] = out.axis_mask[0][k] && out.axis_mask[1][k] && out.axis_mask[2][k];
        const int r = g.stencil_radius() + 1;
        for (int i = 0; i < g.n(0); ++i)
            for (int j = 0; j < g.n(1); ++j) {
                const std::size_t k = g.index(i, j);
                if (!out.mask[k]) continue;
                bool keep = true;
                for (int di = -r; di <= r && keep; ++di)
                    for (int dj = -r; dj <= r && keep; ++dj) {
                        int ii = i + di, jj = j + dj;
                        if (g.periodic(0))
                            ii = (ii % g.n(0) + g.n(0)) % g.n(0);
                        else
                            ii = std::clamp(ii, 0, g.n(0) - 1);
                        if (g.periodic(1))
                            jj = (jj % g.n(1) + g.n(1)) % g.n(1);
                        else
                            jj = std::clamp(jj, 0, g.n(1) - 1);
                        if (!allax[g.index(ii, jj)]) keep = false;
                    }
                if (!keep) out.mask[k] = 0;
            }
    }

    std::array<ScalarField, 3> Hv{ScalarField(gp), ScalarField(gp), ScalarField(gp)};
    for (int axis = 0; axis < 3; ++axis)
        for (std::size_t k = 0; k < N; ++k)
            Hv[axis][k] = g.frame(k).mean_curv * g.frame(k).normal[axis];

    for (int axis = 0; axis < 3; ++axis) {
        out.axis_residual[axis].assign(N, 0.0);
        for (std::size_t k = 0; k < N; ++k)
            out.axis_residual[axis][k] = std::abs(R[axis][k].real() - Hv[axis][k].real());
    }

    std::array<std::array<ScalarField, 3>, 2> dR{
        {{partial(R[0], 0), partial(R[1], 0), partial(R[2], 0)},
         {partial(R[0], 1), partial(R[1], 1), partial(R[2], 1)}}};
    std::array<std::array<ScalarField, 3>, 2> dH{
        {{partial(Hv[0], 0), partial(Hv[1], 0), partial(Hv[2], 0)},
         {partial(Hv[0], 1), partial(Hv[1], 1), partial(Hv[2], 1)}}};

    out.nonlinear.assign(N, 0.0);
    out.tangent.assign(N, 0.0);
    out.set1_magnitude.assign(N, 0.0);
    out.set2_magnitude.assign(N, 0.0);
    for (std::size_t k = 0; k < N; ++k) {
        const GeomFrame& fr = g.frame(k);
        double grad_term = 0.0;
        for (int mu = 0; mu < 2; ++mu)
            for (int axis = 0; axis < 3; ++axis)
                grad_term +=
                    fr.x_contra(axis, mu) * (dH[mu][axis][k].real() - dR[mu][axis][k].real());
        double hh = 0.0, rr = 0.0, rh = 0.0, hr_diff = 0.0;
        for (int axis = 0; axis < 3; ++axis) {
            const double hv = Hv[axis][k].real();
            const double rv = R[axis][k].real();
            hh += hv * hv;
            rr += rv * rv;
            rh += rv * hv;
            hr_diff += hv * (hv - rv);
        }
        out.nonlinear[k] = std::abs(grad_term + hh - rr);
        for (int mu = 0; mu < 2; ++mu) {
            double t = 0.0;
            for (int axis = 0; axis < 3; ++axis)
                t += R[axis][k].real() * fr.x_contra(axis, mu);
            out.tangent[k] = std::max(out.tangent[k], std::abs(t));
        }
        out.set1_magnitude[k] = std::abs(-hh + rh);
        out.set2_magnitude[k] = std::abs(grad_term + hr_diff);
    }
    return out;
}

} // namespace surfq
