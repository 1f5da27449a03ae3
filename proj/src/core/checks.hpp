#pragma once

#include "config.hpp"
#include "report.hpp"

namespace surfq {

// Frame-derived quantities against the chart's closed forms: H, n and (for
// spheroids) the G and F profile functions recomputed from the frames.
// Throws MissingReference when the chart has no reference data.
Report reference_check(const std::shared_ptr<const Grid>& grid, const RunConfig& cfg);

// Geometry CSV/JSON export (plus closed-form cross checks where available).
Report run_geom_export(const RunConfig& cfg);

// Geometry identity suite: duality, normals, Gamma_mu = d_mu ln sqrt(g),
// g^{mu nu} b_{mu nu} = 2H, H n . r^mu = 0, Weingarten contraction,
// (1/2) Lap r = H n, AD-vs-FD jets.
Report run_check_suite(const RunConfig& cfg);

// T / T1 / T2 / naive / curved against the Laplace-Beltrami route on seeded
// band-limited fields, including the H^2 excess profile.
Report run_ordering_suite(const RunConfig& cfg);

// ODE factor solve, residuals of R_i = H n_i, ratio constancy against the
// printed closed forms, nonlinear-condition and equation-set residuals.
Report run_factors_suite(const RunConfig& cfg);

// Batch Hermiticity defects for p_i, p_mu, the Laplacian, and the bare
// (non-Hermitized) derivative as a negative control.
Report run_hermiticity_suite(const RunConfig& cfg);

// Dispatch by command name; stamps metadata and writes the JSON report when
// configured.  Throws ConfigError for unknown commands.
Report run_command(const std::string& command, const RunConfig& cfg);

} // namespace surfq
