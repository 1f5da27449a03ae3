#include "surfq/surfq.h"

#include <cstring>
#include <map>
#include <memory>
#include <string>

#include "core/checks.hpp"
#include "core/config.hpp"
#include "core/error.hpp"
#include "core/factors.hpp"
#include "core/field.hpp"
#include "core/frame.hpp"
#include "core/operators.hpp"
#include "core/report.hpp"
#include "core/version.hpp"

using namespace surfq;

struct surfq_surface {
    std::shared_ptr<const Chart> chart;
};
struct surfq_grid {
    std::shared_ptr<const Grid> grid;
};
struct surfq_field {
    ScalarField field;
};
struct surfq_factors {
    FactorSet factors;
};
struct surfq_config {
    RunConfig cfg;
};
struct surfq_report {
    Report report;
    std::string json;
    std::string table;
};

namespace {

thread_local std::string g_last_error;

surfq_status to_status(Errc c) {
    switch (c) {
        case Errc::invalid_params: return SURFQ_ERR_INVALID_PARAMS;
        case Errc::degenerate_chart: return SURFQ_ERR_DEGENERATE_CHART;
        case Errc::grid_too_coarse: return SURFQ_ERR_GRID_TOO_COARSE;
        case Errc::grid_mismatch: return SURFQ_ERR_GRID_MISMATCH;
        case Errc::missing_reference: return SURFQ_ERR_MISSING_REFERENCE;
        case Errc::factor_nonpositive: return SURFQ_ERR_FACTOR_NONPOSITIVE;
        case Errc::singular_ode: return SURFQ_ERR_SINGULAR_ODE;
        case Errc::config_error: return SURFQ_ERR_CONFIG;
    }
    return SURFQ_ERR_UNKNOWN;
}

template <class Fn>
surfq_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SURFQ_ERR_UNKNOWN;
    } catch (...) {
        g_last_error = "unknown error";
        return SURFQ_ERR_UNKNOWN;
    }
}

surfq_status null_arg(const char* what) {
    g_last_error = std::string("null argument: ") + what;
    return SURFQ_ERR_NULL_ARGUMENT;
}

} // namespace

extern "C" {

const char* surfq_version(void) { return SURFQ_VERSION_STRING; }

const char* surfq_status_name(surfq_status status) {
    switch (status) {
        case SURFQ_OK: return "OK";
        case SURFQ_ERR_INVALID_PARAMS: return "InvalidParams";
        case SURFQ_ERR_DEGENERATE_CHART: return "DegenerateChart";
        case SURFQ_ERR_GRID_TOO_COARSE: return "GridTooCoarse";
        case SURFQ_ERR_GRID_MISMATCH: return "GridMismatch";
        case SURFQ_ERR_MISSING_REFERENCE: return "MissingReference";
        case SURFQ_ERR_FACTOR_NONPOSITIVE: return "FactorNonpositive";
        case SURFQ_ERR_SINGULAR_ODE: return "SingularODE";
        case SURFQ_ERR_CONFIG: return "ConfigError";
        case SURFQ_ERR_NULL_ARGUMENT: return "NullArgument";
        case SURFQ_ERR_IO: return "IOError";
        case SURFQ_ERR_UNKNOWN: return "Unknown";
    }
    return "Unknown";
}

const char* surfq_last_error_message(void) { return g_last_error.c_str(); }

surfq_status surfq_surface_create(const char* name, const char* const* param_keys,
                                  const double* param_values, size_t n_params,
                                  surfq_surface** out) {
    if (!name || !out) return null_arg("surfq_surface_create");
    if (n_params > 0 && (!param_keys || !param_values))
        return null_arg("surfq_surface_create params");
    return guarded([&] {
        std::map<std::string, double> params;
        for (size_t i = 0; i < n_params; ++i) params[param_keys[i]] = param_values[i];
        *out = new surfq_surface{make_surface(name, params)};
        return SURFQ_OK;
    });
}

void surfq_surface_destroy(surfq_surface* s) { delete s; }

surfq_status surfq_surface_frame(const surfq_surface* s, double xi, double zeta,
                                 surfq_frame* out) {
    if (!s || !out) return null_arg("surfq_surface_frame");
    return guarded([&] {
        const GeomFrame fr = frame_at(*s->chart, xi, zeta);
        for (int c = 0; c < 3; ++c) {
            out->position[c] = fr.position[c];
            out->normal[c] = fr.normal[c];
        }
        for (int mu = 0; mu < 2; ++mu) {
            out->gamma_contracted[mu] = fr.gamma_contracted[mu];
            for (int c = 0; c < 3; ++c) {
                out->r_cov[mu][c] = fr.r_cov[mu][c];
                out->r_contra[mu][c] = fr.r_contra[mu][c];
            }
            for (int nu = 0; nu < 2; ++nu) {
                out->metric[mu][nu] = fr.metric[mu][nu];
                out->metric_inv[mu][nu] = fr.metric_inv[mu][nu];
                out->second_form[mu][nu] = fr.second_form[mu][nu];
                for (int ga = 0; ga < 2; ++ga)
                    out->christoffel[ga][mu][nu] = fr.christoffel[ga][mu][nu];
            }
        }
        out->det_g = fr.det_g;
        out->mean_curv = fr.mean_curv;
        out->gauss_curv = fr.gauss_curv;
        return SURFQ_OK;
    });
}

surfq_status surfq_surface_domain(const surfq_surface* s, double* lo, double* hi,
                                  int* periodic) {
    if (!s || !lo || !hi || !periodic) return null_arg("surfq_surface_domain");
    const auto& d = s->chart->domain();
    for (int mu = 0; mu < 2; ++mu) {
        lo[mu] = d.lo[mu];
        hi[mu] = d.hi[mu];
        periodic[mu] = d.periodic[mu] ? 1 : 0;
    }
    return SURFQ_OK;
}

surfq_status surfq_grid_create(const surfq_surface* s, int n_xi, int n_zeta, double margin,
                               int fd_order, surfq_grid** out) {
    if (!s || !out) return null_arg("surfq_grid_create");
    return guarded([&] {
        *out = new surfq_grid{make_grid(s->chart, GridSpec{n_xi, n_zeta, margin, fd_order})};
        return SURFQ_OK;
    });
}

void surfq_grid_destroy(surfq_grid* g) { delete g; }

surfq_status surfq_grid_size(const surfq_grid* g, int* n_xi, int* n_zeta) {
    if (!g || !n_xi || !n_zeta) return null_arg("surfq_grid_size");
    *n_xi = g->grid->n(0);
    *n_zeta = g->grid->n(1);
    return SURFQ_OK;
}

surfq_status surfq_field_constant(const surfq_grid* g, double re, double im,
                                  surfq_field** out) {
    if (!g || !out) return null_arg("surfq_field_constant");
    return guarded([&] {
        *out = new surfq_field{ScalarField(g->grid, complexd{re, im})};
        return SURFQ_OK;
    });
}

surfq_status surfq_field_random(const surfq_grid* g, uint64_t seed, int bandlimit,
                                surfq_field** out) {
    if (!g || !out) return null_arg("surfq_field_random");
    return guarded([&] {
        *out = new surfq_field{RandomTestField(g->grid, seed, bandlimit).sample()};
        return SURFQ_OK;
    });
}

void surfq_field_destroy(surfq_field* f) { delete f; }

surfq_status surfq_field_values(const surfq_field* f, double* re, double* im, size_t n) {
    if (!f || !re || !im) return null_arg("surfq_field_values");
    if (n != f->field.size()) {
        g_last_error = "value buffer size mismatch";
        return SURFQ_ERR_INVALID_PARAMS;
    }
    for (size_t k = 0; k < n; ++k) {
        re[k] = f->field[k].real();
        im[k] = f->field[k].imag();
    }
    return SURFQ_OK;
}

surfq_status surfq_field_set_values(surfq_field* f, const double* re, const double* im,
                                    size_t n) {
    if (!f || !re || !im) return null_arg("surfq_field_set_values");
    if (n != f->field.size()) {
        g_last_error = "value buffer size mismatch";
        return SURFQ_ERR_INVALID_PARAMS;
    }
    for (size_t k = 0; k < n; ++k) f->field[k] = complexd{re[k], im[k]};
    return SURFQ_OK;
}

surfq_status surfq_field_export_csv(const surfq_field* f, const char* path) {
    if (!f || !path) return null_arg("surfq_field_export_csv");
    return guarded([&] {
        write_field_csv(f->field, path);
        return SURFQ_OK;
    });
}

surfq_status surfq_inner_product(const surfq_field* phi, const surfq_field* psi, double* re,
                                 double* im) {
    if (!phi || !psi || !re || !im) return null_arg("surfq_inner_product");
    return guarded([&] {
        const complexd v = inner_product(phi->field, psi->field);
        *re = v.real();
        *im = v.imag();
        return SURFQ_OK;
    });
}

surfq_status surfq_apply(const surfq_grid* g, surfq_operator op, double hbar, double mass,
                         const surfq_field* in, surfq_field** out) {
    if (!g || !in || !out) return null_arg("surfq_apply");
    return guarded([&] {
        if (in->field.grid_ptr() != g->grid)
            throw Error(Errc::grid_mismatch, "field does not live on the given grid");
        const PhysicalParams pp{hbar, mass};
        ScalarField result = [&] {
            switch (op) {
                case SURFQ_OP_LAPLACE_BELTRAMI: return laplace_beltrami(in->field);
                case SURFQ_OP_P_X: return cartesian_momentum(in->field, 0, pp);
                case SURFQ_OP_P_Y: return cartesian_momentum(in->field, 1, pp);
                case SURFQ_OP_P_Z: return cartesian_momentum(in->field, 2, pp);
                case SURFQ_OP_P_MU_0: return generalized_momentum(in->field, 0, pp);
                case SURFQ_OP_P_MU_1: return generalized_momentum(in->field, 1, pp);
                case SURFQ_OP_KINETIC_CURVED: return kinetic_curved(in->field, pp);
                case SURFQ_OP_NAIVE_P_SQUARED: return naive_p_squared(in->field, pp);
                case SURFQ_OP_P_X_BARE: return cartesian_momentum_bare(in->field, 0, pp);
            }
            throw Error(Errc::invalid_params, "unknown operator id");
        }();
        *out = new surfq_field{std::move(result)};
        return SURFQ_OK;
    });
}

surfq_status surfq_factors_constant(const surfq_grid* g, surfq_factors** out) {
    if (!g || !out) return null_arg("surfq_factors_constant");
    return guarded([&] {
        *out = new surfq_factors{FactorSet::constant(g->grid)};
        return SURFQ_OK;
    });
}

surfq_status surfq_factors_closed_form(const surfq_grid* g, surfq_factors** out) {
    if (!g || !out) return null_arg("surfq_factors_closed_form");
    return guarded([&] {
        *out = new surfq_factors{FactorSet::closed_form(g->grid)};
        return SURFQ_OK;
    });
}

surfq_status surfq_factors_solve(const surfq_grid* g, surfq_factors** out) {
    if (!g || !out) return null_arg("surfq_factors_solve");
    return guarded([&] {
        *out = new surfq_factors{FactorSet::solve_revolution(g->grid)};
        return SURFQ_OK;
    });
}

void surfq_factors_destroy(surfq_factors* f) { delete f; }

surfq_status surfq_factors_values(const surfq_factors* f, int axis, double* values, size_t n) {
    if (!f || !values) return null_arg("surfq_factors_values");
    if (axis < 0 || axis > 2) {
        g_last_error = "axis must be 0, 1 or 2";
        return SURFQ_ERR_INVALID_PARAMS;
    }
    const auto& v = f->factors.node_values(axis);
    if (n != v.size()) {
        g_last_error = "value buffer size mismatch";
        return SURFQ_ERR_INVALID_PARAMS;
    }
    std::memcpy(values, v.data(), n * sizeof(double));
    return SURFQ_OK;
}

surfq_status surfq_apply_ordered(const surfq_grid* g, surfq_ordering ordering, double hbar,
                                 double mass, const surfq_factors* f, const surfq_field* in,
                                 surfq_field** out) {
    if (!g || !f || !in || !out) return null_arg("surfq_apply_ordered");
    return guarded([&] {
        if (in->field.grid_ptr() != g->grid)
            throw Error(Errc::grid_mismatch, "field does not live on the given grid");
        const Ordering ord = ordering == SURFQ_ORDERING_T    ? Ordering::symmetric
                             : ordering == SURFQ_ORDERING_T1 ? Ordering::left
                                                             : Ordering::right;
        *out = new surfq_field{
            kinetic_ordered(in->field, f->factors, ord, PhysicalParams{hbar, mass})};
        return SURFQ_OK;
    });
}

surfq_status surfq_config_create(surfq_config** out) {
    if (!out) return null_arg("surfq_config_create");
    *out = new surfq_config{};
    return SURFQ_OK;
}

void surfq_config_destroy(surfq_config* c) { delete c; }

surfq_status surfq_config_set(surfq_config* c, const char* key, const char* value) {
    if (!c || !key || !value) return null_arg("surfq_config_set");
    return guarded([&] {
        c->cfg.set(key, value);
        return SURFQ_OK;
    });
}

surfq_status surfq_config_load_file(surfq_config* c, const char* path) {
    if (!c || !path) return null_arg("surfq_config_load_file");
    return guarded([&] {
        c->cfg = RunConfig::from_file(path);
        return SURFQ_OK;
    });
}

surfq_status surfq_run(const surfq_config* c, const char* command, surfq_report** out) {
    if (!c || !command || !out) return null_arg("surfq_run");
    return guarded([&] {
        auto rep = std::make_unique<surfq_report>();
        rep->report = run_command(command, c->cfg);
        rep->json = report_json(rep->report, false);
        rep->table = report_table(rep->report);
        *out = rep.release();
        return SURFQ_OK;
    });
}

void surfq_report_destroy(surfq_report* r) { delete r; }

surfq_status surfq_report_passed(const surfq_report* r, int* passed) {
    if (!r || !passed) return null_arg("surfq_report_passed");
    *passed = r->report.passed ? 1 : 0;
    return SURFQ_OK;
}

surfq_status surfq_report_check_count(const surfq_report* r, size_t* count) {
    if (!r || !count) return null_arg("surfq_report_check_count");
    *count = r->report.checks.size();
    return SURFQ_OK;
}

surfq_status surfq_report_check(const surfq_report* r, size_t index, const char** name,
                                double* max_residual, double* tolerance, int* pass) {
    if (!r) return null_arg("surfq_report_check");
    if (index >= r->report.checks.size()) {
        g_last_error = "check index out of range";
        return SURFQ_ERR_INVALID_PARAMS;
    }
    const CheckResult& c = r->report.checks[index];
    if (name) *name = c.name.c_str();
    if (max_residual) *max_residual = c.max_residual;
    if (tolerance) *tolerance = c.tolerance;
    if (pass) *pass = c.pass ? 1 : 0;
    return SURFQ_OK;
}

surfq_status surfq_report_json(const surfq_report* r, const char** json) {
    if (!r || !json) return null_arg("surfq_report_json");
    *json = r->json.c_str();
    return SURFQ_OK;
}

surfq_status surfq_report_table(const surfq_report* r, const char** text) {
    if (!r || !text) return null_arg("surfq_report_table");
    *text = r->table.c_str();
    return SURFQ_OK;
}

} // extern "C"
