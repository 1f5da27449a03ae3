#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "grid.hpp"

namespace surfq {

// Validated run configuration.  Populated from flat key=value text (config
// file) and/or CLI flags; flags win.  Unknown keys are rejected.
struct RunConfig {
    std::string surface = "torus";
    std::map<std::string, double> surface_params;  // a, b, c, amp, shape, freq
    int n_xi = 128;
    int n_zeta = 128;
    double margin = 0.05;
    int fd_order = 4;
    std::uint64_t seed = 1;
    double hbar = 1.0;
    double mass = 1.0;
    // evaluation-subdomain knob for ordered-kinetic residual norms
    double factor_slope_cap = 0.3;
    std::map<std::string, double> tolerances;  // per-check overrides
    bool inject_corrupt_normal = false;
    std::string json_path;
    std::string csv_dir;

    // Throws ConfigError for unknown keys or malformed values.
    void set(const std::string& key, const std::string& value);
    void validate() const;

    static RunConfig from_file(const std::string& path);

    GridSpec grid_spec() const { return GridSpec{n_xi, n_zeta, margin, fd_order}; }
    double tol(const std::string& check, double dflt) const;
    std::map<std::string, std::string> echo() const;
};

} // namespace surfq
