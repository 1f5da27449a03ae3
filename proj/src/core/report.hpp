#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "field.hpp"

namespace surfq {

// One verification row.  kind "upper": pass iff max_residual < tolerance;
// kind "lower": pass iff max_residual > tolerance (negative controls);
// kind "report": informational, always passes.
struct CheckResult {
    std::string name;
    double max_residual = 0.0;
    std::array<double, 2> location{std::nan(""), std::nan("")};
    double tolerance = 0.0;
    std::string kind = "upper";
    bool pass = true;
};

struct Report {
    std::string command;
    std::string version;
    std::map<std::string, std::string> config_echo;
    std::vector<CheckResult> checks;
    bool passed = true;
    double wall_seconds = 0.0;
    std::array<std::string, 2> coord_names{"xi", "zeta"};

    void add(CheckResult r);
    void finalize();  // sort checks by name, recompute passed
};

CheckResult make_check(const std::string& name, double residual, double tol,
                       std::array<double, 2> loc = {std::nan(""), std::nan("")},
                       const std::string& kind = "upper");

// Timing is excluded by default so that reports are byte-for-byte
// reproducible given (config, seed, version).
std::string report_json(const Report& r, bool include_timing = false);
std::string report_table(const Report& r);
void write_text_file(const std::string& path, const std::string& content);

// CSV writers (17 significant digits, comma-separated, header row).
void write_field_csv(const ScalarField& f, const std::string& path);
void write_grid_scalar_csv(const Grid& g, const std::vector<double>& values,
                           const std::string& column, const std::string& path);
void write_columns_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& columns, const std::string& path);

} // namespace surfq
