#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace surfq {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void Report::add(CheckResult r) {
    if (r.kind == "upper")
        r.pass = r.max_residual < r.tolerance;
    else if (r.kind == "lower")
        r.pass = r.max_residual > r.tolerance;
    else
        r.pass = true;
    checks.push_back(std::move(r));
}

void Report::finalize() {
    std::sort(checks.begin(), checks.end(),
              [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
    passed = true;
    for (const auto& c : checks) passed = passed && c.pass;
}

CheckResult make_check(const std::string& name, double residual, double tol,
                       std::array<double, 2> loc, const std::string& kind) {
    CheckResult c;
    c.name = name;
    c.max_residual = residual;
    c.tolerance = tol;
    c.location = loc;
    c.kind = kind;
    return c;
}

std::string report_json(const Report& r, bool include_timing) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    j["version"] = r.version;
    j["config"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.config_echo) j["config"][k] = v;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["kind"] = c.kind;
        jc["max_residual"] = c.max_residual;
        jc["tolerance"] = c.tolerance;
        if (std::isnan(c.location[0])) {
            jc["location"] = nullptr;
        } else {
            jc["location"] = {{r.coord_names[0], c.location[0]},
                              {r.coord_names[1], c.location[1]}};
        }
        jc["pass"] = c.pass;
        j["checks"].push_back(jc);
    }
    j["passed"] = r.passed;
    if (include_timing) j["wall_seconds"] = r.wall_seconds;
    return j.dump(2) + "\n";
}

std::string report_table(const Report& r) {
    std::ostringstream os;
    os << "== " << r.command << " (surfq " << r.version << ")\n";
    std::size_t w = 12;
    for (const auto& c : r.checks) w = std::max(w, c.name.size());
    for (const auto& c : r.checks) {
        os << (c.pass ? "  PASS  " : "  FAIL  ");
        os << c.name;
        os << std::string(w - c.name.size() + 2, ' ');
        char buf[128];
        const char rel = c.kind == "lower" ? '>' : '<';
        if (c.kind == "report")
            std::snprintf(buf, sizeof buf, "%-12.4g (report only)", c.max_residual);
        else
            std::snprintf(buf, sizeof buf, "%-12.4g (want %c %.4g)", c.max_residual, rel,
                          c.tolerance);
        os << buf;
        if (!std::isnan(c.location[0])) {
            std::snprintf(buf, sizeof buf, "  at %s=%.6g %s=%.6g", r.coord_names[0].c_str(),
                          c.location[0], r.coord_names[1].c_str(), c.location[1]);
            os << buf;
        }
        os << "\n";
    }
    os << (r.passed ? "all checks passed" : "CHECK FAILURES PRESENT") << "  [wall "
       << std::fixed << r.wall_seconds << " s]\n";
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(Errc::config_error, "cannot open for writing: " + path);
    f << content;
}

void write_field_csv(const ScalarField& f, const std::string& path) {
    const Grid& g = f.grid();
    const auto& names = g.chart().coord_names();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::config_error, "cannot open for writing: " + path);
    out << names[0] << "," << names[1] << ",re,im\n";
    for (int i = 0; i < g.n(0); ++i)
        for (int j = 0; j < g.n(1); ++j) {
            const auto v = f.at(i, j);
            out << fmt17(g.coord(0, i)) << "," << fmt17(g.coord(1, j)) << ","
                << fmt17(v.real()) << "," << fmt17(v.imag()) << "\n";
        }
}

void write_grid_scalar_csv(const Grid& g, const std::vector<double>& values,
                           const std::string& column, const std::string& path) {
    const auto& names = g.chart().coord_names();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::config_error, "cannot open for writing: " + path);
    out << names[0] << "," << names[1] << "," << column << "\n";
    for (int i = 0; i < g.n(0); ++i)
        for (int j = 0; j < g.n(1); ++j)
            out << fmt17(g.coord(0, i)) << "," << fmt17(g.coord(1, j)) << ","
                << fmt17(values[g.index(i, j)]) << "\n";
}

void write_columns_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& columns, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::config_error, "cannot open for writing: " + path);
    for (std::size_t c = 0; c < header.size(); ++c)
        out << header[c] << (c + 1 < header.size() ? "," : "\n");
    if (columns.empty()) return;
    const std::size_t rows = columns[0].size();
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << fmt17(columns[c][r]) << (c + 1 < columns.size() ? "," : "\n");
}

} // namespace surfq
