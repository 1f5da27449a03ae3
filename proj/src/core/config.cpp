#include "config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "error.hpp"

namespace surfq {

namespace {

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw Error(Errc::config_error, "value for '" + key + "' is not a number: '" + value + "'");
    }
    if (pos != value.size())
        throw Error(Errc::config_error, "value for '" + key + "' is not a number: '" + value + "'");
    return v;
}

long long parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    const long long i = static_cast<long long>(v);
    if (static_cast<double>(i) != v)
        throw Error(Errc::config_error, "value for '" + key + "' must be an integer: '" + value + "'");
    return i;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

const std::set<std::string>& surface_param_keys() {
    static const std::set<std::string> keys{"a", "b", "c", "amp", "shape", "freq"};
    return keys;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "surface") {
        surface = value;
    } else if (surface_param_keys().count(key)) {
        surface_params[key] = parse_double(key, value);
    } else if (key == "n") {
        n_xi = n_zeta = static_cast<int>(parse_int(key, value));
    } else if (key == "n_xi") {
        n_xi = static_cast<int>(parse_int(key, value));
    } else if (key == "n_zeta") {
        n_zeta = static_cast<int>(parse_int(key, value));
    } else if (key == "margin") {
        margin = parse_double(key, value);
    } else if (key == "fd_order") {
        fd_order = static_cast<int>(parse_int(key, value));
    } else if (key == "seed") {
        seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "hbar") {
        hbar = parse_double(key, value);
    } else if (key == "mass") {
        mass = parse_double(key, value);
    } else if (key == "factor_slope_cap") {
        factor_slope_cap = parse_double(key, value);
    } else if (key == "inject_corrupt_normal") {
        inject_corrupt_normal = parse_int(key, value) != 0;
    } else if (key == "json") {
        json_path = value;
    } else if (key == "csv_dir") {
        csv_dir = value;
    } else if (key.rfind("tol.", 0) == 0) {
        const std::string name = key.substr(4);
        if (name.empty()) throw Error(Errc::config_error, "empty check name in '" + key + "'");
        tolerances[name] = parse_double(key, value);
    } else {
        throw Error(Errc::config_error, "unknown configuration key '" + key + "'");
    }
}

void RunConfig::validate() const {
    if (n_xi < 16 || n_zeta < 16)
        throw Error(Errc::config_error, "grid counts must be >= 16");
    if (fd_order != 2 && fd_order != 4 && fd_order != 6)
        throw Error(Errc::config_error, "fd_order must be one of {2, 4, 6}");
    if (!(margin >= 0.0)) throw Error(Errc::config_error, "margin must be >= 0");
    if (!(hbar > 0.0)) throw Error(Errc::config_error, "hbar must be > 0");
    if (!(mass > 0.0)) throw Error(Errc::config_error, "mass must be > 0");
    if (!(factor_slope_cap > 0.0))
        throw Error(Errc::config_error, "factor_slope_cap must be > 0");
    for (const auto& [k, v] : tolerances)
        if (!(v > 0.0))
            throw Error(Errc::config_error, "tolerance override '" + k + "' must be > 0");
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(Errc::config_error, "cannot open config file: " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << path << ":" << lineno << ": expected key=value, got '" << line << "'";
            throw Error(Errc::config_error, os.str());
        }
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

double RunConfig::tol(const std::string& check, double dflt) const {
    auto it = tolerances.find(check);
    return it == tolerances.end() ? dflt : it->second;
}

std::map<std::string, std::string> RunConfig::echo() const {
    std::map<std::string, std::string> m;
    m["surface"] = surface;
    for (const auto& [k, v] : surface_params) m[k] = fmt17(v);
    m["n_xi"] = std::to_string(n_xi);
    m["n_zeta"] = std::to_string(n_zeta);
    m["margin"] = fmt17(margin);
    m["fd_order"] = std::to_string(fd_order);
    m["seed"] = std::to_string(seed);
    m["hbar"] = fmt17(hbar);
    m["mass"] = fmt17(mass);
    m["factor_slope_cap"] = fmt17(factor_slope_cap);
    if (inject_corrupt_normal) m["inject_corrupt_normal"] = "1";
    for (const auto& [k, v] : tolerances) m["tol." + k] = fmt17(v);
    return m;
}

} // namespace surfq
