#pragma once

#include <stdexcept>
#include <string>

namespace surfq {

enum class Errc {
    invalid_params,
    degenerate_chart,
    grid_too_coarse,
    grid_mismatch,
    missing_reference,
    factor_nonpositive,
    singular_ode,
    config_error,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::invalid_params: return "InvalidParams";
        case Errc::degenerate_chart: return "DegenerateChart";
        case Errc::grid_too_coarse: return "GridTooCoarse";
        case Errc::grid_mismatch: return "GridMismatch";
        case Errc::missing_reference: return "MissingReference";
        case Errc::factor_nonpositive: return "FactorNonpositive";
        case Errc::singular_ode: return "SingularODE";
        case Errc::config_error: return "ConfigError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace surfq
