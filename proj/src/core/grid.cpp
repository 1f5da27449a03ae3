#include "grid.hpp"

#include <sstream>

#include "error.hpp"
#include "fdstencil.hpp"

namespace surfq {

Grid::Grid(std::shared_ptr<const Chart> chart, const GridSpec& spec)
    : chart_(std::move(chart)) {
    if (spec.n_xi < 16 || spec.n_zeta < 16) {
        std::ostringstream os;
        os << "grid counts must be >= 16 (got " << spec.n_xi << " x " << spec.n_zeta << ")";
        throw Error(Errc::grid_too_coarse, os.str());
    }
    if (spec.fd_order != 2 && spec.fd_order != 4 && spec.fd_order != 6)
        throw Error(Errc::config_error, "fd_order must be one of {2, 4, 6}");
    if (spec.margin < 0.0)
        throw Error(Errc::config_error, "margin must be >= 0");

    n_[0] = spec.n_xi;
    n_[1] = spec.n_zeta;
    margin_ = spec.margin;
    fd_order_ = spec.fd_order;

    const auto& dom = chart_->domain();
    for (int mu = 0; mu < 2; ++mu) {
        periodic_[mu] = dom.periodic[mu];
        if (periodic_[mu]) {
            lo_[mu] = dom.lo[mu];
            h_[mu] = dom.span(mu) / n_[mu];
        } else {
            const double span = dom.span(mu) - 2.0 * margin_;
            if (span <= 0.0) {
                throw Error(Errc::config_error, "margin leaves an empty coordinate range");
            }
            lo_[mu] = dom.lo[mu] + margin_;
            h_[mu] = span / (n_[mu] - 1);
        }
    }

    frames_.reserve(static_cast<std::size_t>(n_[0]) * n_[1]);
    for (int i = 0; i < n_[0]; ++i)
        for (int j = 0; j < n_[1]; ++j)
            frames_.push_back(frame_at(*chart_, coord(0, i), coord(1, j)));

    for (int mu = 0; mu < 2; ++mu) {
        const int n = n_[mu];
        const double h = h_[mu];
        auto& w = quad_w_[mu];
        w.assign(n, h);
        if (!periodic_[mu]) {
            w[0] = w[n - 1] = 0.5 * h;
            // Euler-Maclaurin end corrections with one-sided FD estimates of
            // f' and f''' push trapezoid accuracy to O(h^6).
            std::vector<double> pos(7);
            for (int k = 0; k < 7; ++k) pos[k] = k;
            const auto c1 = fd_weights(0.0, pos, 1);
            const auto c3 = fd_weights(0.0, pos, 3);
            for (int k = 0; k < 7; ++k) {
                w[k] += h / 12.0 * c1[k];
                w[n - 1 - k] += h / 12.0 * c1[k];
                w[k] -= h / 720.0 * c3[k];
                w[n - 1 - k] -= h / 720.0 * c3[k];
            }
        }
    }
}

std::vector<std::uint8_t> Grid::interior_mask(int applications) const {
    std::vector<std::uint8_t> mask(size(), 1);
    const int band = applications * stencil_radius();
    for (int mu = 0; mu < 2; ++mu) {
        if (periodic_[mu]) continue;
        for (int i = 0; i < n_[0]; ++i)
            for (int j = 0; j < n_[1]; ++j) {
                const int idx = (mu == 0) ? i : j;
                if (idx < band || idx >= n_[mu] - band) mask[index(i, j)] = 0;
            }
    }
    return mask;
}

std::shared_ptr<const Grid> make_grid(std::shared_ptr<const Chart> chart, const GridSpec& spec) {
    return std::make_shared<const Grid>(std::move(chart), spec);
}

} // namespace surfq
