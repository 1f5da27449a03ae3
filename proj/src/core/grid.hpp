#pragma once

#include <memory>
#include <vector>

#include "chart.hpp"
#include "frame.hpp"

namespace surfq {

struct GridSpec {
    int n_xi = 128;
    int n_zeta = 128;
    double margin = 0.05;  // trimmed off each end of non-periodic coordinates
    int fd_order = 4;      // one of {2, 4, 6}
};

// Structured node set over a chart domain with precomputed frames and
// quadrature weights.  Periodic coordinates satisfy spacing * count = period;
// non-periodic ones span [lo + margin, hi - margin] inclusive.
class Grid {
public:
    Grid(std::shared_ptr<const Chart> chart, const GridSpec& spec);

    const Chart& chart() const { return *chart_; }
    const std::shared_ptr<const Chart>& chart_ptr() const { return chart_; }

    int n(int mu) const { return n_[mu]; }
    double h(int mu) const { return h_[mu]; }
    bool periodic(int mu) const { return periodic_[mu]; }
    double margin() const { return margin_; }
    int fd_order() const { return fd_order_; }
    int stencil_radius() const { return fd_order_ / 2; }

    std::size_t size() const { return frames_.size(); }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_[1] + j; }

    double coord(int mu, int idx) const { return lo_[mu] + h_[mu] * idx; }
    double coord_lo(int mu) const { return lo_[mu]; }
    double coord_hi(int mu) const { return lo_[mu] + h_[mu] * (n_[mu] - 1); }

    const GeomFrame& frame(int i, int j) const { return frames_[index(i, j)]; }
    const GeomFrame& frame(std::size_t k) const { return frames_[k]; }
    const std::vector<GeomFrame>& frames() const { return frames_; }

    // Per-dimension quadrature weights: uniform h on periodic coordinates,
    // end-corrected trapezoid (Euler-Maclaurin to O(h^6)) otherwise.
    const std::vector<double>& quad_weights(int mu) const { return quad_w_[mu]; }

    // Nodes whose FD stencils stay order-accurate after `applications`
    // successive derivative applications.  Periodic dimensions have no edge;
    // non-periodic ones lose applications * stencil_radius nodes per side.
    std::vector<std::uint8_t> interior_mask(int applications) const;

private:
    std::shared_ptr<const Chart> chart_;
    int n_[2];
    double h_[2];
    double lo_[2];
    bool periodic_[2];
    double margin_;
    int fd_order_;
    std::vector<GeomFrame> frames_;
    std::vector<double> quad_w_[2];
};

std::shared_ptr<const Grid> make_grid(std::shared_ptr<const Chart> chart, const GridSpec& spec);

} // namespace surfq
