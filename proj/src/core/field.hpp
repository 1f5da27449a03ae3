#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "grid.hpp"

namespace surfq {

using complexd = std::complex<double>;

// Complex samples of a wavefunction, one per grid node.  Value semantics;
// operators produce new fields and never mutate shared state.
class ScalarField {
public:
    explicit ScalarField(std::shared_ptr<const Grid> grid, complexd fill = {0.0, 0.0})
        : grid_(std::move(grid)), v_(grid_->size(), fill) {}

    const Grid& grid() const { return *grid_; }
    const std::shared_ptr<const Grid>& grid_ptr() const { return grid_; }

    std::size_t size() const { return v_.size(); }
    complexd& operator[](std::size_t k) { return v_[k]; }
    const complexd& operator[](std::size_t k) const { return v_[k]; }
    complexd& at(int i, int j) { return v_[grid_->index(i, j)]; }
    const complexd& at(int i, int j) const { return v_[grid_->index(i, j)]; }

    std::vector<complexd>& values() { return v_; }
    const std::vector<complexd>& values() const { return v_; }

    bool all_finite() const;

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(complexd s);

private:
    std::shared_ptr<const Grid> grid_;
    std::vector<complexd> v_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(complexd s, ScalarField a);

// Centered finite difference of the grid's order along coordinate mu;
// periodic wrap where periodic, one-sided stencils of matching order at
// non-periodic edges.
ScalarField partial(const ScalarField& f, int mu);

// sum conj(phi) psi sqrt(g) w_xi w_zeta -- the surface L2 pairing defining
// the Hilbert space in which Hermiticity is tested.
complexd inner_product(const ScalarField& phi, const ScalarField& psi);

double norm_l2(const ScalarField& f);

// max |f| over nodes where mask != 0 (all nodes when mask is null).
double max_abs(const ScalarField& f, const std::vector<std::uint8_t>* mask = nullptr);

// Seeded band-limited test field: trigonometric modes on periodic
// coordinates, polynomials in cos(coordinate) times a C^3 margin-vanishing
// window on non-periodic ones.  Coefficients are spectrally tapered so FD
// error is dominated by the lowest modes.  Analytic derivatives available.
class RandomTestField {
public:
    RandomTestField(std::shared_ptr<const Grid> grid, std::uint64_t seed, int bandlimit);

    complexd value(double xi, double zeta) const;
    complexd derivative(int mu, double xi, double zeta) const;

    ScalarField sample() const;
    // sample() shifted by a constant offset; |field| >= offset - 1 pointwise.
    ScalarField sample_offset(double offset) const;

private:
    complexd term(int k, int l, double xi, double zeta, int deriv_mu) const;

    std::shared_ptr<const Grid> grid_;
    int bandlimit_;
    std::vector<complexd> coef_;
    double norm_ = 1.0;
};

} // namespace surfq
