#pragma once

#include <span>
#include <vector>

namespace surfq {

// Fornberg weights: coefficients w such that f^(m)(z) ~ sum_k w[k] f(x[k]).
// Node positions x are in grid-index units; divide by h^m after applying.
std::vector<double> fd_weights(double z, std::span<const double> x, int m);

// Uniform-grid first-derivative stencil of the given order centered at
// offset 0, with the stencil window shifted as needed near boundaries:
// `left` is the number of nodes available to the left (left >= order/2 gives
// the centered stencil).  Returned offsets are relative node indices.
struct Stencil {
    std::vector<int> offsets;
    std::vector<double> weights;  // apply as sum w_k f_{i+off_k} / h
};

Stencil first_derivative_stencil(int order, int left, int right);

} // namespace surfq
