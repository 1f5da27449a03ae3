#include "fdstencil.hpp"

#include <algorithm>
#include <cassert>

namespace surfq {

std::vector<double> fd_weights(double z, std::span<const double> x, int m) {
    const int n = static_cast<int>(x.size());
    assert(n > m);
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = c[i][m];
    return w;
}

Stencil first_derivative_stencil(int order, int left, int right) {
    const int width = order + 1;
    const int radius = order / 2;
    // Prefer the centered window; shift it to fit the available nodes.
    int start = -radius;
    if (left < radius) start = -left;
    if (right < radius) start = -(width - 1 - right);
    Stencil s;
    std::vector<double> pos(width);
    for (int k = 0; k < width; ++k) {
        s.offsets.push_back(start + k);
        pos[k] = static_cast<double>(start + k);
    }
    s.weights = fd_weights(0.0, pos, 1);
    return s;
}

} // namespace surfq
