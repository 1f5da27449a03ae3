#pragma once

#include <array>
#include <cmath>

namespace surfq::ad {

// Second-order forward-mode AD scalar in two independent variables:
// truncated polynomial carrying value, gradient and (symmetric) Hessian.
// h stores the unique Hessian entries in the order (00, 01, 11).
struct Jet {
    double v = 0.0;
    std::array<double, 2> g{0.0, 0.0};
    std::array<double, 3> h{0.0, 0.0, 0.0};

    Jet() = default;
    Jet(double value) : v(value) {}

    static Jet variable(double value, int index) {
        Jet j(value);
        j.g[index] = 1.0;
        return j;
    }

    Jet& operator+=(const Jet& o) {
        v += o.v;
        for (int i = 0; i < 2; ++i) g[i] += o.g[i];
        for (int i = 0; i < 3; ++i) h[i] += o.h[i];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        v -= o.v;
        for (int i = 0; i < 2; ++i) g[i] -= o.g[i];
        for (int i = 0; i < 3; ++i) h[i] -= o.h[i];
        return *this;
    }
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }

inline Jet operator-(const Jet& a) {
    Jet r;
    r.v = -a.v;
    r.g = {-a.g[0], -a.g[1]};
    r.h = {-a.h[0], -a.h[1], -a.h[2]};
    return r;
}

inline Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    r.v = a.v * b.v;
    r.g[0] = a.v * b.g[0] + b.v * a.g[0];
    r.g[1] = a.v * b.g[1] + b.v * a.g[1];
    r.h[0] = a.v * b.h[0] + b.v * a.h[0] + 2.0 * a.g[0] * b.g[0];
    r.h[1] = a.v * b.h[1] + b.v * a.h[1] + a.g[0] * b.g[1] + a.g[1] * b.g[0];
    r.h[2] = a.v * b.h[2] + b.v * a.h[2] + 2.0 * a.g[1] * b.g[1];
    return r;
}

// Chain rule for a scalar function with first/second derivative d1, d2 at a.v.
inline Jet compose(const Jet& a, double value, double d1, double d2) {
    Jet r;
    r.v = value;
    r.g[0] = d1 * a.g[0];
    r.g[1] = d1 * a.g[1];
    r.h[0] = d1 * a.h[0] + d2 * a.g[0] * a.g[0];
    r.h[1] = d1 * a.h[1] + d2 * a.g[0] * a.g[1];
    r.h[2] = d1 * a.h[2] + d2 * a.g[1] * a.g[1];
    return r;
}

inline Jet inverse(const Jet& a) {
    const double iv = 1.0 / a.v;
    return compose(a, iv, -iv * iv, 2.0 * iv * iv * iv);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * inverse(b); }

inline Jet sin(const Jet& a) { return compose(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
inline Jet cos(const Jet& a) { return compose(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }
inline Jet exp(const Jet& a) {
    const double e = std::exp(a.v);
    return compose(a, e, e, e);
}
inline Jet log(const Jet& a) { return compose(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }
inline Jet sqrt(const Jet& a) {
    const double s = std::sqrt(a.v);
    return compose(a, s, 0.5 / s, -0.25 / (s * a.v));
}
inline Jet sinh(const Jet& a) { return compose(a, std::sinh(a.v), std::cosh(a.v), std::sinh(a.v)); }
inline Jet cosh(const Jet& a) { return compose(a, std::cosh(a.v), std::sinh(a.v), std::cosh(a.v)); }
inline Jet pow(const Jet& a, double p) {
    const double f = std::pow(a.v, p);
    return compose(a, f, p * f / a.v, p * (p - 1.0) * f / (a.v * a.v));
}

} // namespace surfq::ad
