#pragma once

#include <array>
#include <cmath>

namespace surfq {

// Small fixed-size helpers shared by plain-double geometry and jet-valued
// evaluation of chart embeddings.  T is double or ad::Jet.

template <class T>
using V3 = std::array<T, 3>;

using Vec3 = V3<double>;
using Mat2 = std::array<std::array<double, 2>, 2>;

template <class T>
inline V3<T> operator+(const V3<T>& a, const V3<T>& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

template <class T>
inline V3<T> operator-(const V3<T>& a, const V3<T>& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

template <class T, class S>
inline V3<T> operator*(const S& s, const V3<T>& a) {
    return {s * a[0], s * a[1], s * a[2]};
}

template <class T>
inline T dot(const V3<T>& a, const V3<T>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class T>
inline V3<T> cross(const V3<T>& a, const V3<T>& b) {
    return {a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 normalized(const Vec3& a) {
    const double n = norm(a);
    return {a[0] / n, a[1] / n, a[2] / n};
}

inline double det2(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

inline Mat2 inv2(const Mat2& m) {
    const double d = det2(m);
    return {{{m[1][1] / d, -m[0][1] / d}, {-m[1][0] / d, m[0][0] / d}}};
}

} // namespace surfq
