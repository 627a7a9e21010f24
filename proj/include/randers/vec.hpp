#pragma once

#include <cmath>
#include <utility>

namespace randers {

template <class R>
struct Vec2T {
    R x{};
    R y{};
};

template <class R>
inline Vec2T<R> operator+(const Vec2T<R>& a, const Vec2T<R>& b) {
    return {a.x + b.x, a.y + b.y};
}

template <class R>
inline Vec2T<R> operator-(const Vec2T<R>& a, const Vec2T<R>& b) {
    return {a.x - b.x, a.y - b.y};
}

template <class R>
inline Vec2T<R> operator-(const Vec2T<R>& a) {
    return {-a.x, -a.y};
}

template <class R>
inline Vec2T<R> operator*(const R& s, const Vec2T<R>& a) {
    return {s * a.x, s * a.y};
}

template <class R>
inline Vec2T<R> operator*(const Vec2T<R>& a, const R& s) {
    return {a.x * s, a.y * s};
}

template <class R>
inline Vec2T<R> operator/(const Vec2T<R>& a, const R& s) {
    return {a.x / s, a.y / s};
}

template <class R>
inline R dot(const Vec2T<R>& a, const Vec2T<R>& b) {
    return a.x * b.x + a.y * b.y;
}

template <class R>
inline R cross(const Vec2T<R>& a, const Vec2T<R>& b) {
    return a.x * b.y - a.y * b.x;
}

template <class R>
inline R norm2(const Vec2T<R>& a) {
    return a.x * a.x + a.y * a.y;
}

template <class R>
inline R norm(const Vec2T<R>& a) {
    using std::sqrt;
    return sqrt(norm2(a));
}

// 2x2 matrix, row-major: [[a, b], [c, d]].
template <class R>
struct Mat2T {
    R a{}, b{}, c{}, d{};

    Vec2T<R> apply(const Vec2T<R>& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    R det() const { return a * d - b * c; }
    Mat2T transpose() const { return {a, c, b, d}; }
    Mat2T inverse() const {
        const R dt = det();
        return {d / dt, -b / dt, -c / dt, a / dt};
    }
};

template <class R>
inline Mat2T<R> operator*(const Mat2T<R>& m, const Mat2T<R>& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

template <class R>
inline Mat2T<R> operator*(const R& s, const Mat2T<R>& m) {
    return {s * m.a, s * m.b, s * m.c, s * m.d};
}

using Vec2 = Vec2T<double>;
using Mat2 = Mat2T<double>;

// Eigenvalues of a symmetric 2x2 matrix (uses (a+d)/2 +- sqrt(...)).
inline std::pair<double, double> sym_eigenvalues(const Mat2& m) {
    const double tr2 = 0.5 * (m.a + m.d);
    const double off = 0.5 * (m.b + m.c);
    const double disc = std::sqrt(std::max(0.0, 0.25 * (m.a - m.d) * (m.a - m.d) + off * off));
    return {tr2 - disc, tr2 + disc};
}

}  // namespace randers
