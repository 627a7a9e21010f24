#pragma once

#include <cmath>

namespace randers {

// Compensated double-double scalar (~31 significant digits). Used by the
// verification paths: the isometry identities hold exactly in real arithmetic,
// but near the Randers null directions F is smaller than alpha by many orders
// of magnitude, so plain doubles cannot certify them at 1e-11 relative error.
// Classic Dekker/Knuth error-free transformations; hi always carries the
// correctly rounded value.
struct dd {
    double hi = 0.0;
    double lo = 0.0;

    dd() = default;
    dd(double h) : hi(h) {}
    dd(double h, double l) : hi(h), lo(l) {}
};

namespace dd_detail {

inline dd two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline dd quick_two_sum(double a, double b) {  // requires |a| >= |b|
    const double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline dd operator+(const dd& a, const dd& b) {
    using namespace dd_detail;
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd operator-(const dd& a) { return {-a.hi, -a.lo}; }
inline dd operator-(const dd& a, const dd& b) { return a + (-b); }

inline dd operator*(const dd& a, const dd& b) {
    using namespace dd_detail;
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd operator/(const dd& a, const dd& b) {
    using namespace dd_detail;
    const double q1 = a.hi / b.hi;
    dd r = a - dd(q1) * b;
    const double q2 = r.hi / b.hi;
    r = r - dd(q2) * b;
    const double q3 = r.hi / b.hi;
    return quick_two_sum(q1, q2) + dd(q3);
}

inline dd& operator+=(dd& a, const dd& b) { a = a + b; return a; }
inline dd& operator-=(dd& a, const dd& b) { a = a - b; return a; }
inline dd& operator*=(dd& a, const dd& b) { a = a * b; return a; }
inline dd& operator/=(dd& a, const dd& b) { a = a / b; return a; }

inline bool operator<(const dd& a, const dd& b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const dd& a, const dd& b) { return b < a; }
inline bool operator<=(const dd& a, const dd& b) { return !(b < a); }
inline bool operator>=(const dd& a, const dd& b) { return !(a < b); }
inline bool operator==(const dd& a, const dd& b) { return a.hi == b.hi && a.lo == b.lo; }

inline dd sqrt(const dd& a) {
    if (a.hi == 0.0) return dd(0.0);
    const double y = std::sqrt(a.hi);  // Newton step refines to full dd accuracy
    const dd yd(y);
    return yd + (a - yd * yd) / (dd(2.0) * yd);
}

inline dd fabs(const dd& a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

inline double to_double(const dd& a) { return a.hi; }

}  // namespace randers
