#pragma once

#include "randers/geometry.hpp"
#include "randers/vec.hpp"

// Scalar-generic cores of the metric and coordinate-change formulas. The
// public modules instantiate them with double; the verification paths
// instantiate them with the compensated dd scalar. Single source of truth
// for every closed-form expression.

namespace randers {

// The six coordinate changes between the three domains.
enum class MapId {
    PoincareToFunk,       // disk -> disk
    FunkToPoincare,       // inverse of the above
    FunkToHalfPlane,      // disk -> half plane
    HalfPlaneToFunk,      // inverse
    HalfPlaneToPoincare,  // half plane -> disk
    PoincareToHalfPlane,  // inverse
};

namespace detail {

template <class R>
struct MetricTerms {
    R alpha;  // Riemannian term
    R beta;   // 1-form term
};

// w(x) = (2 x1 x2, x2^2 - x1^2 - 4): the drift of the half-plane model.
template <class R>
Vec2T<R> drift(const Vec2T<R>& x) {
    return {R(2) * x.x * x.y, x.y * x.y - x.x * x.x - R(4)};
}

template <class R>
MetricTerms<R> metric_terms(ModelId id, const Vec2T<R>& x, const Vec2T<R>& v) {
    using std::sqrt;
    switch (id) {
        case ModelId::Funk: {
            const R d = R(1) - norm2(x);
            const R xv = dot(x, v);
            return {sqrt(d * norm2(v) + xv * xv) / d, xv / d};
        }
        case ModelId::PoincareDisk: {
            const R s = norm2(x);
            const R d = R(1) - s;
            return {R(2) * norm(v) / d, R(4) * dot(x, v) / (d * (R(1) + s))};
        }
        case ModelId::HalfPlane: {
            return {norm(v) / x.y, dot(drift(x), v) / (x.y * (R(4) + norm2(x)))};
        }
    }
    return {};
}

template <class R>
Vec2T<R> map_apply(MapId m, const Vec2T<R>& x) {
    using std::sqrt;
    const R one(1), two(2), four(4);
    switch (m) {
        case MapId::PoincareToFunk: {
            const R d = one + norm2(x);
            return {two * x.x / d, two * x.y / d};
        }
        case MapId::FunkToPoincare: {
            const R d = one + sqrt(one - norm2(x));
            return {x.x / d, x.y / d};
        }
        case MapId::FunkToHalfPlane: {
            const R d = one + x.x;
            return {two * x.y / d, two * sqrt(one - norm2(x)) / d};
        }
        case MapId::HalfPlaneToFunk: {
            const R s = norm2(x);
            const R d = four + s;
            return {(four - s) / d, four * x.x / d};
        }
        case MapId::HalfPlaneToPoincare: {
            // denominator |x|^2 + 4 x2 + 4 in the cancellation-free form
            const R q = x.x * x.x + (x.y + two) * (x.y + two);
            return {(four - norm2(x)) / q, four * x.x / q};
        }
        case MapId::PoincareToHalfPlane: {
            // denominator |x|^2 + 2 x1 + 1 in the cancellation-free form
            const R p = (one + x.x) * (one + x.x) + x.y * x.y;
            return {four * x.y / p, two * (one - norm2(x)) / p};
        }
    }
    return {};
}

template <class R>
Mat2T<R> map_jacobian(MapId m, const Vec2T<R>& x) {
    using std::sqrt;
    const R one(1), two(2), four(4);
    switch (m) {
        case MapId::PoincareToFunk: {
            const R s = norm2(x);
            const R pref = two / ((one + s) * (one + s));
            return {pref * (one + s - two * x.x * x.x), pref * (-two * x.x * x.y),
                    pref * (-two * x.x * x.y), pref * (one + s - two * x.y * x.y)};
        }
        case MapId::FunkToPoincare: {
            const R r = sqrt(one - norm2(x));
            const R t = one + r;
            const R c = one / (r * t * t);
            return {one / t + c * x.x * x.x, c * x.x * x.y,
                    c * x.x * x.y, one / t + c * x.y * x.y};
        }
        case MapId::FunkToHalfPlane: {
            const R r = sqrt(one - norm2(x));
            const R d = one + x.x;
            const R pref = -two / (d * d);
            return {pref * x.y, pref * (-d),
                    pref * (x.x - x.y * x.y + one) / r, pref * x.y * d / r};
        }
        case MapId::HalfPlaneToFunk: {
            const R s = norm2(x);
            const R c = one / ((four + s) * (four + s));
            return {c * (-R(16) * x.x), c * (-R(16) * x.y),
                    c * four * (four + x.y * x.y - x.x * x.x), c * (-R(8) * x.x * x.y)};
        }
        case MapId::HalfPlaneToPoincare: {
            const R y2 = x.y + two;
            const R q = x.x * x.x + y2 * y2;
            const R pref = -four / (q * q);
            const R off = y2 * y2 - x.x * x.x;
            return {pref * two * x.x * y2, pref * off,
                    pref * (-off), pref * two * x.x * y2};
        }
        case MapId::PoincareToHalfPlane: {
            const R x1 = one + x.x;
            const R p = x1 * x1 + x.y * x.y;
            const R c = one / (p * p);
            const R off = four * (x1 * x1 - x.y * x.y);
            return {c * (-R(8) * x.y * x1), c * off,
                    c * (-off), c * (-R(8) * x.y * x1)};
        }
    }
    return {};
}

}  // namespace detail
}  // namespace randers
