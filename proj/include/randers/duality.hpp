#pragma once

#include <functional>

#include "randers/geometry.hpp"
#include "randers/vec.hpp"

namespace randers {

/// A scalar function on a model domain together with its differential.
/// When `differential` is empty, a central finite difference of `value`
/// is used (step 1e-6 * max(1, |x|)).
struct ScalarField {
    std::function<double(const Vec2&)> value;
    std::function<Vec2(const Vec2&)> differential;
};

Vec2 field_differential(const ScalarField& f, const Vec2& x);

/// Co-metric F*(x, a) = sup_{v != 0} a(v) / F(x, v), evaluated as a maximum
/// over unit directions: dense 720-node scan plus golden-section refinement
/// to 1e-12 in the angle. Returns 0 at a = 0.
double co_metric(const CotangentVector& ca);

/// Legendre transform J*(x, a): the a-gradient of (1/2) F*^2 by central
/// differences with step 1e-6 * max(1, |a|). J*(x, 0) = 0 by continuity.
TangentVector legendre(const CotangentVector& ca);

/// Finsler gradient of a scalar field: J*(x, Du(x)).
TangentVector finsler_gradient(Model model, const ScalarField& field, const ModelPoint& x);

/// Closed form of the same co-metric, exploiting the ellipse shape of the
/// Randers unit ball: F*(x, a) = sqrt(a^T Q a) - <shift, a>. Fast path for
/// assembly-heavy callers; must agree with the sup route to 1e-10 (tested).
struct DualForm {
    Mat2 q;      // symmetric positive definite
    Vec2 shift;  // zero in reversible mode
};

DualForm dual_form(Model model, const Vec2& x);

double co_metric_randers(const CotangentVector& ca);
TangentVector legendre_randers(const CotangentVector& ca);

}  // namespace randers
