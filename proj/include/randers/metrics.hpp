#pragma once

#include "randers/geometry.hpp"
#include "randers/vec.hpp"

namespace randers {

/// One metric evaluation, decomposed into the Riemannian term and the 1-form
/// term. F == alpha + beta bitwise (the sum is formed exactly once).
struct MetricValue {
    double F;
    double alpha;
    double beta;
};

struct FundamentalTensor {
    TangentVector base;
    Mat2 m;  // symmetric Hessian of (1/2) F^2 in the velocity
    double min_eigenvalue;
};

MetricValue evaluate(const TangentVector& tv);
MetricValue evaluate(Model model, const Vec2& x, const Vec2& v);

/// The half-plane drift w(x) = (2 x1 x2, x2^2 - x1^2 - 4).
Vec2 drift_field(const ModelPoint& x);

/// Matrix of the underlying Riemannian metric g at x (Klein on the Funk disk,
/// conformal Poincare on the disk, Lobachevsky on the half plane).
Mat2 riemann_metric(Model model, const Vec2& x);

/// Coefficients of the 1-form beta at x; zero in reversible mode.
Vec2 beta_form(Model model, const Vec2& x);

/// |beta_x|_g = sqrt(g*_x(beta, beta)) via the explicit 2x2 co-metric.
/// Strictly below 1 everywhere; identically 0 in reversible mode.
double randers_bound(const ModelPoint& x);

/// Central-difference Hessian of v -> (1/2) F^2(x, v), symmetrized.
/// Step 1e-5 * max(1, |v|). Throws DegenerateDirection at v = 0.
FundamentalTensor fundamental_tensor(const TangentVector& tv);

/// F(x, v) - F(x, -v); equals 2 beta(x, v) up to rounding.
double reversibility_defect(const TangentVector& tv);

}  // namespace randers
