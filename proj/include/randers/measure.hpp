#pragma once

#include <functional>
#include <vector>

#include "randers/duality.hpp"
#include "randers/geometry.hpp"

namespace randers {

/// Polar trace of the unit ball boundary at x: radii r(theta_k) = 1/F(x, e(theta_k))
/// at uniformly spaced angles.
struct IndicatrixProfile {
    ModelPoint base;
    std::vector<double> radii;
};

IndicatrixProfile indicatrix(const ModelPoint& x, int nodes);

/// Busemann-Hausdorff density sigma(x) = pi / Vol(B_x(1)), with the unit-ball
/// area from the periodic trapezoid rule on (1/2) r(theta)^2.
double density_sigma(const ModelPoint& x, int nodes = 4096);

/// Closed form of the same density from the Randers data:
/// sigma = sqrt(det g) (1 - |beta|_g^2)^{3/2}. Fast path; tested against the
/// quadrature route.
double density_randers(Model model, const Vec2& x);

struct QuadratureSpec {
    enum class Region { Disk, Annulus, Rect };
    enum class Rule { Midpoint, Gauss2, Gauss4 };

    Region region = Region::Disk;
    double r_inner = 0.0, r_outer = 0.0;          // Disk / Annulus
    double ax = 0.0, bx = 0.0, ay = 0.0, by = 0.0;  // Rect
    int n1 = 32;  // radial / x subdivisions
    int n2 = 64;  // angular / y subdivisions
    Rule rule = Rule::Gauss2;
    int sigma_nodes = 1024;  // indicatrix resolution used for the density

    static QuadratureSpec disk(double radius, int nr, int ntheta, Rule rule = Rule::Gauss2);
    static QuadratureSpec annulus(double r0, double r1, int nr, int ntheta,
                                  Rule rule = Rule::Gauss2);
    static QuadratureSpec rect(double ax, double bx, double ay, double by, int nx, int ny,
                               Rule rule = Rule::Gauss2);
};

/// Plain composite quadrature of `f` over the region (no volume weight).
double integrate_euclidean(const std::function<double(const Vec2&)>& f,
                           const QuadratureSpec& quad);

/// Integral of f against the Busemann-Hausdorff volume form sigma dx.
/// Throws DomainError if the region is not inside the model domain.
double integrate(Model model, const std::function<double(const Vec2&)>& f,
                 const QuadratureSpec& quad);

/// Finsler Laplacian div_F(grad_F u) at x by nested central differences:
/// outer step on x -> sigma(x) (grad_F u)^i(x), divided by sigma(x).
double finsler_laplacian(Model model, const ScalarField& field, const ModelPoint& x,
                         double step = 1e-4);

/// |LHS - RHS| of the weak identity: integral of v * lap_F(u) dv_F against
/// -integral of Dv(grad_F u) dv_F, both over the quadrature region. The test
/// function v must vanish on the region boundary (checked on boundary
/// samples). A convergence diagnostic, not a pointwise equality.
double weak_form_residual(Model model, const ScalarField& u, const ScalarField& v,
                          const QuadratureSpec& quad, double laplacian_step = 1e-3);

}  // namespace randers
