#pragma once

#include <functional>
#include <vector>

namespace randers {

// Golden-section refinement of a local maximum of f on [lo, hi].
// Returns the abscissa of the maximum to within theta_tol.
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double theta_tol);

struct GaussNode {
    double t;  // abscissa on [-1, 1]
    double w;
};

// Gauss-Legendre rule of order n, cached. Nodes via Newton on the Legendre
// recurrence.
const std::vector<GaussNode>& gauss_legendre(int n);

}  // namespace randers
