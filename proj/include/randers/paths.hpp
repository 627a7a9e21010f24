#pragma once

#include <vector>

#include "randers/formulas.hpp"
#include "randers/geometry.hpp"

namespace randers {

/// Oriented piecewise-straight path. Orientation matters: lengths are
/// direction dependent for the nonreversible metrics.
struct Polyline {
    Model model;
    std::vector<Vec2> vertices;
};

/// Throws InvalidInput unless there are >= 2 vertices, all inside the domain,
/// with consecutive vertices distinct. (The domains are convex, so chords
/// between valid vertices stay inside.)
void validate(const Polyline& p);

/// Gauss-Legendre quadrature of F(gamma(t), gamma'(t)) per segment, summed.
double path_length(const Polyline& p, int quad_per_segment = 64);

/// Length of the image of p under the coordinate change, evaluated in the
/// target metric at the same parameter nodes with pushforward velocities.
/// Equals path_length(p) when the map is an isometry.
double mapped_path_length(MapId m, const Polyline& p, int quad_per_segment = 64);

struct DistanceEstimate {
    double length = 0.0;
    int sweeps_used = 0;
    bool converged = false;
};

/// Upper bound on the oriented distance from `from` to `to`: coordinate
/// descent over the free control points of a polyline, starting from the
/// straight chord. Step starts at 0.1 |from - to| and halves on stalled
/// sweeps (20 halvings max). Objective is monotone non-increasing.
DistanceEstimate distance_estimate(Model model, const Vec2& from, const Vec2& to,
                                   int control_points, int iterations);

}  // namespace randers
