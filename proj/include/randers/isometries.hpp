#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "randers/formulas.hpp"
#include "randers/geometry.hpp"
#include "randers/metrics.hpp"

namespace randers {

Model source_model(MapId m);
Model target_model(MapId m);
MapId inverse_map(MapId m);
std::string map_name(MapId m);

/// Apply the coordinate change. Throws ModelMismatch when the point's model
/// does not match the map's source, DomainError outside the source domain.
ModelPoint map_point(MapId m, const ModelPoint& x);

struct JacobianMatrix {
    ModelPoint base;
    Mat2 m;
};

/// Analytic Jacobian (the inverse maps are differentiated directly, not
/// obtained by inverting the forward Jacobian).
JacobianMatrix jacobian(MapId m, const ModelPoint& x);

/// (map_point(m, x), jacobian(m, x) v).
TangentVector pushforward(MapId m, const TangentVector& tv);

struct IsometryReport {
    MapId map;
    int samples = 0;
    double max_rel_f = 0.0;
    double mean_rel_f = 0.0;
    double max_rel_alpha = 0.0;
    double max_rel_beta = 0.0;
    Vec2 worst_x{};
    Vec2 worst_v{};
};

/// Samples (x, v) in the source domain and compares F, alpha and beta against
/// their pushforward values in the target model. Runs on compensated
/// arithmetic so that the reported residual reflects the identity itself, not
/// double rounding near the Randers null directions (where F << alpha).
/// Disk sources use |x| <= truncation; half-plane sources use the band
/// x2 in [1-truncation, 1/(1-truncation)].
/// Honors RANDERS2D_THREADS for sample partitioning; results do not depend
/// on the thread count.
IsometryReport check_isometry(MapId m, int samples, std::uint64_t seed, double truncation,
                              bool reversible = false);

struct CompositionCheck {
    std::string name;
    double max_abs = 0.0;
    double max_rel = 0.0;
    Vec2 worst_x{};
};

struct CommutativityReport {
    std::vector<CompositionCheck> rows;
    double max_abs = 0.0;
    double max_rel = 0.0;
};

/// Verifies the six composition identities of the triangle of maps
/// (each map equals the composition of the other two, appropriately
/// inverted). Same sampling and precision conventions as check_isometry.
CommutativityReport check_commutativity(int samples, std::uint64_t seed, double truncation);

}  // namespace randers
