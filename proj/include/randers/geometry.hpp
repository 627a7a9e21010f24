#pragma once

#include <cstdint>
#include <vector>

#include "randers/vec.hpp"

namespace randers {

enum class ModelId { Funk, PoincareDisk, HalfPlane };

/// A model selector. Funk and PoincareDisk live on the open unit disk
/// D = {|x| < 1}; HalfPlane lives on H = {x2 > 0}. The reversible flag
/// suppresses the 1-form term at evaluation time, which turns each space
/// into its Riemannian counterpart (Klein, Poincare disk, Lobachevsky)
/// while keeping the exact same code path for the Riemannian term.
struct Model {
    ModelId id = ModelId::Funk;
    bool reversible = false;
};

inline bool on_disk(ModelId id) { return id != ModelId::HalfPlane; }

inline bool same_domain(Model a, Model b) { return a.id == b.id; }

// Guard band against the open boundary: keeps 1-|x|^2 and x2 bounded away
// from zero so metric denominators stay well conditioned.
inline constexpr double kDomainGuard = 0x1p-40;

/// True iff coords lie in the model's open domain, respecting the guard.
/// Throws InvalidInput on non-finite coordinates.
bool in_domain(Model model, const Vec2& coords);

struct ModelPoint {
    Model model;
    Vec2 p;
};

/// Validating constructor: throws DomainError if coords are outside.
ModelPoint make_point(Model model, const Vec2& coords);

struct TangentVector {
    ModelPoint base;
    Vec2 v;
};

struct CotangentVector {
    ModelPoint base;
    Vec2 a;
};

/// Deterministic sample of `count` points, uniform in coordinates over the
/// truncated region. Disk models: |x| <= truncation (0 < truncation < 1).
/// Half plane: x2 in [truncation, 1/truncation], |x1| <= 1/truncation.
std::vector<ModelPoint> sample_points(Model model, int count, std::uint64_t seed,
                                      double truncation);

/// Points as above plus velocity components uniform in [-1,1], with the
/// (measure-zero) near-zero vectors rejected deterministically.
std::vector<TangentVector> sample_tangents(Model model, int count, std::uint64_t seed,
                                           double truncation);

}  // namespace randers
