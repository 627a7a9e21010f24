#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "randers/formulas.hpp"
#include "randers/geometry.hpp"

namespace randers {

/// Triangulation of a truncated region. Triangles are positively oriented;
/// boundary vertices are flagged.
struct Mesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::uint8_t> boundary;
    double h_mesh = 0.0;
};

/// Ring triangulation of the disk |x| <= radius with target edge length h.
Mesh build_disk_mesh(double radius, double h);

/// Structured triangulation of [ax, bx] x [ay, by].
Mesh build_rect_mesh(double ax, double bx, double ay, double by, double h);

/// Region from the model's truncation convention: disk of radius `truncation`
/// for the disk models, the band [t, 1/t] x {|x1| <= 1/t} for the half plane.
Mesh build_mesh(Model model, double truncation, double h);

/// Push a mesh through a coordinate change: vertices mapped, triangles and
/// boundary flags kept. Throws if any image triangle degenerates.
Mesh map_mesh(const Mesh& mesh, MapId m);

/// Piecewise-linear field: one value per vertex, zero on the boundary.
struct DiscreteField {
    const Mesh* mesh = nullptr;
    std::vector<double> values;
};

/// Builds a field over `mesh`, forcing boundary values to zero.
DiscreteField make_field(const Mesh& mesh, std::vector<double> values);

/// Ratio of the dual Dirichlet energy to the L2 mass: per triangle, Du is the
/// constant gradient of the linear interpolant and both integrands are
/// evaluated at the centroid (F*^2(c, Du) sigma(c) A over u(c)^2 sigma(c) A).
double rayleigh_quotient(Model model, const DiscreteField& u);

/// Square root of (numerator + denominator) of the same assembly.
double h1_norm(Model model, const DiscreteField& u);

struct RayleighTrace {
    std::vector<double> quotients;  // non-increasing; front() is the start value
    DiscreteField field;            // final iterate (points at the input mesh)
    int iters_used = 0;
    bool stalled = false;
};

/// Quotient descent over the interior vertex values: finite-difference
/// directional derivatives of the numerator per vertex, mass-preconditioned
/// direction, backtracking line search (descent guaranteed), renormalization
/// each accepted step. Deterministic for a fixed seed. The seeded start is
/// signed mesh-smoothed noise; pass `start` to override it (one value per
/// vertex; boundary entries are zeroed).
RayleighTrace minimize_quotient(Model model, const Mesh& mesh, std::uint64_t seed,
                                int max_iters, const std::vector<double>* start = nullptr);

struct GapRow {
    Model model;
    double truncation = 0.0;
    double h = 0.0;
    double final_quotient = 0.0;
    int iters_used = 0;
};

struct GapReport {
    std::vector<GapRow> rows;
    double finsler_threshold = 0.2;
    double reversible_threshold = 0.23;
    bool monotone_ok = false;     // quotients non-increasing along the truncations
    bool finsler_below = false;   // nonreversible rows end below finsler_threshold
    bool reversible_floor = false;  // reversible rows all >= reversible_threshold
};

/// Runs minimize_quotient for every (model, truncation) cell, in both the
/// Finsler and the reversible-counterpart mode on identical meshes. Half-plane
/// cells run on the isometric image of the disk mesh (a quasi-uniform mesh of
/// the equivalent band would need billions of triangles).
GapReport gap_experiment(const std::vector<ModelId>& models,
                         const std::vector<double>& truncations, double h,
                         std::uint64_t seed, int iters);

}  // namespace randers
