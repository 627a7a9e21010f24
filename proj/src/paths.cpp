#include "randers/paths.hpp"

#include <cmath>

#include "randers/errors.hpp"
#include "randers/isometries.hpp"
#include "randers/numerics.hpp"

namespace randers {

namespace {

double metric_at(const Model& model, const Vec2& x, const Vec2& v) {
    auto [alpha, beta] = detail::metric_terms<double>(model.id, x, v);
    return model.reversible ? alpha : alpha + beta;
}

}  // namespace

void validate(const Polyline& p) {
    if (p.vertices.size() < 2) throw InvalidInput("polyline: need at least 2 vertices");
    for (const Vec2& v : p.vertices)
        if (!in_domain(p.model, v)) throw InvalidInput("polyline: vertex outside domain");
    for (std::size_t i = 1; i < p.vertices.size(); ++i)
        if (norm2(p.vertices[i] - p.vertices[i - 1]) == 0.0)
            throw InvalidInput("polyline: consecutive vertices coincide");
}

double path_length(const Polyline& p, int quad_per_segment) {
    validate(p);
    if (quad_per_segment < 2) throw InvalidInput("path_length: need at least 2 nodes per segment");
    const auto& rule = gauss_legendre(quad_per_segment);
    double total = 0.0;
    for (std::size_t i = 1; i < p.vertices.size(); ++i) {
        const Vec2 a = p.vertices[i - 1];
        const Vec2 d = p.vertices[i] - a;
        double seg = 0.0;
        for (const auto& node : rule) {
            const double t = 0.5 * (node.t + 1.0);
            seg += 0.5 * node.w * metric_at(p.model, a + t * d, d);
        }
        total += seg;
    }
    return total;
}

double mapped_path_length(MapId m, const Polyline& p, int quad_per_segment) {
    validate(p);
    if (p.model.id != source_model(m).id)
        throw ModelMismatch("mapped_path_length: polyline model does not match map source");
    if (quad_per_segment < 2)
        throw InvalidInput("mapped_path_length: need at least 2 nodes per segment");
    Model tgt = target_model(m);
    tgt.reversible = p.model.reversible;
    const auto& rule = gauss_legendre(quad_per_segment);
    double total = 0.0;
    for (std::size_t i = 1; i < p.vertices.size(); ++i) {
        const Vec2 a = p.vertices[i - 1];
        const Vec2 d = p.vertices[i] - a;
        double seg = 0.0;
        for (const auto& node : rule) {
            const double t = 0.5 * (node.t + 1.0);
            const Vec2 x = a + t * d;
            const Vec2 y = detail::map_apply<double>(m, x);
            const Vec2 dv = detail::map_jacobian<double>(m, x).apply(d);
            seg += 0.5 * node.w * metric_at(tgt, y, dv);
        }
        total += seg;
    }
    return total;
}

DistanceEstimate distance_estimate(Model model, const Vec2& from, const Vec2& to,
                                   int control_points, int iterations) {
    if (norm2(to - from) == 0.0) throw InvalidInput("distance_estimate: endpoints coincide");
    if (control_points < 0 || iterations < 0)
        throw InvalidInput("distance_estimate: negative budget");
    if (!in_domain(model, from) || !in_domain(model, to))
        throw DomainError("distance_estimate: endpoint outside domain");

    Polyline path{model, {}};
    path.vertices.reserve(static_cast<std::size_t>(control_points) + 2);
    path.vertices.push_back(from);
    for (int k = 1; k <= control_points; ++k) {
        const double t = static_cast<double>(k) / (control_points + 1);
        path.vertices.push_back(from + t * (to - from));
    }
    path.vertices.push_back(to);

    double best = path_length(path);
    DistanceEstimate est{best, 0, control_points == 0};
    if (control_points == 0 || iterations == 0) return est;

    double step = 0.1 * norm(to - from);
    int halvings = 0;
    constexpr int kMaxHalvings = 20;
    for (int sweep = 0; sweep < iterations; ++sweep) {
        bool improved = false;
        for (int k = 1; k <= control_points; ++k) {
            const auto idx = static_cast<std::size_t>(k);
            for (const Vec2 dir : {Vec2{step, 0.0}, Vec2{-step, 0.0}, Vec2{0.0, step},
                                   Vec2{0.0, -step}}) {
                const Vec2 candidate = path.vertices[idx] + dir;
                if (!in_domain(model, candidate)) continue;
                if (norm2(candidate - path.vertices[idx - 1]) == 0.0 ||
                    norm2(candidate - path.vertices[idx + 1]) == 0.0)
                    continue;
                const Vec2 saved = path.vertices[idx];
                path.vertices[idx] = candidate;
                const double len = path_length(path);
                if (len < best) {
                    best = len;
                    improved = true;
                } else {
                    path.vertices[idx] = saved;
                }
            }
        }
        est.sweeps_used = sweep + 1;
        if (!improved) {
            if (++halvings > kMaxHalvings) {
                est.converged = true;
                break;
            }
            step *= 0.5;
        }
    }
    est.length = best;
    return est;
}

}  // namespace randers
