#include "randers/geometry.hpp"

#include <cmath>

#include "randers/errors.hpp"
#include "randers/rng.hpp"

namespace randers {

bool in_domain(Model model, const Vec2& coords) {
    if (!std::isfinite(coords.x) || !std::isfinite(coords.y))
        throw InvalidInput("in_domain: non-finite coordinates");
    if (on_disk(model.id)) {
        const double limit = 1.0 - kDomainGuard;
        return norm2(coords) <= limit * limit;
    }
    return coords.y >= kDomainGuard;
}

ModelPoint make_point(Model model, const Vec2& coords) {
    if (!in_domain(model, coords)) throw DomainError("point outside model domain");
    return {model, coords};
}

namespace {

Vec2 draw_coords(Model model, const CounterRng& rng, std::uint64_t index, double truncation) {
    if (on_disk(model.id)) {
        // rejection from the bounding square keeps the density uniform
        for (std::uint64_t attempt = 0; attempt < 256; ++attempt) {
            const Vec2 c{truncation * rng.symmetric(index, 2 * attempt),
                         truncation * rng.symmetric(index, 2 * attempt + 1)};
            if (norm2(c) <= truncation * truncation) return c;
        }
        throw InvalidInput("sample_points: rejection sampling failed");  // unreachable
    }
    const double hi = 1.0 / truncation;
    return {hi * rng.symmetric(index, 0), truncation + (hi - truncation) * rng.uniform(index, 1)};
}

void check_truncation(Model model, double truncation) {
    if (!(truncation > 0.0 && truncation < 1.0))
        throw InvalidInput("truncation must lie in (0, 1)");
    if (on_disk(model.id) && truncation > 1.0 - kDomainGuard)
        throw InvalidInput("truncation exceeds the domain guard");
}

}  // namespace

std::vector<ModelPoint> sample_points(Model model, int count, std::uint64_t seed,
                                      double truncation) {
    if (count < 0) throw InvalidInput("sample_points: negative count");
    check_truncation(model, truncation);
    const CounterRng rng{seed};
    std::vector<ModelPoint> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
        out.push_back({model, draw_coords(model, rng, static_cast<std::uint64_t>(k), truncation)});
    return out;
}

std::vector<TangentVector> sample_tangents(Model model, int count, std::uint64_t seed,
                                           double truncation) {
    if (count < 0) throw InvalidInput("sample_tangents: negative count");
    check_truncation(model, truncation);
    const CounterRng rng{seed};
    std::vector<TangentVector> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const auto idx = static_cast<std::uint64_t>(k);
        const Vec2 c = draw_coords(model, rng, idx, truncation);
        Vec2 v{};
        for (std::uint64_t attempt = 0; attempt < 256; ++attempt) {
            v = {rng.symmetric(idx, 16 + 2 * attempt), rng.symmetric(idx, 17 + 2 * attempt)};
            if (std::fabs(v.x) > 1e-6 || std::fabs(v.y) > 1e-6) break;
        }
        out.push_back({{model, c}, v});
    }
    return out;
}

}  // namespace randers
