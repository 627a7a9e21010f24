#include "randers/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "randers/errors.hpp"
#include "randers/formulas.hpp"

namespace randers {

namespace {

void require_inside(const ModelPoint& x, const char* who) {
    if (!in_domain(x.model, x.p)) throw DomainError(std::string(who) + ": base point outside domain");
}

void require_finite(const Vec2& v, const char* who) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
        throw InvalidInput(std::string(who) + ": non-finite vector");
}

}  // namespace

MetricValue evaluate(const TangentVector& tv) {
    require_inside(tv.base, "evaluate");
    require_finite(tv.v, "evaluate");
    auto [alpha, beta] = detail::metric_terms<double>(tv.base.model.id, tv.base.p, tv.v);
    if (tv.base.model.reversible) beta = 0.0;
    return {alpha + beta, alpha, beta};
}

MetricValue evaluate(Model model, const Vec2& x, const Vec2& v) {
    return evaluate(TangentVector{{model, x}, v});
}

Vec2 drift_field(const ModelPoint& x) {
    if (x.model.id != ModelId::HalfPlane)
        throw ModelMismatch("drift_field: defined on the half plane only");
    require_inside(x, "drift_field");
    return detail::drift<double>(x.p);
}

Mat2 riemann_metric(Model model, const Vec2& x) {
    const double s = norm2(x);
    switch (model.id) {
        case ModelId::Funk: {
            // Klein metric: ((1-s) I + x x^T) / (1-s)^2
            const double d = 1.0 - s;
            return {(d + x.x * x.x) / (d * d), x.x * x.y / (d * d),
                    x.x * x.y / (d * d), (d + x.y * x.y) / (d * d)};
        }
        case ModelId::PoincareDisk: {
            const double c = 4.0 / ((1.0 - s) * (1.0 - s));
            return {c, 0.0, 0.0, c};
        }
        case ModelId::HalfPlane: {
            const double c = 1.0 / (x.y * x.y);
            return {c, 0.0, 0.0, c};
        }
    }
    return {};
}

Vec2 beta_form(Model model, const Vec2& x) {
    if (model.reversible) return {0.0, 0.0};
    const double s = norm2(x);
    switch (model.id) {
        case ModelId::Funk:
            return x / (1.0 - s);
        case ModelId::PoincareDisk:
            return (4.0 / ((1.0 - s) * (1.0 + s))) * x;
        case ModelId::HalfPlane:
            return detail::drift<double>(x) / (x.y * (4.0 + s));
    }
    return {};
}

double randers_bound(const ModelPoint& x) {
    require_inside(x, "randers_bound");
    if (x.model.reversible) return 0.0;
    const Vec2 b = beta_form(x.model, x.p);
    const Mat2 ginv = riemann_metric(x.model, x.p).inverse();
    return std::sqrt(dot(b, ginv.apply(b)));
}

FundamentalTensor fundamental_tensor(const TangentVector& tv) {
    require_inside(tv.base, "fundamental_tensor");
    require_finite(tv.v, "fundamental_tensor");
    if (tv.v.x == 0.0 && tv.v.y == 0.0)
        throw DegenerateDirection("fundamental_tensor: undefined at v = 0");

    const auto energy = [&](const Vec2& v) {
        auto [alpha, beta] = detail::metric_terms<double>(tv.base.model.id, tv.base.p, v);
        if (tv.base.model.reversible) beta = 0.0;
        const double f = alpha + beta;
        return 0.5 * f * f;
    };
    const double h = 1e-5 * std::max(1.0, norm(tv.v));
    const Vec2 v = tv.v;
    const Vec2 ex{h, 0.0}, ey{0.0, h};
    const double f0 = energy(v);
    const double dxx = (energy(v + ex) - 2.0 * f0 + energy(v - ex)) / (h * h);
    const double dyy = (energy(v + ey) - 2.0 * f0 + energy(v - ey)) / (h * h);
    const double dxy = (energy(v + ex + ey) - energy(v + ex - ey) - energy(v - ex + ey) +
                        energy(v - ex - ey)) /
                       (4.0 * h * h);
    const Mat2 m{dxx, dxy, dxy, dyy};  // symmetric by construction
    return {tv, m, sym_eigenvalues(m).first};
}

double reversibility_defect(const TangentVector& tv) {
    const MetricValue fwd = evaluate(tv);
    const MetricValue bwd = evaluate(TangentVector{tv.base, -tv.v});
    return fwd.F - bwd.F;
}

}  // namespace randers
