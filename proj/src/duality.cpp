#include "randers/duality.hpp"

#include <algorithm>
#include <cmath>

#include "randers/errors.hpp"
#include "randers/formulas.hpp"
#include "randers/numerics.hpp"

namespace randers {

namespace {

constexpr int kScanNodes = 720;
constexpr double kThetaTol = 1e-12;

void require_inside(const ModelPoint& x, const char* who) {
    if (!in_domain(x.model, x.p)) throw DomainError(std::string(who) + ": base point outside domain");
}

double metric_at(const Model& model, const Vec2& x, const Vec2& v) {
    auto [alpha, beta] = detail::metric_terms<double>(model.id, x, v);
    return model.reversible ? alpha : alpha + beta;
}

}  // namespace

Vec2 field_differential(const ScalarField& f, const Vec2& x) {
    if (f.differential) return f.differential(x);
    const double h = 1e-6 * std::max(1.0, norm(x));
    return {(f.value({x.x + h, x.y}) - f.value({x.x - h, x.y})) / (2.0 * h),
            (f.value({x.x, x.y + h}) - f.value({x.x, x.y - h})) / (2.0 * h)};
}

double co_metric(const CotangentVector& ca) {
    require_inside(ca.base, "co_metric");
    if (!std::isfinite(ca.a.x) || !std::isfinite(ca.a.y))
        throw InvalidInput("co_metric: non-finite covector");
    if (ca.a.x == 0.0 && ca.a.y == 0.0) return 0.0;

    const Model model = ca.base.model;
    const Vec2 x = ca.base.p;
    const Vec2 a = ca.a;
    const auto ratio = [&](double theta) {
        const Vec2 e{std::cos(theta), std::sin(theta)};
        return dot(a, e) / metric_at(model, x, e);
    };

    // dense scan brackets the basin of the (unimodal) maximum
    double best = ratio(0.0);
    int best_k = 0;
    const double step = 2.0 * M_PI / kScanNodes;
    for (int k = 1; k < kScanNodes; ++k) {
        const double r = ratio(k * step);
        if (r > best) {
            best = r;
            best_k = k;
        }
    }
    const double theta = golden_max(ratio, (best_k - 1) * step, (best_k + 1) * step, kThetaTol);
    return std::max(best, ratio(theta));
}

TangentVector legendre(const CotangentVector& ca) {
    require_inside(ca.base, "legendre");
    if (ca.a.x == 0.0 && ca.a.y == 0.0) return {ca.base, {0.0, 0.0}};

    const auto half_dual_sq = [&](const Vec2& a) {
        const double f = co_metric({ca.base, a});
        return 0.5 * f * f;
    };
    const double h = 1e-6 * std::max(1.0, norm(ca.a));
    const Vec2 a = ca.a;
    return {ca.base,
            {(half_dual_sq({a.x + h, a.y}) - half_dual_sq({a.x - h, a.y})) / (2.0 * h),
             (half_dual_sq({a.x, a.y + h}) - half_dual_sq({a.x, a.y - h})) / (2.0 * h)}};
}

TangentVector finsler_gradient(Model model, const ScalarField& field, const ModelPoint& x) {
    if (!same_domain(model, x.model))
        throw ModelMismatch("finsler_gradient: point model does not match");
    return legendre({x, field_differential(field, x.p)});
}

DualForm dual_form(Model model, const Vec2& x) {
    const double s = norm2(x);
    if (model.reversible) {
        switch (model.id) {
            case ModelId::Funk: {  // Klein co-metric (1-s)(I - x x^T)
                const double d = 1.0 - s;
                return {{d * (1.0 - x.x * x.x), -d * x.x * x.y,
                         -d * x.x * x.y, d * (1.0 - x.y * x.y)},
                        {0.0, 0.0}};
            }
            case ModelId::PoincareDisk: {
                const double c = 0.25 * (1.0 - s) * (1.0 - s);
                return {{c, 0.0, 0.0, c}, {0.0, 0.0}};
            }
            case ModelId::HalfPlane: {
                const double c = x.y * x.y;
                return {{c, 0.0, 0.0, c}, {0.0, 0.0}};
            }
        }
    }
    switch (model.id) {
        case ModelId::Funk:
            return {{1.0, 0.0, 0.0, 1.0}, x};
        case ModelId::PoincareDisk: {
            const double p = 1.0 + s;
            const double d = 1.0 - s;
            const double c1 = 0.25 * p * p;
            const double c2 = (p / d) * (p / d);
            return {{c1 + c2 * x.x * x.x, c2 * x.x * x.y,
                     c2 * x.x * x.y, c1 + c2 * x.y * x.y},
                    (p / d) * x};
        }
        case ModelId::HalfPlane: {
            const Vec2 w = detail::drift<double>(x);
            const double r = 4.0 + s;
            const double c = r * r / (16.0 * x.y * x.y);
            const double y2 = x.y * x.y;
            return {{c * (y2 + w.x * w.x / 16.0), c * (w.x * w.y / 16.0),
                     c * (w.x * w.y / 16.0), c * (y2 + w.y * w.y / 16.0)},
                    (r / (16.0 * x.y)) * w};
        }
    }
    return {};
}

double co_metric_randers(const CotangentVector& ca) {
    require_inside(ca.base, "co_metric_randers");
    const DualForm df = dual_form(ca.base.model, ca.base.p);
    const double q = dot(ca.a, df.q.apply(ca.a));
    if (q == 0.0) return 0.0;
    return std::sqrt(q) - dot(df.shift, ca.a);
}

TangentVector legendre_randers(const CotangentVector& ca) {
    require_inside(ca.base, "legendre_randers");
    const DualForm df = dual_form(ca.base.model, ca.base.p);
    const Vec2 qa = df.q.apply(ca.a);
    const double q = dot(ca.a, qa);
    if (q == 0.0) return {ca.base, {0.0, 0.0}};
    const double root = std::sqrt(q);
    const double fstar = root - dot(df.shift, ca.a);
    return {ca.base, fstar * (qa / root - df.shift)};
}

}  // namespace randers
