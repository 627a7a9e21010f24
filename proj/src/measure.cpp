#include "randers/measure.hpp"

#include <cmath>

#include "randers/errors.hpp"
#include "randers/formulas.hpp"
#include "randers/metrics.hpp"

namespace randers {

namespace {

void require_inside(const ModelPoint& x, const char* who) {
    if (!in_domain(x.model, x.p)) throw DomainError(std::string(who) + ": point outside domain");
}

double metric_at(const Model& model, const Vec2& x, const Vec2& v) {
    auto [alpha, beta] = detail::metric_terms<double>(model.id, x, v);
    return model.reversible ? alpha : alpha + beta;
}

}  // namespace

IndicatrixProfile indicatrix(const ModelPoint& x, int nodes) {
    require_inside(x, "indicatrix");
    if (nodes < 8) throw InvalidInput("indicatrix: need at least 8 nodes");
    IndicatrixProfile prof{x, {}};
    prof.radii.resize(static_cast<std::size_t>(nodes));
    for (int k = 0; k < nodes; ++k) {
        const double theta = 2.0 * M_PI * k / nodes;
        prof.radii[static_cast<std::size_t>(k)] =
            1.0 / metric_at(x.model, x.p, {std::cos(theta), std::sin(theta)});
    }
    return prof;
}

double density_sigma(const ModelPoint& x, int nodes) {
    if (nodes < 16) throw InvalidInput("density_sigma: need at least 16 nodes");
    const IndicatrixProfile prof = indicatrix(x, nodes);
    // Vol = (1/2) int r^2 dtheta by the periodic trapezoid rule; sigma = pi/Vol.
    double sum = 0.0;
    for (const double r : prof.radii) sum += r * r;
    return nodes / sum;
}

double density_randers(Model model, const Vec2& x) {
    const Mat2 g = riemann_metric(model, x);
    const double det = g.det();
    if (model.reversible) return std::sqrt(det);
    const Vec2 b = beta_form(model, x);
    const double t = dot(b, g.inverse().apply(b));
    return std::sqrt(det) * std::pow(1.0 - t, 1.5);
}

QuadratureSpec QuadratureSpec::disk(double radius, int nr, int ntheta, Rule rule) {
    QuadratureSpec q;
    q.region = Region::Disk;
    q.r_outer = radius;
    q.n1 = nr;
    q.n2 = ntheta;
    q.rule = rule;
    return q;
}

QuadratureSpec QuadratureSpec::annulus(double r0, double r1, int nr, int ntheta, Rule rule) {
    QuadratureSpec q;
    q.region = Region::Annulus;
    q.r_inner = r0;
    q.r_outer = r1;
    q.n1 = nr;
    q.n2 = ntheta;
    q.rule = rule;
    return q;
}

QuadratureSpec QuadratureSpec::rect(double ax, double bx, double ay, double by, int nx, int ny,
                                    Rule rule) {
    QuadratureSpec q;
    q.region = Region::Rect;
    q.ax = ax;
    q.bx = bx;
    q.ay = ay;
    q.by = by;
    q.n1 = nx;
    q.n2 = ny;
    q.rule = rule;
    return q;
}

namespace {

struct AxisNode {
    double t;  // position inside a cell, [0, 1]
    double w;  // weight, sums to 1 over the cell
};

std::vector<AxisNode> rule_nodes(QuadratureSpec::Rule rule) {
    switch (rule) {
        case QuadratureSpec::Rule::Midpoint:
            return {{0.5, 1.0}};
        case QuadratureSpec::Rule::Gauss2: {
            const double d = 0.5 / std::sqrt(3.0);
            return {{0.5 - d, 0.5}, {0.5 + d, 0.5}};
        }
        case QuadratureSpec::Rule::Gauss4: {
            const double a = 0.5 * std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
            const double b = 0.5 * std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
            const double wa = (18.0 + std::sqrt(30.0)) / 72.0;
            const double wb = (18.0 - std::sqrt(30.0)) / 72.0;
            return {{0.5 - b, wb}, {0.5 - a, wa}, {0.5 + a, wa}, {0.5 + b, wb}};
        }
    }
    return {};
}

void validate_spec(const QuadratureSpec& q) {
    if (q.n1 < 1 || q.n2 < 1) throw InvalidInput("quadrature: subdivision counts must be >= 1");
    if (q.region == QuadratureSpec::Region::Rect) {
        if (!(q.ax < q.bx && q.ay < q.by)) throw InvalidInput("quadrature: empty rectangle");
    } else {
        if (!(q.r_outer > q.r_inner && q.r_inner >= 0.0))
            throw InvalidInput("quadrature: bad radii");
    }
}

// Walks every quadrature node in a fixed order: fn(point, weight) where the
// weight already includes the area element (polar r included).
template <class Fn>
void for_nodes(const QuadratureSpec& q, Fn fn) {
    const auto nodes = rule_nodes(q.rule);
    if (q.region == QuadratureSpec::Region::Rect) {
        const double dx = (q.bx - q.ax) / q.n1;
        const double dy = (q.by - q.ay) / q.n2;
        for (int i = 0; i < q.n1; ++i)
            for (int j = 0; j < q.n2; ++j)
                for (const auto& nx : nodes)
                    for (const auto& ny : nodes) {
                        const Vec2 p{q.ax + (i + nx.t) * dx, q.ay + (j + ny.t) * dy};
                        fn(p, nx.w * ny.w * dx * dy);
                    }
        return;
    }
    const double dr = (q.r_outer - q.r_inner) / q.n1;
    const double dth = 2.0 * M_PI / q.n2;
    for (int i = 0; i < q.n1; ++i)
        for (int j = 0; j < q.n2; ++j)
            for (const auto& nr : nodes)
                for (const auto& nt : nodes) {
                    const double r = q.r_inner + (i + nr.t) * dr;
                    const double th = (j + nt.t) * dth;
                    fn(Vec2{r * std::cos(th), r * std::sin(th)}, nr.w * nt.w * dr * dth * r);
                }
}

void require_region_inside(Model model, const QuadratureSpec& q) {
    if (q.region == QuadratureSpec::Region::Rect) {
        const double rx = std::max(std::fabs(q.ax), std::fabs(q.bx));
        const double ry = std::max(std::fabs(q.ay), std::fabs(q.by));
        const bool ok = on_disk(model.id) ? std::hypot(rx, ry) <= 1.0 - kDomainGuard
                                          : q.ay >= kDomainGuard;
        if (!ok) throw DomainError("integrate: region leaves the model domain");
        return;
    }
    if (!on_disk(model.id))
        throw DomainError("integrate: origin-centered regions are not inside the half plane");
    if (q.r_outer > 1.0 - kDomainGuard)
        throw DomainError("integrate: region leaves the unit disk");
}

}  // namespace

double integrate_euclidean(const std::function<double(const Vec2&)>& f,
                           const QuadratureSpec& quad) {
    validate_spec(quad);
    double sum = 0.0;
    for_nodes(quad, [&](const Vec2& p, double w) { sum += w * f(p); });
    return sum;
}

double integrate(Model model, const std::function<double(const Vec2&)>& f,
                 const QuadratureSpec& quad) {
    validate_spec(quad);
    require_region_inside(model, quad);
    double sum = 0.0;
    for_nodes(quad, [&](const Vec2& p, double w) {
        sum += w * f(p) * density_sigma({model, p}, quad.sigma_nodes);
    });
    return sum;
}

double finsler_laplacian(Model model, const ScalarField& field, const ModelPoint& x,
                         double step) {
    require_inside(x, "finsler_laplacian");
    if (!(step > 0.0)) throw InvalidInput("finsler_laplacian: step must be positive");
    constexpr int kSigmaNodes = 2048;

    const auto flux = [&](const Vec2& y, int component) {
        const ModelPoint p{model, y};
        if (!in_domain(model, y))
            throw DomainError("finsler_laplacian: step neighborhood leaves the domain");
        const Vec2 v = finsler_gradient(model, field, p).v;
        const double sigma = density_sigma(p, kSigmaNodes);
        return sigma * (component == 0 ? v.x : v.y);
    };

    const Vec2 p = x.p;
    const double div =
        (flux({p.x + step, p.y}, 0) - flux({p.x - step, p.y}, 0)) / (2.0 * step) +
        (flux({p.x, p.y + step}, 1) - flux({p.x, p.y - step}, 1)) / (2.0 * step);
    return div / density_sigma(x, kSigmaNodes);
}

double weak_form_residual(Model model, const ScalarField& u, const ScalarField& v,
                          const QuadratureSpec& quad, double laplacian_step) {
    validate_spec(quad);
    require_region_inside(model, quad);

    // compact support: v must vanish on the region boundary
    const auto check_support = [&](const Vec2& p) {
        if (std::fabs(v.value(p)) >= 1e-14)
            throw InvalidInput("weak_form_residual: test function does not vanish on the boundary");
    };
    if (quad.region == QuadratureSpec::Region::Rect) {
        constexpr int kEdge = 64;
        for (int i = 0; i <= kEdge; ++i) {
            const double tx = quad.ax + (quad.bx - quad.ax) * i / kEdge;
            const double ty = quad.ay + (quad.by - quad.ay) * i / kEdge;
            check_support({tx, quad.ay});
            check_support({tx, quad.by});
            check_support({quad.ax, ty});
            check_support({quad.bx, ty});
        }
    } else {
        constexpr int kRim = 128;
        for (int i = 0; i < kRim; ++i) {
            const double th = 2.0 * M_PI * i / kRim;
            check_support({quad.r_outer * std::cos(th), quad.r_outer * std::sin(th)});
            if (quad.region == QuadratureSpec::Region::Annulus)
                check_support({quad.r_inner * std::cos(th), quad.r_inner * std::sin(th)});
        }
    }

    const double lhs = integrate(
        model,
        [&](const Vec2& p) {
            return v.value(p) * finsler_laplacian(model, u, {model, p}, laplacian_step);
        },
        quad);
    const double rhs = -integrate(
        model,
        [&](const Vec2& p) {
            return dot(field_differential(v, p), finsler_gradient(model, u, {model, p}).v);
        },
        quad);
    return std::fabs(lhs - rhs);
}

}  // namespace randers
