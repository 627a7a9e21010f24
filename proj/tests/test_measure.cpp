#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "randers/errors.hpp"
#include "randers/isometries.hpp"
#include "randers/measure.hpp"

using namespace randers;

namespace {

const Model kFunk{ModelId::Funk, false};
const Model kPDisk{ModelId::PoincareDisk, false};
const Model kHPlane{ModelId::HalfPlane, false};

// polynomial bump vanishing (with its gradient scale) at the disk rim
ScalarField disk_bump(double radius) {
    const double r2 = radius * radius;
    return {[r2](const Vec2& p) {
                const double t = r2 - norm2(p);
                return t > 0.0 ? t * t * t / (r2 * r2 * r2) : 0.0;
            },
            [r2](const Vec2& p) {
                const double t = r2 - norm2(p);
                if (t <= 0.0) return Vec2{0.0, 0.0};
                const double c = -6.0 * t * t / (r2 * r2 * r2);
                return Vec2{c * p.x, c * p.y};
            }};
}

const ScalarField kCoordX{[](const Vec2& p) { return p.x; },
                          [](const Vec2&) { return Vec2{1.0, 0.0}; }};

}  // namespace

TEST_CASE("indicatrix radii are positive and finite") {
    const IndicatrixProfile prof = indicatrix({kFunk, {0.5, 0.2}}, 128);
    REQUIRE(prof.radii.size() == 128);
    for (const double r : prof.radii) {
        CHECK(r > 0.0);
        CHECK(std::isfinite(r));
    }
    CHECK_THROWS_AS(indicatrix({kFunk, {0.0, 0.0}}, 4), InvalidInput);
}

TEST_CASE("density at the reference points") {
    CHECK(std::fabs(density_sigma({kFunk, {0.0, 0.0}}) - 1.0) < 1e-10);
    CHECK(std::fabs(density_sigma({kPDisk, {0.0, 0.0}}) - 4.0) < 1e-10);
    CHECK(std::fabs(density_sigma({kFunk, {0.5, 0.0}}) - 1.0) < 1e-10);
    CHECK(std::fabs(density_sigma({kHPlane, {0.0, 2.0}}) - 0.25) < 1e-10);
}

TEST_CASE("funk density is identically one") {
    const auto pts = sample_points(kFunk, 200, 301, 0.9);
    for (const auto& p : pts) CHECK(std::fabs(density_sigma(p) - 1.0) < 1e-8);
}

TEST_CASE("density quadrature is converged") {
    for (const Model m : {kFunk, kPDisk, kHPlane}) {
        const Vec2 x = m.id == ModelId::HalfPlane ? Vec2{0.7, 0.8} : Vec2{0.55, -0.3};
        const double a = density_sigma({m, x}, 1 << 14);
        const double b = density_sigma({m, x}, 1 << 15);
        CHECK(std::fabs(a - b) < 1e-10 * std::max(1.0, a));
    }
}

TEST_CASE("closed-form density matches the quadrature") {
    for (const Model base : {kFunk, kPDisk, kHPlane}) {
        for (const bool rev : {false, true}) {
            const Model m{base.id, rev};
            const auto pts = sample_points(m, 100, 307, m.id == ModelId::HalfPlane ? 0.2 : 0.8);
            for (const auto& p : pts) {
                const double quad = density_sigma(p, 8192);
                const double closed = density_randers(m, p.p);
                CHECK(std::fabs(quad - closed) <= 1e-8 * std::max(1.0, closed));
            }
        }
    }
}

TEST_CASE("volume integrals") {
    const auto one = [](const Vec2&) { return 1.0; };
    const auto zero = [](const Vec2&) { return 0.0; };
    const QuadratureSpec disk_half = QuadratureSpec::disk(0.5, 64, 128);
    CHECK(std::fabs(integrate(kFunk, one, disk_half) - M_PI / 4.0) < 1e-6);
    CHECK(std::fabs(integrate(kPDisk, one, disk_half) - 16.0 * M_PI / 25.0) < 1e-5);
    CHECK(integrate(kHPlane, zero, QuadratureSpec::rect(-1.0, 1.0, 0.5, 1.5, 8, 8)) == 0.0);
}

TEST_CASE("integration rejects regions outside the domain") {
    const auto one = [](const Vec2&) { return 1.0; };
    CHECK_THROWS_AS(integrate(kFunk, one, QuadratureSpec::disk(1.2, 8, 8)), DomainError);
    CHECK_THROWS_AS(integrate(kHPlane, one, QuadratureSpec::rect(-1, 1, -0.5, 1, 8, 8)),
                    DomainError);
    CHECK_THROWS_AS(integrate(kHPlane, one, QuadratureSpec::disk(0.5, 8, 8)), DomainError);
}

TEST_CASE("euclidean quadrature sanity") {
    const auto one = [](const Vec2&) { return 1.0; };
    CHECK(std::fabs(integrate_euclidean(one, QuadratureSpec::disk(0.5, 32, 64)) - M_PI / 4.0) <
          1e-10);
    CHECK(std::fabs(integrate_euclidean(one, QuadratureSpec::rect(0, 2, 1, 2, 4, 4)) - 2.0) <
          1e-12);
    CHECK(std::fabs(integrate_euclidean(one, QuadratureSpec::annulus(0.25, 0.5, 32, 64)) -
                    M_PI * (0.25 - 0.0625)) < 1e-10);
}

TEST_CASE("volume pullback through the disk isometry") {
    // mass of the radius-1/2 disk in the Poincare model equals the mass of its
    // image region in the Funk model (change of variables at the same nodes)
    const QuadratureSpec region = QuadratureSpec::disk(0.5, 48, 96);
    const double direct = integrate(kPDisk, [](const Vec2&) { return 1.0; }, region);
    const double mapped = integrate_euclidean(
        [&](const Vec2& y) {
            const ModelPoint img = map_point(MapId::PoincareToFunk, {kPDisk, y});
            const double det = jacobian(MapId::PoincareToFunk, {kPDisk, y}).m.det();
            return density_sigma(img, 2048) * std::fabs(det);
        },
        region);
    CHECK(std::fabs(direct - mapped) < 1e-4);
    CHECK(std::fabs(direct - 16.0 * M_PI / 25.0) < 1e-5);
}

TEST_CASE("laplacian of a constant vanishes") {
    const ScalarField constant{[](const Vec2&) { return 2.5; }, {}};
    for (const Model m : {kFunk, kPDisk, kHPlane}) {
        const Vec2 x = m.id == ModelId::HalfPlane ? Vec2{0.3, 1.2} : Vec2{0.2, -0.3};
        CHECK(std::fabs(finsler_laplacian(m, constant, {m, x}, 1e-4)) < 1e-8);
    }
}

TEST_CASE("reversible disk laplacian kills harmonic coordinates") {
    const Model rev{ModelId::PoincareDisk, true};
    CHECK(std::fabs(finsler_laplacian(rev, kCoordX, {rev, {0.3, 0.1}}, 1e-4)) < 1e-5);
}

TEST_CASE("funk laplacian of the first coordinate at the center") {
    // Richardson oracle over the documented step triple
    const ModelPoint x0{kFunk, {0.0, 0.0}};
    const double l1 = finsler_laplacian(kFunk, kCoordX, x0, 1e-3);
    const double l2 = finsler_laplacian(kFunk, kCoordX, x0, 5e-4);
    const double l3 = finsler_laplacian(kFunk, kCoordX, x0, 2.5e-4);
    const double rich = l3 + (l3 - l2) / 3.0;
    CHECK(std::fabs(l2 - l1) < 1e-3);
    CHECK(std::fabs(rich + 3.0) < 1e-4);  // pinned: div of (1-x1)^2, -x2(1-x1) at 0
    CHECK(std::fabs(finsler_laplacian(kFunk, kCoordX, x0, 1e-4) + 3.0) < 1e-3);
}

TEST_CASE("weak form identity") {
    const ScalarField v = disk_bump(0.6);
    const QuadratureSpec quad = QuadratureSpec::disk(0.6, 10, 20, QuadratureSpec::Rule::Midpoint);

    SUBCASE("constant u gives quadrature noise") {
        const ScalarField constant{[](const Vec2&) { return 1.0; }, {}};
        CHECK(weak_form_residual(kFunk, constant, v, quad, 1e-3) < 1e-8);
    }
    SUBCASE("zero test function gives zero") {
        const ScalarField zero{[](const Vec2&) { return 0.0; },
                               [](const Vec2&) { return Vec2{0.0, 0.0}; }};
        CHECK(weak_form_residual(kFunk, kCoordX, zero, quad, 1e-3) == 0.0);
    }
    SUBCASE("support violation is rejected") {
        const ScalarField bad{[](const Vec2&) { return 1.0; }, {}};
        CHECK_THROWS_AS(weak_form_residual(kFunk, kCoordX, bad, quad, 1e-3), InvalidInput);
    }
}

TEST_CASE("weak form residual decreases under joint refinement") {
    const ScalarField v = disk_bump(0.6);
    const double r1 = weak_form_residual(
        kFunk, kCoordX, v, QuadratureSpec::disk(0.6, 8, 16, QuadratureSpec::Rule::Midpoint), 2e-3);
    const double r2 = weak_form_residual(
        kFunk, kCoordX, v, QuadratureSpec::disk(0.6, 16, 32, QuadratureSpec::Rule::Midpoint), 1e-3);
    CAPTURE(r1);
    CAPTURE(r2);
    CHECK(r2 < r1 / 3.0);
}
