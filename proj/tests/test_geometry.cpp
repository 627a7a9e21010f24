#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "randers/errors.hpp"
#include "randers/geometry.hpp"

using namespace randers;

namespace {
const Model kFunk{ModelId::Funk, false};
const Model kPDisk{ModelId::PoincareDisk, false};
const Model kHPlane{ModelId::HalfPlane, false};
}  // namespace

TEST_CASE("domain membership") {
    CHECK(in_domain(kFunk, {0.0, 0.0}));
    CHECK_FALSE(in_domain(kHPlane, {3.0, -1.0}));
    CHECK_FALSE(in_domain(kPDisk, {1.0, 0.0}));  // the domain is open
    CHECK(in_domain(kHPlane, {3.0, 0.5}));
    CHECK(in_domain(kPDisk, {0.9, 0.0}));
}

TEST_CASE("domain guard band") {
    CHECK(in_domain(kFunk, {1.0 - 0x1p-39, 0.0}));
    CHECK_FALSE(in_domain(kFunk, {1.0 - 0x1p-41, 0.0}));
    CHECK(in_domain(kHPlane, {0.0, 0x1p-39}));
    CHECK_FALSE(in_domain(kHPlane, {0.0, 0x1p-41}));
}

TEST_CASE("non-finite input rejected") {
    CHECK_THROWS_AS(in_domain(kFunk, {std::nan(""), 0.0}), InvalidInput);
    CHECK_THROWS_AS(in_domain(kHPlane, {0.0, INFINITY}), InvalidInput);
}

TEST_CASE("make_point validates") {
    CHECK_THROWS_AS(make_point(kFunk, {1.5, 0.0}), DomainError);
    CHECK_THROWS_AS(make_point(kHPlane, {0.0, -0.1}), DomainError);
    const ModelPoint p = make_point(kPDisk, {0.25, -0.25});
    CHECK(p.p.x == 0.25);
}

TEST_CASE("sampling respects the truncated region") {
    for (const Model m : {kFunk, kPDisk}) {
        const auto pts = sample_points(m, 500, 7, 0.9);
        REQUIRE(pts.size() == 500);
        for (const auto& p : pts) {
            CHECK(in_domain(m, p.p));
            CHECK(norm(p.p) <= 0.9);
        }
    }
    const auto pts = sample_points(kHPlane, 500, 1, 0.1);
    for (const auto& p : pts) {
        CHECK(p.p.y >= 0.1);
        CHECK(p.p.y <= 10.0);
        CHECK(std::fabs(p.p.x) <= 10.0);
    }
}

TEST_CASE("sampling is reproducible bit for bit") {
    const auto a = sample_points(kFunk, 2000, 7, 0.99);
    const auto b = sample_points(kFunk, 2000, 7, 0.99);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].p.x == b[i].p.x);
        CHECK(a[i].p.y == b[i].p.y);
    }
    const auto c = sample_points(kFunk, 2000, 8, 0.99);
    int differing = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].p.x != c[i].p.x) ++differing;
    CHECK(differing > 1900);  // a different seed gives a different stream
}

TEST_CASE("truncation validation") {
    CHECK_THROWS_AS(sample_points(kFunk, 1, 0, 0.0), InvalidInput);
    CHECK_THROWS_AS(sample_points(kFunk, 1, 0, 1.0), InvalidInput);
    CHECK_THROWS_AS(sample_points(kHPlane, 1, 0, -0.5), InvalidInput);
    CHECK_NOTHROW(sample_points(kHPlane, 1, 0, 0.5));
}

TEST_CASE("tangent samples carry usable velocities") {
    const auto tv = sample_tangents(kHPlane, 300, 3, 0.2);
    for (const auto& t : tv) {
        CHECK(in_domain(kHPlane, t.base.p));
        CHECK(std::max(std::fabs(t.v.x), std::fabs(t.v.y)) > 1e-6);
        CHECK(std::fabs(t.v.x) <= 1.0);
        CHECK(std::fabs(t.v.y) <= 1.0);
    }
}
