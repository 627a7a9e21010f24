#include "randers/isometries.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "randers/dd.hpp"
#include "randers/errors.hpp"

namespace randers {

Model source_model(MapId m) {
    switch (m) {
        case MapId::PoincareToFunk: return {ModelId::PoincareDisk, false};
        case MapId::FunkToPoincare: return {ModelId::Funk, false};
        case MapId::FunkToHalfPlane: return {ModelId::Funk, false};
        case MapId::HalfPlaneToFunk: return {ModelId::HalfPlane, false};
        case MapId::HalfPlaneToPoincare: return {ModelId::HalfPlane, false};
        case MapId::PoincareToHalfPlane: return {ModelId::PoincareDisk, false};
    }
    return {};
}

Model target_model(MapId m) { return source_model(inverse_map(m)); }

MapId inverse_map(MapId m) {
    switch (m) {
        case MapId::PoincareToFunk: return MapId::FunkToPoincare;
        case MapId::FunkToPoincare: return MapId::PoincareToFunk;
        case MapId::FunkToHalfPlane: return MapId::HalfPlaneToFunk;
        case MapId::HalfPlaneToFunk: return MapId::FunkToHalfPlane;
        case MapId::HalfPlaneToPoincare: return MapId::PoincareToHalfPlane;
        case MapId::PoincareToHalfPlane: return MapId::HalfPlaneToPoincare;
    }
    return {};
}

std::string map_name(MapId m) {
    switch (m) {
        case MapId::PoincareToFunk: return "pdisk_to_funk";
        case MapId::FunkToPoincare: return "funk_to_pdisk";
        case MapId::FunkToHalfPlane: return "funk_to_hplane";
        case MapId::HalfPlaneToFunk: return "hplane_to_funk";
        case MapId::HalfPlaneToPoincare: return "hplane_to_pdisk";
        case MapId::PoincareToHalfPlane: return "pdisk_to_hplane";
    }
    return {};
}

namespace {

void require_source(MapId m, const ModelPoint& x, const char* who) {
    if (x.model.id != source_model(m).id)
        throw ModelMismatch(std::string(who) + ": point model does not match map source");
    if (!in_domain(x.model, x.p)) throw DomainError(std::string(who) + ": point outside source domain");
}

}  // namespace

ModelPoint map_point(MapId m, const ModelPoint& x) {
    require_source(m, x, "map_point");
    Model tgt = target_model(m);
    tgt.reversible = x.model.reversible;
    return {tgt, detail::map_apply<double>(m, x.p)};
}

JacobianMatrix jacobian(MapId m, const ModelPoint& x) {
    require_source(m, x, "jacobian");
    return {x, detail::map_jacobian<double>(m, x.p)};
}

TangentVector pushforward(MapId m, const TangentVector& tv) {
    const JacobianMatrix j = jacobian(m, tv.base);
    return {map_point(m, tv.base), j.m.apply(tv.v)};
}

namespace {

int env_thread_count() {
    if (const char* s = std::getenv("RANDERS2D_THREADS")) {
        const int n = std::atoi(s);
        if (n > 1) return std::min(n, 64);
    }
    return 1;
}

double band_parameter(double truncation) { return 1.0 - truncation; }

double sampling_truncation(ModelId id, double truncation) {
    return id == ModelId::HalfPlane ? band_parameter(truncation) : truncation;
}

struct BlockStats {
    double max_f = 0.0, sum_f = 0.0, max_a = 0.0, max_b = 0.0;
    Vec2 worst_x{}, worst_v{};
};

constexpr int kBlock = 4096;
constexpr double kFloor = 1e-300;

// Runs fn(block_index) over all blocks on `threads` workers. Block results are
// merged in index order, so the outcome is independent of the thread count.
template <class Fn>
void for_blocks(int nblocks, int threads, Fn fn) {
    if (threads <= 1) {
        for (int b = 0; b < nblocks; ++b) fn(b);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([=] {
            for (int b = t; b < nblocks; b += threads) fn(b);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

IsometryReport check_isometry(MapId m, int samples, std::uint64_t seed, double truncation,
                              bool reversible) {
    if (samples < 1) throw InvalidInput("check_isometry: samples must be >= 1");
    Model src = source_model(m);
    src.reversible = reversible;
    const auto tangents =
        sample_tangents(src, samples, seed, sampling_truncation(src.id, truncation));

    const ModelId src_id = src.id;
    const ModelId tgt_id = target_model(m).id;
    const int nblocks = (samples + kBlock - 1) / kBlock;
    std::vector<BlockStats> stats(static_cast<std::size_t>(nblocks));

    for_blocks(nblocks, env_thread_count(), [&](int b) {
        BlockStats st;
        const int lo = b * kBlock;
        const int hi = std::min(samples, lo + kBlock);
        for (int k = lo; k < hi; ++k) {
            const Vec2T<dd> x{dd(tangents[k].base.p.x), dd(tangents[k].base.p.y)};
            const Vec2T<dd> v{dd(tangents[k].v.x), dd(tangents[k].v.y)};
            auto s = detail::metric_terms<dd>(src_id, x, v);
            const Vec2T<dd> y = detail::map_apply<dd>(m, x);
            const Vec2T<dd> jv = detail::map_jacobian<dd>(m, x).apply(v);
            auto t = detail::metric_terms<dd>(tgt_id, y, jv);
            if (reversible) s.beta = t.beta = dd(0.0);
            const dd fs = s.alpha + s.beta;
            const dd ft = t.alpha + t.beta;
            const double rel_f =
                to_double(fabs(fs - ft) / (fs > dd(kFloor) ? fs : dd(kFloor)));
            const double rel_a = to_double(fabs(s.alpha - t.alpha) / s.alpha);
            const double rel_b =
                reversible ? 0.0
                           : to_double(fabs(s.beta - t.beta) /
                                       (fabs(s.beta) > dd(kFloor) ? fabs(s.beta) : dd(kFloor)));
            st.sum_f += rel_f;
            st.max_a = std::max(st.max_a, rel_a);
            st.max_b = std::max(st.max_b, rel_b);
            if (rel_f >= st.max_f) {
                st.max_f = rel_f;
                st.worst_x = tangents[k].base.p;
                st.worst_v = tangents[k].v;
            }
        }
        stats[static_cast<std::size_t>(b)] = st;
    });

    IsometryReport rep;
    rep.map = m;
    rep.samples = samples;
    double sum = 0.0;
    for (const auto& st : stats) {
        sum += st.sum_f;
        rep.max_rel_alpha = std::max(rep.max_rel_alpha, st.max_a);
        rep.max_rel_beta = std::max(rep.max_rel_beta, st.max_b);
        if (st.max_f >= rep.max_rel_f) {
            rep.max_rel_f = st.max_f;
            rep.worst_x = st.worst_x;
            rep.worst_v = st.worst_v;
        }
    }
    rep.mean_rel_f = sum / samples;
    return rep;
}

CommutativityReport check_commutativity(int samples, std::uint64_t seed, double truncation) {
    if (samples < 1) throw InvalidInput("check_commutativity: samples must be >= 1");

    struct Identity {
        const char* name;
        ModelId source;
        MapId first, second;  // composite: second(first(x))
        MapId direct;
    };
    const Identity identities[] = {
        {"g.f=h_inv", ModelId::PoincareDisk, MapId::PoincareToFunk, MapId::FunkToHalfPlane,
         MapId::PoincareToHalfPlane},
        {"f_inv.g_inv=h", ModelId::HalfPlane, MapId::HalfPlaneToFunk, MapId::FunkToPoincare,
         MapId::HalfPlaneToPoincare},
        {"h_inv.f_inv=g", ModelId::Funk, MapId::FunkToPoincare, MapId::PoincareToHalfPlane,
         MapId::FunkToHalfPlane},
        {"f.h=g_inv", ModelId::HalfPlane, MapId::HalfPlaneToPoincare, MapId::PoincareToFunk,
         MapId::HalfPlaneToFunk},
        {"g_inv.h_inv=f", ModelId::PoincareDisk, MapId::PoincareToHalfPlane, MapId::HalfPlaneToFunk,
         MapId::PoincareToFunk},
        {"h.g=f_inv", ModelId::Funk, MapId::FunkToHalfPlane, MapId::HalfPlaneToPoincare,
         MapId::FunkToPoincare},
    };

    CommutativityReport rep;
    std::uint64_t salt = 0;
    for (const auto& ident : identities) {
        const Model src{ident.source, false};
        const auto points =
            sample_points(src, samples, seed + salt++, sampling_truncation(src.id, truncation));
        CompositionCheck row;
        row.name = ident.name;
        for (const auto& pt : points) {
            const Vec2T<dd> x{dd(pt.p.x), dd(pt.p.y)};
            const Vec2T<dd> via = detail::map_apply<dd>(ident.second, detail::map_apply<dd>(ident.first, x));
            const Vec2T<dd> direct = detail::map_apply<dd>(ident.direct, x);
            const double abs_err = to_double(norm(via - direct));
            const double scale = std::max(to_double(norm(direct)), kFloor);
            if (abs_err >= row.max_abs) {
                row.max_abs = abs_err;
                row.worst_x = pt.p;
            }
            row.max_rel = std::max(row.max_rel, abs_err / scale);
        }
        rep.max_abs = std::max(rep.max_abs, row.max_abs);
        rep.max_rel = std::max(rep.max_rel, row.max_rel);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace randers
