// Command-line surface: metric evaluation, isometry verification, indicatrix
// plots, the eigenvalue gap experiment, and distance estimates. JSON goes to
// stdout; CSV/SVG reports are written atomically (temp file + rename).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "randers/duality.hpp"
#include "randers/errors.hpp"
#include "randers/isometries.hpp"
#include "randers/measure.hpp"
#include "randers/metrics.hpp"
#include "randers/paths.hpp"
#include "randers/spectrum.hpp"

namespace {

using namespace randers;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Vec2 parse_pair(const std::string& s, const char* flag) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw InvalidInput(std::string(flag) + ": expected two comma-separated numbers");
    std::size_t ax = 0, ay = 0;
    const std::string xs = s.substr(0, comma), ys = s.substr(comma + 1);
    const double x = std::stod(xs, &ax);
    const double y = std::stod(ys, &ay);
    if (ax != xs.size() || ay != ys.size())
        throw InvalidInput(std::string(flag) + ": trailing characters in number");
    return {x, y};
}

std::vector<double> parse_list(const std::string& s, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (used != item.size())
            throw InvalidInput(std::string(flag) + ": trailing characters in number");
    }
    if (out.empty()) throw InvalidInput(std::string(flag) + ": empty list");
    return out;
}

ModelId parse_model(const std::string& name) {
    if (name == "funk") return ModelId::Funk;
    if (name == "pdisk") return ModelId::PoincareDisk;
    if (name == "hplane") return ModelId::HalfPlane;
    throw InvalidInput("unknown model '" + name + "' (expected funk, pdisk or hplane)");
}

std::string model_name(ModelId id) {
    switch (id) {
        case ModelId::Funk: return "funk";
        case ModelId::PoincareDisk: return "pdisk";
        case ModelId::HalfPlane: return "hplane";
    }
    return {};
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidInput("cannot open output file: " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

int run_eval(const std::string& model_str, bool reversible, const std::string& point_str,
             const std::string& vector_str) {
    const Model model{parse_model(model_str), reversible};
    const Vec2 p = parse_pair(point_str, "--point");
    const Vec2 v = parse_pair(vector_str, "--vector");
    const ModelPoint x = make_point(model, p);
    const MetricValue mv = evaluate({x, v});
    const double bound = randers_bound(x);
    std::cout << "{\"F\":" << fmt(mv.F) << ",\"alpha\":" << fmt(mv.alpha)
              << ",\"beta\":" << fmt(mv.beta) << ",\"randers_bound\":" << fmt(bound)
              << ",\"model\":\"" << model_str << "\",\"reversible\":"
              << (reversible ? "true" : "false") << ",\"point\":[" << fmt(p.x) << ","
              << fmt(p.y) << "],\"vector\":[" << fmt(v.x) << "," << fmt(v.y) << "]}\n";
    return 0;
}

int run_verify(int samples, std::uint64_t seed, double truncation, double tol,
               const std::string& out_path) {
    const MapId maps[] = {MapId::PoincareToFunk,      MapId::FunkToPoincare,
                          MapId::FunkToHalfPlane,     MapId::HalfPlaneToFunk,
                          MapId::HalfPlaneToPoincare, MapId::PoincareToHalfPlane};
    std::ostringstream csv;
    csv << "map,samples,max_rel_err,mean_rel_err,worst_x1,worst_x2,worst_v1,worst_v2\n";
    double worst = 0.0;
    bool pass = true;
    std::uint64_t salt = 0;
    for (const MapId m : maps) {
        const IsometryReport rep = check_isometry(m, samples, seed + salt++, truncation);
        const double row_err =
            std::max({rep.max_rel_f, rep.max_rel_alpha, rep.max_rel_beta});
        worst = std::max(worst, row_err);
        pass = pass && row_err <= tol;
        csv << map_name(m) << ',' << rep.samples << ',' << fmt(rep.max_rel_f) << ','
            << fmt(rep.mean_rel_f) << ',' << fmt(rep.worst_x.x) << ',' << fmt(rep.worst_x.y)
            << ',' << fmt(rep.worst_v.x) << ',' << fmt(rep.worst_v.y) << '\n';
    }
    const CommutativityReport comm = check_commutativity(samples, seed + salt, truncation);
    worst = std::max(worst, comm.max_rel);
    pass = pass && comm.max_rel <= tol;
    Vec2 worst_x{};
    for (const auto& row : comm.rows)
        if (row.max_rel >= comm.max_rel) worst_x = row.worst_x;
    csv << "diagram," << samples << ',' << fmt(comm.max_rel) << ',' << fmt(comm.max_rel)
        << ',' << fmt(worst_x.x) << ',' << fmt(worst_x.y) << ",0,0\n";

    atomic_write(out_path, csv.str());
    std::cout << (pass ? "PASS" : "FAIL") << " max_rel_err=" << fmt(worst)
              << " samples=" << samples << " seed=" << seed << " truncation=" << fmt(truncation)
              << " tol=" << fmt(tol) << " out=" << out_path << "\n";
    return pass ? 0 : 3;
}

int run_indicatrix(const std::string& model_str, bool reversible, const std::string& point_str,
                   int nodes, const std::string& out_path) {
    const Model model{parse_model(model_str), reversible};
    const ModelPoint x = make_point(model, parse_pair(point_str, "--point"));
    const IndicatrixProfile prof = indicatrix(x, nodes);

    double max_dev = 0.0;
    for (const double r : prof.radii) max_dev = std::max(max_dev, std::fabs(r - 1.0));
    const double r_fwd = prof.radii[0];
    const double r_bwd = prof.radii[static_cast<std::size_t>(nodes) / 2];
    double extent = 1.0;
    for (const double r : prof.radii) extent = std::max(extent, r);
    extent *= 1.1;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(-extent) << ' '
        << fmt(-extent) << ' ' << fmt(2 * extent) << ' ' << fmt(2 * extent) << "\">\n"
        << "<!-- model=" << model_str << " reversible=" << (reversible ? 1 : 0)
        << " point=" << fmt(x.p.x) << ',' << fmt(x.p.y) << " nodes=" << nodes << " -->\n"
        << "<!-- max_radial_deviation_vs_unit_circle=" << fmt(max_dev) << " -->\n"
        << "<!-- forward_radius=" << fmt(r_fwd) << " backward_radius=" << fmt(r_bwd)
        << " forward_minus_backward=" << fmt(r_fwd - r_bwd) << " -->\n"
        << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#999\" "
           "stroke-width=\"0.01\"/>\n<polygon points=\"";
    for (int k = 0; k < nodes; ++k) {
        const double th = 2.0 * M_PI * k / nodes;
        const double r = prof.radii[static_cast<std::size_t>(k)];
        if (k) svg << ' ';
        svg << fmt(r * std::cos(th)) << ',' << fmt(-r * std::sin(th));
    }
    svg << "\" fill=\"none\" stroke=\"#c22\" stroke-width=\"0.012\"/>\n</svg>\n";
    atomic_write(out_path, svg.str());
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int run_gap(const std::string& models_str, const std::string& truncations_str, double h,
            std::uint64_t seed, int iters, const std::string& out_path) {
    std::vector<ModelId> models;
    {
        std::stringstream ss(models_str);
        std::string item;
        while (std::getline(ss, item, ',')) models.push_back(parse_model(item));
        if (models.empty()) throw InvalidInput("--models: empty list");
    }
    const std::vector<double> truncations = parse_list(truncations_str, "--truncations");
    const GapReport rep = gap_experiment(models, truncations, h, seed, iters);

    std::ostringstream csv;
    csv << "model,reversible,truncation,h,final_quotient,iters_used\n";
    for (const auto& row : rep.rows)
        csv << model_name(row.model.id) << ',' << (row.model.reversible ? 1 : 0) << ','
            << fmt(row.truncation) << ',' << fmt(row.h) << ',' << fmt(row.final_quotient)
            << ',' << row.iters_used << '\n';
    csv << "# summary monotone_nonincreasing=" << (rep.monotone_ok ? 1 : 0)
        << " finsler_final_below_" << fmt(rep.finsler_threshold) << '='
        << (rep.finsler_below ? 1 : 0) << " reversible_floor_" << fmt(rep.reversible_threshold)
        << '=' << (rep.reversible_floor ? 1 : 0) << " seed=" << seed << '\n';
    if (truncations.size() < 2) {
        // single truncation: monotonicity is vacuous, drop the flag line
        std::string s = csv.str();
        const auto pos = s.find("# summary monotone_nonincreasing=");
        std::string tail = s.substr(pos);
        tail.erase(0, tail.find("finsler_final_below_"));
        s = s.substr(0, pos) + "# summary " + tail;
        atomic_write(out_path, s);
        std::cout << s;
        return 0;
    }
    atomic_write(out_path, csv.str());
    std::cout << csv.str();
    return 0;
}

int run_distance(const std::string& model_str, bool reversible, const std::string& from_str,
                 const std::string& to_str, int control, int iters) {
    const Model model{parse_model(model_str), reversible};
    const Vec2 from = parse_pair(from_str, "--from");
    const Vec2 to = parse_pair(to_str, "--to");
    const DistanceEstimate fwd = distance_estimate(model, from, to, control, iters);
    const DistanceEstimate rev = distance_estimate(model, to, from, control, iters);
    std::cout << "{\"forward\":" << fmt(fwd.length) << ",\"reverse\":" << fmt(rev.length)
              << ",\"asymmetry\":" << fmt(std::fabs(fwd.length - rev.length))
              << ",\"model\":\"" << model_str << "\",\"reversible\":"
              << (reversible ? "true" : "false") << ",\"control\":" << control
              << ",\"iters\":" << iters << "}\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for the three Randers models of the hyperbolic plane"};
    app.require_subcommand(1);

    std::string model_str, point_str, vector_str, from_str, to_str, out_path;
    std::string models_str = "funk,pdisk,hplane";
    std::string truncations_str = "0.9,0.99,0.999";
    bool reversible = false;
    int samples = 100000, nodes = 256, iters_gap = 600, control = 2, iters_dist = 2000;
    std::uint64_t seed = 42;
    double truncation = 0.99, tol = 1e-11, h = 0.02;

    auto* eval = app.add_subcommand("eval", "Evaluate F = alpha + beta at (x, v)");
    eval->add_option("--model", model_str)->required();
    eval->add_flag("--reversible", reversible);
    eval->add_option("--point", point_str)->required();
    eval->add_option("--vector", vector_str)->required();

    auto* verify = app.add_subcommand("verify", "Check the isometries and the composition diagram");
    verify->add_option("--samples", samples)->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed);
    verify->add_option("--truncation", truncation)->check(CLI::Range(1e-6, 1.0 - 1e-9));
    verify->add_option("--tol", tol)->check(CLI::NonNegativeNumber);
    verify->add_option("--out", out_path)->default_val("verify.csv");

    auto* ind = app.add_subcommand("indicatrix", "Write the unit-ball boundary at x as SVG");
    ind->add_option("--model", model_str)->required();
    ind->add_flag("--reversible", reversible);
    ind->add_option("--point", point_str)->required();
    ind->add_option("--nodes", nodes)->check(CLI::Range(64, 1 << 20));
    ind->add_option("--out", out_path)->required();

    auto* gap = app.add_subcommand("gap", "Minimized Rayleigh quotients across truncations");
    gap->add_option("--models", models_str);
    gap->add_option("--truncations", truncations_str);
    gap->add_option("--h", h)->check(CLI::PositiveNumber);
    gap->add_option("--seed", seed);
    gap->add_option("--iters", iters_gap)->check(CLI::NonNegativeNumber);
    gap->add_option("--out", out_path)->default_val("gap.csv");

    auto* dist = app.add_subcommand("distance", "Forward/reverse distance estimates");
    dist->add_option("--model", model_str)->required();
    dist->add_flag("--reversible", reversible);
    dist->add_option("--from", from_str)->required();
    dist->add_option("--to", to_str)->required();
    dist->add_option("--control", control)->check(CLI::NonNegativeNumber);
    dist->add_option("--iters", iters_dist)->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand(eval))
            return run_eval(model_str, reversible, point_str, vector_str);
        if (app.got_subcommand(verify))
            return run_verify(samples, seed, truncation, tol, out_path);
        if (app.got_subcommand(ind))
            return run_indicatrix(model_str, reversible, point_str, nodes, out_path);
        if (app.got_subcommand(gap))
            return run_gap(models_str, truncations_str, h, seed, iters_gap, out_path);
        if (app.got_subcommand(dist))
            return run_distance(model_str, reversible, from_str, to_str, control, iters_dist);
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
