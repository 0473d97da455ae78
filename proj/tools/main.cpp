// Command-line front end: sample benchmark shapes, compute per-cell volume
// fractions, run convergence and refinement-consistency studies, and refine
// stored fields.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error, 3 malformed input
// file, 4 unresolved cells under --strict.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <cutvol/compute.hpp>
#include <cutvol/grid.hpp>
#include <cutvol/metrics.hpp>
#include <cutvol/shapes.hpp>
#include <cutvol/types.hpp>

namespace {

using namespace cutvol;

struct ShapeArgs {
    std::string kind;
    double cx = 0.5, cy = 0.5, cz = 0.5, r = 0.25;
    int count = 10;
    std::uint64_t seed = 1;
    double rmin = 0.05, rmax = 0.15;
};

void add_shape_options(CLI::App* cmd, ShapeArgs& a, bool required) {
    auto* opt = cmd->add_option("--kind", a.kind,
                                "circle, double-circle, zalesak, "
                                "random-circles, sphere or double-sphere");
    if (required) opt->required();
    cmd->add_option("--cx", a.cx, "center x (circle/sphere)");
    cmd->add_option("--cy", a.cy, "center y (circle/sphere)");
    cmd->add_option("--cz", a.cz, "center z (sphere)");
    cmd->add_option("--r", a.r, "radius (circle/sphere)");
    cmd->add_option("--count", a.count, "disk count (random-circles)");
    cmd->add_option("--seed", a.seed, "RNG seed (random-circles)");
    cmd->add_option("--rmin", a.rmin, "smallest radius (random-circles)");
    cmd->add_option("--rmax", a.rmax, "largest radius (random-circles)");
}

ShapeSpec build_shape(const ShapeArgs& a) {
    if (a.kind == "circle") return make_circle(a.cx, a.cy, a.r);
    if (a.kind == "double-circle") return make_double_circle();
    if (a.kind == "zalesak") return make_zalesak();
    if (a.kind == "random-circles")
        return make_random_circles(a.count, a.seed, a.rmin, a.rmax);
    if (a.kind == "sphere") return make_sphere(a.cx, a.cy, a.cz, a.r);
    if (a.kind == "double-sphere") return make_double_sphere();
    throw CLI::ValidationError("--kind", "unknown shape '" + a.kind + "'");
}

void write_fractions_csv(const FractionField& f, std::ostream& out) {
    out << (f.dim == 3 ? "i,j,k,value\n" : "i,j,value\n");
    for (std::size_t k = 0; k < f.cz; ++k)
        for (std::size_t j = 0; j < f.cy; ++j)
            for (std::size_t i = 0; i < f.cx; ++i) {
                out << i << ',' << j;
                if (f.dim == 3) out << ',' << k;
                out << ',' << format_double(f.at(i, j, k)) << '\n';
            }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file '" + path + "'");
    return out;
}

Method parse_method(const std::string& name) {
    static const std::map<std::string, Method> methods{
        {"analytic", Method::Analytic},
        {"linear", Method::Linear},
        {"oracle", Method::Oracle}};
    auto it = methods.find(name);
    if (it == methods.end())
        throw CLI::ValidationError("--method", "unknown method '" + name + "'");
    return it->second;
}

// ---- shape ----------------------------------------------------------------

int cmd_shape(const ShapeArgs& a, std::size_t nodes, const std::string& out,
              bool csv) {
    ScalarGrid g = sample_shape(build_shape(a), nodes);
    auto emit = [&](std::ostream& os) {
        csv ? write_grid_csv(g, os) : write_grid(g, os);
    };
    if (out.empty()) {
        emit(std::cout);
    } else {
        auto os = open_out(out);
        emit(os);
    }
    return 0;
}

// ---- compute --------------------------------------------------------------

struct ComputeArgs {
    std::string in, out, method = "analytic";
    ShapeArgs shape;
    std::size_t nodes = 0;
    ComputeOptions opts;
};

int cmd_compute(const ComputeArgs& a) {
    ScalarGrid g;
    if (!a.in.empty())
        g = read_grid_file(a.in);
    else
        g = sample_shape(build_shape(a.shape), a.nodes);
    ComputeOptions opts = a.opts;
    opts.method = parse_method(a.method);
    ComputeResult res = compute_fractions(g, opts);

    if (a.out.empty()) {
        write_fractions_csv(res.field, std::cout);
    } else {
        auto os = open_out(a.out);
        write_fractions_csv(res.field, os);
    }
    std::ostream& sum = a.out.empty() ? std::cerr : std::cout;
    sum << "cells=" << res.field.cell_count() << " h=" << format_double(g.h)
        << " volume=" << format_double(total_volume(res.field, g.h))
        << " max_uncertainty=" << format_double(res.max_uncertainty)
        << " unresolved=" << res.unresolved_count << '\n';
    return 0;
}

// ---- converge -------------------------------------------------------------

int cmd_converge(const ShapeArgs& a, std::size_t min_nodes,
                 std::size_t max_nodes, const std::string& method) {
    ShapeSpec shape = build_shape(a);
    double ref = reference_volume(shape);
    ComputeOptions opts;
    opts.method = parse_method(method);
    std::vector<double> hs, errs;
    for (std::size_t n = min_nodes; n <= max_nodes; n = 2 * n - 1) {
        ScalarGrid g = sample_shape(shape, n);
        ComputeResult res = compute_fractions(g, opts);
        double err = std::abs(total_volume(res.field, g.h) - ref) / ref;
        hs.push_back(g.h);
        errs.push_back(err);
        std::cout << "h=" << format_double(g.h) << " err=" << format_double(err)
                  << '\n';
    }
    std::cout << "order=" << format_double(fitted_order(hs, errs)) << '\n';
    return 0;
}

// ---- consistency ----------------------------------------------------------

int cmd_consistency(const ShapeArgs& a, std::size_t nodes, int levels,
                    const std::string& method) {
    ComputeOptions opts;
    opts.method = parse_method(method);
    ScalarGrid g = sample_shape(build_shape(a), nodes);
    FractionField base = compute_fractions(g, opts).field;
    std::size_t factor = 1;
    for (int lv = 1; lv <= levels; ++lv) {
        g = refine(g);
        factor *= 2;
        FractionField fine = compute_fractions(g, opts).field;
        ErrorNorms e = error_norms(base, aggregate_fine_to_coarse(fine, factor));
        std::cout << "level=" << lv << " l1=" << format_double(e.l1)
                  << " l2=" << format_double(e.l2)
                  << " linf=" << format_double(e.linf) << '\n';
    }
    return 0;
}

// ---- refine ---------------------------------------------------------------

int cmd_refine(const std::string& in, const std::string& out, int levels,
               bool csv) {
    ScalarGrid g = read_grid_file(in);
    for (int i = 0; i < levels; ++i) g = refine(g);
    auto emit = [&](std::ostream& os) {
        csv ? write_grid_csv(g, os) : write_grid(g, os);
    };
    if (out.empty()) {
        emit(std::cout);
    } else {
        auto os = open_out(out);
        emit(os);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"volume fractions under multilinear level-set interpolants"};
    app.require_subcommand(1);

    // shape
    auto* shape = app.add_subcommand("shape", "sample a benchmark level set");
    ShapeArgs shape_args;
    std::size_t shape_nodes = 0;
    std::string shape_out;
    bool shape_csv = false;
    add_shape_options(shape, shape_args, true);
    shape->add_option("--nodes", shape_nodes, "nodes per axis")
        ->required()
        ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    shape->add_option("--out", shape_out, "output file (default stdout)");
    shape->add_flag("--csv", shape_csv, "write CSV instead of LSG");

    // compute
    auto* compute = app.add_subcommand("compute", "per-cell volume fractions");
    ComputeArgs ca;
    auto* in_opt = compute->add_option("--in", ca.in, "input field (LSG/CSV)");
    add_shape_options(compute, ca.shape, false);
    auto* nodes_opt =
        compute->add_option("--nodes", ca.nodes, "nodes per axis (with --kind)")
            ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    in_opt->excludes(nodes_opt);
    compute->add_option("--method", ca.method, "analytic, linear or oracle");
    compute->add_option("--oracle-depth", ca.opts.oracle_depth,
                        "subdivision depth for the oracle method")
        ->check(CLI::Range(1, 30));
    compute->add_option("--max-depth", ca.opts.max_depth,
                        "bisection depth for composite 3D cells")
        ->check(CLI::Range(0, 20));
    compute->add_option("--threads", ca.opts.threads,
                        "worker threads (0 = library default)");
    compute->add_flag("--strict", ca.opts.strict,
                      "fail when any cell stays unresolved");
    compute->add_option("--out", ca.out, "fraction CSV file (default stdout)");

    // converge
    auto* converge =
        app.add_subcommand("converge", "volume error against resolution");
    ShapeArgs conv_shape;
    std::size_t conv_min = 17, conv_max = 257;
    std::string conv_method = "analytic";
    add_shape_options(converge, conv_shape, true);
    converge->add_option("--min-nodes", conv_min, "coarsest node count");
    converge->add_option("--max-nodes", conv_max, "finest node count");
    converge->add_option("--method", conv_method, "analytic, linear or oracle");

    // consistency
    auto* consistency = app.add_subcommand(
        "consistency", "aggregated fractions across refinement levels");
    ShapeArgs cons_shape;
    std::size_t cons_nodes = 33;
    int cons_levels = 2;
    std::string cons_method = "analytic";
    add_shape_options(consistency, cons_shape, true);
    consistency->add_option("--nodes", cons_nodes, "base node count");
    consistency->add_option("--levels", cons_levels, "refinement levels")
        ->check(CLI::Range(1, 10));
    consistency->add_option("--method", cons_method,
                            "analytic, linear or oracle");

    // refine
    auto* refine_cmd =
        app.add_subcommand("refine", "interpolant-preserving refinement");
    std::string ref_in, ref_out;
    int ref_levels = 1;
    bool ref_csv = false;
    refine_cmd->add_option("--in", ref_in, "input field (LSG/CSV)")->required();
    refine_cmd->add_option("--out", ref_out, "output file (default stdout)");
    refine_cmd->add_option("--levels", ref_levels, "refinement levels")
        ->check(CLI::Range(1, 12));
    refine_cmd->add_flag("--csv", ref_csv, "write CSV instead of LSG");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (shape->parsed())
            return cmd_shape(shape_args, shape_nodes, shape_out, shape_csv);
        if (compute->parsed()) {
            if (ca.in.empty() && ca.nodes == 0)
                throw CLI::ValidationError("--in",
                                           "need either --in or --kind/--nodes");
            return cmd_compute(ca);
        }
        if (converge->parsed())
            return cmd_converge(conv_shape, conv_min, conv_max, conv_method);
        if (consistency->parsed())
            return cmd_consistency(cons_shape, cons_nodes, cons_levels,
                                   cons_method);
        if (refine_cmd->parsed())
            return cmd_refine(ref_in, ref_out, ref_levels, ref_csv);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const Unresolved& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
