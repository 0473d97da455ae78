#include <algorithm>
#include <cmath>

#include <cutvol/compute.hpp>
#include <cutvol/grid.hpp>
#include <cutvol/metrics.hpp>
#include <cutvol/shapes.hpp>
#include <cutvol/types.hpp>
#include <doctest.h>

#include "helpers.hpp"

using namespace cutvol;

namespace {

bool same_alpha(const FractionField& a, const FractionField& b) {
    return a.cx == b.cx && a.cy == b.cy && a.cz == b.cz &&
           std::equal(a.alpha.begin(), a.alpha.end(), b.alpha.begin());
}

ScalarGrid hexcell_grid() {
    // One cell cut by x + y + z = 3/2: composite at every shallow depth.
    ScalarGrid g;
    g.dim = 3;
    g.nx = g.ny = g.nz = 2;
    g.h = 1.0;
    g.values.resize(8);
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t i = 0; i < 2; ++i)
                g.at(i, j, k) = double(i + j + k) - 1.5;
    return g;
}

}  // namespace

TEST_CASE("parallel and serial drivers agree bitwise") {
    const ScalarGrid g2 = sample_shape(make_double_circle(), 65);
    for (Method m : {Method::Analytic, Method::Linear, Method::Oracle}) {
        ComputeOptions opt;
        opt.method = m;
        opt.threads = 3;
        opt.oracle_depth = 8;
        const ComputeResult par = compute_fractions(g2, opt);
        const ComputeResult ser = compute_fractions_serial(g2, opt);
        CHECK(same_alpha(par.field, ser.field));
        CHECK(par.max_uncertainty == ser.max_uncertainty);
        CHECK(par.unresolved_count == ser.unresolved_count);
    }

    const ScalarGrid g3 = sample_shape(make_double_sphere(), 9);
    ComputeOptions opt3;
    opt3.threads = 3;
    const ComputeResult par3 = compute_fractions(g3, opt3);
    const ComputeResult ser3 = compute_fractions_serial(g3, opt3);
    CHECK(same_alpha(par3.field, ser3.field));
}

TEST_CASE("methods produce sane totals on a circle") {
    const ScalarGrid g = sample_shape(make_circle(0.5, 0.5, 0.25), 33);
    const double exact = std::acos(-1.0) * 0.0625;

    ComputeOptions opt;
    const ComputeResult analytic = compute_fractions(g, opt);
    CHECK(analytic.unresolved_count == 0);
    CHECK(total_volume(analytic.field, g.h) ==
          doctest::Approx(exact).epsilon(2e-3));

    opt.method = Method::Linear;
    const ComputeResult linear = compute_fractions(g, opt);
    CHECK(linear.max_uncertainty == 0.0);
    const double tl = total_volume(linear.field, g.h);
    CHECK(tl > 0.15);
    CHECK(tl < 0.20);

    opt.method = Method::Oracle;
    opt.oracle_depth = 10;
    const ComputeResult oracle = compute_fractions(g, opt);
    CHECK(oracle.max_uncertainty > 0.0);
    CHECK(oracle.max_uncertainty < 1e-2);
    const double slack =
        oracle.max_uncertainty * double(oracle.field.cell_count()) * g.h * g.h;
    CHECK(std::abs(total_volume(oracle.field, g.h) -
                   total_volume(analytic.field, g.h)) <= slack);
}

TEST_CASE("strict mode raises on unresolved cells") {
    const ScalarGrid g = hexcell_grid();

    ComputeOptions relaxed;
    relaxed.max_depth = 0;
    const ComputeResult res = compute_fractions(g, relaxed);
    CHECK(res.unresolved_count == 1);
    CHECK(res.max_uncertainty > 0.0);
    CHECK(std::abs(res.field.alpha[0] - 0.5) <= res.max_uncertainty + 1e-12);

    ComputeOptions strict = relaxed;
    strict.strict = true;
    CHECK_THROWS_AS((void)compute_fractions(g, strict), Unresolved);

    // The diagonal plane stays ambiguous at every subdivision depth (the
    // central subcells repeat the pattern), so strict mode rejects it even
    // with the default depth.
    ComputeOptions deep;
    deep.strict = true;
    CHECK_THROWS_AS((void)compute_fractions(g, deep), Unresolved);

    // An axis-aligned plane is elementary and resolves exactly, so strict
    // mode accepts it.
    ScalarGrid axis;
    axis.dim = 3;
    axis.nx = axis.ny = axis.nz = 2;
    axis.h = 1.0;
    axis.values.assign(8, 0.0);
    for (std::size_t i = 0; i < 8; ++i) axis.values[i] = (i & 4) ? 0.5 : -0.5;
    const ComputeResult ok = compute_fractions(axis, deep);
    CHECK(ok.unresolved_count == 0);
    CHECK(ok.field.alpha[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("invalid grids are rejected") {
    ScalarGrid bad;
    bad.dim = 2;
    bad.nx = 3;
    bad.ny = 3;
    bad.h = 0.5;
    bad.values.assign(7, 0.0);  // should be 9
    CHECK_THROWS_AS((void)compute_fractions(bad), DimensionMismatch);

    ScalarGrid tiny;
    tiny.dim = 2;
    tiny.nx = 1;
    tiny.ny = 2;
    tiny.h = 1.0;
    tiny.values.assign(2, 0.0);
    CHECK_THROWS_AS((void)compute_fractions(tiny), DimensionMismatch);

    ScalarGrid bad_dim;
    bad_dim.dim = 4;
    bad_dim.nx = bad_dim.ny = 2;
    bad_dim.h = 1.0;
    bad_dim.values.assign(4, 0.0);
    CHECK_THROWS_AS((void)compute_fractions(bad_dim), DimensionMismatch);
}

TEST_CASE("fraction fields line up with the grid cells") {
    const ScalarGrid g = sample_shape(make_circle(0.5, 0.5, 0.25), 17);
    const ComputeResult res = compute_fractions(g);
    CHECK(res.field.dim == 2);
    CHECK(res.field.cx == 16);
    CHECK(res.field.cy == 16);
    // Far corner cell is fully outside, center cell fully inside.
    CHECK(res.field.at(0, 0) == 0.0);
    CHECK(res.field.at(15, 15) == 0.0);
    CHECK(res.field.at(8, 8) == 1.0);
}
