#include <cmath>
#include <vector>

#include <cutvol/metrics.hpp>
#include <cutvol/types.hpp>
#include <doctest.h>

#include "helpers.hpp"

using namespace cutvol;

namespace {

FractionField field2(std::size_t cx, std::size_t cy,
                     std::vector<double> alpha) {
    FractionField f;
    f.dim = 2;
    f.cx = cx;
    f.cy = cy;
    f.alpha = std::move(alpha);
    return f;
}

}  // namespace

TEST_CASE("total volume sums fractions times cell volume") {
    const FractionField f = field2(2, 2, {1.0, 0.5, 0.25, 0.25});
    CHECK(total_volume(f, 0.5) == 0.5);

    FractionField g;
    g.dim = 3;
    g.cx = g.cy = g.cz = 2;
    g.alpha = {1.0, 0.0, 0.5, 0.5, 0.25, 0.75, 0.0, 1.0};
    CHECK(total_volume(g, 0.5) == 0.5);
}

TEST_CASE("error norms use the documented normalization") {
    const FractionField base = field2(2, 1, {1.0, 1.0});
    const FractionField test = field2(2, 1, {1.1, 0.9});
    const ErrorNorms n = error_norms(base, test);
    CHECK(n.l1 == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(n.l2 == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(n.linf == doctest::Approx(0.1).epsilon(1e-14));

    // The denominator is the mass of the second (test) field.
    const FractionField half = field2(2, 1, {0.5, 0.5});
    const FractionField ones = field2(2, 1, {1.0, 1.0});
    const ErrorNorms m = error_norms(half, ones);
    CHECK(m.l1 == 0.5);
    CHECK(m.linf == 0.5);
}

TEST_CASE("error norms reject invalid inputs") {
    const FractionField a = field2(2, 2, {0.1, 0.2, 0.3, 0.4});
    const FractionField b = field2(2, 3, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
    CHECK_THROWS_AS((void)error_norms(a, b), ShapeMismatch);

    FractionField c3;
    c3.dim = 3;
    c3.cx = c3.cy = 2;
    c3.cz = 1;
    c3.alpha = {0.1, 0.2, 0.3, 0.4};
    CHECK_THROWS_AS((void)error_norms(a, c3), ShapeMismatch);

    const FractionField zero = field2(2, 2, {0.0, 0.0, 0.0, 0.0});
    CHECK_THROWS_AS((void)error_norms(a, zero), DivideByZero);
}

TEST_CASE("aggregation averages blocks of fine cells") {
    std::vector<double> v(16);
    for (std::size_t i = 0; i < 16; ++i) v[i] = double(i);
    const FractionField fine = field2(4, 4, std::move(v));
    const FractionField coarse = aggregate_fine_to_coarse(fine, 2);
    CHECK(coarse.cx == 2);
    CHECK(coarse.cy == 2);
    CHECK(coarse.at(0, 0) == 2.5);
    CHECK(coarse.at(1, 0) == 4.5);
    CHECK(coarse.at(0, 1) == 10.5);
    CHECK(coarse.at(1, 1) == 12.5);

    FractionField fine3;
    fine3.dim = 3;
    fine3.cx = fine3.cy = fine3.cz = 2;
    fine3.alpha = {0, 1, 2, 3, 4, 5, 6, 7};
    const FractionField one = aggregate_fine_to_coarse(fine3, 2);
    CHECK(one.cx == 1);
    CHECK(one.cz == 1);
    CHECK(one.at(0, 0, 0) == 3.5);

    CHECK_THROWS_AS((void)aggregate_fine_to_coarse(field2(5, 5, std::vector<double>(25, 0.5)), 2),
                    NotDivisible);
    CHECK_THROWS_AS((void)aggregate_fine_to_coarse(fine, 0), NotDivisible);
    CHECK_THROWS_AS((void)aggregate_fine_to_coarse(fine, 3), NotDivisible);
}

TEST_CASE("aggregation conserves total volume") {
    testutil::Rng rng(91);
    FractionField fine;
    fine.dim = 2;
    fine.cx = fine.cy = 8;
    fine.alpha.resize(64);
    for (double& a : fine.alpha) a = rng.u01();
    const FractionField coarse = aggregate_fine_to_coarse(fine, 4);
    CHECK(total_volume(coarse, 0.4) ==
          doctest::Approx(total_volume(fine, 0.1)).epsilon(1e-14));
}

TEST_CASE("order fit recovers exact power laws") {
    const std::vector<double> h{0.5, 0.25, 0.125, 0.0625};
    std::vector<double> err;
    for (double hi : h) err.push_back(0.37 * std::pow(hi, 1.75));
    CHECK(fitted_order(h, err) == doctest::Approx(1.75).epsilon(1e-12));

    std::vector<double> quad;
    for (double hi : h) quad.push_back(3.0 * hi * hi);
    CHECK(fitted_order(h, quad) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("degenerate order fits are rejected") {
    CHECK_THROWS_AS((void)fitted_order({0.5}, {0.1}), DegenerateFit);
    CHECK_THROWS_AS((void)fitted_order({0.5, 0.25}, {0.1}), DegenerateFit);
    CHECK_THROWS_AS((void)fitted_order({0.5, 0.25}, {0.1, 0.0}),
                    DegenerateFit);
    CHECK_THROWS_AS((void)fitted_order({0.5, 0.0}, {0.1, 0.05}),
                    DegenerateFit);
    CHECK_THROWS_AS((void)fitted_order({0.5, 0.5}, {0.1, 0.2}),
                    DegenerateFit);
    CHECK_THROWS_AS((void)fitted_order({0.5, -0.25}, {0.1, 0.05}),
                    DegenerateFit);
}
