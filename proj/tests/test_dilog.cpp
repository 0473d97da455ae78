#include <cmath>
#include <complex>

#include <cutvol/dilog.hpp>
#include <cutvol/types.hpp>
#include <doctest.h>

#include "helpers.hpp"

using namespace cutvol;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Power series sum z^k / k^2, convergent for |z| <= 1; used as an
// independent reference where it converges fast.
cplx series_dilog(cplx z) {
    cplx sum = 0.0, term = z;
    for (int k = 1; k < 400; ++k) {
        sum += term / double(k * k);
        term *= z;
        if (std::abs(term) < 1e-20) break;
    }
    return sum;
}

}  // namespace

TEST_CASE("dilogarithm special values") {
    const double ln2 = std::log(2.0);
    CHECK(dilog(cplx(0.0)).real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(dilog(cplx(0.0)).imag() == 0.0);
    CHECK(dilog(cplx(1.0)).real() ==
          doctest::Approx(kPi * kPi / 6.0).epsilon(1e-14));
    CHECK(std::abs(dilog(cplx(1.0)).imag()) < 1e-14);
    CHECK(dilog(cplx(-1.0)).real() ==
          doctest::Approx(-kPi * kPi / 12.0).epsilon(1e-14));
    CHECK(dilog(cplx(0.5)).real() ==
          doctest::Approx(kPi * kPi / 12.0 - 0.5 * ln2 * ln2).epsilon(1e-14));
    CHECK(std::abs(dilog(cplx(0.5)).imag()) < 1e-15);
}

TEST_CASE("dilogarithm matches the power series on the small disk") {
    testutil::Rng rng(21);
    for (int trial = 0; trial < 400; ++trial) {
        const double r = 0.5 * std::sqrt(rng.u01());
        const double ph = 2.0 * kPi * rng.u01();
        const cplx z = std::polar(r, ph);
        const cplx want = series_dilog(z);
        const cplx got = dilog(z);
        CHECK(std::abs(got - want) < 1e-14 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("dilogarithm reflection identity") {
    // Li2(z) + Li2(1-z) = pi^2/6 - log(z) log(1-z), away from the endpoints.
    testutil::Rng rng(22);
    for (int trial = 0; trial < 300; ++trial) {
        const cplx z(rng.uniform(-3, 3), rng.uniform(-3, 3));
        if (std::abs(z) < 0.05 || std::abs(z - 1.0) < 0.05) continue;
        const cplx lhs = dilog(z) + dilog(1.0 - z);
        const cplx rhs =
            cplx(kPi * kPi / 6.0) - std::log(z) * std::log(1.0 - z);
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("dilogarithm inversion identity") {
    // Li2(z) + Li2(1/z) = -pi^2/6 - log(-z)^2 / 2 off the positive real axis.
    testutil::Rng rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const cplx z(rng.uniform(-4, 4), rng.uniform(-4, 4));
        if (std::abs(z) < 0.1 || std::abs(z.imag()) < 1e-3) continue;
        const cplx lz = std::log(-z);
        const cplx lhs = dilog(z) + dilog(1.0 / z);
        const cplx rhs = cplx(-kPi * kPi / 6.0) - 0.5 * lz * lz;
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("dilogarithm conjugate symmetry off the cut") {
    testutil::Rng rng(24);
    for (int trial = 0; trial < 300; ++trial) {
        const cplx z(rng.uniform(-4, 4), rng.uniform(-4, 4));
        if (std::abs(z.imag()) < 1e-6) continue;
        const cplx a = dilog(z);
        const cplx b = dilog(std::conj(z));
        CHECK(std::abs(std::conj(a) - b) < 1e-13 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("real dilogarithm agrees with the complex one") {
    testutil::Rng rng(25);
    for (int trial = 0; trial < 200; ++trial) {
        const double x = rng.uniform(-6, 1);
        const double want = dilog(cplx(x)).real();
        CHECK(dilog_real(x) == doctest::Approx(want).epsilon(1e-13));
    }
    // Above the cut start the real part is still well defined.
    for (int trial = 0; trial < 50; ++trial) {
        const double x = rng.uniform(1, 6);
        CHECK(dilog_real(x) ==
              doctest::Approx(dilog(cplx(x)).real()).epsilon(1e-12));
    }
}

TEST_CASE("stable atan2 matches the library away from the origin") {
    testutil::Rng rng(26);
    for (int trial = 0; trial < 200; ++trial) {
        const double y = rng.uniform(-2, 2), x = rng.uniform(-2, 2);
        if (y == 0.0 && x == 0.0) continue;
        CHECK(atan2_stable(y, x) == std::atan2(y, x));
    }
    CHECK_THROWS_AS(atan2_stable(0.0, 0.0), BothZero);
}
