#include <algorithm>
#include <cmath>

#include <cutvol/analytic3d.hpp>
#include <cutvol/interp.hpp>
#include <cutvol/types.hpp>
#include <doctest.h>

#include "helpers.hpp"

using namespace cutvol;

namespace {

double Xi0(const Aux3& x, double xi) { return x.e * xi + x.g; }
double Xi3(const Aux3& x, double xi) { return x.f * xi + x.h; }
double Xi4(const Aux3& x, double xi) { return x.a * xi + x.c; }
double Xi5(const Aux3& x, double xi) { return x.b * xi + x.d; }

RationalCoeffs3D from_aux_sample(const double* v) {
    RationalCoeffs3D rc;
    rc.a = v[0]; rc.b = v[1]; rc.c = v[2]; rc.d = v[3];
    rc.e = v[4]; rc.f = v[5]; rc.g = v[6]; rc.h = v[7];
    return rc;
}

// Denominator is bilinear in (xi, eta): single-signed on the unit square iff
// its four corners are, with a relative margin to keep the reference
// quadrature healthy.
bool denom_screen(const RationalCoeffs3D& rc) {
    const double c00 = rc.h;
    const double c10 = rc.f + rc.h;
    const double c01 = rc.g + rc.h;
    const double c11 = rc.e + rc.f + rc.g + rc.h;
    const double mx = std::max({std::abs(c00), std::abs(c10), std::abs(c01),
                                std::abs(c11)});
    const double mn = std::min({std::abs(c00), std::abs(c10), std::abs(c01),
                                std::abs(c11)});
    if (mx <= 0.0 || mn < 1e-2 * mx) return false;
    const int s = sign_of(c00);
    return sign_of(c10) == s && sign_of(c01) == s && sign_of(c11) == s;
}

// The wall-to-curve piece premise: the floor crossing eta1(xi) stays inside
// the cell across the whole xi range.
bool curve_screen(const RationalCoeffs3D& rc) {
    for (int i = 0; i <= 8; ++i) {
        const double xi = i / 8.0;
        const double x4 = rc.a * xi + rc.c;
        const double x5 = rc.b * xi + rc.d;
        if (std::abs(x4) < 1e-3) return false;
        const double eta1 = -x5 / x4;
        if (!(eta1 > 0.02 && eta1 < 0.98)) return false;
    }
    return true;
}

double column_reference(const RationalCoeffs3D& rc, double xi, PieceKind kind,
                        double tol) {
    double top = 1.0;
    if (kind == PieceKind::WallToCurve) {
        const double x4 = rc.a * xi + rc.c;
        const double x5 = rc.b * xi + rc.d;
        const double t = -x5 / x4;
        top = std::isfinite(t) ? std::clamp(t, 0.0, 1.0) : 1.0;
    }
    if (top <= 0.0) return 0.0;
    auto f = [&](double eta) { return rc.zeta(xi, eta); };
    return testutil::integrate(f, 0.0, top, tol);
}

struct Regime {
    const char* name;
    void (*fill)(testutil::Rng&, double*);
};

void fill_general(testutil::Rng& r, double* v) {
    for (int i = 0; i < 8; ++i) v[i] = r.uniform(-1, 1);
}
void fill_tiny_e(testutil::Rng& r, double* v) {
    fill_general(r, v);
    v[4] = r.uniform(-1e-12, 1e-12);
}
void fill_e_zero(testutil::Rng& r, double* v) {
    fill_general(r, v);
    v[4] = 0.0;
}
void fill_eg_zero(testutil::Rng& r, double* v) {
    fill_general(r, v);
    v[4] = v[6] = 0.0;
}
void fill_small_eg(testutil::Rng& r, double* v) {
    fill_general(r, v);
    v[4] = r.uniform(-1e-3, 1e-3);
    v[6] = r.uniform(-1e-3, 1e-3);
}
void fill_g_small(testutil::Rng& r, double* v) {
    fill_general(r, v);
    v[4] = r.uniform(-0.05, 0.05);
    v[6] = r.uniform(-0.01, 0.01);
}
void fill_band(testutil::Rng& r, double* v, double s) {
    fill_general(r, v);
    for (int i = 4; i < 8; ++i) v[i] = r.uniform(-s, s);
}
void fill_band1(testutil::Rng& r, double* v) { fill_band(r, v, 0.1); }
void fill_band3(testutil::Rng& r, double* v) { fill_band(r, v, 1e-3); }

constexpr Regime kRegimes[] = {
    {"general", fill_general},   {"tiny-e", fill_tiny_e},
    {"e-zero", fill_e_zero},     {"eg-zero", fill_eg_zero},
    {"small-e-g", fill_small_eg}, {"g-small", fill_g_small},
    {"band-1e-1", fill_band1},   {"band-1e-3", fill_band3},
};

}  // namespace

TEST_CASE("auxiliary coefficients satisfy the factor identity") {
    // e^2 (Xi4 Xi3 - Xi5 Xi0) must equal t0 Xi0^2 + t6 Xi0 + t3.
    testutil::Rng rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        double v[8];
        fill_general(rng, v);
        const RationalCoeffs3D rc = from_aux_sample(v);
        const Aux3 x = make_aux(rc);
        for (int s = 0; s < 4; ++s) {
            const double xi = rng.uniform(-1, 2);
            const double xi1 = Xi4(x, xi) * Xi3(x, xi) - Xi5(x, xi) * Xi0(x, xi);
            const double lhs = x.e * x.e * xi1;
            const double x0 = Xi0(x, xi);
            const double rhs = x.t0 * x0 * x0 + x.t6 * x0 + x.t3;
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
        }
    }
}

TEST_CASE("column integral matches eta quadrature") {
    testutil::Rng rng(42);
    int fw = 0, wc = 0;
    while (fw < 150 || wc < 150) {
        double v[8];
        fill_general(rng, v);
        const RationalCoeffs3D rc = from_aux_sample(v);
        if (!denom_screen(rc)) continue;
        const Aux3 aux = make_aux(rc);
        const double xi = rng.u01();
        if (fw < 150) {
            ++fw;
            const double want =
                column_reference(rc, xi, PieceKind::FullWidth, 1e-13);
            const double got = column_integral(aux, xi, PieceKind::FullWidth);
            CHECK(std::abs(got - want) < 1e-9 * (1.0 + std::abs(want)));
        }
        if (wc < 150 && curve_screen(rc)) {
            ++wc;
            const double want =
                column_reference(rc, xi, PieceKind::WallToCurve, 1e-13);
            const double got = column_integral(aux, xi, PieceKind::WallToCurve);
            CHECK(std::abs(got - want) < 1e-9 * (1.0 + std::abs(want)));
        }
    }
}

TEST_CASE("piece integral matches quadrature across coefficient regimes") {
    testutil::Rng rng(43);
    for (const Regime& reg : kRegimes) {
        CAPTURE(reg.name);
        int accepted = 0;
        int guard = 0;
        while (accepted < 30 && guard < 20000) {
            ++guard;
            double v[8];
            reg.fill(rng, v);
            const RationalCoeffs3D rc = from_aux_sample(v);
            if (!denom_screen(rc)) continue;
            ++accepted;
            const Aux3 aux = make_aux(rc);
            const bool wc_ok = curve_screen(rc);
            for (int k = 0; k < (wc_ok ? 2 : 1); ++k) {
                const PieceKind kind =
                    k == 0 ? PieceKind::FullWidth : PieceKind::WallToCurve;
                auto f = [&](double t) { return column_integral(aux, t, kind); };
                const double scale =
                    std::max({1.0, std::abs(f(0.0)), std::abs(f(0.5)),
                              std::abs(f(1.0))});
                const double want =
                    testutil::integrate(f, 0.0, 1.0, 1e-13 * scale);
                const double got = integrate_piece(aux, 0.0, 1.0, kind);
                CHECK(std::abs(got - want) < 1e-8 * std::max(1.0, std::abs(want)));
            }
        }
        CHECK(accepted == 30);
    }
}

TEST_CASE("piece integral crosses the linear-denominator root exactly") {
    // Xi0 = xi - 1/2 vanishes mid-range; the removable configuration must
    // integrate through it, not throw.
    RationalCoeffs3D rc;
    rc.a = 0.4; rc.b = 0.3; rc.c = 0.25; rc.d = 0.8;
    rc.e = 1.0; rc.f = 0.3; rc.g = -0.5; rc.h = 1.4;
    const Aux3 aux = make_aux(rc);
    auto f = [&](double t) { return column_integral(aux, t, PieceKind::FullWidth); };
    const double want = testutil::integrate(f, 0.0, 1.0, 1e-14);
    const double got = integrate_piece(aux, 0.0, 1.0, PieceKind::FullWidth);
    CHECK(std::abs(got - want) < 1e-10);
}

TEST_CASE("piece integral rejects interior poles") {
    // Floor denominator f*xi + h changes sign at xi = 1/2.
    RationalCoeffs3D r1;
    r1.a = 0.1; r1.b = 0.2; r1.c = 0.1; r1.d = 0.4;
    r1.e = 0.0; r1.f = 1.0; r1.g = 0.0; r1.h = -0.5;
    CHECK_THROWS_AS(
        integrate_piece(make_aux(r1), 0.0, 1.0, PieceKind::FullWidth),
        PoleInRange);

    // Curve-crossing denominator a*xi + c changes sign at xi = 1/2.
    RationalCoeffs3D r2;
    r2.a = 1.0; r2.b = -0.3; r2.c = -0.5; r2.d = -0.2;
    r2.e = 0.1; r2.f = 0.2; r2.g = 0.3; r2.h = 1.5;
    CHECK_THROWS_AS(
        integrate_piece(make_aux(r2), 0.0, 1.0, PieceKind::WallToCurve),
        PoleInRange);

    // Identically-zero denominator.
    RationalCoeffs3D r3;
    r3.a = 0.1; r3.b = 0.2; r3.c = 0.3; r3.d = 0.4;
    CHECK_THROWS_AS(
        integrate_piece(make_aux(r3), 0.0, 1.0, PieceKind::FullWidth),
        DegenerateDenominator);
}

TEST_CASE("elementary volume hand cases") {
    // Flat interface at zeta = 0.6 over the whole floor.
    RationalCoeffs3D slab;
    slab.d = 0.6; slab.h = -1.0;
    CHECK(elementary_volume_3d(slab, ElementaryType::TypeIII) ==
          doctest::Approx(0.6).epsilon(1e-13));

    // zeta = 1/4 / (1 - xi/2): integral is log(2)/2.
    RationalCoeffs3D curved;
    curved.d = -0.25; curved.h = 1.0; curved.f = -0.5;
    CHECK(elementary_volume_3d(curved, ElementaryType::TypeIII) ==
          doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-13));
}

TEST_CASE("elementary volume with a curve footprint matches quadrature") {
    // Floor curve leaves through xi = -d/b = 0.4; integrate the wall-to-curve
    // columns over [0, 0.4] as a reference.
    RationalCoeffs3D rc;
    rc.a = 0.1; rc.b = 0.5; rc.c = 0.3; rc.d = -0.2;
    rc.e = 0.2; rc.f = 0.1; rc.g = 0.3; rc.h = 0.8;
    const Aux3 aux = make_aux(rc);
    auto f = [&](double t) {
        return column_integral(aux, t, PieceKind::WallToCurve);
    };
    const double want = testutil::integrate(f, 0.0, 0.4, 1e-14);
    CHECK(elementary_volume_3d(rc, ElementaryType::TypeI) ==
          doctest::Approx(want).epsilon(1e-10));

    // Same coefficients, curve spanning the whole range.
    RationalCoeffs3D rc2 = rc;
    rc2.b = 0.1; rc2.d = -0.25;  // eta1 in (0, 1) for all xi in [0, 1]
    const Aux3 aux2 = make_aux(rc2);
    auto f2 = [&](double t) {
        return column_integral(aux2, t, PieceKind::WallToCurve);
    };
    const double want2 = testutil::integrate(f2, 0.0, 1.0, 1e-14);
    CHECK(elementary_volume_3d(rc2, ElementaryType::TypeII) ==
          doctest::Approx(want2).epsilon(1e-10));
}
