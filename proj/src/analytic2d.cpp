#include <cutvol/analytic2d.hpp>

#include <algorithm>
#include <cmath>

namespace cutvol {

namespace {

// Relative magnitude below which a corner value counts as exactly zero and is
// nudged to the positive side before sign decisions are made.
constexpr double kZeroShift = 1e-14;

// Tail of log1p:  log1p(r) - r = -r^2 * S(r)  with
// S(r) = 1/2 - r/3 + r^2/4 - ...  Direct summation avoids the cancellation
// of subtracting r from log1p(r) when r is small.
double log1p_tail_scaled(double r) {
    double term = 1.0;
    double sum = 0.5;
    for (int k = 1; k < 80; ++k) {
        term *= -r;
        const double add = term / double(k + 2);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace

double integrate_rational_2d(const RationalCoeffs2D& rc, double eta0,
                             double eta1, int i_zeta) {
    const double a = rc.a, b = rc.b, c = rc.c, d = rc.d;
    const double deta = eta1 - eta0;
    const double scale = std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d);
    if (scale == 0.0)
        throw DegenerateDenominator("all interface coefficients are zero");

    const double det = a * d - b * c;
    double integral;
    if (std::abs(det) <= 1e-15 * scale * scale) {
        // Numerator and denominator are proportional: the curve is the
        // constant zeta = -b/d = -a/c.  Use the better-conditioned ratio.
        double zconst;
        if (std::abs(d) >= std::abs(c)) {
            if (d == 0.0)
                throw DegenerateDenominator("interface denominator vanishes");
            zconst = -b / d;
        } else {
            zconst = -a / c;
        }
        integral = zconst * deta;
    } else {
        const double den0 = c * eta0 + d;
        const double den1 = c * eta1 + d;
        if (den0 == 0.0 || den1 == 0.0 || (den0 > 0.0) != (den1 > 0.0))
            throw PoleInRange("interface denominator vanishes in range");
        // Delta form of the antiderivative
        //   -(a/c) eta + (det/c^2) log|c eta + d| :
        // expanding about eta0 cancels the 1/c poles algebraically, leaving
        //   zeta(eta0) deta + (det/c^2) (log1p(r) - r),  r = c deta / den0,
        // which stays finite and accurate for any c, including c == 0.
        const double r = c * deta / den0;
        const double zeta0 = -(a * eta0 + b) / den0;
        if (std::abs(r) < 0.5) {
            integral = zeta0 * deta -
                       det * deta * deta / (den0 * den0) * log1p_tail_scaled(r);
        } else {
            integral = zeta0 * deta + det / (c * c) * (std::log1p(r) - r);
        }
    }
    return i_zeta == 0 ? integral : deta - integral;
}

namespace {

// Areas of the two hyperbola lobes for the fully diagonal sign pattern.
// The asymptote eta = -d/c splits the interface into two graphs; the bottom
// crossing eta_b and the top crossing eta_t land on opposite sides of it, and
// their order decides which diagonal corner pair owns the lobes.
double saddle_area(const CellCorners2D& cell) {
    const BilinearCoeffs bc = bilinear_coeffs(cell);
    RationalCoeffs2D rc;
    rc.a = bc.beta1;
    rc.b = bc.beta0;
    rc.c = bc.beta3;
    rc.d = bc.beta2;

    const double eta_b = -rc.b / rc.a;                    // crossing on zeta=0
    const double eta_t = -(rc.b + rc.d) / (rc.a + rc.c);  // crossing on zeta=1

    double lobes;
    int lobe_sign;
    if (eta_b < eta_t) {
        // Lobes hug corners (0,0) and (1,1).
        lobes = integrate_rational_2d(rc, 0.0, eta_b, 0) +
                integrate_rational_2d(rc, eta_t, 1.0, 1);
        lobe_sign = sign_of(cell.phi00);
    } else {
        // Lobes hug corners (0,1) and (1,0).
        lobes = integrate_rational_2d(rc, 0.0, eta_t, 1) +
                integrate_rational_2d(rc, eta_b, 1.0, 0);
        lobe_sign = sign_of(cell.phi01);
    }
    return lobe_sign > 0 ? lobes : 1.0 - lobes;
}

}  // namespace

double cell_area_2d(const CellCorners2D& cell_in) {
    CellCorners2D cell = cell_in;

    // Nudge exact-zero corners to the positive side so every sign decision
    // below sees a strict sign, consistent with sign_of(0) == +1.
    double mag = std::max({std::abs(cell.phi00), std::abs(cell.phi10),
                           std::abs(cell.phi01), std::abs(cell.phi11)});
    if (mag == 0.0) mag = 1.0;
    for (int ix = 0; ix <= 1; ++ix)
        for (int iy = 0; iy <= 1; ++iy)
            if (cell.at(ix, iy) == 0.0) cell.set(ix, iy, kZeroShift * mag);

    const int s00 = sign_of(cell.phi00), s10 = sign_of(cell.phi10);
    const int s01 = sign_of(cell.phi01), s11 = sign_of(cell.phi11);
    const int npos =
        (s00 > 0) + (s10 > 0) + (s01 > 0) + (s11 > 0);
    if (npos == 4) return 1.0;
    if (npos == 0) return 0.0;

    double alpha;
    if (s00 == s11 && s10 == s01 && s00 != s10) {
        alpha = saddle_area(cell);
    } else {
        // Single interface branch: a graph zeta(eta) in the frame anchored at
        // the origin corner, spanning [0, l_eta] when the eta edge crosses
        // and the full [0, 1] when the interface exits through eta = 1.
        const Corner2 origin = select_origin(cell);
        const BilinearCoeffs bc = bilinear_coeffs(cell);
        const EdgeLengths2 lengths = edge_lengths_2d(bc, origin);

        int ax_eta = 0, ax_zeta = 1;
        if (lengths.ly > lengths.lx) std::swap(ax_eta, ax_zeta);

        const CellCorners2D local = to_local(cell, origin, ax_eta, ax_zeta);
        const RationalCoeffs2D rc = rational_coeffs_local(local);

        const bool eta_edge_crosses =
            sign_of(local.at(1, 0)) != sign_of(local.at(0, 0));
        const double upper = eta_edge_crosses ? lengths.axis(ax_eta) : 1.0;

        const double under = integrate_rational_2d(rc, 0.0, upper, 0);
        alpha = sign_of(local.at(0, 0)) > 0 ? under : 1.0 - under;
    }
    return std::clamp(alpha, 0.0, 1.0);
}

}  // namespace cutvol
