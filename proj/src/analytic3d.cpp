#include <cutvol/analytic3d.hpp>

#include <cutvol/analytic2d.hpp>
#include <cutvol/dilog.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

// The closed form integrates, over a range of the local xi coordinate, the
// per-column area q(xi) of the slice cut by the interface graph.  q itself is
// elementary, but its antiderivative mixes rational terms, logarithms and
// dilogarithms of linear and quadratic factors built from the coefficient
// combinations t0..t6 below.  Different coefficient regimes cancel badly in
// different representations, so the integrator is a ladder:
//
//   1. denominator nearly independent of eta  -> adaptive quadrature of the
//      robust column integral (the closed form would subtract huge terms),
//   2. |e| small against |g|                  -> polynomial-series form of the
//      antiderivative (geometric expansion of 1/Xi0^2, no division by e),
//   3. otherwise                              -> full log/dilog closed form,
//      with the range split around the root of Xi0 and a narrow quadrature
//      sliver covering the split point where the dilogarithm branches meet.
//
// All complex logarithms approach their cuts from above (+i0); piece validity
// guarantees no cut is crossed inside a range, so imaginary parts are locally
// constant and the real part of the endpoint difference is the exact integral.

namespace cutvol {
namespace {

using cplx = std::complex<double>;

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTinyAbs = 1e-300;   // absolute guard against identically-zero factors
constexpr double kTau = 1e-12;        // relative cutoff: treat a factor as constant
constexpr double kSmallDen = 1e-2;    // eta-slope of denominator small -> quadrature rung
constexpr double kPolyR = 0.25;       // |e*xi| / |g| gate for the polynomial rung
constexpr double kSliverFrac = 1e-3;  // half-width of the sliver at the Xi0 root
constexpr double kShrink = 1e-10;     // endpoint pull-in when a log argument grazes zero
constexpr double kGrazeRel = 1e-12;   // graze detection threshold, relative
constexpr double kSeriesGate = 0.1;   // near-parallel gate: |Xi0(rho)| vs min |Xi0|
constexpr double kFarRho = 100.0;     // poles beyond this use the far-pole expansion
constexpr double kQuadTol = 1e-13;    // absolute tolerance of the quadrature rung
constexpr double kLossCap = 1e4;      // tolerated |F| / |delta F| cancellation ratio

double Xi0(const Aux3& x, double xi) { return x.e * xi + x.g; }
double Xi1(const Aux3& x, double xi) { return x.t2 + xi * (x.t1 + xi * x.t0); }

// Push exactly-real values to the upper side of the branch cut so that every
// evaluation of a piece uses the same branch at both endpoints.  lower() is the
// mirror image, used where a quantity must match the continuous-from-above
// dilogarithm convention (Log(1-z) sits just below the axis when z does above).
cplx upper(cplx z) { return z.imag() == 0.0 ? cplx(z.real(), 0.0) : z; }
cplx lower(cplx z) { return z.imag() == 0.0 ? cplx(z.real(), -0.0) : z; }
cplx clog(cplx z) { return std::log(upper(z)); }
cplx log_real(double v) {
    return cplx(std::log(std::abs(v)), v < 0.0 ? kPi : 0.0);
}

// ==== GAUSS RULES ====
// Nodes and weights are generated once by Newton iteration on the Legendre
// polynomial; the tables back both the fixed sliver rule and the adaptive
// fallback integrator.

struct GaussRule {
    std::array<double, 32> x{}, w{};
    int n = 0;
};

GaussRule build_gauss(int n) {
    GaussRule r;
    r.n = n;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double xg = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 64; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * xg * p1 - j * p2) / (j + 1.0);
            }
            dp = n * (xg * p0 - p1) / (xg * xg - 1.0);
            double dx = p0 / dp;
            xg -= dx;
            if (std::abs(dx) <= 1e-16 * (1.0 + std::abs(xg))) break;
        }
        r.x[i] = -xg;
        r.x[n - 1 - i] = xg;
        double wi = 2.0 / ((1.0 - xg * xg) * dp * dp);
        r.w[i] = wi;
        r.w[n - 1 - i] = wi;
    }
    return r;
}

const GaussRule& gauss16() {
    static const GaussRule r = build_gauss(16);
    return r;
}
const GaussRule& gauss32() {
    static const GaussRule r = build_gauss(32);
    return r;
}

template <class F>
double gauss_apply(const F& f, double a, double b, const GaussRule& r) {
    double c = 0.5 * (a + b), hw = 0.5 * (b - a), s = 0.0;
    for (int i = 0; i < r.n; ++i) s += r.w[i] * f(c + hw * r.x[i]);
    return s * hw;
}

template <class F>
double adaptive_gauss(const F& f, double a, double b, double tol, int depth) {
    double c16 = gauss_apply(f, a, b, gauss16());
    double c32 = gauss_apply(f, a, b, gauss32());
    if (std::abs(c32 - c16) <= std::max(tol, 50.0 * 2.220446049250313e-16 * std::abs(c32)) ||
        depth >= 14)
        return c32;
    double m = 0.5 * (a + b);
    return adaptive_gauss(f, a, m, 0.5 * tol, depth + 1) +
           adaptive_gauss(f, m, b, 0.5 * tol, depth + 1);
}

// ==== PIECE VALIDITY ====
// Log arguments must keep one sign across a piece.  Endpoint grazes are pulled
// inward by kShrink * width (the lost strip contributes at most ~1e-10 to the
// fraction); a genuine interior root means the piece assumptions are wrong and
// the caller has to subdivide the cell.

struct Range {
    double u0 = 0.0, u1 = 1.0;
};

void guard_linear(double lam, double mu, Range& r, double width) {
    double xmax = std::max({std::abs(r.u0), std::abs(r.u1), 1.0});
    double ls = std::abs(lam) * xmax + std::abs(mu);
    if (ls <= kTinyAbs)
        throw DegenerateDenominator("logarithm argument vanishes identically");
    if (std::abs(lam) * xmax <= kTau * ls) return;  // effectively constant
    double v0 = lam * r.u0 + mu;
    double v1 = lam * r.u1 + mu;
    if (std::abs(v0) <= kGrazeRel * ls) {
        r.u0 += kShrink * width;
        v0 = lam * r.u0 + mu;
    }
    if (std::abs(v1) <= kGrazeRel * ls) {
        r.u1 -= kShrink * width;
        v1 = lam * r.u1 + mu;
    }
    if (v0 == 0.0 || v1 == 0.0 || (v0 < 0.0) != (v1 < 0.0))
        throw PoleInRange("logarithm argument changes sign across the piece");
}

// Roots of A x^2 + B x + C when B^2 - 4AC >= 0, computed without cancellation.
void real_quad_roots(double A, double B, double C, double& r1, double& r2) {
    double s = std::sqrt(B * B - 4.0 * A * C);
    double q = -0.5 * (B + std::copysign(s, B));
    r1 = q / A;
    r2 = (q != 0.0) ? C / q : 0.0;
}

void guard_quadratic(const Aux3& x, Range& r, double width) {
    double ts = std::abs(x.t0) + std::abs(x.t1) + std::abs(x.t2);
    if (ts <= kTinyAbs) return;  // Xi1 == 0: its logarithm never enters
    double xmax = std::max({std::abs(r.u0), std::abs(r.u1), 1.0});
    double qs = std::abs(x.t0) * xmax * xmax + std::abs(x.t1) * xmax + std::abs(x.t2);
    if (std::abs(Xi1(x, r.u0)) <= kGrazeRel * qs) r.u0 += kShrink * width;
    if (std::abs(Xi1(x, r.u1)) <= kGrazeRel * qs) r.u1 -= kShrink * width;
    double r1 = 0.0, r2 = 0.0;
    int nroots = 0;
    if (std::abs(x.t0) > kTau * ts) {
        double disc = x.t1 * x.t1 - 4.0 * x.t0 * x.t2;
        if (disc >= 0.0) {
            real_quad_roots(x.t0, x.t1, x.t2, r1, r2);
            nroots = 2;
        }
    } else if (std::abs(x.t1) > kTau * ts) {
        r1 = -x.t2 / x.t1;
        nroots = 1;
    }
    for (int i = 0; i < nroots; ++i) {
        double rt = (i == 0) ? r1 : r2;
        if (rt > r.u0 && rt < r.u1)
            throw PoleInRange("interface factor vanishes inside the piece");
    }
}

// ==== GENERAL EVALUATOR ====
// Full closed form.  Building blocks at a point xi:
//   H     = I (Xi1 / Xi0^2)                 rational + log
//   P3    = I (u xi + v) / Xi0              rational + log
//   P1rho = Re I (Xi1 / Xi0^2) Log(xi-rho)  via H Log - W with
//   W     = I H / (xi - rho)
//         = (t0/e^2)(xi + rho Log(xi-rho)) + (t6/e^3) J - (t3/e^3) K,
//   J     = Log(Xi0(rho)) Log(xi-rho) - Li2(-e (xi-rho) / Xi0(rho)),
//   K     = (Log(xi-rho) - Log Xi0(xi)) / Xi0(rho).
// Poles nearly parallel to Xi0 switch to a log1p-type series, and very remote
// poles to an expansion of Log(xi-rho) around Log(-rho); both avoid the large
// cancellations of the direct form in those regimes.

class GeneralEval {
  public:
    GeneralEval(const Aux3& x, double u0, double u1)
        : x_(x),
          min0_(std::min(std::abs(Xi0(x, u0)), std::abs(Xi0(x, u1)))),
          xiref_(0.5 * (u0 + u1)),
          e2_(x.e * x.e),
          e3_(x.e * x.e * x.e) {}

    double H(double xi) const {
        double z = Xi0(x_, xi);
        return x_.t0 * xi / e2_ + x_.t6 * std::log(std::abs(z)) / e3_ -
               x_.t3 / (e3_ * z);
    }

    double P3(double u, double v, double xi) const {
        return u * xi / x_.e +
               (v * x_.e - u * x_.g) / e2_ * std::log(std::abs(Xi0(x_, xi)));
    }

    double P1rho(double xi, cplx rho) const {
        if (std::abs(rho) > kFarRho) return far(xi, rho);
        cplx x0r = x_.e * rho + x_.g;
        if (std::abs(x0r) <= kSeriesGate * min0_) return series(xi, rho);
        return direct(xi, rho, x0r);
    }

  private:
    double direct(double xi, cplx rho, cplx x0r) const {
        cplx xr = upper(cplx(xi, 0.0) - rho);
        cplx lxr = std::log(xr);
        cplx x0u = upper(x0r);
        // J must differentiate to Log Xi0(xi) / (xi - rho) with the fixed
        // upper-side Log Xi0.  Writing Log Xi0(xi) = C + Log(Xi0(xi)/Xi0(rho))
        // the constant C is pinned at a reference point inside the piece;
        // taking it as Log(Xi0(rho)) naively can be off by 2 pi i when the
        // principal branches wrap, which leaks into the real part whenever rho
        // is complex.  The quotient uses the lower-side convention because the
        // dilogarithm below is continuous from above in its argument.
        double x0ref = Xi0(x_, xiref_);
        cplx C(std::log(std::abs(x0u)),
               (log_real(x0ref) - std::log(lower(cplx(x0ref, 0.0) / x0u))).imag());
        cplx J = C * lxr - dilog(upper(-x_.e * xr / x0u));
        cplx K = (lxr - log_real(Xi0(x_, xi))) / x0u;
        cplx W = x_.t0 / e2_ * (cplx(xi, 0.0) + rho * lxr) + x_.t6 / e3_ * J -
                 x_.t3 / e3_ * K;
        return (H(xi) * lxr - W).real();
    }

    // I (Xi1/Xi0^2) log|Xi0|, used by the near-parallel series.
    double RQL0(double xi) const {
        double z = Xi0(x_, xi), lz = std::log(std::abs(z));
        return H(xi) * lz - (x_.t0 * xi / e2_ - x_.t0 * x_.g * lz / e3_ +
                             x_.t6 * lz * lz / (2.0 * e3_) + x_.t3 / (e3_ * z));
    }

    // I Xi0^{-p}
    double A(int p, double xi) const {
        if (p == 0) return xi;
        double z = Xi0(x_, xi);
        if (p == 1) return std::log(std::abs(z)) / x_.e;
        double zp = z;
        for (int i = 2; i < p; ++i) zp *= z;  // z^{p-1}
        return 1.0 / ((1.0 - p) * x_.e * zp);
    }

    // I Xi1 / Xi0^m  via  e^2 Xi1 = t0 Xi0^2 + t6 Xi0 + t3
    double Im(int m, double xi) const {
        return (x_.t0 * A(m - 2, xi) + x_.t6 * A(m - 1, xi) +
                x_.t3 * A(m, xi)) / e2_;
    }

    // Pole nearly coincident with the Xi0 root: expand
    // Log(xi-rho) = Log Xi0 + Log1p(D0/Xi0) - Log e with D0 = -Xi0(rho).
    double series(double xi, cplx rho) const {
        cplx D0 = -(x_.e * rho + x_.g);
        double acc = -std::log(std::abs(x_.e)) * H(xi) + RQL0(xi);
        cplx pw = 1.0, S = 0.0;
        for (int k = 1; k <= 24; ++k) {
            pw *= D0;
            cplx contrib = pw * (((k & 1) ? 1.0 : -1.0) / k) * Im(k + 2, xi);
            S += contrib;
            if (std::abs(contrib) <= 1e-17 * (1.0 + std::abs(S))) break;
        }
        return acc + S.real();
    }

    // Very remote pole: Log(xi-rho) = Log(-rho) + Log1p(-xi/rho); the moments
    // V_j = I xi^j Xi1/Xi0^2 follow the two-term recurrence through
    // U_j = I xi^j Xi1/Xi0 and the elementary P_j = I xi^j Xi1.
    double far(double xi, cplx rho) const {
        double z = Xi0(x_, xi);
        double U = (x_.t0 * z * z / (2.0 * x_.e) + x_.t6 * xi +
                    x_.t3 * std::log(std::abs(z)) / x_.e) / e2_;
        double V = H(xi);
        cplx S = clog(-rho) * V;
        cplx rp = 1.0;
        double xj = xi;        // xi^j
        double xj1 = xi * xi;  // xi^{j+1}
        double xj2 = xj1 * xi;
        for (int j = 1; j <= 12; ++j) {
            double Vj = (U - x_.g * V) / x_.e;
            double Pjm1 = x_.t2 * xj / j + x_.t1 * xj1 / (j + 1.0) +
                          x_.t0 * xj2 / (j + 2.0);
            double Uj = (Pjm1 - x_.g * U) / x_.e;
            rp *= rho;
            cplx contrib = Vj / (double(j) * rp);
            S -= contrib;
            U = Uj;
            V = Vj;
            xj = xj1;
            xj1 = xj2;
            xj2 *= xi;
            if (std::abs(contrib) <= 1e-17 * (1.0 + std::abs(S))) break;
        }
        return S.real();
    }

    Aux3 x_;
    double min0_, xiref_, e2_, e3_;
};

// ==== POLYNOMIAL EVALUATOR ====
// For |e| * xmax <= kPolyR * |g| the factor 1/Xi0^2 expands geometrically,
//   1/Xi0^2 = (1/g^2) sum_k (k+1) q^k xi^k,  q = -e/g,
// turning H into a rapidly convergent polynomial.  No term divides by e, so
// the ladder stays accurate straight through e == 0.  The Xi0 root sits at
// distance >= xmax/kPolyR, outside every piece, so no split is needed.

class PolyEval {
  public:
    PolyEval(const Aux3& x, double xmax) : x_(x), q_(x.g == 0.0 ? 0.0 : -x.e / x.g) {
        double ratio = std::abs(x.e) * xmax / std::abs(x.g);
        int K = 4;
        if (ratio > 0.0)
            K = std::clamp(int(std::ceil(-41.5 / std::log(ratio))), 4, 40);
        K_ = K;
        double g2 = x.g * x.g, qk = 1.0;
        for (int k = 0; k <= K_; ++k) {
            c_[k + 1] += qk * x.t2 / g2;
            c_[k + 2] += qk * x.t1 * (k + 1.0) / ((k + 2.0) * g2);
            c_[k + 3] += qk * x.t0 * (k + 1.0) / ((k + 3.0) * g2);
            qk *= q_;
        }
        deg_ = K_ + 3;
    }

    double H(double xi) const {
        double s = c_[deg_];
        for (int p = deg_ - 1; p >= 1; --p) s = s * xi + c_[p];
        return s * xi;
    }

    double P3(double u, double v, double xi) const {
        double s = 0.0, qk = 1.0, xp = xi;  // xi^{k+1}
        for (int k = 0; k <= K_; ++k) {
            s += qk * (v * xp / (k + 1.0) + u * xp * xi / (k + 2.0));
            qk *= q_;
            xp *= xi;
        }
        return s / x_.g;
    }

    double P1rho(double xi, cplx rho) const {
        double kappa = std::abs(rho) * std::abs(x_.e / x_.g);
        if (kappa <= 0.5) return near(xi, rho);
        return far(xi, rho);
    }

  private:
    // I H/(xi-rho) = sum_p c_p S_p with S_p = xi^p/p + rho S_{p-1}; the
    // products c_p S_p decay like kappa^p, so the recurrence is stable.
    double near(double xi, cplx rho) const {
        cplx lxr = clog(cplx(xi, 0.0) - rho);
        cplx Sp = lxr, S = 0.0;
        double xp = 1.0;
        for (int p = 1; p <= deg_; ++p) {
            xp *= xi;
            Sp = xp / double(p) + rho * Sp;
            S += c_[p] * Sp;
        }
        return (H(xi) * lxr - S).real();
    }

    // kappa > 0.5 forces |rho| >= 2 xmax, so Log(xi-rho) expands around
    // Log(-rho) with ratio |xi/rho| <= 1/2.
    double far(double xi, cplx rho) const {
        cplx S = clog(-rho) * H(xi);
        cplx rp = 1.0;
        for (int j = 1; j <= 64; ++j) {
            double g2 = x_.g * x_.g, qk = 1.0, s = 0.0;
            double xp = 1.0;
            for (int i = 0; i < j + 1; ++i) xp *= xi;  // xi^{k+j+1} at k=0
            for (int k = 0; k <= K_; ++k) {
                s += qk * (k + 1.0) *
                     (x_.t2 * xp / (k + j + 1.0) + x_.t1 * xp * xi / (k + j + 2.0) +
                      x_.t0 * xp * xi * xi / (k + j + 3.0)) / g2;
                qk *= q_;
                xp *= xi;
            }
            rp *= rho;
            cplx contrib = s / (double(j) * rp);
            S -= contrib;
            if (std::abs(contrib) <= 1e-17 * (1.0 + std::abs(S))) break;
        }
        return S.real();
    }

    Aux3 x_;
    double q_ = 0.0;
    int K_ = 0, deg_ = 0;
    std::array<double, 48> c_{};
};

// ==== ASSEMBLY ====

template <class Ev>
double P1lin(const Ev& ev, double lam, double mu, double xi, double xmax) {
    double ls = std::abs(lam) * xmax + std::abs(mu);
    if (ls <= kTinyAbs)
        throw DegenerateDenominator("logarithm argument vanishes identically");
    if (std::abs(lam) * xmax <= kTau * ls)
        return std::log(std::abs(mu)) * ev.H(xi);
    return std::log(std::abs(lam)) * ev.H(xi) +
           ev.P1rho(xi, cplx(-mu / lam, 0.0));
}

template <class Ev>
double P2quad(const Ev& ev, const Aux3& x, double xi) {
    double ts = std::abs(x.t0) + std::abs(x.t1) + std::abs(x.t2);
    if (ts <= kTinyAbs) return 0.0;
    if (std::abs(x.t0) > kTau * ts) {
        double disc = x.t1 * x.t1 - 4.0 * x.t0 * x.t2;
        double lt = std::log(std::abs(x.t0)) * ev.H(xi);
        if (disc >= 0.0) {
            double r1 = 0.0, r2 = 0.0;
            real_quad_roots(x.t0, x.t1, x.t2, r1, r2);
            return lt + ev.P1rho(xi, cplx(r1, 0.0)) + ev.P1rho(xi, cplx(r2, 0.0));
        }
        // The two conjugate roots are evaluated separately: the fixed upper
        // Log Xi0 convention is not conjugation-symmetric, so their real
        // parts differ by more than a constant and may not be folded into a
        // single doubled call.
        cplx rho(-x.t1 / (2.0 * x.t0), std::sqrt(-disc) / (2.0 * std::abs(x.t0)));
        return lt + ev.P1rho(xi, rho) + ev.P1rho(xi, std::conj(rho));
    }
    if (std::abs(x.t1) > kTau * ts)
        return std::log(std::abs(x.t1)) * ev.H(xi) +
               ev.P1rho(xi, cplx(-x.t2 / x.t1, 0.0));
    return std::log(std::abs(x.t2)) * ev.H(xi);
}

// Returns F(u1) - F(u0) and reports the working magnitude of the evaluation so
// the caller can judge how many digits the difference lost to cancellation.
// |H| at the endpoints is included because every group of terms inside F
// carries H-sized pieces that may cancel against each other before the endpoint
// values are formed, invisibly to |F| alone.
template <class Ev>
double assemble(const Ev& ev, const Aux3& x, double u0, double u1,
                PieceKind kind, double& mag) {
    double xmax = std::max({std::abs(u0), std::abs(u1), 1.0});
    auto F = [&](double xi) {
        if (kind == PieceKind::WallToCurve)
            return P2quad(ev, x, xi) - P1lin(ev, x.f, x.h, xi, xmax) -
                   P1lin(ev, x.a, x.c, xi, xmax) + ev.P3(x.b, x.d, xi);
        return P1lin(ev, x.e + x.f, x.g + x.h, xi, xmax) -
               P1lin(ev, x.f, x.h, xi, xmax) - ev.P3(x.a, x.c, xi);
    };
    double f0 = F(u0), f1 = F(u1);
    mag = std::abs(f0) + std::abs(f1) + std::abs(ev.H(u0)) + std::abs(ev.H(u1));
    return f1 - f0;
}

}  // namespace

// ==== PUBLIC INTERFACE ====

Aux3 make_aux(const RationalCoeffs3D& rc) {
    Aux3 x{};
    x.a = rc.a;
    x.b = rc.b;
    x.c = rc.c;
    x.d = rc.d;
    x.e = rc.e;
    x.f = rc.f;
    x.g = rc.g;
    x.h = rc.h;
    x.t0 = x.a * x.f - x.b * x.e;
    x.t1 = x.a * x.h - x.b * x.g + x.c * x.f - x.d * x.e;
    x.t2 = x.c * x.h - x.d * x.g;
    x.t4 = x.e * x.h - x.f * x.g;
    x.t5 = x.c * x.e - x.a * x.g;
    x.t3 = x.e * x.e * x.t2 - x.e * x.g * x.t1 + x.g * x.g * x.t0;
    x.t6 = x.e * x.t1 - 2.0 * x.g * x.t0;
    return x;
}

double column_integral(const Aux3& x, double xi, PieceKind kind) {
    RationalCoeffs2D col{x.a * xi + x.c, x.b * xi + x.d, x.e * xi + x.g,
                         x.f * xi + x.h};
    double top = 1.0;
    if (kind == PieceKind::WallToCurve) {
        double t = -col.b / col.a;  // the curve meets the floor at eta = t
        top = std::isfinite(t) ? std::clamp(t, 0.0, 1.0) : 1.0;
    }
    if (top <= 0.0) return 0.0;
    return integrate_rational_2d(col, 0.0, top, 0);
}

double integrate_piece(const Aux3& x, double x0, double x1, PieceKind kind) {
    if (!(x1 > x0)) return 0.0;
    double xmax = std::max({std::abs(x0), std::abs(x1), 1.0});
    double s0s = std::abs(x.e) * xmax + std::abs(x.g);
    double s3s = std::abs(x.f) * xmax + std::abs(x.h);
    if (s0s + s3s <= kTinyAbs)
        throw DegenerateDenominator("interface denominator vanishes identically");

    // Piece validity first: a sign change of the floor or ceiling
    // denominator (or of the curve-floor crossing's denominator) means the
    // column integrand itself has a pole in the range, which no rung below
    // can integrate meaningfully.
    Range r{x0, x1};
    double width = x1 - x0;
    guard_linear(x.f, x.h, r, width);
    if (kind == PieceKind::WallToCurve)
        guard_linear(x.a, x.c, r, width);
    else
        guard_linear(x.e + x.f, x.g + x.h, r, width);

    // Rung 1: the denominator hardly depends on eta.  Every closed-form
    // grouping subtracts terms ~1/Xi0^2 that cancel to an O(1) result, so
    // integrate the robust column integral adaptively instead.
    if (s0s <= kSmallDen * s3s) {
        auto f = [&](double t) { return column_integral(x, t, kind); };
        return adaptive_gauss(f, r.u0, r.u1, kQuadTol, 0);
    }

    // The interface factor's interior roots only obstruct the closed forms
    // (its logarithm appears there); the quadrature rung above is fine with
    // them, so this guard comes second.
    if (kind == PieceKind::WallToCurve) guard_quadratic(x, r, width);

    // Closed-form evaluation with a self-check: when the endpoint values
    // cancel to fewer than ~12 significant digits (or are not finite), the
    // configuration sits between regimes and the robust column quadrature is
    // more accurate than the difference of huge antiderivatives.
    auto closed = [&](double u0, double u1, auto&& ev) {
        double mag = 0.0;
        double d = assemble(ev, x, u0, u1, kind, mag);
        if (!(mag <= kLossCap * std::abs(d))) {
            auto f = [&](double t) { return column_integral(x, t, kind); };
            return adaptive_gauss(f, u0, u1, kQuadTol, 0);
        }
        return d;
    };

    // Rung 2: e small against g.
    if (std::abs(x.e) * xmax <= kPolyR * std::abs(x.g))
        return closed(r.u0, r.u1, PolyEval(x, xmax));

    // Rung 3: full closed form; keep the Xi0 root (where the dilogarithm
    // argument reaches its cut endpoint) outside each closed part and bridge
    // it with a fixed Gauss rule on the analytic column integral.
    double xs = -x.g / x.e;
    double m = kSliverFrac * width;
    double lo = xs - m, hi = xs + m;
    if (hi <= r.u0 || lo >= r.u1)
        return closed(r.u0, r.u1, GeneralEval(x, r.u0, r.u1));
    double s0 = std::max(r.u0, lo), s1 = std::min(r.u1, hi);
    double acc = 0.0;
    if (s0 > r.u0) acc += closed(r.u0, s0, GeneralEval(x, r.u0, s0));
    auto f = [&](double t) { return column_integral(x, t, kind); };
    acc += gauss_apply(f, s0, s1, gauss32());
    if (s1 < r.u1) acc += closed(s1, r.u1, GeneralEval(x, s1, r.u1));
    return acc;
}

double elementary_volume_3d(const RationalCoeffs3D& rc, ElementaryType type) {
    Aux3 x = make_aux(rc);
    switch (type) {
        case ElementaryType::TypeIII:
            return integrate_piece(x, 0.0, 1.0, PieceKind::FullWidth);
        case ElementaryType::TypeII:
            return integrate_piece(x, 0.0, 1.0, PieceKind::WallToCurve);
        case ElementaryType::TypeI: {
            double l = -rc.d / rc.b;  // the floor curve meets the xi edge here
            if (!std::isfinite(l))
                throw DegenerateEdge("interface does not cross the long edge");
            l = std::clamp(l, 1e-14, 1.0);
            return integrate_piece(x, 0.0, l, PieceKind::WallToCurve);
        }
    }
    throw Error("unknown elementary type");
}

}  // namespace cutvol
