#pragma once

#include <utility>

#include <cutvol/types.hpp>

namespace cutvol {

// ============================================================================
//                        MULTILINEAR INTERPOLANTS
// ============================================================================

// phi(x, y) = beta0 + beta1*x + beta2*y + beta3*x*y
struct BilinearCoeffs {
    double beta0 = 0.0, beta1 = 0.0, beta2 = 0.0, beta3 = 0.0;
};

// phi(x, y, z) = beta0 + beta1*x + beta2*y + beta3*z
//             + beta4*x*y + beta5*y*z + beta6*x*z + beta7*x*y*z
struct TrilinearCoeffs {
    std::array<double, 8> beta{};
};

BilinearCoeffs bilinear_coeffs(const CellCorners2D& cell);
TrilinearCoeffs trilinear_coeffs(const CellCorners3D& cell);

double eval(const BilinearCoeffs& c, double x, double y);
double eval(const TrilinearCoeffs& c, double x, double y, double z);

// ============================================================================
//                            LOCAL FRAMES
// ============================================================================

struct Corner2 {
    int ix = 0, iy = 0;
    bool operator==(const Corner2&) const = default;
};
struct Corner3 {
    int ix = 0, iy = 0, iz = 0;
    bool operator==(const Corner3&) const = default;
};

// Origin selection: the corner with the most edge-adjacent neighbors of
// opposite sign; ties broken lexicographically by (ix, iy[, iz]), smallest
// first.  Throws NoInterface if no edge of the cell changes sign.
Corner2 select_origin(const CellCorners2D& cell);
Corner3 select_origin(const CellCorners3D& cell);

// Distances from the origin corner to the interface crossing on each of the
// edges leaving the origin; 1.0 for edges without a sign change.  Results are
// clamped to [1e-14, 1].  Throws DegenerateEdge when an edge restriction is
// identically zero.
struct EdgeLengths2 {
    double lx = 1.0, ly = 1.0;
    double axis(int a) const { return a == 0 ? lx : ly; }
};
struct EdgeLengths3 {
    double lx = 1.0, ly = 1.0, lz = 1.0;
    double axis(int a) const { return a == 0 ? lx : (a == 1 ? ly : lz); }
};

EdgeLengths2 edge_lengths_2d(const BilinearCoeffs& c, Corner2 origin);
EdgeLengths3 edge_lengths_3d(const TrilinearCoeffs& c, Corner3 origin);

// A per-cell coordinate frame.  Axes are a permutation of the cell axes
// (0 = x, 1 = y, 2 = z) ordered by descending intersection length; local
// coordinates measure the distance from the origin corner along each axis,
// so the origin is always at local (0, ..., 0) and the cell is [0,1]^d.
struct LocalFrame2 {
    Corner2 origin;
    int axis_eta = 0;   // cell axis playing the role of eta
    int axis_zeta = 1;  // cell axis playing the role of zeta
    double l_eta = 1.0, l_zeta = 1.0;
};
struct LocalFrame3 {
    Corner3 origin;
    int axis_xi = 0, axis_eta = 1, axis_zeta = 2;
    double l_xi = 1.0, l_eta = 1.0, l_zeta = 1.0;
};

// Interface graph in local coordinates: zeta(eta) = (-a*eta - b)/(c*eta + d).
struct RationalCoeffs2D {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
    double zeta(double eta) const { return (-a * eta - b) / (c * eta + d); }
    double denom(double eta) const { return c * eta + d; }
};

// Interface graph in local coordinates:
// zeta(xi, eta) = (-xi*(a*eta + b) - c*eta - d) / (xi*(e*eta + f) + g*eta + h).
struct RationalCoeffs3D {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
    double e = 0.0, f = 0.0, g = 0.0, h = 0.0;
    double zeta(double xi, double eta) const {
        return (-xi * (a * eta + b) - c * eta - d) /
               (xi * (e * eta + f) + g * eta + h);
    }
    double denom(double xi, double eta) const {
        return xi * (e * eta + f) + g * eta + h;
    }
};

// Relabel cell corners into a local frame: axes permuted so that local axis 0
// is `ax0`, etc., and each axis reflected so the origin lands at local zero.
CellCorners2D to_local(const CellCorners2D& cell, Corner2 origin, int ax_eta,
                       int ax_zeta);
CellCorners3D to_local(const CellCorners3D& cell, Corner3 origin, int ax_xi,
                       int ax_eta, int ax_zeta);

// Build the length-sorted local frame and the rational interface coefficients
// expressed in that frame.  Throws NoInterface / DegenerateEdge.
std::pair<LocalFrame2, RationalCoeffs2D> build_frame(const CellCorners2D& cell);
std::pair<LocalFrame3, RationalCoeffs3D> build_frame(const CellCorners3D& cell);

// Rational coefficients of a cell already expressed in local coordinates
// (origin at (0,...,0), axes in storage order).
RationalCoeffs2D rational_coeffs_local(const CellCorners2D& local_cell);
RationalCoeffs3D rational_coeffs_local(const CellCorners3D& local_cell);

}  // namespace cutvol
