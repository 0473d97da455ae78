#pragma once

// ==== ANALYTIC 3D ====
// Exact per-piece volume integrals for cells cut by a trilinear interpolant.
// In the cell-local frame the zero set is the graph
//
//     zeta(xi, eta) = -(xi (a eta + b) + c eta + d)
//                   / (xi (e eta + f) + g eta + h)
//
// and the volume below it over an elementary footprint reduces to one
// integral in xi whose integrand is the column integral of a Moebius
// function in eta.  The closed-form antiderivative mixes rational terms,
// logarithms and dilogarithms; degenerate coefficient patterns drop to
// simpler ladders (polynomial / pure-log forms) chosen by relative
// thresholds.

#include <cutvol/interp.hpp>
#include <cutvol/types.hpp>

namespace cutvol {

// Footprint of one integration piece over the local floor.
enum class PieceKind {
    WallToCurve,  // eta runs from the wall eta = 0 to the floor curve
    FullWidth,    // eta runs across the whole cell, 0 to 1
};

// Elementary interface topologies certified by corner signs alone.
enum class ElementaryType {
    TypeI,    // origin corner cut off; xi range [0, -d/b]
    TypeII,   // edge along xi kept; xi range [0, 1], wall to curve
    TypeIII,  // floor face kept; xi range [0, 1], full width
};

// Precomputed coefficient combinations shared by all antiderivative terms.
struct Aux3 {
    double a, b, c, d, e, f, g, h;
    double t0, t1, t2, t3, t4, t5, t6;
};

Aux3 make_aux(const RationalCoeffs3D& rc);

// Column integral q(xi): the area under the interface inside the slice at
// fixed xi.  Robust for any coefficients (used directly by the quadrature
// fallback near the denominator root and by verification tests).
double column_integral(const Aux3& aux, double xi, PieceKind kind);

// Exact integral of the column integral over [x0, x1].  Piece assumptions
// (no interior roots of the logarithm arguments) are checked; violations
// throw PoleInRange / DegenerateDenominator and the caller is expected to
// subdivide the cell instead.
double integrate_piece(const Aux3& aux, double x0, double x1, PieceKind kind);

// Volume of the region on the origin side of the interface for the three
// elementary local sign patterns.
double elementary_volume_3d(const RationalCoeffs3D& rc, ElementaryType type);

}  // namespace cutvol
