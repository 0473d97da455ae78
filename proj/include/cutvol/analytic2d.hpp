#pragma once

// ==== ANALYTIC 2D ====
// Exact area fractions for cells cut by a bilinear interpolant.  The zero set
// of the interpolant, written in the cell-local frame, is the graph
//
//     zeta(eta) = -(a*eta + b) / (c*eta + d)
//
// and the area on one side is an elementary antiderivative of that rational
// function.  cell_area_2d handles origin selection, the saddle split and the
// inside/outside bookkeeping on top of the raw integral.

#include <cutvol/interp.hpp>
#include <cutvol/types.hpp>

namespace cutvol {

// Integral of the interface graph over [eta0, eta1], folded with the side
// selector:  i_zeta = 0 integrates zeta itself (area below the curve), and
// i_zeta = 1 integrates 1 - zeta (area above).  Throws PoleInRange when the
// denominator vanishes strictly inside the integration interval.
double integrate_rational_2d(const RationalCoeffs2D& rc, double eta0,
                             double eta1, int i_zeta);

// Area fraction of the region { phi >= 0 } in the unit reference cell.
double cell_area_2d(const CellCorners2D& cell);

}  // namespace cutvol
