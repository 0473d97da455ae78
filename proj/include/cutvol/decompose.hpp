#pragma once

// ==== DECOMPOSE ====
// Volume fractions for whole 3D cells.  After moving to the length-sorted
// local frame, the corner sign pattern decides whether the cut region is one
// of three elementary configurations whose volume is a single closed-form
// integral of the interface graph:
//
//   TypeI    only the origin corner keeps its sign; the floor curve leaves
//            through the near edges and the graph integral runs to the edge
//            crossing on the xi axis.
//   TypeII   the origin and its xi neighbor keep the sign; the floor curve
//            spans the full xi range.
//   TypeIII  the whole floor face keeps the sign; the graph covers the face.
//
// For these patterns the multilinear extrema-at-corners property certifies
// that the graph stays inside the cell over its footprint and that columns
// outside the footprint are entirely on one side, so the integral needs no
// clamping.  Every other pattern is Composite and is resolved by bisecting
// the cell (exact multilinear restriction onto each half) until elementary
// pieces appear; cells still composite at the depth floor fall back to a
// certified subdivision bracket whose half-width is reported as uncertainty.

#include <cutvol/interp.hpp>
#include <cutvol/types.hpp>

namespace cutvol {

enum class CellClass {
    Empty,      // no corner is nonnegative
    Full,       // every corner is nonnegative
    TypeI,      // single corner
    TypeII,     // one edge of the floor face
    TypeIII,    // the whole floor face
    Composite,  // anything else, including degenerate frames
};

// Classification of a cell by the corner signs in its local frame.  Pure
// inspection: never throws, degenerate configurations report Composite.
CellClass classify_cell(const CellCorners3D& cell);

struct Resolved3 {
    double alpha = 0.0;        // fraction of the cell with phi >= 0
    double uncertainty = 0.0;  // certified half-bracket; 0 for exact results
};

// Volume fraction of { phi >= 0 } for the trilinear interpolant of the given
// corner values.  max_depth bounds the bisection recursion for composite
// cells; beyond it the certified fallback provides a bracket instead of an
// exact value.
Resolved3 resolve_cell(const CellCorners3D& cell, int max_depth = 6);

// Shorthand for resolve_cell(...).alpha.
double cell_volume_3d(const CellCorners3D& cell, int max_depth = 6);

}  // namespace cutvol
