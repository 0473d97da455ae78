#pragma once

// ==== ORACLE ====
// Certified volume-fraction bounds by corner-sign subdivision, plus the
// first-order (piecewise-linear) baseline reconstruction.
//
// A multilinear interpolant attains its extrema over any axis-aligned box at
// the box corners, so uniform corner signs certify the whole box.  Recursive
// bisection therefore yields rigorous lower/upper bounds on the fraction of
// the cell where the interpolant is nonnegative, with the gap controlled by
// the number of undecided boxes at the depth floor.

#include <cstdint>

#include <cutvol/types.hpp>

namespace cutvol {

struct CertifiedBounds {
    double lo = 0.0;              // certified lower bound on the fraction
    double hi = 1.0;              // certified upper bound
    std::uint64_t lo_units = 0;   // floor boxes certified inside
    std::uint64_t mixed_units = 0;  // floor boxes left undecided
    int depth = 0;                // subdivision depth used

    double width() const { return hi - lo; }
};

// Reference implementation: plain recursive bisection to `depth` levels.
// Boxes whose corner values clear a rounding-error margin are pruned early;
// the result is identical to classifying every depth-floor box by its corner
// signs.  Depth is limited to 30 (2D) / 20 (3D) so box counts fit in 64 bits;
// out-of-range depths throw SpecOutOfDomain.
CertifiedBounds certified_bounds(const CellCorners2D& cell, int depth);
CertifiedBounds certified_bounds(const CellCorners3D& cell, int depth);

// Column-sweep implementation.  Exploits that the interpolant is linear along
// each grid line, so every line has at most one sign change; only a narrow
// band of boxes around the crossing needs individual attention.  The bracket
// is certified and always contains the reference bracket: a few extra boxes
// near the interface may be counted as undecided, never the other way.
CertifiedBounds certified_bounds_fast(const CellCorners2D& cell, int depth);
CertifiedBounds certified_bounds_fast(const CellCorners3D& cell, int depth);

// First-order baseline: for each axis, linear interpolation along the two
// cell faces normal to it gives a covered fraction per face; the smaller of
// the two is extended as a constant slab across the cell and the best axis is
// kept.  The in-cell variation of the interface is deliberately ignored,
// which leaves a one-sided O(h) bias in the total volume.
double linear_baseline(const CellCorners2D& cell);

// First-order baseline in 3D: same slab rule, with each face of the pair
// scored by the 2D rule.
double linear_baseline(const CellCorners3D& cell);

}  // namespace cutvol
