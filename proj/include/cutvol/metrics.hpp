#pragma once

// ==== METRICS ====
// Per-cell volume-fraction fields, aggregation of fine levels onto a coarse
// base, the relative error norms used by the consistency studies, and the
// least-squares convergence-order fit.

#include <cstddef>
#include <vector>

#include <cutvol/types.hpp>

namespace cutvol {

struct FractionField {
    int dim = 2;
    std::size_t cx = 0, cy = 0, cz = 1;  // cell counts per axis (cz = 1 in 2D)
    std::vector<double> alpha;           // row-major, x fastest

    std::size_t cell_count() const { return cx * cy * cz; }
    std::size_t index(std::size_t i, std::size_t j, std::size_t k = 0) const {
        return (k * cy + j) * cx + i;
    }
    double at(std::size_t i, std::size_t j, std::size_t k = 0) const {
        return alpha[index(i, j, k)];
    }
    double& at(std::size_t i, std::size_t j, std::size_t k = 0) {
        return alpha[index(i, j, k)];
    }
};

// Total material volume: sum of fractions times the cell volume h^dim.
double total_volume(const FractionField& f, double h);

// Averages factor^dim fine cells onto each coarse cell.  Fine extents must
// be exactly factor times the coarse extents implied by the result; a
// non-divisible field throws NotDivisible.
FractionField aggregate_fine_to_coarse(const FractionField& fine,
                                       std::size_t factor);

struct ErrorNorms {
    double l1 = 0.0, l2 = 0.0, linf = 0.0;
};

// Relative norms of (test - base) over matching cells:
//   L1   = sum |diff| / sum test
//   L2   = sqrt( sum diff^2 / sum test )
//   Linf = max |diff|
// Shapes must match (ShapeMismatch) and sum test must be nonzero
// (DivideByZero).
ErrorNorms error_norms(const FractionField& base, const FractionField& test);

// Least-squares slope of log(err) against log(h).  Needs at least two
// samples with positive h and err and at least two distinct h values;
// otherwise throws DegenerateFit.
double fitted_order(const std::vector<double>& h,
                    const std::vector<double>& err);

}  // namespace cutvol
