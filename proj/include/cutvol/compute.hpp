#pragma once

// ==== COMPUTE ====
// Grid-level drivers: volume fractions for every cell of a sampled field,
// with a choice of method and an OpenMP-parallel kernel.  The parallel and
// serial drivers produce bitwise-identical fields for any thread count:
// each cell is independent and written to a preallocated slot.

#include <cstdint>

#include <cutvol/grid.hpp>
#include <cutvol/metrics.hpp>

namespace cutvol {

enum class Method {
    Analytic,  // closed-form fractions from the multilinear interpolant
    Linear,    // first-order baseline reconstruction
    Oracle,    // certified-bounds midpoint at a fixed subdivision depth
};

struct ComputeOptions {
    Method method = Method::Analytic;
    int threads = 0;       // 0 = OpenMP default
    int oracle_depth = 12;  // subdivision depth for Method::Oracle (2D);
                            // 3D uses oracle_depth capped at 10
    int max_depth = 6;     // fallback subdivision depth for analytic 3D cells
    bool strict = false;   // throw Unresolved instead of reporting uncertainty
};

struct ComputeResult {
    FractionField field;
    double max_uncertainty = 0.0;       // widest per-cell half-bracket seen
    std::uint64_t unresolved_count = 0;  // cells that hit the fallback floor
};

ComputeResult compute_fractions(const ScalarGrid& g,
                                const ComputeOptions& opt = {});
ComputeResult compute_fractions_serial(const ScalarGrid& g,
                                       const ComputeOptions& opt = {});

}  // namespace cutvol
