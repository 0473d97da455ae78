#include <cutvol/compute.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <cutvol/analytic2d.hpp>
#include <cutvol/decompose.hpp>
#include <cutvol/oracle.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cutvol {

namespace {

struct CellResult {
    double alpha = 0.0;
    double uncertainty = 0.0;
};

CellResult oracle_cell2(const CellCorners2D& cell, int depth) {
    CertifiedBounds b = certified_bounds_fast(cell, depth);
    return {0.5 * (b.lo + b.hi), 0.5 * b.width()};
}

CellResult oracle_cell3(const CellCorners3D& cell, int depth) {
    CertifiedBounds b = certified_bounds_fast(cell, depth);
    return {0.5 * (b.lo + b.hi), 0.5 * b.width()};
}

// One cell, by flat index.  Any analysis error degrades to the certified
// bracket rather than escaping: the parallel loop must not throw.
CellResult one_cell(const ScalarGrid& g, const ComputeOptions& opt,
                    std::size_t idx) {
    std::size_t cx = g.cells_x(), cy = g.cells_y();
    std::size_t i = idx % cx;
    std::size_t j = (idx / cx) % cy;
    std::size_t k = idx / (cx * cy);
    int depth2 = opt.oracle_depth;
    int depth3 = std::min(opt.oracle_depth, 10);
    if (g.dim == 2) {
        CellCorners2D cell = g.cell2(i, j);
        try {
            switch (opt.method) {
                case Method::Analytic: return {cell_area_2d(cell), 0.0};
                case Method::Linear: return {linear_baseline(cell), 0.0};
                case Method::Oracle: return oracle_cell2(cell, depth2);
            }
        } catch (const Error&) {
            return oracle_cell2(cell, depth2);
        }
    } else {
        CellCorners3D cell = g.cell3(i, j, k);
        try {
            switch (opt.method) {
                case Method::Analytic: {
                    Resolved3 r = resolve_cell(cell, opt.max_depth);
                    return {r.alpha, r.uncertainty};
                }
                case Method::Linear: return {linear_baseline(cell), 0.0};
                case Method::Oracle: return oracle_cell3(cell, depth3);
            }
        } catch (const Error&) {
            return oracle_cell3(cell, depth3);
        }
    }
    return {};
}

ComputeResult run(const ScalarGrid& g, const ComputeOptions& opt,
                  bool parallel) {
    if (g.dim != 2 && g.dim != 3)
        throw DimensionMismatch("grid dimension must be 2 or 3");
    if (g.nx < 2 || g.ny < 2 || (g.dim == 3 && g.nz < 2))
        throw DimensionMismatch("grid needs at least two nodes per axis");
    if (g.values.size() != g.node_count())
        throw DimensionMismatch("grid value count does not match extents");

    ComputeResult res;
    res.field.dim = g.dim;
    res.field.cx = g.cells_x();
    res.field.cy = g.cells_y();
    res.field.cz = g.dim == 3 ? g.cells_z() : 1;
    std::size_t n = res.field.cell_count();
    res.field.alpha.assign(n, 0.0);
    std::vector<double> unc(n, 0.0);

    auto body = [&](std::size_t idx) {
        CellResult r = one_cell(g, opt, idx);
        res.field.alpha[idx] = r.alpha;
        unc[idx] = r.uncertainty;
    };

#ifdef _OPENMP
    if (parallel) {
        int nt = opt.threads > 0 ? opt.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(nt)
        for (std::int64_t idx = 0; idx < std::int64_t(n); ++idx)
            body(std::size_t(idx));
    } else {
        for (std::size_t idx = 0; idx < n; ++idx) body(idx);
    }
#else
    (void)parallel;
    for (std::size_t idx = 0; idx < n; ++idx) body(idx);
#endif

    for (std::size_t idx = 0; idx < n; ++idx) {
        if (unc[idx] > 0.0) {
            ++res.unresolved_count;
            res.max_uncertainty = std::max(res.max_uncertainty, unc[idx]);
        }
    }
    if (opt.strict && res.unresolved_count > 0)
        throw Unresolved(std::to_string(res.unresolved_count) +
                         " cells unresolved (max uncertainty " +
                         std::to_string(res.max_uncertainty) + ")");
    return res;
}

}  // namespace

ComputeResult compute_fractions(const ScalarGrid& g, const ComputeOptions& opt) {
    return run(g, opt, true);
}

ComputeResult compute_fractions_serial(const ScalarGrid& g,
                                       const ComputeOptions& opt) {
    return run(g, opt, false);
}

}  // namespace cutvol
