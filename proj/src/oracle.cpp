#include <cutvol/oracle.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include <cutvol/interp.hpp>

namespace cutvol {

namespace {

constexpr double kEps = 2.220446049250313e-16;  // 2^-52

// ==== RECURSIVE REFERENCE ====
//
// Floor boxes are classified by the computed signs of their corner values.
// Interior boxes whose corner values clear a safety margin are counted
// without descending: the margin absorbs the evaluation rounding error, so
// every floor descendant of a pruned box is guaranteed to classify the same
// way the pruned ancestor did.

struct Rec2 {
    BilinearCoeffs c;
    int depth;
    double pos_margin, neg_margin;
    std::uint64_t lo = 0, mixed = 0;

    double corner(std::int64_t i, std::int64_t j, int level) const {
        return eval(c, std::ldexp(double(i), -level),
                    std::ldexp(double(j), -level));
    }

    void box(int level, std::int64_t i, std::int64_t j) {
        const double v00 = corner(i, j, level);
        const double v10 = corner(i + 1, j, level);
        const double v01 = corner(i, j + 1, level);
        const double v11 = corner(i + 1, j + 1, level);
        const double vmin = std::min({v00, v10, v01, v11});
        const double vmax = std::max({v00, v10, v01, v11});
        if (vmin >= pos_margin) {
            lo += std::uint64_t(1) << (2 * (depth - level));
            return;
        }
        if (vmax <= neg_margin) return;
        if (level == depth) {
            const int smin = sign_of(vmin), smax = sign_of(vmax);
            if (smin > 0)
                ++lo;
            else if (smax > 0)
                ++mixed;
            return;
        }
        box(level + 1, 2 * i, 2 * j);
        box(level + 1, 2 * i + 1, 2 * j);
        box(level + 1, 2 * i, 2 * j + 1);
        box(level + 1, 2 * i + 1, 2 * j + 1);
    }
};

struct Rec3 {
    TrilinearCoeffs c;
    int depth;
    double pos_margin, neg_margin;
    std::uint64_t lo = 0, mixed = 0;

    void box(int level, std::int64_t i, std::int64_t j, std::int64_t k) {
        double vmin = 1e300, vmax = -1e300;
        for (int dz = 0; dz <= 1; ++dz) {
            for (int dy = 0; dy <= 1; ++dy) {
                for (int dx = 0; dx <= 1; ++dx) {
                    const double v = eval(
                        c, std::ldexp(double(i + dx), -level),
                        std::ldexp(double(j + dy), -level),
                        std::ldexp(double(k + dz), -level));
                    vmin = std::min(vmin, v);
                    vmax = std::max(vmax, v);
                }
            }
        }
        if (vmin >= pos_margin) {
            lo += std::uint64_t(1) << (3 * (depth - level));
            return;
        }
        if (vmax <= neg_margin) return;
        if (level == depth) {
            if (sign_of(vmin) > 0)
                ++lo;
            else if (sign_of(vmax) > 0)
                ++mixed;
            return;
        }
        for (int dz = 0; dz <= 1; ++dz)
            for (int dy = 0; dy <= 1; ++dy)
                for (int dx = 0; dx <= 1; ++dx)
                    box(level + 1, 2 * i + dx, 2 * j + dy, 2 * k + dz);
    }
};

// ==== COLUMN SWEEP ====
//
// Along any grid line the interpolant is linear, so the sign flips at most
// once.  Outside a narrow band around the flip the sign is provably the
// exact sign; only band rows are left undecided.  A band is represented as
// an inclusive index range; "empty past the end" (jlo = N, jhi = N-1) means
// every row counts as below the band, and "empty before the start"
// (jlo = 0, jhi = -1) means every row counts as above.

struct LineDesc {
    std::int64_t jlo = 0, jhi = -1;
    int s_below = 0, s_above = 0;

    bool banded() const { return jlo <= jhi; }
    int empty_sign() const { return jlo == 0 ? s_above : s_below; }
};

// Descriptor for the line v(t) = A + B t sampled at t = j/N.  Rows with
// |v| possibly below the threshold T land in the band.
LineDesc make_line(double A, double B, std::int64_t N, double T) {
    LineDesc d;
    const double v0 = A, v1 = A + B;
    const int s0 = sign_of(v0), s1 = sign_of(v1);
    if (s0 == s1 && std::abs(v0) > T && std::abs(v1) > T) {
        d.jlo = N;
        d.jhi = N - 1;
        d.s_below = d.s_above = s0;
        return d;
    }
    if (B == 0.0) {
        d.jlo = 0;
        d.jhi = N - 1;
        d.s_below = d.s_above = s0;
        return d;
    }
    const double r = -A / B;
    const double w = (T + 2.0 * kEps * std::abs(A)) / std::abs(B);
    const int sa = B > 0.0 ? 1 : -1;
    d.s_below = -sa;
    d.s_above = sa;
    if (!std::isfinite(r) || !std::isfinite(w)) {
        d.jlo = 0;
        d.jhi = N - 1;
        return d;
    }
    const double flo = std::floor((r - w) * double(N)) - 1.0;
    const double fhi = std::floor((r + w) * double(N)) + 1.0;
    if (fhi < 0.0) {  // band below the cell: every row is above
        d.jlo = 0;
        d.jhi = -1;
        return d;
    }
    if (flo > double(N - 1)) {  // band above the cell: every row is below
        d.jlo = N;
        d.jhi = N - 1;
        return d;
    }
    d.jlo = flo < 0.0 ? 0 : std::int64_t(flo);
    d.jhi = fhi > double(N - 1) ? N - 1 : std::int64_t(fhi);
    return d;
}

// Accumulates one column of N boxes bounded by `nlines` grid lines.
template <int nlines>
void count_column(const LineDesc* const* line, std::int64_t N,
                  std::uint64_t& lo, std::uint64_t& mixed) {
    std::int64_t blo = N, bhi = -1;
    for (int l = 0; l < nlines; ++l) {
        if (line[l]->banded()) {
            blo = std::min(blo, line[l]->jlo);
            bhi = std::max(bhi, line[l]->jhi);
        }
    }
    if (bhi < blo) {  // no band: the whole column is sign-uniform per line
        int npos = 0, nneg = 0;
        for (int l = 0; l < nlines; ++l)
            (line[l]->empty_sign() > 0 ? npos : nneg) = 1;
        if (nneg == 0)
            lo += std::uint64_t(N);
        else if (npos != 0)
            mixed += std::uint64_t(N);
        return;
    }
    const std::int64_t below = blo;
    const std::int64_t above = N - 1 - bhi;
    if (below > 0) {
        int npos = 0, nneg = 0;
        for (int l = 0; l < nlines; ++l) {
            const int s = line[l]->banded() ? line[l]->s_below
                                            : line[l]->empty_sign();
            (s > 0 ? npos : nneg) = 1;
        }
        if (nneg == 0)
            lo += std::uint64_t(below);
        else if (npos != 0)
            mixed += std::uint64_t(below);
    }
    mixed += std::uint64_t(bhi - blo + 1);
    if (above > 0) {
        int npos = 0, nneg = 0;
        for (int l = 0; l < nlines; ++l) {
            const int s = line[l]->banded() ? line[l]->s_above
                                            : line[l]->empty_sign();
            (s > 0 ? npos : nneg) = 1;
        }
        if (nneg == 0)
            lo += std::uint64_t(above);
        else if (npos != 0)
            mixed += std::uint64_t(above);
    }
}

void check_depth(int depth, int max_depth) {
    if (depth < 0 || depth > max_depth)
        throw SpecOutOfDomain("subdivision depth out of range");
}

CertifiedBounds assemble(std::uint64_t lo, std::uint64_t mixed, int depth,
                         int dim) {
    CertifiedBounds b;
    b.lo_units = lo;
    b.mixed_units = mixed;
    b.depth = depth;
    const double unit = std::ldexp(1.0, -dim * depth);
    b.lo = double(lo) * unit;
    b.hi = double(lo + mixed) * unit;
    return b;
}

}  // namespace

CertifiedBounds certified_bounds(const CellCorners2D& cell, int depth) {
    check_depth(depth, 30);
    Rec2 rec;
    rec.c = bilinear_coeffs(cell);
    rec.depth = depth;
    const double M = std::abs(rec.c.beta0) + std::abs(rec.c.beta1) +
                     std::abs(rec.c.beta2) + std::abs(rec.c.beta3);
    rec.pos_margin = 16.0 * kEps * M;
    rec.neg_margin = -24.0 * kEps * M;
    rec.box(0, 0, 0);
    return assemble(rec.lo, rec.mixed, depth, 2);
}

CertifiedBounds certified_bounds(const CellCorners3D& cell, int depth) {
    check_depth(depth, 20);
    Rec3 rec;
    rec.c = trilinear_coeffs(cell);
    rec.depth = depth;
    double M = 0.0;
    for (double b : rec.c.beta) M += std::abs(b);
    rec.pos_margin = 16.0 * kEps * M;
    rec.neg_margin = -24.0 * kEps * M;
    rec.box(0, 0, 0, 0);
    return assemble(rec.lo, rec.mixed, depth, 3);
}

CertifiedBounds certified_bounds_fast(const CellCorners2D& cell, int depth) {
    check_depth(depth, 30);
    const BilinearCoeffs c = bilinear_coeffs(cell);
    const double M = std::abs(c.beta0) + std::abs(c.beta1) +
                     std::abs(c.beta2) + std::abs(c.beta3);
    const std::int64_t N = std::int64_t(1) << depth;
    if (M == 0.0) {  // identically zero: counts as inside everywhere
        return assemble(std::uint64_t(N) * std::uint64_t(N), 0, depth, 2);
    }
    const double T = 64.0 * kEps * M;
    std::uint64_t lo = 0, mixed = 0;
    LineDesc left = make_line(c.beta0, c.beta2, N, T);
    for (std::int64_t i = 0; i < N; ++i) {
        const double x = std::ldexp(double(i + 1), -depth);
        const LineDesc right =
            make_line(c.beta0 + c.beta1 * x, c.beta2 + c.beta3 * x, N, T);
        const LineDesc* lines[2] = {&left, &right};
        count_column<2>(lines, N, lo, mixed);
        left = right;
    }
    return assemble(lo, mixed, depth, 2);
}

CertifiedBounds certified_bounds_fast(const CellCorners3D& cell, int depth) {
    check_depth(depth, 20);
    const TrilinearCoeffs c = trilinear_coeffs(cell);
    double M = 0.0;
    for (double b : c.beta) M += std::abs(b);
    const std::int64_t N = std::int64_t(1) << depth;
    if (M == 0.0) {
        const std::uint64_t n = std::uint64_t(N);
        return assemble(n * n * n, 0, depth, 3);
    }
    const double T = 64.0 * kEps * M;
    std::uint64_t lo = 0, mixed = 0;

    // Lines run along z through every (x, y) grid node; descriptors are
    // built one x-plane at a time.
    std::vector<LineDesc> cur(std::size_t(N) + 1), nxt(std::size_t(N) + 1);
    auto fill_plane = [&](std::vector<LineDesc>& row, std::int64_t ix) {
        const double x = std::ldexp(double(ix), -depth);
        const double P = c.beta[0] + c.beta[1] * x;  // value part at z=0
        const double Q = c.beta[2] + c.beta[4] * x;
        const double R = c.beta[3] + c.beta[6] * x;  // z-slope part
        const double S = c.beta[5] + c.beta[7] * x;
        for (std::int64_t j = 0; j <= N; ++j) {
            const double y = std::ldexp(double(j), -depth);
            row[std::size_t(j)] = make_line(P + Q * y, R + S * y, N, T);
        }
    };
    fill_plane(cur, 0);
    for (std::int64_t i = 0; i < N; ++i) {
        fill_plane(nxt, i + 1);
        for (std::int64_t j = 0; j < N; ++j) {
            const LineDesc* lines[4] = {&cur[std::size_t(j)],
                                        &cur[std::size_t(j) + 1],
                                        &nxt[std::size_t(j)],
                                        &nxt[std::size_t(j) + 1]};
            count_column<4>(lines, N, lo, mixed);
        }
        std::swap(cur, nxt);
    }
    return assemble(lo, mixed, depth, 3);
}

// ==== LINEAR BASELINE ====

namespace {

// Length fraction of a unit segment on which the linear interpolant of the
// two endpoint values is non-negative.
double segment_fraction(double u, double v) {
    const int su = sign_of(u);
    const int sv = sign_of(v);
    if (su > 0 && sv > 0) return 1.0;
    if (su < 0 && sv < 0) return 0.0;
    const double t = u / (u - v);
    return su > 0 ? t : 1.0 - t;
}

}  // namespace

double linear_baseline(const CellCorners2D& cell) {
    // Slab reconstruction: for each axis, linear interpolation along the two
    // faces normal to it gives a covered fraction per face, and the smaller
    // one is extended as a constant-width slab across the cell; the best axis
    // is kept.  Ignoring how the interface varies inside the cell leaves a
    // one-sided O(h) bias in the total volume, so the method is first-order.
    const double fx = std::min(segment_fraction(cell.phi00, cell.phi01),
                               segment_fraction(cell.phi10, cell.phi11));
    const double fy = std::min(segment_fraction(cell.phi00, cell.phi10),
                               segment_fraction(cell.phi01, cell.phi11));
    return std::max(fx, fy);
}

double linear_baseline(const CellCorners3D& cell) {
    // Same slab reconstruction as in 2D; each face of the pair normal to the
    // candidate axis is scored by the 2D rule.
    double best = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
        const int u = axis == 0 ? 1 : 0;
        const int v = axis == 2 ? 1 : 2;
        double side_frac[2];
        for (int side = 0; side < 2; ++side) {
            CellCorners2D face;
            int idx[3];
            idx[axis] = side;
            for (int j = 0; j < 2; ++j) {
                for (int i = 0; i < 2; ++i) {
                    idx[u] = i;
                    idx[v] = j;
                    face.set(i, j, cell.at(idx[0], idx[1], idx[2]));
                }
            }
            side_frac[side] = linear_baseline(face);
        }
        best = std::max(best, std::min(side_frac[0], side_frac[1]));
    }
    return best;
}

}  // namespace cutvol
