#include <cutvol/decompose.hpp>

#include <algorithm>
#include <cmath>

#include <cutvol/analytic3d.hpp>
#include <cutvol/oracle.hpp>

namespace cutvol {

namespace {

// Relative shift applied to corner values that are exactly zero.  It nudges
// the interface off the corner lattice, which removes a family of degenerate
// frames while moving the volume by no more than the shift itself.
constexpr double kZeroShift = 1e-14;
constexpr int kFallbackDepth = 8;  // certified bracket depth at the floor

CellCorners3D desingularized(const CellCorners3D& cell) {
    double mag = 0.0;
    for (int i = 0; i < 8; ++i) mag = std::max(mag, std::abs(cell[i]));
    if (mag == 0.0) mag = 1.0;
    CellCorners3D out = cell;
    for (int i = 0; i < 8; ++i)
        if (out[i] == 0.0) out[i] = kZeroShift * mag;
    return out;
}

int positive_count(const CellCorners3D& cell) {
    int n = 0;
    for (int i = 0; i < 8; ++i) n += sign_of(cell[i]) > 0;
    return n;
}

// Sign pattern of the local cell relative to its origin corner: bit i is set
// when local corner i matches the origin's sign.  The origin bit is always 1.
int same_sign_mask(const CellCorners3D& local) {
    int s0 = sign_of(local[0]);
    int mask = 0;
    for (int i = 0; i < 8; ++i)
        if (sign_of(local[i]) == s0) mask |= 1 << i;
    return mask;
}

CellClass class_of_mask(int mask) {
    switch (mask) {
        case 0x01: return CellClass::TypeI;    // origin only
        case 0x03: return CellClass::TypeII;   // origin + xi neighbor
        case 0x0f: return CellClass::TypeIII;  // floor face
        default: return CellClass::Composite;
    }
}

ElementaryType type_of(CellClass c) {
    return c == CellClass::TypeI
               ? ElementaryType::TypeI
               : (c == CellClass::TypeII ? ElementaryType::TypeII
                                         : ElementaryType::TypeIII);
}

// Exact multilinear restriction onto one half of the cell along `axis`;
// `side` picks the half.  New corner values are edge midpoints, which the
// interpolant attains as plain averages.
CellCorners3D half_cell(const CellCorners3D& cell, int axis, int side) {
    CellCorners3D out;
    for (int iz = 0; iz < 2; ++iz)
        for (int iy = 0; iy < 2; ++iy)
            for (int ix = 0; ix < 2; ++ix) {
                int idx[3] = {ix, iy, iz};
                double v;
                if (idx[axis] == 1 - side) {
                    // midpoint of the edge along `axis`
                    int lo[3] = {ix, iy, iz}, hi[3] = {ix, iy, iz};
                    lo[axis] = 0;
                    hi[axis] = 1;
                    v = 0.5 * (cell.at(lo[0], lo[1], lo[2]) +
                               cell.at(hi[0], hi[1], hi[2]));
                } else {
                    v = cell.at(ix, iy, iz);
                }
                out.set(ix, iy, iz, v);
            }
    return out;
}

Resolved3 resolve_rec(const CellCorners3D& raw, int depth, int max_depth) {
    CellCorners3D cell = desingularized(raw);
    int npos = positive_count(cell);
    if (npos == 8) return {1.0, 0.0};
    if (npos == 0) return {0.0, 0.0};

    try {
        auto [frame, rc] = build_frame(cell);
        CellCorners3D local = to_local(cell, frame.origin, frame.axis_xi,
                                       frame.axis_eta, frame.axis_zeta);
        CellClass cls = class_of_mask(same_sign_mask(local));
        if (cls != CellClass::Composite) {
            double v = elementary_volume_3d(rc, type_of(cls));
            if (std::isfinite(v)) {
                double alpha = sign_of(local[0]) > 0 ? v : 1.0 - v;
                return {std::clamp(alpha, 0.0, 1.0), 0.0};
            }
        }
    } catch (const Error&) {
        // fall through to bisection
    }

    if (depth >= max_depth) {
        CertifiedBounds b = certified_bounds_fast(cell, kFallbackDepth);
        return {0.5 * (b.lo + b.hi), 0.5 * b.width()};
    }

    int axis = depth % 3;
    Resolved3 a = resolve_rec(half_cell(cell, axis, 0), depth + 1, max_depth);
    Resolved3 b = resolve_rec(half_cell(cell, axis, 1), depth + 1, max_depth);
    return {0.5 * (a.alpha + b.alpha), 0.5 * (a.uncertainty + b.uncertainty)};
}

}  // namespace

CellClass classify_cell(const CellCorners3D& cell) {
    CellCorners3D c = desingularized(cell);
    int npos = positive_count(c);
    if (npos == 8) return CellClass::Full;
    if (npos == 0) return CellClass::Empty;
    try {
        auto [frame, rc] = build_frame(c);
        (void)rc;
        CellCorners3D local = to_local(c, frame.origin, frame.axis_xi,
                                       frame.axis_eta, frame.axis_zeta);
        return class_of_mask(same_sign_mask(local));
    } catch (const Error&) {
        return CellClass::Composite;
    }
}

Resolved3 resolve_cell(const CellCorners3D& cell, int max_depth) {
    return resolve_rec(cell, 0, max_depth);
}

double cell_volume_3d(const CellCorners3D& cell, int max_depth) {
    return resolve_cell(cell, max_depth).alpha;
}

}  // namespace cutvol
