#include <cutvol/interp.hpp>

#include <algorithm>
#include <cmath>

namespace cutvol {

namespace {

constexpr double kLengthFloor = 1e-14;

// Root of the linear restriction v0 + t*(v1 - v0) on [0, 1]; requires a sign
// change between the endpoint values.  Returns the distance from endpoint 0.
double edge_root(double v0, double v1) {
    double t = v0 / (v0 - v1);
    return std::clamp(t, kLengthFloor, 1.0);
}

// Distance from the origin corner to the sign change along one cell edge.
// `v0` is the value at the origin, `v1` at the neighbor along the edge.
double edge_length(double v0, double v1) {
    if (v0 == 0.0 && v1 == 0.0)
        throw DegenerateEdge("edge restriction is identically zero");
    if (sign_of(v0) == sign_of(v1)) return 1.0;
    return edge_root(v0, v1);
}

}  // namespace

// ============================================================================
//                              COEFFICIENTS
// ============================================================================

BilinearCoeffs bilinear_coeffs(const CellCorners2D& cell) {
    BilinearCoeffs c;
    c.beta0 = cell.phi00;
    c.beta1 = cell.phi10 - cell.phi00;
    c.beta2 = cell.phi01 - cell.phi00;
    c.beta3 = cell.phi00 + cell.phi11 - cell.phi01 - cell.phi10;
    return c;
}

TrilinearCoeffs trilinear_coeffs(const CellCorners3D& cell) {
    const double p000 = cell.at(0, 0, 0), p100 = cell.at(1, 0, 0);
    const double p010 = cell.at(0, 1, 0), p110 = cell.at(1, 1, 0);
    const double p001 = cell.at(0, 0, 1), p101 = cell.at(1, 0, 1);
    const double p011 = cell.at(0, 1, 1), p111 = cell.at(1, 1, 1);
    TrilinearCoeffs c;
    c.beta[0] = p000;
    c.beta[1] = p100 - p000;
    c.beta[2] = p010 - p000;
    c.beta[3] = p001 - p000;
    c.beta[4] = p110 - p100 - p010 + p000;
    c.beta[5] = p011 - p010 - p001 + p000;
    c.beta[6] = p101 - p100 - p001 + p000;
    c.beta[7] = p111 - p110 - p101 + p100 - p011 + p010 + p001 - p000;
    return c;
}

double eval(const BilinearCoeffs& c, double x, double y) {
    return c.beta0 + c.beta1 * x + c.beta2 * y + c.beta3 * x * y;
}

double eval(const TrilinearCoeffs& c, double x, double y, double z) {
    return c.beta[0] + c.beta[1] * x + c.beta[2] * y + c.beta[3] * z +
           c.beta[4] * x * y + c.beta[5] * y * z + c.beta[6] * x * z +
           c.beta[7] * x * y * z;
}

// ============================================================================
//                            ORIGIN SELECTION
// ============================================================================

Corner2 select_origin(const CellCorners2D& cell) {
    // Scan corners in lexicographic (ix, iy) order; strict improvement keeps
    // the lexicographically first corner on ties.
    int best = -1;
    Corner2 best_corner;
    for (int ix = 0; ix <= 1; ++ix) {
        for (int iy = 0; iy <= 1; ++iy) {
            const int s = sign_of(cell.at(ix, iy));
            int count = 0;
            if (sign_of(cell.at(1 - ix, iy)) != s) ++count;
            if (sign_of(cell.at(ix, 1 - iy)) != s) ++count;
            if (count > best) {
                best = count;
                best_corner = {ix, iy};
            }
        }
    }
    if (best == 0) throw NoInterface("no edge of the cell changes sign");
    return best_corner;
}

Corner3 select_origin(const CellCorners3D& cell) {
    int best = -1;
    Corner3 best_corner;
    for (int ix = 0; ix <= 1; ++ix) {
        for (int iy = 0; iy <= 1; ++iy) {
            for (int iz = 0; iz <= 1; ++iz) {
                const int s = sign_of(cell.at(ix, iy, iz));
                int count = 0;
                if (sign_of(cell.at(1 - ix, iy, iz)) != s) ++count;
                if (sign_of(cell.at(ix, 1 - iy, iz)) != s) ++count;
                if (sign_of(cell.at(ix, iy, 1 - iz)) != s) ++count;
                if (count > best) {
                    best = count;
                    best_corner = {ix, iy, iz};
                }
            }
        }
    }
    if (best == 0) throw NoInterface("no edge of the cell changes sign");
    return best_corner;
}

// ============================================================================
//                             EDGE LENGTHS
// ============================================================================

EdgeLengths2 edge_lengths_2d(const BilinearCoeffs& c, Corner2 o) {
    EdgeLengths2 l;
    const double v = eval(c, o.ix, o.iy);
    l.lx = edge_length(v, eval(c, 1 - o.ix, o.iy));
    l.ly = edge_length(v, eval(c, o.ix, 1 - o.iy));
    return l;
}

EdgeLengths3 edge_lengths_3d(const TrilinearCoeffs& c, Corner3 o) {
    EdgeLengths3 l;
    const double v = eval(c, o.ix, o.iy, o.iz);
    l.lx = edge_length(v, eval(c, 1 - o.ix, o.iy, o.iz));
    l.ly = edge_length(v, eval(c, o.ix, 1 - o.iy, o.iz));
    l.lz = edge_length(v, eval(c, o.ix, o.iy, 1 - o.iz));
    return l;
}

// ============================================================================
//                         LOCAL FRAME CONSTRUCTION
// ============================================================================

CellCorners2D to_local(const CellCorners2D& cell, Corner2 origin, int ax_eta,
                       int ax_zeta) {
    CellCorners2D out;
    const int o[2] = {origin.ix, origin.iy};
    for (int ie = 0; ie <= 1; ++ie) {
        for (int iz = 0; iz <= 1; ++iz) {
            int idx[2];
            idx[ax_eta] = o[ax_eta] ^ ie;
            idx[ax_zeta] = o[ax_zeta] ^ iz;
            out.set(ie, iz, cell.at(idx[0], idx[1]));
        }
    }
    return out;
}

CellCorners3D to_local(const CellCorners3D& cell, Corner3 origin, int ax_xi,
                       int ax_eta, int ax_zeta) {
    CellCorners3D out;
    const int o[3] = {origin.ix, origin.iy, origin.iz};
    for (int i = 0; i <= 1; ++i) {
        for (int j = 0; j <= 1; ++j) {
            for (int k = 0; k <= 1; ++k) {
                int idx[3];
                idx[ax_xi] = o[ax_xi] ^ i;
                idx[ax_eta] = o[ax_eta] ^ j;
                idx[ax_zeta] = o[ax_zeta] ^ k;
                out.set(i, j, k, cell.at(idx[0], idx[1], idx[2]));
            }
        }
    }
    return out;
}

RationalCoeffs2D rational_coeffs_local(const CellCorners2D& local_cell) {
    // phi = B0 + B1*eta + B2*zeta + B3*eta*zeta = 0
    //   =>  zeta = -(B1*eta + B0) / (B3*eta + B2)
    const BilinearCoeffs b = bilinear_coeffs(local_cell);
    RationalCoeffs2D rc;
    rc.a = b.beta1;
    rc.b = b.beta0;
    rc.c = b.beta3;
    rc.d = b.beta2;
    return rc;
}

RationalCoeffs3D rational_coeffs_local(const CellCorners3D& local_cell) {
    // phi = B0 + B1*xi + B2*eta + B3*zeta + B4*xi*eta + B5*eta*zeta
    //     + B6*xi*zeta + B7*xi*eta*zeta = 0
    //   =>  zeta = -(B4*xi*eta + B1*xi + B2*eta + B0)
    //            / (B7*xi*eta + B6*xi + B5*eta + B3)
    const TrilinearCoeffs b = trilinear_coeffs(local_cell);
    RationalCoeffs3D rc;
    rc.a = b.beta[4];
    rc.b = b.beta[1];
    rc.c = b.beta[2];
    rc.d = b.beta[0];
    rc.e = b.beta[7];
    rc.f = b.beta[6];
    rc.g = b.beta[5];
    rc.h = b.beta[3];
    return rc;
}

std::pair<LocalFrame2, RationalCoeffs2D> build_frame(const CellCorners2D& cell) {
    const Corner2 o = select_origin(cell);
    const BilinearCoeffs c = bilinear_coeffs(cell);
    const EdgeLengths2 l = edge_lengths_2d(c, o);

    LocalFrame2 frame;
    frame.origin = o;
    // eta = axis with the larger intersection length; ties keep x before y.
    if (l.lx >= l.ly) {
        frame.axis_eta = 0;
        frame.axis_zeta = 1;
    } else {
        frame.axis_eta = 1;
        frame.axis_zeta = 0;
    }
    frame.l_eta = l.axis(frame.axis_eta);
    frame.l_zeta = l.axis(frame.axis_zeta);

    const CellCorners2D local =
        to_local(cell, o, frame.axis_eta, frame.axis_zeta);
    return {frame, rational_coeffs_local(local)};
}

std::pair<LocalFrame3, RationalCoeffs3D> build_frame(const CellCorners3D& cell) {
    const Corner3 o = select_origin(cell);
    const TrilinearCoeffs c = trilinear_coeffs(cell);
    const EdgeLengths3 l = edge_lengths_3d(c, o);

    // Sort axes by descending length; ties keep x, y, z order.
    int axes[3] = {0, 1, 2};
    std::stable_sort(axes, axes + 3,
                     [&](int u, int v) { return l.axis(u) > l.axis(v); });

    LocalFrame3 frame;
    frame.origin = o;
    frame.axis_xi = axes[0];
    frame.axis_eta = axes[1];
    frame.axis_zeta = axes[2];
    frame.l_xi = l.axis(axes[0]);
    frame.l_eta = l.axis(axes[1]);
    frame.l_zeta = l.axis(axes[2]);

    const CellCorners3D local =
        to_local(cell, o, frame.axis_xi, frame.axis_eta, frame.axis_zeta);
    return {frame, rational_coeffs_local(local)};
}

}  // namespace cutvol
