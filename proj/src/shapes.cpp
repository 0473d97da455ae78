#include <cutvol/shapes.hpp>

#include <algorithm>
#include <cmath>

namespace cutvol {

namespace {

constexpr double kPi = 3.14159265358979323846;

double lcg_next(std::uint64_t& state) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return double(state >> 11) * 0x1.0p-53;
}

}  // namespace

double shape_value(const ShapeSpec& s, double x, double y, double z) {
    double phi = -1e300;
    for (const Ball& b : s.balls) {
        const double dx = x - b.cx;
        const double dy = y - b.cy;
        const double dz = s.dim == 3 ? z - b.cz : 0.0;
        phi = std::max(phi, b.r - std::sqrt(dx * dx + dy * dy + dz * dz));
    }
    if (s.has_slot) {
        // Positive inside the slot rectangle; subtracting flips its sign.
        const double rect = std::min(std::min(x - s.slot_x0, s.slot_x1 - x),
                                     std::min(y - s.slot_y0, s.slot_y1 - y));
        phi = std::min(phi, -rect);
    }
    return phi;
}

ShapeSpec make_circle(double cx, double cy, double r) {
    ShapeSpec s;
    s.dim = 2;
    s.balls.push_back({cx, cy, 0.0, r});
    return s;
}

ShapeSpec make_double_circle() {
    ShapeSpec s;
    s.dim = 2;
    s.balls.push_back({0.3, 0.5, 0.0, 0.25});
    s.balls.push_back({0.7, 0.5, 0.0, 0.25});
    return s;
}

ShapeSpec make_zalesak() {
    ShapeSpec s;
    s.dim = 2;
    s.balls.push_back({0.5, 0.5, 0.0, 0.4});
    s.has_slot = true;
    // 0.2-wide slot rising 0.6 from the bottom rim of the disk.
    s.slot_x0 = 0.4;
    s.slot_x1 = 0.6;
    s.slot_y0 = 0.1;
    s.slot_y1 = 0.7;
    return s;
}

ShapeSpec make_sphere(double cx, double cy, double cz, double r) {
    ShapeSpec s;
    s.dim = 3;
    s.balls.push_back({cx, cy, cz, r});
    return s;
}

ShapeSpec make_double_sphere() {
    ShapeSpec s;
    s.dim = 3;
    s.balls.push_back({0.3, 0.5, 0.5, 0.25});
    s.balls.push_back({0.7, 0.5, 0.5, 0.25});
    return s;
}

ShapeSpec make_random_circles(int count, std::uint64_t seed, double rmin,
                              double rmax) {
    if (count < 1)
        throw SpecOutOfDomain("random circles need a positive count");
    if (!(rmin > 0.0) || !(rmax >= rmin) || !(rmax < 0.5))
        throw SpecOutOfDomain("random circle radii need 0 < rmin <= rmax < 0.5");
    ShapeSpec s;
    s.dim = 2;
    std::uint64_t state = seed;
    for (int i = 0; i < count; ++i) {
        Ball b;
        b.r = rmin + (rmax - rmin) * lcg_next(state);
        b.cx = b.r + (1.0 - 2.0 * b.r) * lcg_next(state);
        b.cy = b.r + (1.0 - 2.0 * b.r) * lcg_next(state);
        b.cz = 0.0;
        s.balls.push_back(b);
    }
    return s;
}

namespace {

double ball_volume(int dim, double r) {
    return dim == 3 ? 4.0 * kPi * r * r * r / 3.0 : kPi * r * r;
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-12; }

}  // namespace

double reference_volume(const ShapeSpec& s) {
    if (s.has_slot) {
        // Only the standard notched disk has a stored closed form.
        const bool std_zalesak =
            s.dim == 2 && s.balls.size() == 1 && near(s.balls[0].cx, 0.5) &&
            near(s.balls[0].cy, 0.5) && near(s.balls[0].r, 0.4) &&
            near(s.slot_x0, 0.4) && near(s.slot_x1, 0.6) &&
            near(s.slot_y0, 0.1) && near(s.slot_y1, 0.7);
        if (!std_zalesak)
            throw SpecOutOfDomain("no closed-form reference for this shape");
        // Disk area minus the part of the disk inside the slot: the slot
        // spans columns where the disk is taller than the slot top, so the
        // removed columns run from the lower rim up to y = 0.7.
        const double removed =
            0.04 + 0.1 * std::sqrt(0.15) + 0.16 * std::asin(0.25);
        return 0.16 * kPi - removed;
    }
    if (s.balls.empty()) return 0.0;
    if (s.balls.size() == 1) return ball_volume(s.dim, s.balls[0].r);

    // Union of two equal balls with one overlap, or any pairwise-disjoint
    // collection; anything else has no closed form here.
    auto dist = [&](const Ball& a, const Ball& b) {
        const double dx = a.cx - b.cx, dy = a.cy - b.cy;
        const double dz = s.dim == 3 ? a.cz - b.cz : 0.0;
        return std::sqrt(dx * dx + dy * dy + dz * dz);
    };
    bool disjoint = true;
    for (std::size_t a = 0; a < s.balls.size() && disjoint; ++a)
        for (std::size_t b = a + 1; b < s.balls.size() && disjoint; ++b)
            if (dist(s.balls[a], s.balls[b]) < s.balls[a].r + s.balls[b].r)
                disjoint = false;
    if (disjoint) {
        double sum = 0.0;
        for (const Ball& b : s.balls) sum += ball_volume(s.dim, b.r);
        return sum;
    }
    if (s.balls.size() == 2 && near(s.balls[0].r, s.balls[1].r)) {
        const double r = s.balls[0].r;
        const double d = dist(s.balls[0], s.balls[1]);
        double lens;
        if (s.dim == 2) {
            // Two circular segments cut off by the radical line.
            const double half = d / 2.0;
            const double seg = r * r * std::acos(half / r) -
                               half * std::sqrt(r * r - half * half);
            lens = 2.0 * seg;
        } else {
            // Two spherical caps of height r - d/2.
            const double a = r - d / 2.0;
            lens = 2.0 * kPi * a * a * (3.0 * r - a) / 3.0;
        }
        return 2.0 * ball_volume(s.dim, r) - lens;
    }
    throw SpecOutOfDomain("no closed-form reference for this shape");
}

ScalarGrid sample_shape(const ShapeSpec& s, std::size_t nodes) {
    if (nodes < 2)
        throw SpecOutOfDomain("sampling needs at least two nodes per axis");
    ScalarGrid g;
    g.dim = s.dim;
    g.nx = g.ny = nodes;
    g.nz = s.dim == 3 ? nodes : 1;
    g.h = 1.0 / double(nodes - 1);
    g.values.resize(g.node_count());
    for (std::size_t k = 0; k < g.nz; ++k) {
        const double z = double(k) * g.h;
        for (std::size_t j = 0; j < g.ny; ++j) {
            const double y = double(j) * g.h;
            for (std::size_t i = 0; i < g.nx; ++i)
                g.at(i, j, k) = shape_value(s, double(i) * g.h, y, z);
        }
    }
    return g;
}

}  // namespace cutvol
