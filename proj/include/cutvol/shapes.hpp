#pragma once

// ==== SHAPES ====
// Benchmark level-set fields, positive inside the shape.  Every shape is a
// union of disks/balls, optionally minus a rectangular slot; the field is
// assembled from exact signed distances with min/max, which keeps it
// 1-Lipschitz with a correct sign everywhere (the magnitude may undershoot
// the true distance after the set operations, never overshoot).

#include <array>
#include <cstdint>
#include <vector>

#include <cutvol/grid.hpp>

namespace cutvol {

struct Ball {
    double cx = 0.5, cy = 0.5, cz = 0.5;  // cz ignored in 2D
    double r = 0.25;
};

struct ShapeSpec {
    int dim = 2;
    std::vector<Ball> balls;  // union of these
    bool has_slot = false;    // subtract an axis-aligned rectangle (2D only)
    double slot_x0 = 0, slot_x1 = 0, slot_y0 = 0, slot_y1 = 0;
};

// Level-set value at a point (z ignored in 2D).
double shape_value(const ShapeSpec& s, double x, double y, double z = 0.0);

// Standard benchmark instances.
ShapeSpec make_circle(double cx = 0.5, double cy = 0.5, double r = 0.25);
ShapeSpec make_double_circle();  // r = 0.25 at (0.3, 0.5) and (0.7, 0.5)
ShapeSpec make_zalesak();        // r = 0.4 disk minus a 0.2 x 0.6 slot
ShapeSpec make_sphere(double cx = 0.5, double cy = 0.5, double cz = 0.5,
                      double r = 0.25);
ShapeSpec make_double_sphere();  // r = 0.25 at (0.3, 0.5, 0.5), (0.7, 0.5, 0.5)

// Disks with radius in [rmin, rmax] placed fully inside the unit square by
// a fixed 64-bit LCG stream, so a given seed always yields the same shape.
ShapeSpec make_random_circles(int count, std::uint64_t seed,
                              double rmin = 0.05, double rmax = 0.15);

// Exact area/volume of the shape, assuming it lies inside the unit domain.
// Shapes without a closed form (random circles) throw SpecOutOfDomain.
double reference_volume(const ShapeSpec& s);

// Node samples of the level set on the unit domain, h = 1/(nodes-1).
ScalarGrid sample_shape(const ShapeSpec& s, std::size_t nodes);

}  // namespace cutvol
