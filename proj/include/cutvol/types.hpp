#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace cutvol {

// ============================================================================
//                                 ERRORS
// ============================================================================

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File/format errors.
struct ParseError : Error {
    ParseError(const std::string& msg, long line, long offset)
        : Error(msg + " (line " + std::to_string(line) + ", offset " +
                std::to_string(offset) + ")"),
          line(line), offset(offset) {}
    long line;
    long offset;
};
struct DimensionMismatch : Error { using Error::Error; };
struct NotDivisible : Error { using Error::Error; };
struct SpecOutOfDomain : Error { using Error::Error; };

// Geometry/analysis errors.
struct NoInterface : Error { using Error::Error; };
struct DegenerateEdge : Error { using Error::Error; };
struct PoleInRange : Error { using Error::Error; };
struct DegenerateDenominator : Error { using Error::Error; };
struct NotSplittable : Error { using Error::Error; };
struct Unresolved : Error { using Error::Error; };

// Metrics errors.
struct ShapeMismatch : Error { using Error::Error; };
struct IncompatibleLevels : Error { using Error::Error; };
struct DivideByZero : Error { using Error::Error; };
struct DegenerateFit : Error { using Error::Error; };

// Special functions.
struct BothZero : Error { using Error::Error; };

// ============================================================================
//                              CELL CORNERS
// ============================================================================

// Level-set values at the corners of a unit square cell.  phiXY is the value
// at corner (x, y) with x, y in {0, 1}.
struct CellCorners2D {
    double phi00 = 0.0;
    double phi10 = 0.0;
    double phi01 = 0.0;
    double phi11 = 0.0;

    double at(int ix, int iy) const {
        return ix ? (iy ? phi11 : phi10) : (iy ? phi01 : phi00);
    }
    void set(int ix, int iy, double v) {
        (ix ? (iy ? phi11 : phi10) : (iy ? phi01 : phi00)) = v;
    }
};

// Level-set values at the corners of a unit cube cell, stored with corner
// (ix, iy, iz) at linear index ix + 2*iy + 4*iz.
struct CellCorners3D {
    std::array<double, 8> phi{};

    double at(int ix, int iy, int iz) const { return phi[ix + 2 * iy + 4 * iz]; }
    void set(int ix, int iy, int iz, double v) { phi[ix + 2 * iy + 4 * iz] = v; }
    double operator[](int idx) const { return phi[idx]; }
    double& operator[](int idx) { return phi[idx]; }
};

// Sign convention used across the library: a corner value of exactly zero is
// treated as positive.
inline int sign_of(double v) { return v >= 0.0 ? 1 : -1; }

}  // namespace cutvol
