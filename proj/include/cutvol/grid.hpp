#pragma once

// ==== GRID ====
// Node-centered scalar fields on uniform grids, refinement/coarsening with
// the midpoint-averaging rule, and the two on-disk formats:
//
//   LSG  --  header "LSG <dim> <nx> <ny> [<nz>] <h>" followed by the node
//            values in row-major order with x fastest, whitespace separated.
//   CSV  --  header "i,j,value" (or "i,j,k,value"), one node per row.
//
// Writers emit shortest round-trip decimal forms, so write/read cycles are
// byte-stable and value-exact.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <cutvol/types.hpp>

namespace cutvol {

struct ScalarGrid {
    int dim = 2;
    std::size_t nx = 0, ny = 0, nz = 1;  // node counts per axis (nz = 1 in 2D)
    double h = 0.0;                      // node spacing, shared by all axes
    std::vector<double> values;          // row-major, x fastest

    std::size_t node_count() const { return nx * ny * nz; }
    std::size_t index(std::size_t i, std::size_t j, std::size_t k = 0) const {
        return (k * ny + j) * nx + i;
    }
    double at(std::size_t i, std::size_t j, std::size_t k = 0) const {
        return values[index(i, j, k)];
    }
    double& at(std::size_t i, std::size_t j, std::size_t k = 0) {
        return values[index(i, j, k)];
    }

    std::size_t cells_x() const { return nx - 1; }
    std::size_t cells_y() const { return ny - 1; }
    std::size_t cells_z() const { return dim == 3 ? nz - 1 : 1; }

    CellCorners2D cell2(std::size_t i, std::size_t j) const;
    CellCorners3D cell3(std::size_t i, std::size_t j, std::size_t k) const;
};

// One refinement level: n nodes become 2n-1 per axis and h halves.  Existing
// nodes keep their values; new midpoints average their neighbors (2 on
// edges, 4 on faces, 8 in cell bodies), which reproduces the multilinear
// interpolant exactly.
ScalarGrid refine(const ScalarGrid& g);

// Inverse of refine: keeps every other node.  Each axis needs 2k+1 nodes;
// anything else throws NotDivisible.
ScalarGrid coarsen(const ScalarGrid& g);

// Readers sniff the format from the first token ("LSG" or a CSV header).
// Malformed input throws ParseError carrying line and column.
ScalarGrid read_grid(std::istream& in);
ScalarGrid read_grid_file(const std::string& path);

void write_grid(const ScalarGrid& g, std::ostream& out);  // LSG format
void write_grid_file(const ScalarGrid& g, const std::string& path);
void write_grid_csv(const ScalarGrid& g, std::ostream& out);

// Shortest decimal form that reads back to exactly the same double.
std::string format_double(double v);

}  // namespace cutvol
