#pragma once

#include <span>
#include <vector>

#include "ddh/errors.hpp"

namespace ddh {

/// One mesh cell [lo, hi]; its midpoint is the grid node with the same index.
struct Cell {
    int index;  ///< 0-based
    double lo;
    double hi;
};

/// Regular midpoint mesh on (a, b): M cells of width h = (b - a) / M with
/// nodes x_i = a + (i + 1/2) h, i = 0..M-1.  The first and last node sit
/// half a cell inside the interval, so a and b fall on midpoints of the
/// underlying infinite grid.
///
/// Immutable after construction; safe to read from any number of threads.
class Grid {
public:
    /// M cells on (a, b).  Throws ValidationError for b <= a or M < 2.
    Grid(double a, double b, int cells);

    /// Mesh of width h = 1/n on (a, b).  (b - a) * n must be an integer to
    /// relative tolerance 1e-9 (anything farther off is a typo, not
    /// representation noise); the cell count is that integer.
    static Grid from_N(double a, double b, int n);

    double a() const { return a_; }
    double b() const { return b_; }
    int cells() const { return cells_; }
    double h() const { return h_; }

    std::span<const double> nodes() const { return nodes_; }
    double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }

    Cell cell(int i) const;

    /// 0-based indices i with lo <= x_i <= hi, ascending.  May be empty.
    /// Requires a <= lo < hi <= b.
    std::vector<int> interior_indices(double lo, double hi) const;

private:
    double a_;
    double b_;
    double h_;
    int cells_;
    std::vector<double> nodes_;
};

}  // namespace ddh
