#include "ddh/grid.hpp"

#include <cmath>

namespace ddh {

Grid::Grid(double a, double b, int cells) : a_(a), b_(b), cells_(cells) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(b > a))
        throw ValidationError("invalid mesh: need finite endpoints with b > a");
    if (cells < 2)
        throw ValidationError("invalid mesh: need at least 2 cells, got " + std::to_string(cells));
    h_ = (b - a) / cells;
    nodes_.resize(static_cast<std::size_t>(cells));
    // Closed form rather than cumulative addition: keeps the reversal
    // symmetry x_i + x_{M-1-i} = a + b exact to rounding.
    for (int i = 0; i < cells; ++i)
        nodes_[static_cast<std::size_t>(i)] = a + (i + 0.5) * h_;
}

Grid Grid::from_N(double a, double b, int n) {
    if (n < 1)
        throw ValidationError("mesh incompatibility: N must be positive, got " + std::to_string(n));
    if (!std::isfinite(a) || !std::isfinite(b) || !(b > a))
        throw ValidationError("invalid mesh: need finite endpoints with b > a");
    const double cells_real = (b - a) * n;
    const double cells_round = std::round(cells_real);
    if (std::abs(cells_real - cells_round) > 1e-9 * std::max(1.0, std::abs(cells_real)))
        throw ValidationError("mesh incompatibility: (b - a) * N = " + std::to_string(cells_real) +
                              " is not an integer");
    return Grid(a, b, static_cast<int>(cells_round));
}

Cell Grid::cell(int i) const {
    if (i < 0 || i >= cells_)
        throw ValidationError("cell index out of range: " + std::to_string(i));
    return Cell{i, a_ + i * h_, a_ + (i + 1) * h_};
}

std::vector<int> Grid::interior_indices(double lo, double hi) const {
    if (!(a_ <= lo && lo < hi && hi <= b_))
        throw ValidationError("interior window must satisfy a <= lo < hi <= b");
    std::vector<int> idx;
    for (int i = 0; i < cells_; ++i) {
        const double x = nodes_[static_cast<std::size_t>(i)];
        if (lo <= x && x <= hi) idx.push_back(i);
    }
    return idx;
}

}  // namespace ddh
