#ifndef FROBD4_LINSOLVE_HPP
#define FROBD4_LINSOLVE_HPP

#include <map>
#include <optional>
#include <vector>

#include "frobd4/rational.hpp"

namespace frobd4 {

using SparseRow = std::map<int, Rational>;

// Exact sparse Gaussian elimination for A x = b over the rationals.
class SparseSolver {
public:
    explicit SparseSolver(int ncols) : ncols_(ncols) {}

    // Adds one equation sum_j row[j] x_j = rhs.
    void add_equation(SparseRow row, Rational rhs);

    bool consistent() const { return consistent_; }
    int rank() const { return static_cast<int>(pivots_.size()); }
    int ncols() const { return ncols_; }

    // Values of the unknowns that the equations pin down uniquely; nullopt
    // for unknowns that still depend on a free column.
    std::vector<std::optional<Rational>> solve() const;

private:
    struct PivotRow {
        SparseRow row;
        Rational rhs;
    };

    int ncols_;
    bool consistent_ = true;
    std::map<int, PivotRow> pivots_;
};

} // namespace frobd4

#endif
