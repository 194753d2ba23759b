#include "frobd4/linsolve.hpp"

#include <stdexcept>

namespace frobd4 {

namespace {

// row -= factor * other, dropping cancelled entries.
void axpy(SparseRow& row, const Rational& factor, const SparseRow& other)
{
    for (const auto& [c, v] : other) {
        auto [it, inserted] = row.try_emplace(c, -factor * v);
        if (!inserted) {
            it->second -= factor * v;
            if (it->second == 0) {
                row.erase(it);
            }
        }
    }
}

} // namespace

void SparseSolver::add_equation(SparseRow row, Rational rhs)
{
    for (auto it = row.begin(); it != row.end();) {
        if (it->first < 0 || it->first >= ncols_) {
            throw std::out_of_range("equation refers to an unknown column");
        }
        it = it->second == 0 ? row.erase(it) : std::next(it);
    }
    // Pivot rows only hold columns >= their pivot, so one ascending sweep
    // clears every pivot column from the new row.
    auto it = row.begin();
    while (it != row.end()) {
        auto p = pivots_.find(it->first);
        if (p == pivots_.end()) {
            ++it;
            continue;
        }
        const int col = it->first;
        const Rational factor = it->second;
        rhs -= factor * p->second.rhs;
        axpy(row, factor, p->second.row);
        it = row.upper_bound(col);
    }
    if (row.empty()) {
        if (rhs != 0) {
            consistent_ = false;
        }
        return;
    }
    const int col = row.begin()->first;
    const Rational inv = 1 / row.begin()->second;
    for (auto& [c, v] : row) {
        v *= inv;
    }
    rhs *= inv;
    pivots_.emplace(col, PivotRow{std::move(row), std::move(rhs)});
}

std::vector<std::optional<Rational>> SparseSolver::solve() const
{
    std::vector<std::optional<Rational>> out(static_cast<std::size_t>(ncols_));
    if (!consistent_) {
        return out;
    }
    // Back substitution from the last pivot; reduced rows keep only free
    // columns besides their pivot.
    std::map<int, PivotRow> reduced;
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
        SparseRow row = it->second.row;
        Rational rhs = it->second.rhs;
        for (auto c = row.upper_bound(it->first); c != row.end();) {
            auto r = reduced.find(c->first);
            if (r == reduced.end()) {
                ++c;
                continue;
            }
            const int col = c->first;
            const Rational factor = c->second;
            rhs -= factor * r->second.rhs;
            axpy(row, factor, r->second.row);
            c = row.upper_bound(col);
        }
        if (row.size() == 1) {
            out[static_cast<std::size_t>(it->first)] = rhs;
        }
        reduced.emplace(it->first, PivotRow{std::move(row), std::move(rhs)});
    }
    return out;
}

} // namespace frobd4
