#include "liemin/linalg.hpp"

#include <stdexcept>

namespace liemin {

bool ConstraintMatrix::add_row(RatVec row) {
    if (row.size() != ncols_) throw std::invalid_argument("constraint row length mismatch");
    // Reduce against the existing RREF rows.
    for (std::size_t r = 0; r < rref_.size(); ++r) {
        const Rat& c = row[pivot_[r]];
        if (c == 0) continue;
        Rat f = c;
        for (std::size_t j = 0; j < ncols_; ++j) row[j] -= f * rref_[r][j];
    }
    std::size_t p = 0;
    while (p < ncols_ && row[p] == 0) ++p;
    if (p == ncols_) return false;
    Rat inv = 1 / row[p];
    for (auto& x : row) x *= inv;
    // Back-substitute into earlier rows to keep the form reduced.
    for (std::size_t r = 0; r < rref_.size(); ++r) {
        const Rat c = rref_[r][p];
        if (c == 0) continue;
        for (std::size_t j = 0; j < ncols_; ++j) rref_[r][j] -= c * row[j];
    }
    // Insert keeping pivots sorted.
    std::size_t at = 0;
    while (at < pivot_.size() && pivot_[at] < p) ++at;
    rref_.insert(rref_.begin() + at, std::move(row));
    pivot_.insert(pivot_.begin() + at, p);
    return true;
}

RatRows ConstraintMatrix::null_space_basis() const {
    std::vector<bool> is_pivot(ncols_, false);
    for (auto p : pivot_) is_pivot[p] = true;
    RatRows basis;
    for (std::size_t f = 0; f < ncols_; ++f) {
        if (is_pivot[f]) continue;
        RatVec v(ncols_, Rat(0));
        v[f] = 1;
        for (std::size_t r = 0; r < rref_.size(); ++r) v[pivot_[r]] = -rref_[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::size_t> rref(RatRows& rows) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) return pivots;
    const std::size_t ncols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        Rat inv = 1 / rows[r][c];
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rat f = rows[i][c];
            for (std::size_t j = 0; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

std::size_t rat_rank(RatRows rows) { return rref(rows).size(); }

bool solve_linear_system(RatRows rows, RatVec rhs, RatVec& solution) {
    if (rows.size() != rhs.size()) throw std::invalid_argument("system shape mismatch");
    if (rows.empty()) {
        solution.clear();
        return true;
    }
    const std::size_t n = rows[0].size();
    // Augment and eliminate.
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].push_back(rhs[i]);
    auto pivots = rref(rows);
    solution.assign(n, Rat(0));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (pivots[r] == n) return false;  // 0 = nonzero
        solution[pivots[r]] = rows[r][n];
    }
    return true;
}

Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot length mismatch");
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace liemin
