#pragma once

#include <vector>

#include "liemin/rational.hpp"

namespace liemin {

using RatVec = std::vector<Rat>;
using RatRows = std::vector<RatVec>;

// Incremental exact row space tracker: keeps the constraint rows in reduced
// row echelon form so that adding a row and testing rank growth is one
// elimination pass. The right null space of the accumulated rows is V_i.
class ConstraintMatrix {
public:
    explicit ConstraintMatrix(std::size_t ncols) : ncols_(ncols) {}

    std::size_t ncols() const { return ncols_; }
    std::size_t rank() const { return rref_.size(); }

    // Returns true when the row was independent (rank grew).
    bool add_row(RatVec row);

    // Exact basis of {v : T v = 0}, one vector per free column.
    RatRows null_space_basis() const;

private:
    std::size_t ncols_;
    RatRows rref_;                    // rows in RREF, each with leading 1
    std::vector<std::size_t> pivot_;  // pivot column of each RREF row
};

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatRows& rows);

std::size_t rat_rank(RatRows rows);

// Solves A x = b exactly (A given column-wise is awkward; rows of the system
// are passed directly). Returns false when inconsistent.
bool solve_linear_system(RatRows rows, RatVec rhs, RatVec& solution);

Rat dot(const RatVec& a, const RatVec& b);

}  // namespace liemin
