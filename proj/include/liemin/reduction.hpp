#pragma once

#include <vector>

#include "liemin/invariants.hpp"
#include "liemin/ivp.hpp"
#include "liemin/linalg.hpp"
#include "liemin/polynomial.hpp"

namespace liemin {

enum class ReductionMode { OrthogonalRational, Orthonormal };

// Minimal exact linear aggregation x ~ B y. In rational mode the columns of
// B are orthogonal but not normalized; the reduced drift absorbs the inverse
// Gram matrix D = diag(b_k . b_k), so everything stays exact. Float mode
// normalizes the columns and reproduces the familiar orthonormal form.
struct ReducedSystem {
    ReductionMode mode = ReductionMode::OrthogonalRational;
    std::size_t n = 0;  // original dimension
    std::size_t l = 0;  // reduced dimension
    std::size_t m = 0;  // chain length of the invariant run

    // Rational payload (always filled; float payload derived from it).
    RatRows B_cols;  // l columns of length n, pairwise orthogonal
    RatVec D;        // D[k] = B_cols[k] . B_cols[k]
    std::vector<Poly> field;  // reduced drifts in y1..yl (rational mode)
    RatVec y0;

    // Float payload (Orthonormal mode).
    std::vector<std::vector<double>> Bf_cols;
    std::vector<DPoly> fieldf;
    std::vector<double> y0f;

    std::vector<std::string> y_names() const;
};

// Lie-derivative vectors x^(j)(v0), j = 0..m, as columns of the trajectory
// cone; component i of vector j is L^j(x_i)(v0).
RatRows trajectory_vectors(const IVP& ivp, std::size_t m);

// Orthogonal (unnormalized) basis of W = span{x^(j)(v0) : j <= m} by
// Gram-Schmidt in increasing j, dropping exactly-zero residuals.
RatRows trajectory_subspace(const IVP& ivp, std::size_t m);

ReducedSystem minimize(const IVP& ivp, ReductionMode mode,
                       const DoubleChainOptions& opts = {});

// Substitutes x_i := (B y)_i. Rational-mode lift.
Poly lift(const Poly& p, const ReducedSystem& r);
DPoly lift_numeric(const DPoly& p, const ReducedSystem& r);

// Partition of {0..n-1}: i, j together iff rows i and j of B coincide.
std::vector<std::vector<std::size_t>> variable_classes(const ReducedSystem& r);

}  // namespace liemin
