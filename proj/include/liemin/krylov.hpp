#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "liemin/ivp.hpp"
#include "liemin/linalg.hpp"
#include "liemin/monomial.hpp"
#include "liemin/polynomial.hpp"

namespace liemin {

// Ordered set of monomials with index lookup; order is first occurrence,
// terms of each generating polynomial taken in descending grevlex.
struct MonomialBasis {
    std::vector<Monomial> monomials;
    std::map<Monomial, std::size_t, GrevlexLess> index;

    std::size_t size() const { return monomials.size(); }
    bool contains(const Monomial& m) const { return index.count(m) != 0; }
    void push(const Monomial& m);
};

// Sparse M x M matrix stored by columns; entry (row, value).
struct SparseRatMatrix {
    std::size_t n = 0;
    std::vector<std::vector<std::pair<std::size_t, Rat>>> cols;

    // v -> transpose(M) v, i.e. (result)_j = column_j . v.
    RatVec transpose_apply(const RatVec& v) const;
    std::vector<double> transpose_apply(const std::vector<double>& v) const;
};

enum class KrylovMode { RationalExact, Float };

struct LinearReducedSystem {
    KrylovMode mode = KrylovMode::RationalExact;
    MonomialBasis basis;
    SparseRatMatrix L;
    RatVec phi;
    std::size_t order = 0;  // requested m
    std::size_t l = 0;
    bool happy = false;    // Krylov space became invariant before/at order m
    bool closed = false;   // every L(alpha), alpha in basis, stayed inside basis
    bool exact = false;    // happy && closed: all Taylor coefficients agree
    bool empty_phi = false;

    // Rational payload: unnormalized orthogonal Krylov vectors w_1 = phi,
    // w_2, ..., Gram diagonal D, and A = D^-1 W^T L^T W, the projected
    // operator in the w-basis. In that basis y(0) = e1 and the
    // reconstruction row of p is (p.w_1, ..., p.w_l); behaviours agree with
    // the normalized float form under the diagonal change of basis.
    RatRows W_cols;
    RatVec D;
    RatRows A;  // l x l, row-major
    RatVec y0;

    // Float payload.
    std::vector<std::vector<double>> B_cols;
    std::vector<std::vector<double>> Af;  // l x l, row-major
    std::vector<double> y0f;
};

MonomialBasis monomial_closure(const std::vector<Poly>& S, const VectorField& F, std::size_t m);

// Column for alpha holds the coefficients of L(alpha) on the basis; terms
// outside the basis are dropped (truncating projection). closed_out reports
// whether nothing was dropped.
SparseRatMatrix lie_matrix(const MonomialBasis& basis, const VectorField& F,
                           bool* closed_out = nullptr);

struct ArnoldiResult {
    std::vector<std::vector<double>> B_cols;  // orthonormal columns
    std::vector<std::vector<double>> H;       // l x l, row-major
    bool happy = false;
};

// Modified Gram-Schmidt Arnoldi with one reorthogonalization pass on
// transpose(L); breakdown threshold 1e-12 * |phi|.
ArnoldiResult arnoldi(const SparseRatMatrix& L, const std::vector<double>& phi, std::size_t m);

LinearReducedSystem linearize(const std::vector<Poly>& S, const IVP& ivp, std::size_t m,
                              KrylovMode mode = KrylovMode::RationalExact);

// p^T B (float mode) as doubles; requires every monomial of p in the basis.
std::vector<double> reconstruct_numeric(const Poly& p, const LinearReducedSystem& r);
// p^T W (rational mode).
RatVec reconstruct_exact(const Poly& p, const LinearReducedSystem& r);

// Taylor coefficients of the reconstruction row . y(t): c_j = row^T A^j y0 / j!.
RatVec linear_taylor(const RatVec& row, const RatRows& A, const RatVec& y0, std::size_t n);
std::vector<double> linear_taylor(const std::vector<double>& row,
                                  const std::vector<std::vector<double>>& A,
                                  const std::vector<double>& y0, std::size_t n);

// Taylor prefix of p(x(t)) reconstructed through the linear system, in
// whichever mode r carries.
RatVec krylov_taylor_exact(const Poly& p, const LinearReducedSystem& r, std::size_t n);
std::vector<double> krylov_taylor_numeric(const Poly& p, const LinearReducedSystem& r,
                                          std::size_t n);

}  // namespace liemin
