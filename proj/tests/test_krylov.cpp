#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "liemin/krylov.hpp"
#include "liemin/semantics.hpp"

using namespace lt;

namespace {

std::vector<Poly> observables(const Model& m, std::initializer_list<const char*> names) {
    std::vector<Poly> S;
    for (const char* s : names) S.push_back(pp(s, m));
    return S;
}

Monomial mono(const Model& m, const char* s) {
    Poly p = pp(s, m);
    REQUIRE(p.terms().size() == 1);
    return p.terms().begin()->first;
}

}  // namespace

TEST_CASE("monomial closure") {
    Model m = example1();
    MonomialBasis b = monomial_closure(observables(m, {"x"}), m.ivp.field, 2);
    REQUIRE(b.size() == 3);
    CHECK(b.monomials[0] == mono(m, "x"));
    CHECK(b.monomials[1] == mono(m, "x*z"));
    CHECK(b.monomials[2] == mono(m, "z"));

    MonomialBasis one = monomial_closure(observables(m, {"x"}), m.ivp.field, 1);
    CHECK(one.size() == 1);

    MonomialBasis all = monomial_closure(observables(m, {"x", "y", "z", "w"}), m.ivp.field, 3);
    CHECK(all.size() == 10);
    for (const char* s : {"x", "y", "z", "w", "x*z", "y*w", "x*z^2", "z^2", "y*w^2", "z*w"})
        CHECK(all.contains(mono(m, s)));
}

TEST_CASE("lie matrix with truncation") {
    Model m = example1();
    MonomialBasis b = monomial_closure(observables(m, {"x"}), m.ivp.field, 2);
    bool closed = true;
    SparseRatMatrix L = lie_matrix(b, m.ivp.field, &closed);
    CHECK_FALSE(closed);  // L(xz) leaves the basis

    // Column of x: +1 at rows xz and z.
    auto has_entry = [](const SparseRatMatrix& M, std::size_t col, std::size_t row, Rat c) {
        for (const auto& e : M.cols[col])
            if (e.first == row) return e.second == c;
        return false;
    };
    REQUIRE(L.cols[0].size() == 2);
    CHECK(has_entry(L, 0, 1, Rat(1)));
    CHECK(has_entry(L, 0, 2, Rat(1)));

    // Column of xz: L(xz) = xz^2 + z^2 + xz; only xz survives the projection.
    REQUIRE(L.cols[1].size() == 1);
    CHECK(L.cols[1][0] == std::pair<std::size_t, Rat>{1, Rat(1)});

    // A drift-free variable gives a zero column.
    Model still = parse_model("vars: u, v\nu' = 0\nv' = u\ninit: u=1, v=0\n");
    MonomialBasis sb = monomial_closure({Poly::variable(2, 0)}, still.ivp.field, 1);
    SparseRatMatrix sl = lie_matrix(sb, still.ivp.field);
    CHECK(sl.cols[0].empty());
}

TEST_CASE("arnoldi basics") {
    SparseRatMatrix id;
    id.n = 3;
    id.cols.resize(3);
    for (std::size_t i = 0; i < 3; ++i) id.cols[i] = {{i, Rat(1)}};
    ArnoldiResult r = arnoldi(id, {1, 0, 0}, 3);
    CHECK(r.happy);
    REQUIRE(r.B_cols.size() == 1);
    CHECK(std::abs(r.B_cols[0][0] - 1) < 1e-12);
    CHECK(std::abs(r.H[0][0] - 1) < 1e-12);

    // Nilpotent shift: transpose(L) e1 = e2.
    SparseRatMatrix shift;
    shift.n = 2;
    shift.cols.resize(2);
    shift.cols[0] = {};
    shift.cols[1] = {{0, Rat(1)}};  // L(alpha_2) = alpha_1
    ArnoldiResult s = arnoldi(shift, {1, 0}, 2);
    REQUIRE(s.B_cols.size() == 2);
    CHECK(std::abs(s.H[0][0]) < 1e-12);
    CHECK(std::abs(s.H[1][0] - 1) < 1e-12);
    CHECK(std::abs(s.H[0][1]) < 1e-12);
    CHECK(std::abs(s.H[1][1]) < 1e-12);

    ArnoldiResult empty = arnoldi(shift, {0, 0}, 2);
    CHECK(empty.B_cols.empty());
}

TEST_CASE("float linearization of the running example") {
    Model m = example1();
    LinearReducedSystem r =
        linearize(observables(m, {"x", "y", "z", "w"}), m.ivp, 3, KrylovMode::Float);
    CHECK(r.basis.size() == 10);
    CHECK(r.l == 3);
    CHECK_FALSE(r.exact);

    // y(0) = (2, 0, 0) with the positive-leading-entry convention.
    CHECK(std::abs(r.y0f[0] - 2) < 1e-12);
    CHECK(std::abs(r.y0f[1]) < 1e-12);
    CHECK(std::abs(r.y0f[2]) < 1e-12);

    // Projected matrix, up to the sign of each Arnoldi vector.
    const double s5 = std::sqrt(5.0), s6 = std::sqrt(6.0), s30 = std::sqrt(30.0);
    double expect[3][3] = {{1.5, s5 / 10, s30 / 30},
                           {s5 / 2, 1.1, 11 * s6 / 30},
                           {0, s6 / 5, 0.4}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(std::abs(std::abs(r.Af[i][j]) - expect[i][j]) < 1e-9);

    // Reconstruction of x: (0, sqrt5/5, -sqrt30/10) up to signs.
    std::vector<double> row = reconstruct_numeric(pp("x", m), r);
    CHECK(std::abs(row[0]) < 1e-12);
    CHECK(std::abs(std::abs(row[1]) - s5 / 5) < 1e-12);
    CHECK(std::abs(std::abs(row[2]) - s30 / 10) < 1e-12);

    // Orthonormality within 1e-10.
    for (std::size_t a = 0; a < r.l; ++a)
        for (std::size_t b = 0; b < r.l; ++b) {
            double d = 0;
            for (std::size_t t = 0; t < r.basis.size(); ++t) d += r.B_cols[a][t] * r.B_cols[b][t];
            CHECK(std::abs(d - (a == b ? 1 : 0)) < 1e-10);
        }

    // Arnoldi residual lives only in the last Krylov direction: for k < l-1,
    // transpose(L) b_k is reproduced exactly by the projected recurrence.
    for (std::size_t k = 0; k + 1 < r.l; ++k) {
        std::vector<double> u(r.basis.size(), 0.0);
        {
            std::vector<double> bk = r.B_cols[k];
            u = r.L.transpose_apply(bk);
        }
        for (std::size_t i = 0; i < r.l; ++i)
            for (std::size_t t = 0; t < u.size(); ++t) u[t] -= r.Af[i][k] * r.B_cols[i][t];
        double nu = 0;
        for (double x : u) nu = std::max(nu, std::abs(x));
        CHECK(nu < 1e-9);
    }
}

TEST_CASE("rational linearization matches the oracle to order m") {
    Model m = example1();
    for (std::size_t order : {1u, 2u, 3u, 4u}) {
        LinearReducedSystem r = linearize(observables(m, {"x", "y", "z", "w"}), m.ivp, order,
                                          KrylovMode::RationalExact);
        CHECK(r.l <= order);
        for (const char* s : {"x", "y", "z", "w"}) {
            RatVec approx = krylov_taylor_exact(pp(s, m), r, order);
            TaylorPrefix truth = taylor_coefficients(pp(s, m), m.ivp, order);
            CHECK(approx == truth.coefficients);
        }
    }
}

TEST_CASE("float mode agrees with rational mode behaviours") {
    Model m = example1();
    auto S = observables(m, {"x", "y", "z", "w"});
    LinearReducedSystem rr = linearize(S, m.ivp, 3, KrylovMode::RationalExact);
    LinearReducedSystem rf = linearize(S, m.ivp, 3, KrylovMode::Float);
    for (const auto& p : S) {
        RatVec exact = krylov_taylor_exact(p, rr, 6);
        std::vector<double> approx = krylov_taylor_numeric(p, rf, 6);
        for (std::size_t j = 0; j < 6; ++j)
            CHECK(std::abs(approx[j] - rat_to_double(exact[j])) < 1e-9);
    }
}

TEST_CASE("happy breakdown on a linear system is exact") {
    Model l = linear10();
    LinearReducedSystem r =
        linearize({Poly::variable(10, 0)}, l.ivp, 5, KrylovMode::RationalExact);
    CHECK(r.closed);
    CHECK(r.happy);
    CHECK(r.exact);
    CHECK(r.l <= 5);
    RatVec approx = krylov_taylor_exact(Poly::variable(10, 0), r, 12);
    TaylorPrefix truth = taylor_coefficients(Poly::variable(10, 0), l.ivp, 12);
    CHECK(approx == truth.coefficients);
}

TEST_CASE("circle observable reproduces sin t") {
    Model c = circle();
    LinearReducedSystem r = linearize({pp("x1", c)}, c.ivp, 2, KrylovMode::RationalExact);
    RatVec t = krylov_taylor_exact(pp("x1", c), r, 2);
    CHECK(t == RatVec{Rat(0), Rat(1)});
}

TEST_CASE("reconstruct edge cases") {
    Model m = example1();
    LinearReducedSystem r =
        linearize(observables(m, {"x", "y", "z", "w"}), m.ivp, 3, KrylovMode::Float);
    std::vector<double> z = reconstruct_numeric(Poly::zero(4), r);
    for (double x : z) CHECK(x == 0);

    // First basis monomial reconstructs to the first row of B.
    Poly a1 = Poly::term(4, r.basis.monomials[0], Rat(1));
    std::vector<double> row = reconstruct_numeric(a1, r);
    for (std::size_t k = 0; k < r.l; ++k) CHECK(std::abs(row[k] - r.B_cols[k][0]) < 1e-12);

    CHECK_THROWS(reconstruct_numeric(pp("x^5", m), r));
}

TEST_CASE("zero phi yields an empty system") {
    Model still = parse_model("vars: u, v\nu' = v\nv' = u\ninit: u=0, v=0\n");
    LinearReducedSystem r = linearize({Poly::variable(2, 0)}, still.ivp, 3);
    CHECK(r.empty_phi);
    for (const auto& c : krylov_taylor_exact(Poly::variable(2, 0), r, 5)) CHECK(c == 0);
}
