#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "liemin/reduction.hpp"
#include "liemin/semantics.hpp"

using namespace lt;

namespace {

std::vector<DPoly> reduced_field_numeric(const ReducedSystem& r) {
    if (r.mode == ReductionMode::Orthonormal) return r.fieldf;
    std::vector<DPoly> f;
    for (const auto& g : r.field) f.push_back(to_double_poly(g));
    return f;
}

std::vector<double> reduced_init_numeric(const ReducedSystem& r) {
    if (r.mode == ReductionMode::Orthonormal) return r.y0f;
    std::vector<double> y0;
    for (const auto& v : r.y0) y0.push_back(rat_to_double(v));
    return y0;
}

// max over samples of |x(t) - B y(t)|_inf.
double reconstruction_error(const Model& m, const ReducedSystem& r) {
    Trajectory orig = integrate_numeric(m.ivp, 1.0, 101);
    std::vector<double> x0(m.ivp.dim());
    for (std::size_t i = 0; i < x0.size(); ++i) x0[i] = rat_to_double(m.ivp.v0[i]);
    Trajectory red = integrate_numeric(reduced_field_numeric(r), reduced_init_numeric(r),
                                       orig.times);
    double err = 0;
    for (std::size_t s = 0; s < orig.times.size(); ++s)
        for (std::size_t i = 0; i < m.ivp.dim(); ++i) {
            double rec = 0;
            for (std::size_t k = 0; k < r.l; ++k) {
                double b = r.mode == ReductionMode::Orthonormal ? r.Bf_cols[k][i]
                                                                : rat_to_double(r.B_cols[k][i]);
                rec += b * red.states[s][k];
            }
            err = std::max(err, std::abs(orig.states[s][i] - rec));
        }
    return err;
}

}  // namespace

TEST_CASE("trajectory subspace of the running example") {
    Model m = example1();
    RatRows w = trajectory_subspace(m.ivp, 1);
    REQUIRE(w.size() == 2);
    CHECK(in_span({Rat(1), Rat(1), Rat(0), Rat(0)}, w));
    CHECK(in_span({Rat(0), Rat(0), Rat(1), Rat(1)}, w));
    // Orthogonality.
    CHECK(dot(w[0], w[1]) == 0);
}

TEST_CASE("degenerate and full trajectory subspaces") {
    Model still = parse_model("vars: a, b\na' = a*b\nb' = a\ninit: a=0, b=0\n");
    CHECK(trajectory_subspace(still.ivp, 5).empty());

    Model c = circle();
    CHECK(trajectory_subspace(c.ivp, 1).size() == 2);
}

TEST_CASE("minimize the running example, float mode") {
    Model m = example1();
    ReducedSystem r = minimize(m.ivp, ReductionMode::Orthonormal);
    CHECK(r.l == 2);
    CHECK(r.m == 1);
    const double s = 1.0 / std::sqrt(2.0);

    // Orthonormal columns.
    for (std::size_t a = 0; a < r.l; ++a)
        for (std::size_t b = 0; b < r.l; ++b) {
            double d = 0;
            for (std::size_t i = 0; i < 4; ++i) d += r.Bf_cols[a][i] * r.Bf_cols[b][i];
            CHECK(std::abs(d - (a == b ? 1.0 : 0.0)) < 1e-12);
        }

    // One column is (1,1,0,0)/sqrt2, the other (0,0,1,1)/sqrt2.
    auto close = [&](const std::vector<double>& col, double a, double b, double c, double d) {
        return std::abs(col[0] - a) < 1e-12 && std::abs(col[1] - b) < 1e-12 &&
               std::abs(col[2] - c) < 1e-12 && std::abs(col[3] - d) < 1e-12;
    };
    CHECK(close(r.Bf_cols[0], 0, 0, s, s));
    CHECK(close(r.Bf_cols[1], s, s, 0, 0));
    CHECK(std::abs(r.y0f[0] - std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(r.y0f[1]) < 1e-12);
}

TEST_CASE("minimize the running example, rational mode") {
    Model m = example1();
    ReducedSystem r = minimize(m.ivp, ReductionMode::OrthogonalRational);
    CHECK(r.l == 2);
    CHECK(r.D == RatVec{Rat(2), Rat(2)});
    // y1' = y1, y2' = y1 y2 + y1, y(0) = (1, 0).
    std::vector<std::string> yn = r.y_names();
    CHECK(r.field[0] == parse_polynomial("y1", yn));
    CHECK(r.field[1] == parse_polynomial("y1*y2 + y1", yn));
    CHECK(r.y0 == RatVec{Rat(1), Rat(0)});
    // Degree bound: reduced drifts no worse than the original field.
    uint64_t orig = 0, red = 0;
    for (const auto& f : m.ivp.field.drifts) orig = std::max(orig, f.degree());
    for (const auto& f : r.field) red = std::max(red, f.degree());
    CHECK(red <= orig);
}

TEST_CASE("already-minimal and linear examples") {
    Model c = circle();
    ReducedSystem rc = minimize(c.ivp, ReductionMode::OrthogonalRational);
    CHECK(rc.l == 2);
    CHECK(reconstruction_error(c, rc) < 1e-6);

    Model l = linear10();
    ReducedSystem rl = minimize(l.ivp, ReductionMode::OrthogonalRational);
    CHECK(rl.l == 4);
}

TEST_CASE("lift") {
    Model m = example1();
    ReducedSystem r = minimize(m.ivp, ReductionMode::OrthogonalRational);
    std::vector<std::string> yn = r.y_names();
    // x_i lifts to row i of B dotted with y.
    for (std::size_t i = 0; i < 4; ++i) {
        Poly row(r.l);
        for (std::size_t k = 0; k < r.l; ++k) row.add_term(Monomial::var(r.l, k), r.B_cols[k][i]);
        CHECK(lift(Poly::variable(4, i), r) == row);
    }
    CHECK(lift(pp("1", m), r) == Poly::constant(r.l, Rat(1)));

    // Float mode: x lifts to (1/sqrt2) times the column holding x.
    ReducedSystem rf = minimize(m.ivp, ReductionMode::Orthonormal);
    DPoly lx = lift_numeric(to_double_poly(Poly::variable(4, 0)), rf);
    REQUIRE(lx.terms().size() == 1);
    CHECK(std::abs(lx.terms().begin()->second - 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("variable classes") {
    Model m = example1();
    auto classes = variable_classes(minimize(m.ivp, ReductionMode::OrthogonalRational));
    REQUIRE(classes.size() == 2);
    CHECK(classes[0] == std::vector<std::size_t>{0, 1});
    CHECK(classes[1] == std::vector<std::size_t>{2, 3});

    Model c = circle();
    auto cc = variable_classes(minimize(c.ivp, ReductionMode::OrthogonalRational));
    CHECK(cc.size() == 2);  // all singletons

    Model l = linear10();
    auto lc = variable_classes(minimize(l.ivp, ReductionMode::OrthogonalRational));
    auto has = [&](std::vector<std::size_t> want) {
        for (const auto& cls : lc)
            if (cls == want) return true;
        return false;
    };
    CHECK(has({0, 4}));
    CHECK(has({1, 5, 6}));
    CHECK(has({7, 8}));
}

TEST_CASE("reconstruction fidelity") {
    Model m = example1();
    CHECK(reconstruction_error(m, minimize(m.ivp, ReductionMode::OrthogonalRational)) < 1e-6);
    CHECK(reconstruction_error(m, minimize(m.ivp, ReductionMode::Orthonormal)) < 1e-6);
    Model l = linear10();
    CHECK(reconstruction_error(l, minimize(l.ivp, ReductionMode::OrthogonalRational)) < 1e-6);
}

TEST_CASE("minimality witness: sampled trajectory has rank l") {
    for (Model m : {example1(), linear10()}) {
        ReducedSystem r = minimize(m.ivp, ReductionMode::OrthogonalRational);
        std::vector<double> times;
        for (std::size_t k = 0; k < r.l; ++k)
            times.push_back(0.1 + 0.8 * double(k) / double(r.l));
        std::vector<DPoly> f;
        for (const auto& g : m.ivp.field.drifts) f.push_back(to_double_poly(g));
        std::vector<double> x0(m.ivp.dim());
        for (std::size_t i = 0; i < x0.size(); ++i) x0[i] = rat_to_double(m.ivp.v0[i]);
        Trajectory samples = integrate_numeric(f, x0, times);
        std::vector<std::vector<double>> cols;
        for (const auto& st : samples.states) cols.push_back(st);
        CHECK(smallest_singular_value(cols) > 1e-6);
    }
}

TEST_CASE("mode equivalence on lifted behaviours") {
    Model m = example1();
    ReducedSystem rr = minimize(m.ivp, ReductionMode::OrthogonalRational);
    ReducedSystem rf = minimize(m.ivp, ReductionMode::Orthonormal);
    for (const char* obs : {"x", "z", "x*w - y*z", "x + 2*y"}) {
        Poly p = pp(obs, m);
        // Exact Taylor prefix through the rational reduced system.
        IVP red{VectorField{rr.field}, rr.y0, rr.y_names()};
        TaylorPrefix exact = taylor_coefficients(lift(p, rr), red, 8);
        TaylorPrefix truth = taylor_coefficients(p, m.ivp, 8);
        CHECK(exact.coefficients == truth.coefficients);

        // Float reduced system agrees numerically.
        std::vector<DPoly> ff = rf.fieldf;
        DPoly pf = lift_numeric(to_double_poly(p), rf);
        std::vector<double> y = rf.y0f;
        // Taylor by repeated numeric Lie derivation.
        DPoly cur = pf;
        double fact = 1;
        for (std::size_t j = 0; j < 8; ++j) {
            if (j > 0) {
                fact *= double(j);
                DPoly next(rf.l);
                for (std::size_t i = 0; i < rf.l; ++i) {
                    DPoly d = cur.partial(i);
                    next = next + d * ff[i];
                }
                cur = next;
            }
            double val = cur.evaluate(y) / fact;
            CHECK(std::abs(val - rat_to_double(truth.coefficients[j])) < 1e-6);
        }
    }
}

TEST_CASE("projection identity on trajectory vectors") {
    Model m = example1();
    ReducedSystem r = minimize(m.ivp, ReductionMode::OrthogonalRational);
    for (const auto& v : trajectory_vectors(m.ivp, r.m)) {
        // B D^-1 B^T v = v exactly, since v lies in W.
        RatVec proj(4, Rat(0));
        for (std::size_t k = 0; k < r.l; ++k) {
            Rat c = dot(r.B_cols[k], v) / r.D[k];
            for (std::size_t i = 0; i < 4; ++i) proj[i] += c * r.B_cols[k][i];
        }
        CHECK(proj == v);
    }
}
