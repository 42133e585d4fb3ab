#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "liemin/groebner.hpp"
#include "liemin/linalg.hpp"
#include "liemin/model.hpp"
#include "liemin/parse.hpp"

namespace lt {

using namespace liemin;

inline std::string model_path(const std::string& name) {
    return std::string(LIEMIN_MODEL_DIR) + "/" + name;
}

inline Model example1() { return load_model(model_path("example1.ode")); }
inline Model circle() { return load_model(model_path("circle.ode")); }
inline Model pendulum() { return load_model(model_path("pendulum.ode")); }
inline Model linear10() { return load_model(model_path("linear10.ode")); }

inline Poly pp(const std::string& s, const Model& m) {
    return parse_polynomial(s, m.ivp.var_names);
}

// <A> == <B> by mutual Groebner membership.
inline bool ideal_equal(const std::vector<Poly>& A, const std::vector<Poly>& B) {
    MonomialOrder ord = MonomialOrder::grevlex();
    GroebnerBasis ga = buchberger(A, ord);
    GroebnerBasis gb = buchberger(B, ord);
    for (const auto& p : A)
        if (!ideal_member(p, gb)) return false;
    for (const auto& p : B)
        if (!ideal_member(p, ga)) return false;
    return true;
}

inline bool span_equal(const RatRows& A, const RatRows& B) {
    RatRows both = A;
    for (const auto& r : B) both.push_back(r);
    return rat_rank(A) == rat_rank(B) && rat_rank(both) == rat_rank(A);
}

inline bool in_span(const RatVec& v, const RatRows& basis) {
    RatRows with = basis;
    with.push_back(v);
    return rat_rank(with) == rat_rank(basis);
}

// Deterministic small random polynomials for property suites.
struct RandomPolys {
    std::mt19937 rng;
    explicit RandomPolys(uint32_t seed) : rng(seed) {}

    Rat coeff() {
        std::uniform_int_distribution<int> num(-6, 6);
        std::uniform_int_distribution<int> den(1, 4);
        return rat(num(rng), den(rng));
    }

    Monomial monomial(std::size_t dim, uint32_t maxdeg) {
        Monomial m = Monomial::one(dim);
        std::uniform_int_distribution<uint32_t> deg(0, maxdeg);
        std::uniform_int_distribution<std::size_t> var(0, dim - 1);
        uint32_t d = deg(rng);
        for (uint32_t i = 0; i < d; ++i) m.exps[var(rng)] += 1;
        return m;
    }

    Poly poly(std::size_t dim, uint32_t maxdeg, std::size_t nterms) {
        Poly p(dim);
        for (std::size_t i = 0; i < nterms; ++i) p.add_term(monomial(dim, maxdeg), coeff());
        return p;
    }
};

// Smallest singular value of a tall matrix (columns as vectors), via Jacobi
// eigenvalue iteration on the small Gram matrix.
inline double smallest_singular_value(const std::vector<std::vector<double>>& cols) {
    const std::size_t l = cols.size();
    std::vector<std::vector<double>> g(l, std::vector<double>(l, 0.0));
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j)
            for (std::size_t t = 0; t < cols[i].size(); ++t) g[i][j] += cols[i][t] * cols[j][t];
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < l; ++p)
            for (std::size_t q = p + 1; q < l; ++q) off += g[p][q] * g[p][q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < l; ++p)
            for (std::size_t q = p + 1; q < l; ++q) {
                if (std::abs(g[p][q]) < 1e-300) continue;
                double theta = (g[q][q] - g[p][p]) / (2 * g[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1.0 / std::sqrt(t * t + 1), s = t * c;
                for (std::size_t k = 0; k < l; ++k) {
                    double gpk = g[p][k], gqk = g[q][k];
                    g[p][k] = c * gpk - s * gqk;
                    g[q][k] = s * gpk + c * gqk;
                }
                for (std::size_t k = 0; k < l; ++k) {
                    double gkp = g[k][p], gkq = g[k][q];
                    g[k][p] = c * gkp - s * gkq;
                    g[k][q] = s * gkp + c * gkq;
                }
            }
    }
    double lo = g[0][0];
    for (std::size_t i = 1; i < l; ++i) lo = std::min(lo, g[i][i]);
    return std::sqrt(std::max(lo, 0.0));
}

}  // namespace lt
