#include "liemin/reduction.hpp"

#include <cmath>
#include <stdexcept>

#include "liemin/lie.hpp"

namespace liemin {

std::vector<std::string> ReducedSystem::y_names() const {
    std::vector<std::string> names;
    for (std::size_t k = 0; k < l; ++k) names.push_back("y" + std::to_string(k + 1));
    return names;
}

RatRows trajectory_vectors(const IVP& ivp, std::size_t m) {
    const std::size_t n = ivp.dim();
    std::vector<Poly> cur;
    for (std::size_t i = 0; i < n; ++i) cur.push_back(Poly::variable(n, i));
    RatRows vecs;
    for (std::size_t j = 0; j <= m; ++j) {
        RatVec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = cur[i].evaluate(ivp.v0);
        vecs.push_back(std::move(v));
        if (j < m)
            for (std::size_t i = 0; i < n; ++i) cur[i] = lie_derivative(cur[i], ivp.field);
    }
    return vecs;
}

RatRows trajectory_subspace(const IVP& ivp, std::size_t m) {
    RatRows basis;
    RatVec norms;
    for (auto& v : trajectory_vectors(ivp, m)) {
        RatVec r = v;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            Rat c = dot(basis[k], r) / norms[k];
            for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * basis[k][i];
        }
        Rat nr = dot(r, r);
        if (nr == 0) continue;
        basis.push_back(std::move(r));
        norms.push_back(nr);
    }
    return basis;
}

ReducedSystem minimize(const IVP& ivp, ReductionMode mode, const DoubleChainOptions& opts) {
    ivp.validate();
    const std::size_t n = ivp.dim();

    PolyTemplate full(n, n);
    for (std::size_t i = 0; i < n; ++i)
        full.add_term(Monomial::var(n, i), LinExpr::param(i));

    InvariantResult inv = ivp.field.is_linear() ? double_chain_linear(full, ivp, opts)
                                                : double_chain(full, ivp, opts);

    ReducedSystem r;
    r.mode = mode;
    r.n = n;
    r.m = inv.m;
    r.B_cols = trajectory_subspace(ivp, inv.m);
    r.l = r.B_cols.size();
    if (r.l + inv.V_basis.size() != n)
        throw std::logic_error("trajectory subspace and parameter space dimensions disagree");

    for (const auto& col : r.B_cols) r.D.push_back(dot(col, col));

    // x_i as a polynomial in y: row i of B dotted with y.
    std::vector<Poly> images(n, Poly(r.l));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < r.l; ++k)
            images[i].add_term(Monomial::var(r.l, k), r.B_cols[k][i]);

    // y' = D^-1 B^T F(By), y(0) = D^-1 B^T v0.
    for (std::size_t k = 0; k < r.l; ++k) {
        Poly g(r.l);
        Rat y0k(0);
        for (std::size_t i = 0; i < n; ++i) {
            if (r.B_cols[k][i] == 0) continue;
            g = g + substitute(ivp.field.drifts[i], images).scaled(r.B_cols[k][i]);
            y0k += r.B_cols[k][i] * ivp.v0[i];
        }
        r.field.push_back(g.scaled(Rat(1) / r.D[k]));
        r.y0.push_back(y0k / r.D[k]);
    }

    if (mode == ReductionMode::Orthonormal) {
        // Rescale y_k = s_k z_k with s_k = 1/sqrt(D_k): columns normalize and
        // the drift picks up s_k^-1 out front and s_j on each z_j power.
        std::vector<double> s(r.l);
        for (std::size_t k = 0; k < r.l; ++k) s[k] = 1.0 / std::sqrt(rat_to_double(r.D[k]));
        for (std::size_t k = 0; k < r.l; ++k) {
            std::vector<double> col(n);
            for (std::size_t i = 0; i < n; ++i)
                col[i] = rat_to_double(r.B_cols[k][i]) * s[k];
            r.Bf_cols.push_back(std::move(col));
            r.y0f.push_back(rat_to_double(r.y0[k]) / s[k]);
            DPoly g(r.l);
            for (const auto& [mm, c] : r.field[k].terms()) {
                double fc = rat_to_double(c) / s[k];
                for (std::size_t j = 0; j < r.l; ++j)
                    for (uint32_t e = 0; e < mm.exps[j]; ++e) fc *= s[j];
                g.add_term(mm, fc);
            }
            r.fieldf.push_back(g);
        }
    }
    return r;
}

Poly lift(const Poly& p, const ReducedSystem& r) {
    if (p.dim() != r.n) throw std::invalid_argument("lift dimension mismatch");
    std::vector<Poly> images(r.n, Poly(r.l));
    for (std::size_t i = 0; i < r.n; ++i)
        for (std::size_t k = 0; k < r.l; ++k)
            images[i].add_term(Monomial::var(r.l, k), r.B_cols[k][i]);
    return substitute(p, images);
}

DPoly lift_numeric(const DPoly& p, const ReducedSystem& r) {
    if (p.dim() != r.n) throw std::invalid_argument("lift dimension mismatch");
    std::vector<DPoly> images(r.n, DPoly(r.l));
    for (std::size_t i = 0; i < r.n; ++i)
        for (std::size_t k = 0; k < r.l; ++k) {
            double b = r.mode == ReductionMode::Orthonormal ? r.Bf_cols[k][i]
                                                            : rat_to_double(r.B_cols[k][i]);
            images[i].add_term(Monomial::var(r.l, k), b);
        }
    return substitute(p, images);
}

std::vector<std::vector<std::size_t>> variable_classes(const ReducedSystem& r) {
    std::vector<std::vector<std::size_t>> classes;
    std::vector<RatVec> reps;
    for (std::size_t i = 0; i < r.n; ++i) {
        RatVec row(r.l);
        for (std::size_t k = 0; k < r.l; ++k) row[k] = r.B_cols[k][i];
        bool placed = false;
        for (std::size_t c = 0; c < reps.size(); ++c)
            if (reps[c] == row) {
                classes[c].push_back(i);
                placed = true;
                break;
            }
        if (!placed) {
            reps.push_back(std::move(row));
            classes.push_back({i});
        }
    }
    return classes;
}

}  // namespace liemin
