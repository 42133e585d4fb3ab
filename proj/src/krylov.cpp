#include "liemin/krylov.hpp"

#include <cmath>
#include <stdexcept>

#include "liemin/lie.hpp"

namespace liemin {

void MonomialBasis::push(const Monomial& m) {
    if (index.count(m)) return;
    index.emplace(m, monomials.size());
    monomials.push_back(m);
}

RatVec SparseRatMatrix::transpose_apply(const RatVec& v) const {
    RatVec r(n, Rat(0));
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& [row, c] : cols[j]) r[j] += c * v[row];
    return r;
}

std::vector<double> SparseRatMatrix::transpose_apply(const std::vector<double>& v) const {
    std::vector<double> r(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& [row, c] : cols[j]) r[j] += rat_to_double(c) * v[row];
    return r;
}

MonomialBasis monomial_closure(const std::vector<Poly>& S, const VectorField& F, std::size_t m) {
    if (m < 1) throw std::invalid_argument("monomial closure needs m >= 1");
    MonomialBasis basis;
    std::vector<Poly> layer = S;
    for (std::size_t j = 0; j < m; ++j) {
        for (const auto& p : layer)
            for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) basis.push(it->first);
        if (j + 1 < m)
            for (auto& p : layer) p = lie_derivative(p, F);
    }
    return basis;
}

SparseRatMatrix lie_matrix(const MonomialBasis& basis, const VectorField& F, bool* closed_out) {
    SparseRatMatrix L;
    L.n = basis.size();
    L.cols.resize(L.n);
    bool closed = true;
    for (std::size_t j = 0; j < L.n; ++j) {
        Poly mono = Poly::term(F.dim(), basis.monomials[j], Rat(1));
        Poly d = lie_derivative(mono, F);
        for (const auto& [m, c] : d.terms()) {
            auto it = basis.index.find(m);
            if (it == basis.index.end()) {
                closed = false;
                continue;
            }
            L.cols[j].emplace_back(it->second, c);
        }
    }
    if (closed_out) *closed_out = closed;
    return L;
}

namespace {

double dnorm(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double ddot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

ArnoldiResult arnoldi(const SparseRatMatrix& L, const std::vector<double>& phi, std::size_t m) {
    ArnoldiResult res;
    const double nphi = dnorm(phi);
    if (nphi == 0.0 || m == 0) return res;
    const double breakdown = 1e-12 * nphi;

    std::vector<std::vector<double>> b;
    std::vector<double> b1 = phi;
    // Sign convention: leading (first nonzero) entry of b1 positive.
    double lead = 0;
    for (double x : b1)
        if (x != 0) {
            lead = x;
            break;
        }
    double sgn = lead < 0 ? -1.0 : 1.0;
    for (double& x : b1) x = sgn * x / nphi;
    b.push_back(b1);

    std::vector<std::vector<double>> h;  // h[k] = column k of the Hessenberg data
    bool happy = false;
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<double> u = L.transpose_apply(b[k]);
        std::vector<double> hk(m + 1, 0.0);
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t i = 0; i <= k; ++i) {
                double c = ddot(b[i], u);
                hk[i] += c;
                for (std::size_t t = 0; t < u.size(); ++t) u[t] -= c * b[i][t];
            }
        double nu = dnorm(u);
        hk[k + 1] = nu;
        h.push_back(hk);
        if (nu < breakdown) {
            happy = true;
            break;
        }
        if (k + 1 < m) {
            for (double& x : u) x /= nu;
            b.push_back(u);
        }
    }

    const std::size_t l = b.size();
    res.B_cols = b;
    res.happy = happy;
    res.H.assign(l, std::vector<double>(l, 0.0));
    for (std::size_t k = 0; k < h.size() && k < l; ++k)
        for (std::size_t i = 0; i < l; ++i) res.H[i][k] = h[k][i];
    return res;
}

LinearReducedSystem linearize(const std::vector<Poly>& S, const IVP& ivp, std::size_t m,
                              KrylovMode mode) {
    if (m < 1) throw std::invalid_argument("linearize needs m >= 1");
    ivp.validate();
    LinearReducedSystem r;
    r.mode = mode;
    r.order = m;
    r.basis = monomial_closure(S, ivp.field, m);
    r.L = lie_matrix(r.basis, ivp.field, &r.closed);
    r.phi.resize(r.basis.size());
    bool all_zero = true;
    for (std::size_t i = 0; i < r.basis.size(); ++i) {
        Poly mono = Poly::term(ivp.dim(), r.basis.monomials[i], Rat(1));
        r.phi[i] = mono.evaluate(ivp.v0);
        if (r.phi[i] != 0) all_zero = false;
    }
    if (all_zero) {
        r.empty_phi = true;
        return r;
    }

    if (mode == KrylovMode::RationalExact) {
        // Unnormalized Krylov chain: w_{k+1} = L^T w_k minus its projection
        // onto the earlier vectors; exact zero residual is a happy breakdown.
        r.W_cols.push_back(r.phi);
        r.D.push_back(dot(r.phi, r.phi));
        RatRows acols;  // columns of A
        for (std::size_t k = 0; k < m; ++k) {
            RatVec u = r.L.transpose_apply(r.W_cols[k]);
            RatVec ak(m, Rat(0));
            RatVec res = u;
            for (std::size_t i = 0; i < r.W_cols.size(); ++i) {
                Rat c = dot(r.W_cols[i], u) / r.D[i];
                ak[i] = c;
                for (std::size_t t = 0; t < res.size(); ++t) res[t] -= c * r.W_cols[i][t];
            }
            bool zero = true;
            for (const auto& x : res)
                if (x != 0) {
                    zero = false;
                    break;
                }
            if (zero) {
                acols.push_back(ak);
                r.happy = true;
                break;
            }
            if (k + 1 < m) {
                // The residual itself is the next basis vector, with
                // coefficient 1 in the Hessenberg column.
                ak[k + 1] = Rat(1);
                r.W_cols.push_back(res);
                r.D.push_back(dot(res, res));
            }
            acols.push_back(ak);
        }
        r.l = r.W_cols.size();
        r.A.assign(r.l, RatVec(r.l, Rat(0)));
        for (std::size_t k = 0; k < acols.size() && k < r.l; ++k)
            for (std::size_t i = 0; i < r.l; ++i) r.A[i][k] = acols[k][i];
        r.y0.assign(r.l, Rat(0));
        r.y0[0] = Rat(1);
    } else {
        std::vector<double> phif(r.phi.size());
        for (std::size_t i = 0; i < phif.size(); ++i) phif[i] = rat_to_double(r.phi[i]);
        ArnoldiResult ar = arnoldi(r.L, phif, m);
        r.B_cols = ar.B_cols;
        r.Af = ar.H;
        r.happy = ar.happy;
        r.l = r.B_cols.size();
        r.y0f.assign(r.l, 0.0);
        for (std::size_t k = 0; k < r.l; ++k) r.y0f[k] = ddot(r.B_cols[k], phif);
    }
    r.exact = r.happy && r.closed;
    return r;
}

namespace {

RatVec coeff_vector(const Poly& p, const MonomialBasis& basis) {
    RatVec v(basis.size(), Rat(0));
    for (const auto& [m, c] : p.terms()) {
        auto it = basis.index.find(m);
        if (it == basis.index.end())
            throw std::invalid_argument("polynomial leaves the monomial basis");
        v[it->second] = c;
    }
    return v;
}

}  // namespace

std::vector<double> reconstruct_numeric(const Poly& p, const LinearReducedSystem& r) {
    RatVec pv = coeff_vector(p, r.basis);
    std::vector<double> row(r.l, 0.0);
    for (std::size_t k = 0; k < r.l; ++k) {
        if (r.mode == KrylovMode::Float) {
            double s = 0;
            for (std::size_t i = 0; i < pv.size(); ++i) s += rat_to_double(pv[i]) * r.B_cols[k][i];
            row[k] = s;
        } else {
            row[k] = rat_to_double(dot(pv, r.W_cols[k]));
        }
    }
    return row;
}

RatVec reconstruct_exact(const Poly& p, const LinearReducedSystem& r) {
    if (r.mode != KrylovMode::RationalExact)
        throw std::logic_error("exact reconstruction needs rational mode");
    RatVec pv = coeff_vector(p, r.basis);
    RatVec row(r.l, Rat(0));
    for (std::size_t k = 0; k < r.l; ++k) row[k] = dot(pv, r.W_cols[k]);
    return row;
}

RatVec linear_taylor(const RatVec& row, const RatRows& A, const RatVec& y0, std::size_t n) {
    RatVec cur = y0;
    RatVec out;
    Rat fact(1);
    for (std::size_t j = 0; j < n; ++j) {
        if (j > 0) {
            fact *= Rat(static_cast<long>(j));
            RatVec next(cur.size(), Rat(0));
            for (std::size_t i = 0; i < A.size(); ++i) next[i] = dot(A[i], cur);
            cur = next;
        }
        out.push_back(dot(row, cur) / fact);
    }
    return out;
}

std::vector<double> linear_taylor(const std::vector<double>& row,
                                  const std::vector<std::vector<double>>& A,
                                  const std::vector<double>& y0, std::size_t n) {
    std::vector<double> cur = y0;
    std::vector<double> out;
    double fact = 1;
    for (std::size_t j = 0; j < n; ++j) {
        if (j > 0) {
            fact *= static_cast<double>(j);
            std::vector<double> next(cur.size(), 0.0);
            for (std::size_t i = 0; i < A.size(); ++i) next[i] = ddot(A[i], cur);
            cur = next;
        }
        out.push_back(ddot(row, cur) / fact);
    }
    return out;
}

RatVec krylov_taylor_exact(const Poly& p, const LinearReducedSystem& r, std::size_t n) {
    if (r.empty_phi) return RatVec(n, Rat(0));
    return linear_taylor(reconstruct_exact(p, r), r.A, r.y0, n);
}

std::vector<double> krylov_taylor_numeric(const Poly& p, const LinearReducedSystem& r,
                                          std::size_t n) {
    if (r.empty_phi) return std::vector<double>(n, 0.0);
    if (r.mode == KrylovMode::RationalExact) {
        RatVec t = krylov_taylor_exact(p, r, n);
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = rat_to_double(t[i]);
        return out;
    }
    return linear_taylor(reconstruct_numeric(p, r), r.Af, r.y0f, n);
}

}  // namespace liemin
