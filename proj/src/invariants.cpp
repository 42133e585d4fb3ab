#include "liemin/invariants.hpp"

#include <algorithm>

namespace liemin {

NaiveResult naive_invariant(const Poly& p, const IVP& ivp, std::size_t cap) {
    ivp.validate();
    if (p.dim() != ivp.dim()) throw std::invalid_argument("naive_invariant dimension mismatch");

    std::vector<Poly> chain{p};
    for (std::size_t m = 0; m <= cap; ++m) {
        Rat val = chain[m].evaluate(ivp.v0);
        if (val != 0) {
            NaiveResult r;
            r.valid = false;
            r.refuted_j = m;
            r.witness = val;
            return r;
        }
        chain.push_back(lie_derivative(chain[m], ivp.field));
        GroebnerBasis gb = buchberger({chain.begin(), chain.begin() + m + 1},
                                      MonomialOrder::grevlex());
        std::vector<Poly> quots;
        if (ideal_member(chain[m + 1], gb, quots)) {
            NaiveResult r;
            r.valid = true;
            r.m = m;
            r.basis.assign(chain.begin(), chain.begin() + m + 1);
            r.groebner = std::move(gb);
            r.next = chain[m + 1];
            r.next_quotients = std::move(quots);
            return r;
        }
    }
    throw IterationCapExceeded(cap);
}

RatVec constraint_row(const PolyTemplate& pi, const std::vector<Rat>& v0) {
    return pi.constraint_row(v0);
}

PolyTemplate result_template(const PolyTemplate& pi, const RatRows& V_basis) {
    PolyTemplate out(pi.dim(), V_basis.size());
    for (std::size_t i = 0; i < V_basis.size(); ++i) {
        Poly pb = pi.instantiate(V_basis[i]);
        for (const auto& [m, c] : pb.terms()) out.add_term(m, LinExpr::param(i, c));
    }
    return out;
}

namespace {

void append_unique(std::vector<Poly>& gens, const Poly& p) {
    if (p.is_zero()) return;
    if (std::find(gens.begin(), gens.end(), p) == gens.end()) gens.push_back(p);
}

InvariantResult finish(const PolyTemplate& pi, std::size_t m, RatRows basis,
                       std::vector<Poly> gens, GroebnerBasis gb) {
    InvariantResult r;
    r.m = m;
    r.V_basis = std::move(basis);
    r.J_generators = std::move(gens);
    r.J_groebner = std::move(gb);
    r.result_template = result_template(pi, r.V_basis);
    return r;
}

InvariantResult run_double_chain(const PolyTemplate& pi, const IVP& ivp,
                                 const DoubleChainOptions& opts, bool linear_fast_path) {
    ivp.validate();
    if (pi.dim() != ivp.dim()) throw std::invalid_argument("double_chain dimension mismatch");
    if (pi.nparams() == 0) throw std::invalid_argument("template has no parameters");
    if (linear_fast_path && !ivp.field.is_linear())
        throw std::invalid_argument("double_chain_linear requires a linear vector field");

    const std::size_t n = pi.nparams();
    ConstraintMatrix T(n);
    std::vector<PolyTemplate> derivs{pi};
    T.add_row(derivs[0].constraint_row(ivp.v0));

    uint64_t drift_deg = 0;
    for (const auto& f : ivp.field.drifts) drift_deg = std::max(drift_deg, f.degree());
    const long pseudo_k = opts.pseudoideal_degree >= 0
                              ? opts.pseudoideal_degree
                              : static_cast<long>(pi.degree() + drift_deg);

    for (std::size_t i = 0; i <= opts.cap; ++i) {
        derivs.push_back(template_lie_derivative(derivs[i], ivp.field));
        bool grew = T.add_row(derivs[i + 1].constraint_row(ivp.v0));
        if (grew) continue;  // V_(i+1) strictly smaller than V_i

        // V stabilized at index i; candidate m = i.
        RatRows basis = T.null_space_basis();
        if (basis.empty()) {
            // J_i = <emptyset>: nothing to check, the zero ideal is invariant.
            return finish(pi, i, {}, {}, GroebnerBasis{{}, MonomialOrder::grevlex(), true});
        }
        std::vector<Poly> gens;
        for (std::size_t j = 0; j <= i; ++j)
            for (const auto& b : basis) append_unique(gens, derivs[j].instantiate(b));

        if (linear_fast_path) {
            GroebnerBasis gb = buchberger(gens, MonomialOrder::grevlex(), opts.groebner);
            return finish(pi, i, std::move(basis), std::move(gens), std::move(gb));
        }

        bool stable = true;
        std::optional<GroebnerBasis> gb;
        for (const auto& b : basis) {
            Poly cand = derivs[i + 1].instantiate(b);
            if (cand.is_zero()) continue;
            if (opts.use_pseudoideal &&
                pseudoideal_member(cand, gens, static_cast<std::size_t>(pseudo_k)))
                continue;
            if (!gb) gb = buchberger(gens, MonomialOrder::grevlex(), opts.groebner);
            if (!ideal_member(cand, *gb)) {
                stable = false;
                break;
            }
        }
        if (stable) {
            if (!gb) gb = buchberger(gens, MonomialOrder::grevlex(), opts.groebner);
            return finish(pi, i, std::move(basis), std::move(gens), std::move(*gb));
        }
        // J grew: keep iterating; the dependent row left T unchanged.
    }
    throw IterationCapExceeded(opts.cap);
}

}  // namespace

InvariantResult double_chain(const PolyTemplate& pi, const IVP& ivp,
                             const DoubleChainOptions& opts) {
    return run_double_chain(pi, ivp, opts, false);
}

InvariantResult double_chain_linear(const PolyTemplate& pi, const IVP& ivp,
                                    const DoubleChainOptions& opts) {
    return run_double_chain(pi, ivp, opts, true);
}

CertResult certify_invariant(const std::vector<Poly>& S, const IVP& ivp,
                             const BuchbergerOptions& opts) {
    ivp.validate();
    if (S.empty()) throw std::invalid_argument("certify_invariant: empty generator list");
    CertResult res;
    for (std::size_t i = 0; i < S.size(); ++i) {
        Rat v = S[i].evaluate(ivp.v0);
        if (v != 0) {
            res.verdict = CertResult::Verdict::NonzeroAtInit;
            res.failed_index = i;
            res.failed_value = v;
            return res;
        }
    }
    res.groebner = buchberger(S, MonomialOrder::grevlex(), opts);
    for (std::size_t i = 0; i < S.size(); ++i) {
        std::vector<Poly> quots;
        if (!ideal_member(lie_derivative(S[i], ivp.field), res.groebner, quots)) {
            res.verdict = CertResult::Verdict::NotClosed;
            res.failed_index = i;
            res.lie_quotients.clear();
            return res;
        }
        res.lie_quotients.push_back(std::move(quots));
    }
    res.verdict = CertResult::Verdict::Certified;
    return res;
}

bool check_equivalence(const Poly& p, const Poly& q, const IVP& ivp, std::size_t cap) {
    return naive_invariant(p - q, ivp, cap).valid;
}

namespace {

void enumerate_monomials(std::size_t dim, std::size_t max_deg, std::size_t pos, Monomial& cur,
                         std::size_t used, std::vector<Monomial>& out) {
    if (pos == dim) {
        out.push_back(cur);
        return;
    }
    for (std::size_t e = 0; e + used <= max_deg; ++e) {
        cur.exps[pos] = static_cast<uint32_t>(e);
        enumerate_monomials(dim, max_deg, pos + 1, cur, used + e, out);
    }
    cur.exps[pos] = 0;
}

}  // namespace

bool pseudoideal_member(const Poly& p, const std::vector<Poly>& S, std::size_t k) {
    if (p.is_zero()) return true;
    std::vector<Poly> gens;
    for (const auto& g : S)
        if (!g.is_zero()) gens.push_back(g);
    if (gens.empty()) return false;
    const std::size_t dim = p.dim();

    std::vector<Monomial> mults;
    Monomial scratch = Monomial::one(dim);
    enumerate_monomials(dim, k, 0, scratch, 0, mults);

    // Unknowns: one coefficient per (generator, multiplier monomial).
    // Equations: one per monomial appearing in p or in any product.
    std::map<Monomial, std::size_t, GrevlexLess> eq_index;
    auto eq_of = [&](const Monomial& m) {
        auto [it, inserted] = eq_index.emplace(m, eq_index.size());
        return it->second;
    };

    struct Column {
        std::vector<std::pair<std::size_t, Rat>> entries;
    };
    std::vector<Column> cols;
    for (const auto& g : gens) {
        for (const auto& beta : mults) {
            Column col;
            for (const auto& [m, c] : g.terms()) col.entries.emplace_back(eq_of(m * beta), c);
            cols.push_back(std::move(col));
        }
    }
    for (const auto& [m, c] : p.terms()) eq_of(m);

    const std::size_t rows_n = eq_index.size(), cols_n = cols.size();
    RatRows rows(rows_n, RatVec(cols_n, Rat(0)));
    for (std::size_t c = 0; c < cols_n; ++c)
        for (const auto& [r, v] : cols[c].entries) rows[r][c] += v;
    RatVec rhs(rows_n, Rat(0));
    for (const auto& [m, c] : p.terms()) rhs[eq_index.at(m)] = c;

    RatVec sol;
    return solve_linear_system(std::move(rows), std::move(rhs), sol);
}

}  // namespace liemin
