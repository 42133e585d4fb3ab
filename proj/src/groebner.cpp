#include "liemin/groebner.hpp"

#include <algorithm>
#include <list>
#include <stdexcept>

namespace liemin {

NormalFormResult normal_form(const Poly& p, const std::vector<Poly>& G, const MonomialOrder& ord) {
    for (const auto& g : G)
        if (g.is_zero()) throw std::invalid_argument("zero divisor in normal_form");

    NormalFormResult res;
    res.remainder = Poly::zero(p.dim());
    res.quotients.assign(G.size(), Poly::zero(p.dim()));

    std::vector<std::pair<Monomial, Rat>> lts;
    lts.reserve(G.size());
    for (const auto& g : G) lts.push_back(g.leading_term(ord));

    Poly work = p;
    while (!work.is_zero()) {
        auto [lm, lc] = work.leading_term(ord);
        bool divided = false;
        for (std::size_t i = 0; i < G.size(); ++i) {
            if (!lts[i].first.divides(lm)) continue;
            Monomial q = lts[i].first.divide_into(lm);
            Rat c = lc / lts[i].second;
            res.quotients[i].add_term(q, c);
            work = work - G[i].mul_term(q, c);
            divided = true;
            break;
        }
        if (!divided) {
            res.remainder.add_term(lm, lc);
            work.add_term(lm, -lc);
        }
    }
    return res;
}

Poly s_polynomial(const Poly& p, const Poly& q, const MonomialOrder& ord) {
    if (p.is_zero() || q.is_zero()) throw std::invalid_argument("s_polynomial of zero polynomial");
    auto [lmp, lcp] = p.leading_term(ord);
    auto [lmq, lcq] = q.leading_term(ord);
    Monomial l = lmp.lcm(lmq);
    return p.mul_term(lmp.divide_into(l), 1 / lcp) - q.mul_term(lmq.divide_into(l), 1 / lcq);
}

namespace {

struct Pair {
    std::size_t i, j;
    Monomial lcm;
    uint64_t deg;
};

bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t k = 0; k < a.exps.size(); ++k)
        if (a.exps[k] > 0 && b.exps[k] > 0) return false;
    return true;
}

}  // namespace

GroebnerBasis buchberger(std::vector<Poly> S, const MonomialOrder& ord,
                         const BuchbergerOptions& opts) {
    // Drop zeros; the empty list is the basis of the zero ideal.
    std::vector<Poly> basis;
    for (auto& p : S)
        if (!p.is_zero()) basis.push_back(std::move(p));

    std::vector<std::pair<Monomial, Rat>> lts;
    for (const auto& g : basis) lts.push_back(g.leading_term(ord));

    std::list<Pair> pairs;
    auto push_pairs = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            Pair pr{i, j, lts[i].first.lcm(lts[j].first), 0};
            pr.deg = pr.lcm.degree();
            pairs.push_back(std::move(pr));
        }
    };
    for (std::size_t j = 0; j < basis.size(); ++j) push_pairs(j);

    std::size_t reductions = 0;
    while (!pairs.empty()) {
        // Normal strategy: minimal lcm degree, ties by insertion order.
        auto best = pairs.begin();
        for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it)
            if (it->deg < best->deg) best = it;
        Pair pr = *best;
        pairs.erase(best);

        // Buchberger's first criterion: coprime leading monomials.
        if (coprime(lts[pr.i].first, lts[pr.j].first)) continue;
        // Chain criterion: some k with LT(k) | lcm and both (i,k), (j,k) gone.
        bool chained = false;
        for (std::size_t k = 0; k < basis.size() && !chained; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!lts[k].first.divides(pr.lcm)) continue;
            bool ik_pending = false, jk_pending = false;
            for (const auto& q : pairs) {
                auto mn = std::minmax(q.i, q.j);
                if (mn.first == std::min(pr.i, k) && mn.second == std::max(pr.i, k))
                    ik_pending = true;
                if (mn.first == std::min(pr.j, k) && mn.second == std::max(pr.j, k))
                    jk_pending = true;
            }
            if (!ik_pending && !jk_pending) chained = true;
        }
        if (chained) continue;

        if (++reductions > opts.pair_cap) throw GroebnerCapExceeded(opts.pair_cap);
        Poly s = s_polynomial(basis[pr.i], basis[pr.j], ord);
        Poly r = normal_form(s, basis, ord).remainder;
        if (r.is_zero()) continue;
        basis.push_back(std::move(r));
        lts.push_back(basis.back().leading_term(ord));
        push_pairs(basis.size() - 1);
    }

    GroebnerBasis out;
    out.order = ord;
    if (!opts.reduce) {
        out.generators = std::move(basis);
        return out;
    }

    // Minimize: drop generators whose leading term is divisible by another's.
    std::vector<bool> keep(basis.size(), true);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size() && keep[i]; ++j) {
            if (i == j || !keep[j]) continue;
            if (lts[j].first.divides(lts[i].first)) keep[i] = false;
        }
    }
    std::vector<Poly> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (keep[i]) minimal.push_back(basis[i].scaled(1 / lts[i].second));

    // Reduce each tail against the others.
    std::vector<Poly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Poly r = others.empty() ? minimal[i] : normal_form(minimal[i], others, ord).remainder;
        if (!r.is_zero()) reduced.push_back(r.scaled(1 / r.leading_term(ord).second));
    }
    // Canonical ordering of generators by leading monomial.
    std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
        return ord.less(a.leading_term(ord).first, b.leading_term(ord).first);
    });
    out.generators = std::move(reduced);
    out.reduced = true;
    return out;
}

bool ideal_member(const Poly& p, const GroebnerBasis& G) {
    std::vector<Poly> q;
    return ideal_member(p, G, q);
}

bool ideal_member(const Poly& p, const GroebnerBasis& G, std::vector<Poly>& quotients) {
    if (p.is_zero()) {
        quotients.assign(G.generators.size(), Poly::zero(p.dim()));
        return true;
    }
    if (G.generators.empty()) return false;
    auto nf = normal_form(p, G.generators, G.order);
    quotients = std::move(nf.quotients);
    return nf.remainder.is_zero();
}

}  // namespace liemin
