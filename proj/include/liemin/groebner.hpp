#pragma once

#include <vector>

#include "liemin/order.hpp"
#include "liemin/polynomial.hpp"

namespace liemin {

struct NormalFormResult {
    Poly remainder;
    std::vector<Poly> quotients;  // one per divisor, p = sum q_i g_i + remainder
};

// Multivariate division of p by the list G. No term of the remainder is
// divisible by any leading term of G. G entries must be nonzero; G may be
// empty, in which case p is its own remainder.
NormalFormResult normal_form(const Poly& p, const std::vector<Poly>& G, const MonomialOrder& ord);

// S(p, q) = (lcm/LT(p)) p - (lcm/LT(q)) q, the leading-term cancellation pair.
Poly s_polynomial(const Poly& p, const Poly& q, const MonomialOrder& ord);

struct GroebnerBasis {
    std::vector<Poly> generators;
    MonomialOrder order;
    bool reduced = false;
};

struct BuchbergerOptions {
    std::size_t pair_cap = 100000;  // diagnostic abort
    bool reduce = true;             // inter-reduce and make monic
};

struct GroebnerCapExceeded : std::runtime_error {
    explicit GroebnerCapExceeded(std::size_t cap)
        : std::runtime_error("Buchberger pair-reduction cap (" + std::to_string(cap) +
                             ") exceeded") {}
};

// Buchberger with the coprime-leading-term and chain criteria, normal
// pair-selection strategy (minimal lcm degree, ties by input index).
GroebnerBasis buchberger(std::vector<Poly> S, const MonomialOrder& ord,
                         const BuchbergerOptions& opts = {});

bool ideal_member(const Poly& p, const GroebnerBasis& G);
bool ideal_member(const Poly& p, const GroebnerBasis& G, std::vector<Poly>& quotients);

}  // namespace liemin
