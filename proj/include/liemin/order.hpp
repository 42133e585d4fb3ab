#pragma once

#include <numeric>
#include <vector>

#include "liemin/monomial.hpp"

namespace liemin {

// Total multiplicative monomial order with 1 as minimum. The permutation maps
// precedence position to variable index: perm[0] is the most significant
// variable.
struct MonomialOrder {
    enum class Kind { Grevlex, Lex };

    Kind kind = Kind::Grevlex;
    std::vector<std::size_t> perm;  // empty means identity

    static MonomialOrder grevlex() { return {}; }
    static MonomialOrder lex() { return {Kind::Lex, {}}; }

    bool less(const Monomial& a, const Monomial& b) const {
        if (perm.empty()) {
            if (kind == Kind::Grevlex) return grevlex_less(a, b);
            for (std::size_t i = 0; i < a.exps.size(); ++i)
                if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i];
            return false;
        }
        Monomial pa = a, pb = b;
        for (std::size_t i = 0; i < perm.size(); ++i) {
            pa.exps[i] = a.exps[perm[i]];
            pb.exps[i] = b.exps[perm[i]];
        }
        MonomialOrder plain{kind, {}};
        return plain.less(pa, pb);
    }
};

}  // namespace liemin
