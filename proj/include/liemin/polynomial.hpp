#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "liemin/monomial.hpp"
#include "liemin/order.hpp"
#include "liemin/rational.hpp"

namespace liemin {

// Sparse multivariate polynomial in canonical form: no zero coefficient is
// ever stored, and equality is term-map equality. The coefficient type is
// exact rational in the algebraic layer and double in the numeric layer.
template <typename C>
class BasicPoly {
public:
    using TermMap = std::map<Monomial, C, GrevlexLess>;

    BasicPoly() : dim_(0) {}
    explicit BasicPoly(std::size_t dim) : dim_(dim) {}

    static BasicPoly zero(std::size_t dim) { return BasicPoly(dim); }

    static BasicPoly constant(std::size_t dim, const C& c) {
        BasicPoly p(dim);
        p.add_term(Monomial::one(dim), c);
        return p;
    }

    static BasicPoly variable(std::size_t dim, std::size_t i) {
        BasicPoly p(dim);
        p.add_term(Monomial::var(dim, i), C(1));
        return p;
    }

    static BasicPoly term(std::size_t dim, const Monomial& m, const C& c) {
        BasicPoly p(dim);
        p.add_term(m, c);
        return p;
    }

    std::size_t dim() const { return dim_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }

    uint64_t degree() const {  // deg(0) taken as 0
        uint64_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    void add_term(const Monomial& m, const C& c) {
        if (c == C(0)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == C(0)) terms_.erase(it);
        }
    }

    BasicPoly operator+(const BasicPoly& o) const {
        check_dim(o);
        BasicPoly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }

    BasicPoly operator-(const BasicPoly& o) const {
        check_dim(o);
        BasicPoly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, C(-1) * c);
        return r;
    }

    BasicPoly operator-() const { return scaled(C(-1)); }

    BasicPoly operator*(const BasicPoly& o) const {
        check_dim(o);
        BasicPoly r(dim_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    BasicPoly scaled(const C& c) const {
        BasicPoly r(dim_);
        if (c == C(0)) return r;
        for (const auto& [m, k] : terms_) r.terms_.emplace(m, c * k);
        return r;
    }

    BasicPoly mul_term(const Monomial& m, const C& c) const {
        BasicPoly r(dim_);
        if (c == C(0)) return r;
        for (const auto& [mm, k] : terms_) r.terms_.emplace(mm * m, c * k);
        return r;
    }

    bool operator==(const BasicPoly& o) const {
        return dim_ == o.dim_ && terms_ == o.terms_;
    }

    C evaluate(const std::vector<C>& v) const {
        if (v.size() != dim_) throw std::invalid_argument("evaluation point dimension mismatch");
        C total(0);
        for (const auto& [m, c] : terms_) {
            C t = c;
            for (std::size_t i = 0; i < dim_; ++i)
                for (uint32_t e = 0; e < m.exps[i]; ++e) t *= v[i];
            total += t;
        }
        return total;
    }

    BasicPoly partial(std::size_t i) const {
        BasicPoly r(dim_);
        for (const auto& [m, c] : terms_) {
            if (m.exps[i] == 0) continue;
            Monomial dm = m;
            dm.exps[i] -= 1;
            r.add_term(dm, c * C(static_cast<long>(m.exps[i])));
        }
        return r;
    }

    // Leading term w.r.t. an arbitrary runtime order; linear scan.
    std::pair<Monomial, C> leading_term(const MonomialOrder& ord) const {
        if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
        auto best = terms_.begin();
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
            if (ord.less(best->first, it->first)) best = it;
        return {best->first, best->second};
    }

    std::string render(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        // Display in descending grevlex.
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const C& c = it->second;
            std::string cs = coeff_str(c);
            bool neg = !cs.empty() && cs[0] == '-';
            if (first) {
                if (neg) os << "-";
            } else {
                os << (neg ? " - " : " + ");
            }
            if (neg) cs = cs.substr(1);
            if (it->first.is_one()) {
                os << cs;
            } else if (cs == "1") {
                os << it->first.render(names);
            } else {
                os << cs << "*" << it->first.render(names);
            }
            first = false;
        }
        return os.str();
    }

private:
    static std::string coeff_str(const Rat& c) { return rat_to_string(c); }
    static std::string coeff_str(double c) {
        std::ostringstream os;
        os.precision(17);
        os << c;
        return os.str();
    }

    void check_dim(const BasicPoly& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("polynomial dimension mismatch");
    }

    std::size_t dim_;
    TermMap terms_;
};

using Poly = BasicPoly<Rat>;
using DPoly = BasicPoly<double>;

inline DPoly to_double_poly(const Poly& p) {
    DPoly r(p.dim());
    for (const auto& [m, c] : p.terms()) r.add_term(m, rat_to_double(c));
    return r;
}

// Substitutes variable x_i by images[i]; all images share a common dimension.
template <typename C>
BasicPoly<C> substitute(const BasicPoly<C>& p, const std::vector<BasicPoly<C>>& images) {
    if (images.size() != p.dim()) throw std::invalid_argument("substitute image count mismatch");
    const std::size_t out_dim = images.empty() ? 0 : images[0].dim();
    BasicPoly<C> total(out_dim);
    for (const auto& [m, c] : p.terms()) {
        BasicPoly<C> term = BasicPoly<C>::constant(out_dim, c);
        for (std::size_t i = 0; i < p.dim(); ++i)
            for (uint32_t e = 0; e < m.exps[i]; ++e) term = term * images[i];
        total = total + term;
    }
    return total;
}

}  // namespace liemin
