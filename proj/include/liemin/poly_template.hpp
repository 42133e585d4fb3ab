#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "liemin/linexpr.hpp"
#include "liemin/monomial.hpp"
#include "liemin/polynomial.hpp"

namespace liemin {

// Polynomial whose coefficients are homogeneous linear expressions in the
// parameters a_1..a_n. Instantiation at a parameter vector is linear and the
// zero vector yields the zero polynomial.
class PolyTemplate {
public:
    PolyTemplate() : dim_(0), nparams_(0) {}
    PolyTemplate(std::size_t dim, std::size_t nparams) : dim_(dim), nparams_(nparams) {}

    std::size_t dim() const { return dim_; }
    std::size_t nparams() const { return nparams_; }
    const std::map<Monomial, LinExpr, GrevlexLess>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    uint64_t degree() const {
        uint64_t d = 0;
        for (const auto& [m, l] : terms_) d = std::max(d, m.degree());
        return d;
    }

    void add_term(const Monomial& m, const LinExpr& l) {
        if (l.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, l);
        } else {
            LinExpr s = it->second + l;
            if (s.is_zero())
                terms_.erase(it);
            else
                it->second = s;
        }
    }

    Poly instantiate(const std::vector<Rat>& v) const {
        if (v.size() != nparams_) throw std::invalid_argument("parameter vector length mismatch");
        Poly p(dim_);
        for (const auto& [m, l] : terms_) p.add_term(m, l.eval(v));
        return p;
    }

    PolyTemplate operator+(const PolyTemplate& o) const {
        if (dim_ != o.dim_ || nparams_ != o.nparams_)
            throw std::invalid_argument("template shape mismatch");
        PolyTemplate r = *this;
        for (const auto& [m, l] : o.terms_) r.add_term(m, l);
        return r;
    }

    PolyTemplate scaled(const Rat& c) const {
        PolyTemplate r(dim_, nparams_);
        for (const auto& [m, l] : terms_) r.add_term(m, l.scaled(c));
        return r;
    }

    // Multiplication by an ordinary polynomial (parameters act as constants).
    PolyTemplate mul_poly(const Poly& p) const {
        if (p.dim() != dim_) throw std::invalid_argument("dimension mismatch");
        PolyTemplate r(dim_, nparams_);
        for (const auto& [m, l] : terms_)
            for (const auto& [pm, pc] : p.terms()) r.add_term(m * pm, l.scaled(pc));
        return r;
    }

    // Row t with pi[v](v0) = t . v for all parameter vectors v.
    std::vector<Rat> constraint_row(const std::vector<Rat>& v0) const {
        std::vector<Rat> row(nparams_, Rat(0));
        for (const auto& [m, l] : terms_) {
            Rat mv(1);
            for (std::size_t i = 0; i < dim_; ++i)
                for (uint32_t e = 0; e < m.exps[i]; ++e) mv *= v0.at(i);
            if (mv == 0) continue;
            for (const auto& [i, c] : l.coeffs()) row[i] += c * mv;
        }
        return row;
    }

    std::string render(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!first) os << " + ";
            os << "(";
            bool fl = true;
            for (const auto& [i, c] : it->second.coeffs()) {
                std::string cs = rat_to_string(c);
                if (!fl && cs[0] != '-') os << "+";
                if (cs == "1")
                    os << "a" << (i + 1);
                else if (cs == "-1")
                    os << "-a" << (i + 1);
                else
                    os << cs << "*a" << (i + 1);
                fl = false;
            }
            os << ")";
            if (!it->first.is_one()) os << "*" << it->first.render(names);
            first = false;
        }
        return os.str();
    }

private:
    std::size_t dim_;
    std::size_t nparams_;
    std::map<Monomial, LinExpr, GrevlexLess> terms_;
};

}  // namespace liemin
