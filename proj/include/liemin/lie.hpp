#pragma once

#include <stdexcept>

#include "liemin/ivp.hpp"
#include "liemin/poly_template.hpp"
#include "liemin/polynomial.hpp"

namespace liemin {

// Lie derivative of p along F: sum_i (dp/dx_i) * f_i.
inline Poly lie_derivative(const Poly& p, const VectorField& F) {
    if (p.dim() != F.dim()) throw std::invalid_argument("lie_derivative dimension mismatch");
    Poly r(p.dim());
    for (std::size_t i = 0; i < F.dim(); ++i) {
        Poly dp = p.partial(i);
        if (dp.is_zero()) continue;
        r = r + dp * F.drifts[i];
    }
    return r;
}

inline Poly lie_derivative_iter(const Poly& p, const VectorField& F, std::size_t j) {
    Poly r = p;
    for (std::size_t k = 0; k < j; ++k) r = lie_derivative(r, F);
    return r;
}

// Template Lie derivative: parameters act as constants, so each term
// l * alpha contributes l * L(alpha).
inline PolyTemplate template_lie_derivative(const PolyTemplate& pi, const VectorField& F) {
    if (pi.dim() != F.dim()) throw std::invalid_argument("template Lie derivative dimension mismatch");
    PolyTemplate r(pi.dim(), pi.nparams());
    for (const auto& [m, l] : pi.terms()) {
        Poly mono = Poly::term(pi.dim(), m, Rat(1));
        Poly dm = lie_derivative(mono, F);
        for (const auto& [dmm, dmc] : dm.terms()) r.add_term(dmm, l.scaled(dmc));
    }
    return r;
}

}  // namespace liemin
