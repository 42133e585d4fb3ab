#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "liemin/polynomial.hpp"

namespace liemin {

// Polynomial vector field F = (f_1, ..., f_N), one drift per variable.
struct VectorField {
    std::vector<Poly> drifts;

    std::size_t dim() const { return drifts.size(); }

    bool is_linear() const {
        for (const auto& f : drifts)
            if (f.degree() > 1) return false;
        return true;
    }

    void validate() const {
        for (const auto& f : drifts)
            if (f.dim() != drifts.size())
                throw std::invalid_argument("vector field drift dimension mismatch");
    }
};

// Initial value problem: field plus exact rational initial point.
struct IVP {
    VectorField field;
    std::vector<Rat> v0;
    std::vector<std::string> var_names;

    std::size_t dim() const { return field.dim(); }

    void validate() const {
        field.validate();
        if (v0.size() != field.dim() || var_names.size() != field.dim())
            throw std::invalid_argument("IVP dimension mismatch");
    }
};

}  // namespace liemin
