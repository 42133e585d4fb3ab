#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "liemin/rational.hpp"

namespace liemin {

// Homogeneous linear expression in the template parameters: no constant term,
// no zero coefficient stored.
class LinExpr {
public:
    LinExpr() = default;

    static LinExpr param(std::size_t i, const Rat& c = Rat(1)) {
        LinExpr e;
        e.add(i, c);
        return e;
    }

    const std::map<std::size_t, Rat>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    void add(std::size_t i, const Rat& c) {
        if (c == 0) return;
        auto it = coeffs_.find(i);
        if (it == coeffs_.end()) {
            coeffs_.emplace(i, c);
        } else {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    LinExpr operator+(const LinExpr& o) const {
        LinExpr r = *this;
        for (const auto& [i, c] : o.coeffs_) r.add(i, c);
        return r;
    }

    LinExpr scaled(const Rat& c) const {
        LinExpr r;
        if (c == 0) return r;
        for (const auto& [i, k] : coeffs_) r.coeffs_.emplace(i, c * k);
        return r;
    }

    Rat eval(const std::vector<Rat>& v) const {
        Rat total(0);
        for (const auto& [i, c] : coeffs_) {
            if (i >= v.size()) throw std::invalid_argument("parameter vector too short");
            total += c * v[i];
        }
        return total;
    }

    bool operator==(const LinExpr& o) const = default;

private:
    std::map<std::size_t, Rat> coeffs_;
};

}  // namespace liemin
