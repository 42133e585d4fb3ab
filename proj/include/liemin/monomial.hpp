#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace liemin {

// A power product over N ambient variables. The all-zero vector is 1.
struct Monomial {
    std::vector<uint32_t> exps;

    Monomial() = default;
    explicit Monomial(std::vector<uint32_t> e) : exps(std::move(e)) {}

    static Monomial one(std::size_t n) { return Monomial(std::vector<uint32_t>(n, 0)); }

    static Monomial var(std::size_t n, std::size_t i) {
        Monomial m = one(n);
        m.exps.at(i) = 1;
        return m;
    }

    std::size_t dim() const { return exps.size(); }

    uint64_t degree() const {
        return std::accumulate(exps.begin(), exps.end(), uint64_t{0});
    }

    bool is_one() const {
        return std::all_of(exps.begin(), exps.end(), [](uint32_t e) { return e == 0; });
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r = *this;
        for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] += o.exps[i];
        return r;
    }

    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < exps.size(); ++i)
            if (exps[i] > o.exps[i]) return false;
        return true;
    }

    // Requires divides(o) in the caller's direction: computes o / this.
    Monomial divide_into(const Monomial& o) const {
        Monomial r = o;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (r.exps[i] < exps[i]) throw std::logic_error("monomial division not exact");
            r.exps[i] -= exps[i];
        }
        return r;
    }

    Monomial lcm(const Monomial& o) const {
        Monomial r = *this;
        for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] = std::max(r.exps[i], o.exps[i]);
        return r;
    }

    bool operator==(const Monomial& o) const = default;

    std::string render(const std::vector<std::string>& names) const {
        std::string s;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += names.at(i);
            if (exps[i] > 1) s += "^" + std::to_string(exps[i]);
        }
        return s.empty() ? "1" : s;
    }
};

// Graded reverse lexicographic: higher total degree wins; ties broken by the
// last nonzero exponent difference being negative.
inline bool grevlex_less(const Monomial& a, const Monomial& b) {
    uint64_t da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    for (std::size_t i = a.exps.size(); i-- > 0;) {
        if (a.exps[i] != b.exps[i]) return a.exps[i] > b.exps[i];
    }
    return false;
}

struct GrevlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_less(a, b); }
};

}  // namespace liemin
