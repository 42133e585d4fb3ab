#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace liemin {

// Exact rational coefficient type used throughout the algebraic layer.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input.
inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    r.canonicalize();
    return r;
}

// Serialized as "p" or "p/q" (canonical form).
inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline double rat_to_double(const Rat& r) { return r.get_d(); }

}  // namespace liemin
