#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cspcount {

/// Exact arbitrary-precision rational. All arithmetic in the library is
/// performed on this type; there is no floating-point evaluation mode.
using Rat = mpq_class;

/// Builds a canonical rational from an integer pair. Throws on zero
/// denominator.
inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p", "-p" or "p/q" in base 10. Throws std::invalid_argument on
/// malformed input (including zero denominators).
inline Rat parse_rat(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    Rat q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("malformed rational literal: '" + text + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("rational with zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

/// Lowest-terms decimal string; integers print without a "/1" suffix unless
/// always_fraction is set.
inline std::string rat_str(const Rat& q, bool always_fraction = false) {
    std::string s = q.get_str();
    if (always_fraction && s.find('/') == std::string::npos) s += "/1";
    return s;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

/// q^e by binary exponentiation; q^0 == 1.
inline Rat pow_rat(const Rat& q, std::uint64_t e) {
    Rat result(1);
    Rat base = q;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

}  // namespace cspcount
