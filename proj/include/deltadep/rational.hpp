#ifndef DELTADEP_RATIONAL_HPP
#define DELTADEP_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace deltadep {

/// Exact arbitrary-precision rational. Always kept canonical (reduced, positive denominator).
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses `a` or `a/b` with optional leading sign. Throws std::invalid_argument.
inline Rational parse_rational(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    Rational q;
    if (q.set_str(std::string(text), 10) != 0) {
        throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
    }
    if (q.get_den() == 0) throw std::domain_error("rational with zero denominator");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace deltadep

#endif  // DELTADEP_RATIONAL_HPP
