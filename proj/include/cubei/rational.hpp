#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cubei {

// Exact rational scalar used on all structured (closed-form) paths.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

// Parses "p", "-p/q" or a plain decimal integer. Returns nullopt on syntax
// errors or a zero denominator.
std::optional<Rational> rat_parse(std::string_view s);

// Canonical "p/q" form; integers print without the "/q" part.
std::string rat_str(const Rational& q);

// (1/2)^e and (-1/2)^e, used by the conversion formulas between monomial
// coefficients and interaction values.
Rational half_pow(unsigned e);
Rational neg_half_pow(unsigned e);

// Exact binomial coefficient; requires 0 <= k <= n.
Rational binomial(unsigned n, unsigned k);

}  // namespace cubei
