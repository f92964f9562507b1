#pragma once
#include <gmpxx.h>

#include <string>

namespace rzlab {

using Rational = mpq_class;
using Integer = mpz_class;

/// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double d);

/// Round to the nearest double (ties toward the truncated candidate).
double to_double_nearest(const Rational& q);

/// Accepts "p/q", integer, and decimal literals ("-2024", "1.25", "3e-4").
/// All forms are parsed exactly. Throws Err::BadConfig on malformed input.
Rational parse_rational(const std::string& s);

/// Canonical form: "p" or "p/q" with q > 0.
std::string format_rational(const Rational& q);

inline int sign_of(const Rational& q) { return sgn(q); }
inline int sign_of(const Integer& z) { return sgn(z); }

}  // namespace rzlab
