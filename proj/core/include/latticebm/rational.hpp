#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace latticebm {

// Exact rational arithmetic is delegated to GMP. mpq_class keeps values
// canonical (lowest terms, positive denominator), which is exactly the
// invariant we need everywhere.
using Rational = mpq_class;
using Integer = mpz_class;
using RatVec = std::vector<Rational>;

Integer rat_floor(const Rational& x);
Integer rat_ceil(const Rational& x);
bool is_integer(const Rational& x);

// Accepts "p", "-p", "p/q" with q > 0 after canonicalization. Anything else
// throws input_error.
Rational parse_rational(std::string_view s);
std::string to_string(const Rational& x);
std::string to_string(const RatVec& v);

// base^exp for integer exp; exp < 0 requires base != 0.
Rational pow_rational(const Rational& base, long exp);
Rational pow2(long k);

Rational rational_from_long(long num, long den = 1);

struct RatVecLess {
  bool operator()(const RatVec& a, const RatVec& b) const;
};

}  // namespace latticebm
