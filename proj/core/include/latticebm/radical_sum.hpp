#pragma once

#include <string>
#include <utility>
#include <vector>

#include "latticebm/exponent.hpp"
#include "latticebm/rational.hpp"

namespace latticebm {

enum class Relation { Less, Equal, Greater };
std::string relation_name(Relation r);
Relation reverse(Relation r);

// How a comparison was decided: structural identity of normal forms, or a
// dyadic interval refinement that separated the two values (bits records the
// working precision that sufficed).
struct OrderingCertificate {
  Relation relation;
  enum class Proof { Algebraic, Interval } proof;
  unsigned bits = 0;
};

namespace detail {
// prime -> exponent, sorted by prime; exponents may be negative while a term
// is being assembled from a rational base.
using Factorization = std::vector<std::pair<Integer, long>>;
}  // namespace detail

// A finite sum  sum_i coeff_i * radicand_i^(1/degree)  with nonnegative
// rational coefficients. Normal form keeps each radicand a degree-th-power-
// free positive integer (denominators are cleared into the coefficient), the
// radicands pairwise distinct and sorted, and every coefficient positive.
// That makes the normal form unique for a value at fixed degree, because
// distinct power-free integer roots are linearly independent over Q, so
// equality of values is decidable by comparing normal forms.
class RadicalSum {
 public:
  struct Term {
    Rational coeff;
    Integer radicand;
  };

  RadicalSum() : degree_(1) {}  // zero
  explicit RadicalSum(const Rational& value);
  // radicand^(1/degree) for a nonnegative rational radicand.
  static RadicalSum root(const Rational& radicand, unsigned degree);
  static RadicalSum term(const Rational& coeff, const Rational& radicand, unsigned degree);
  // coeff * (base^power)^(1/degree); base > 0, factored once so large powers
  // never need refactoring.
  static RadicalSum power_root(const Rational& coeff, const Rational& base, long power,
                               unsigned degree);

  unsigned degree() const { return degree_; }
  std::vector<Term> terms() const;
  bool is_zero() const { return entries_.empty(); }
  bool is_rational() const;
  Rational rational_value() const;

  RadicalSum scaled(const Rational& c) const;  // c >= 0
  RadicalSum pow(unsigned e) const;
  // Re-express with a larger degree (target must be a multiple of degree()).
  RadicalSum raised_to_degree(unsigned target) const;

  friend RadicalSum operator+(const RadicalSum& a, const RadicalSum& b);
  friend RadicalSum operator*(const RadicalSum& a, const RadicalSum& b);

  std::string to_string() const;
  std::string to_decimal(unsigned significant_digits = 20) const;

  friend OrderingCertificate compare_radicals(const RadicalSum& lhs, const RadicalSum& rhs);

 private:
  struct Entry {
    Rational coeff;
    Integer radicand;
    detail::Factorization fact;
  };
  unsigned degree_;
  std::vector<Entry> entries_;

  static RadicalSum from_raw(unsigned degree,
                             std::vector<std::pair<Rational, detail::Factorization>> raw);
};

// Exact ordering of two radical sums. Equality is decided algebraically on
// the common-degree normal forms; strict order by interval refinement
// starting at 64 bits and doubling (terminates because equality has already
// been excluded). Degrees are unified internally via their lcm.
OrderingCertificate compare_radicals(const RadicalSum& lhs, const RadicalSum& rhs);

// The p-th power mean M_p(a, b, lambda) of nonnegative rationals, exact.
// Conventions: M_p = 0 whenever a*b = 0 (for every p); p = +-inf are max and
// min; p = 0 with lambda = s/t is the single t-th root of a^(t-s) * b^s. For
// finite p = u/v the value is (S^v)^(1/u) with S the cleared-power inner sum;
// it is returned whenever that expression collapses into the radical-sum
// language (always when u = 1), otherwise unrepresentable_error is thrown.
// Verifiers never need the general case: they compare in the power domain.
RadicalSum p_mean(const Rational& a, const Rational& b, const Rational& lambda,
                  const ExtendedExponent& p);

// Exact comparison of a nonnegative rational against M_p(a, b, lambda)
// without materializing the mean. Both sides are conjugated into the power
// domain; lhs/rhs are oriented so the claim under test reads lhs >= rhs, and
// relation equals both compare_radicals(lhs, rhs) and the ordering of value
// versus the mean.
struct PMeanComparison {
  Relation relation;
  RadicalSum lhs, rhs;
  OrderingCertificate ordering;
};
PMeanComparison compare_with_p_mean(const Rational& value, const Rational& a, const Rational& b,
                                    const Rational& lambda, const ExtendedExponent& p);

// Smallest rational with denominator 2^frac_bits that is >= M_p(a, b,
// lambda). Floating enclosures only propose candidates; acceptance is
// decided by exact comparison.
Rational dyadic_ceil_p_mean(const Rational& a, const Rational& b, const Rational& lambda,
                            const ExtendedExponent& p, unsigned frac_bits);

}  // namespace latticebm
