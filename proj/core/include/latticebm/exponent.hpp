#pragma once

#include <string>
#include <string_view>

#include "latticebm/rational.hpp"

namespace latticebm {

// An exponent p in [-inf, +inf] for p-th power means. Finite values are
// exact rationals; the infinities select max / min.
class ExtendedExponent {
 public:
  ExtendedExponent() : kind_(Kind::Finite), value_(0) {}
  static ExtendedExponent finite(const Rational& v) {
    ExtendedExponent e(Kind::Finite, v);
    e.value_.canonicalize();
    return e;
  }
  static ExtendedExponent pos_inf() { return ExtendedExponent(Kind::PosInf, 0); }
  static ExtendedExponent neg_inf() { return ExtendedExponent(Kind::NegInf, 0); }

  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  // Requires is_finite().
  const Rational& value() const;

  bool operator==(const ExtendedExponent& o) const;
  bool operator<(const ExtendedExponent& o) const;
  bool operator<=(const ExtendedExponent& o) const { return *this == o || *this < o; }

 private:
  enum class Kind { Finite, PosInf, NegInf };
  ExtendedExponent(Kind k, const Rational& v) : kind_(k), value_(v) {}
  Kind kind_;
  Rational value_;
};

// "inf", "-inf", or a rational literal.
ExtendedExponent parse_exponent(std::string_view s);
std::string to_string(const ExtendedExponent& p);

// The exponent conjugation p -> p/(np+1) that turns an integrand-level mean
// into the mean satisfied by the lattice sums. Domain is p >= -1/n; the
// boundary p = -1/n maps to -inf and p = +inf maps to 1/n.
ExtendedExponent conj_exponent(const ExtendedExponent& p, int n);

}  // namespace latticebm
