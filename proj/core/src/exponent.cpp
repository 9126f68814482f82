#include "latticebm/exponent.hpp"

#include "latticebm/errors.hpp"

namespace latticebm {

const Rational& ExtendedExponent::value() const {
  if (!is_finite()) throw input_error("infinite exponent has no finite value");
  return value_;
}

bool ExtendedExponent::operator==(const ExtendedExponent& o) const {
  if (kind_ != o.kind_) return false;
  return kind_ != Kind::Finite || value_ == o.value_;
}

bool ExtendedExponent::operator<(const ExtendedExponent& o) const {
  if (kind_ == Kind::NegInf) return o.kind_ != Kind::NegInf;
  if (kind_ == Kind::PosInf) return false;
  if (o.kind_ == Kind::PosInf) return true;
  if (o.kind_ == Kind::NegInf) return false;
  return value_ < o.value_;
}

ExtendedExponent parse_exponent(std::string_view s) {
  if (s == "inf") return ExtendedExponent::pos_inf();
  if (s == "-inf") return ExtendedExponent::neg_inf();
  return ExtendedExponent::finite(parse_rational(s));
}

std::string to_string(const ExtendedExponent& p) {
  if (p.is_pos_inf()) return "inf";
  if (p.is_neg_inf()) return "-inf";
  return to_string(p.value());
}

ExtendedExponent conj_exponent(const ExtendedExponent& p, int n) {
  if (n < 1) throw input_error("dimension must be positive");
  if (p.is_neg_inf()) throw input_error("exponent below -1/n is outside the admissible range");
  if (p.is_pos_inf()) return ExtendedExponent::finite(Rational(1, n));
  const Rational& v = p.value();
  Rational lo(-1, n);
  if (v < lo) throw input_error("exponent below -1/n is outside the admissible range");
  if (v == lo) return ExtendedExponent::neg_inf();
  if (v == 0) return ExtendedExponent::finite(Rational(0));
  Rational conj = v / (n * v + 1);
  conj.canonicalize();
  return ExtendedExponent::finite(conj);
}

}  // namespace latticebm
