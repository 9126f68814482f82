#include "latticebm/rational.hpp"

#include <cctype>

#include "latticebm/errors.hpp"

namespace latticebm {

Integer rat_floor(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

Integer rat_ceil(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

Rational parse_rational(std::string_view s) {
  if (s.empty()) throw input_error("empty rational literal");
  auto digits = [](std::string_view t) {
    if (t.empty()) return false;
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string_view num = s;
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!digits(den) || den == "0")
      throw input_error("malformed rational literal: " + std::string(s));
  }
  std::string_view mag = num;
  if (!mag.empty() && mag.front() == '-') mag.remove_prefix(1);
  if (!digits(mag)) throw input_error("malformed rational literal: " + std::string(s));
  Rational r(std::string(s), 10);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_string(const RatVec& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + ")";
}

Rational pow_rational(const Rational& base, long exp) {
  if (exp == 0) return Rational(1);
  if (base == 0 && exp < 0) throw input_error("zero raised to a negative power");
  unsigned long e = static_cast<unsigned long>(exp < 0 ? -exp : exp);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), e);
  Rational r = exp < 0 ? Rational(den, num) : Rational(num, den);
  r.canonicalize();
  return r;
}

Rational pow2(long k) { return pow_rational(Rational(2), k); }

Rational rational_from_long(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool RatVecLess::operator()(const RatVec& a, const RatVec& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace latticebm
