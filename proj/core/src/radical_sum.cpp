#include "latticebm/radical_sum.hpp"

#include <mpfr.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "latticebm/errors.hpp"

namespace latticebm {

std::string relation_name(Relation r) {
  switch (r) {
    case Relation::Less: return "Less";
    case Relation::Equal: return "Equal";
    case Relation::Greater: return "Greater";
  }
  return "?";
}

Relation reverse(Relation r) {
  if (r == Relation::Less) return Relation::Greater;
  if (r == Relation::Greater) return Relation::Less;
  return Relation::Equal;
}

namespace detail {
namespace {

// Trial division, with a primality shortcut so a large prime cofactor does
// not force the full sqrt walk. Radicands here are desk scale (lattice
// counts and their small powers); anything beyond the bound is refused
// rather than factored incorrectly.
constexpr unsigned long kTrialBound = 20'000'000UL;

void factor_into(Integer n, Factorization& out, long multiplicity) {
  while (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 20) != 0) {
      out.emplace_back(n, multiplicity);
      return;
    }
    bool found = false;
    Integer d = 2;
    while (true) {
      Integer sq = d * d;
      if (sq > n) break;
      if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
        long e = 0;
        do {
          mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
          ++e;
        } while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()));
        out.emplace_back(d, e * multiplicity);
        found = true;
        break;  // recheck primality of the cofactor
      }
      d += (d == 2) ? 1 : 2;
      if (d > kTrialBound) throw input_error("radicand too large to factor exactly");
    }
    if (!found && n > 1) {
      out.emplace_back(n, multiplicity);  // n < d^2, so n is prime
      return;
    }
  }
}

Factorization factor_rational(const Rational& x) {
  // A non-canonical input (say 2/2) would put the same prime in both lists
  // and corrupt the radicand normal form downstream, so reduce first.
  Rational r = x;
  r.canonicalize();
  Factorization f;
  factor_into(r.get_num(), f, 1);
  factor_into(r.get_den(), f, -1);
  std::sort(f.begin(), f.end());
  return f;
}

long floored_div(long e, long v) {
  long q = e / v;
  if ((e % v) != 0 && ((e < 0) != (v < 0))) --q;
  return q;
}

Factorization merge(const Factorization& a, const Factorization& b) {
  Factorization out;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      long e = a[i].second + b[j].second;
      if (e != 0) out.emplace_back(a[i].first, e);
      ++i, ++j;
    }
  }
  return out;
}

Factorization scale_exponents(const Factorization& a, long m) {
  Factorization out;
  out.reserve(a.size());
  for (const auto& [p, e] : a) out.emplace_back(p, e * m);
  return out;
}

}  // namespace
}  // namespace detail

RadicalSum RadicalSum::from_raw(unsigned degree,
                                std::vector<std::pair<Rational, detail::Factorization>> raw) {
  if (degree == 0) throw input_error("radical degree must be positive");
  struct Acc {
    Rational coeff;
    detail::Factorization fact;
  };
  std::map<Integer, Acc> grouped;
  for (auto& [coeff, fact] : raw) {
    coeff.canonicalize();  // structural equality on entries assumes reduced coefficients
    if (coeff < 0) throw input_error("radical-sum coefficients must be nonnegative");
    if (coeff == 0) continue;
    detail::Factorization kept;
    Integer rad = 1;
    for (const auto& [p, e] : fact) {
      if (e == 0) continue;
      long q = detail::floored_div(e, static_cast<long>(degree));
      long r = e - q * static_cast<long>(degree);
      if (q != 0) coeff *= pow_rational(Rational(p), q);
      if (r != 0) {
        kept.emplace_back(p, r);
        Integer pw;
        mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(r));
        rad *= pw;
      }
    }
    auto [it, inserted] = grouped.try_emplace(rad, Acc{coeff, std::move(kept)});
    if (!inserted) it->second.coeff += coeff;
  }
  RadicalSum s;
  s.degree_ = degree;
  for (auto& [rad, acc] : grouped) {
    if (acc.coeff == 0) continue;
    s.entries_.push_back(Entry{std::move(acc.coeff), rad, std::move(acc.fact)});
  }
  return s;
}

RadicalSum::RadicalSum(const Rational& value) {
  if (value < 0) throw input_error("radical sums represent nonnegative values");
  degree_ = 1;
  if (value != 0) {
    Rational c = value;
    c.canonicalize();
    entries_.push_back(Entry{std::move(c), 1, {}});
  }
}

RadicalSum RadicalSum::root(const Rational& radicand, unsigned degree) {
  return term(Rational(1), radicand, degree);
}

RadicalSum RadicalSum::term(const Rational& coeff, const Rational& radicand, unsigned degree) {
  if (radicand < 0) throw input_error("radicands must be nonnegative");
  if (radicand == 0 || coeff == 0) {
    RadicalSum zero;
    zero.degree_ = degree == 0 ? 1 : degree;
    return zero;
  }
  return from_raw(degree, {{coeff, detail::factor_rational(radicand)}});
}

RadicalSum RadicalSum::power_root(const Rational& coeff, const Rational& base, long power,
                                  unsigned degree) {
  if (base <= 0) throw input_error("power_root requires a positive base");
  if (coeff == 0 || power == 0) {
    RadicalSum s(coeff);  // base^0 = 1
    s.degree_ = degree == 0 ? 1 : degree;
    return s;
  }
  return from_raw(degree,
                  {{coeff, detail::scale_exponents(detail::factor_rational(base), power)}});
}

std::vector<RadicalSum::Term> RadicalSum::terms() const {
  std::vector<Term> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(Term{e.coeff, e.radicand});
  return out;
}

bool RadicalSum::is_rational() const {
  return entries_.empty() || (entries_.size() == 1 && entries_[0].radicand == 1);
}

Rational RadicalSum::rational_value() const {
  if (!is_rational()) throw input_error("radical sum is irrational");
  return entries_.empty() ? Rational(0) : entries_[0].coeff;
}

RadicalSum RadicalSum::scaled(const Rational& c) const {
  if (c < 0) throw input_error("radical sums represent nonnegative values");
  RadicalSum s;
  s.degree_ = degree_;
  if (c == 0) return s;
  s.entries_ = entries_;
  for (auto& e : s.entries_) e.coeff *= c;
  return s;
}

RadicalSum RadicalSum::raised_to_degree(unsigned target) const {
  if (target == degree_) return *this;
  if (target == 0 || target % degree_ != 0)
    throw input_error("target degree must be a positive multiple of the current degree");
  long m = static_cast<long>(target / degree_);
  std::vector<std::pair<Rational, detail::Factorization>> raw;
  raw.reserve(entries_.size());
  for (const auto& e : entries_) raw.emplace_back(e.coeff, detail::scale_exponents(e.fact, m));
  return from_raw(target, std::move(raw));
}

RadicalSum operator+(const RadicalSum& a, const RadicalSum& b) {
  unsigned L = std::lcm(a.degree_, b.degree_);
  RadicalSum A = a.raised_to_degree(L), B = b.raised_to_degree(L);
  std::vector<std::pair<Rational, detail::Factorization>> raw;
  raw.reserve(A.entries_.size() + B.entries_.size());
  for (auto& e : A.entries_) raw.emplace_back(std::move(e.coeff), std::move(e.fact));
  for (auto& e : B.entries_) raw.emplace_back(std::move(e.coeff), std::move(e.fact));
  return RadicalSum::from_raw(L, std::move(raw));
}

RadicalSum operator*(const RadicalSum& a, const RadicalSum& b) {
  unsigned L = std::lcm(a.degree_, b.degree_);
  RadicalSum A = a.raised_to_degree(L), B = b.raised_to_degree(L);
  std::vector<std::pair<Rational, detail::Factorization>> raw;
  raw.reserve(A.entries_.size() * B.entries_.size());
  for (const auto& ea : A.entries_)
    for (const auto& eb : B.entries_)
      raw.emplace_back(ea.coeff * eb.coeff, detail::merge(ea.fact, eb.fact));
  return RadicalSum::from_raw(L, std::move(raw));
}

RadicalSum RadicalSum::pow(unsigned e) const {
  RadicalSum acc(Rational(1));
  acc.degree_ = degree_;
  RadicalSum base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

std::string RadicalSum::to_string() const {
  if (entries_.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < entries_.size(); ++i) {
    const Entry& e = entries_[i];
    if (i) out += " + ";
    if (e.radicand == 1) {
      out += latticebm::to_string(e.coeff);
    } else {
      if (e.coeff != 1) out += latticebm::to_string(e.coeff) + "*";
      out += e.radicand.get_str() + "^(1/" + std::to_string(degree_) + ")";
    }
  }
  return out;
}

namespace {

// Directed-rounding enclosure [lo, hi] of a radical sum. lo/hi must be
// initialized at the working precision.
void enclose(const RadicalSum& s, mpfr_t lo, mpfr_t hi) {
  mpfr_set_zero(lo, 1);
  mpfr_set_zero(hi, 1);
  mpfr_prec_t prec = mpfr_get_prec(lo);
  mpfr_t c, r, t;
  mpfr_inits2(prec, c, r, t, static_cast<mpfr_ptr>(nullptr));
  for (const auto& term : s.terms()) {
    mpfr_set_q(c, term.coeff.get_mpq_t(), MPFR_RNDD);
    mpfr_set_z(r, term.radicand.get_mpz_t(), MPFR_RNDD);
    mpfr_rootn_ui(r, r, s.degree(), MPFR_RNDD);
    mpfr_mul(t, c, r, MPFR_RNDD);
    mpfr_add(lo, lo, t, MPFR_RNDD);

    mpfr_set_q(c, term.coeff.get_mpq_t(), MPFR_RNDU);
    mpfr_set_z(r, term.radicand.get_mpz_t(), MPFR_RNDU);
    mpfr_rootn_ui(r, r, s.degree(), MPFR_RNDU);
    mpfr_mul(t, c, r, MPFR_RNDU);
    mpfr_add(hi, hi, t, MPFR_RNDU);
  }
  mpfr_clears(c, r, t, static_cast<mpfr_ptr>(nullptr));
}

}  // namespace

std::string RadicalSum::to_decimal(unsigned significant_digits) const {
  if (entries_.empty()) return "0";
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(significant_digits) * 4 + 64;
  mpfr_t lo, hi;
  mpfr_inits2(prec, lo, hi, static_cast<mpfr_ptr>(nullptr));
  enclose(*this, lo, hi);
  mpfr_exp_t exp = 0;
  char* buf = mpfr_get_str(nullptr, &exp, 10, significant_digits, lo, MPFR_RNDN);
  std::string digits(buf);
  mpfr_free_str(buf);
  mpfr_clears(lo, hi, static_cast<mpfr_ptr>(nullptr));

  // All requested digits stay visible, trailing zeros included. Values here
  // are nonnegative, so no sign handling.
  const long e = static_cast<long>(exp);
  const long nd = static_cast<long>(digits.size());
  if (e >= 1 && e <= nd) {
    std::string out = digits.substr(0, static_cast<size_t>(e));
    if (e < nd) out += "." + digits.substr(static_cast<size_t>(e));
    return out;
  }
  if (e <= 0 && e > -6) return "0." + std::string(static_cast<size_t>(-e), '0') + digits;
  std::string out = digits.substr(0, 1);
  if (nd > 1) out += "." + digits.substr(1);
  return out + "e" + std::to_string(e - 1);
}

OrderingCertificate compare_radicals(const RadicalSum& lhs, const RadicalSum& rhs) {
  unsigned L = std::lcm(lhs.degree_, rhs.degree_);
  RadicalSum A = lhs.raised_to_degree(L), B = rhs.raised_to_degree(L);

  bool same = A.entries_.size() == B.entries_.size();
  for (size_t i = 0; same && i < A.entries_.size(); ++i)
    same = A.entries_[i].radicand == B.entries_[i].radicand &&
           A.entries_[i].coeff == B.entries_[i].coeff;
  if (same) return OrderingCertificate{Relation::Equal, OrderingCertificate::Proof::Algebraic, 0};

  // Values differ, so some precision separates them.
  for (unsigned bits = 64;; bits *= 2) {
    if (bits > (1u << 24))
      throw std::logic_error("interval refinement failed to separate " + lhs.to_string() +
                             " from " + rhs.to_string());
    mpfr_t alo, ahi, blo, bhi;
    mpfr_inits2(bits, alo, ahi, blo, bhi, static_cast<mpfr_ptr>(nullptr));
    enclose(A, alo, ahi);
    enclose(B, blo, bhi);
    bool less = mpfr_cmp(ahi, blo) < 0;
    bool greater = mpfr_cmp(bhi, alo) < 0;
    mpfr_clears(alo, ahi, blo, bhi, static_cast<mpfr_ptr>(nullptr));
    if (less) return OrderingCertificate{Relation::Less, OrderingCertificate::Proof::Interval, bits};
    if (greater)
      return OrderingCertificate{Relation::Greater, OrderingCertificate::Proof::Interval, bits};
  }
}

namespace {

void require_weight(const Rational& lambda) {
  if (!(lambda > 0 && lambda < 1)) throw input_error("weight must lie strictly between 0 and 1");
}

void require_nonneg(const Rational& a, const Rational& b) {
  if (a < 0 || b < 0) throw input_error("p-means are defined for nonnegative arguments");
}

}  // namespace

RadicalSum p_mean(const Rational& a, const Rational& b, const Rational& lambda,
                  const ExtendedExponent& p) {
  require_weight(lambda);
  require_nonneg(a, b);
  if (a == 0 || b == 0) return RadicalSum();  // modified convention: 0 for every p
  if (p.is_pos_inf()) return RadicalSum(std::max(a, b));
  if (p.is_neg_inf()) return RadicalSum(std::min(a, b));
  const Rational& pv = p.value();
  if (pv == 0) {
    // lambda = s/t: the geometric mean a^(1-s/t) b^(s/t) as one t-th root.
    unsigned long t = lambda.get_den().get_ui();
    unsigned long s = lambda.get_num().get_ui();
    return RadicalSum::power_root(Rational(1), a, static_cast<long>(t - s),
                                  static_cast<unsigned>(t)) *
           RadicalSum::power_root(Rational(1), b, static_cast<long>(s), static_cast<unsigned>(t));
  }
  long u = static_cast<long>(pv.get_num().get_si());
  unsigned v = static_cast<unsigned>(pv.get_den().get_ui());
  RadicalSum S = RadicalSum::power_root(1 - lambda, a, u, v) +
                 RadicalSum::power_root(lambda, b, u, v);
  RadicalSum T = S.pow(v);  // M_p = T^(1/u)
  if (u == 1) return T;
  if (T.is_rational()) {
    Rational t = T.rational_value();
    return u > 0 ? RadicalSum::root(t, static_cast<unsigned>(u))
                 : RadicalSum::root(1 / t, static_cast<unsigned>(-u));
  }
  if (T.terms().size() == 1) {
    // c * w^(1/v) collapses to a single (v*|u|)-th root of c^v * w.
    auto term = T.terms()[0];
    Rational combined = pow_rational(term.coeff, static_cast<long>(T.degree())) *
                        Rational(term.radicand);
    return u > 0 ? RadicalSum::root(combined, T.degree() * static_cast<unsigned>(u))
                 : RadicalSum::root(1 / combined, T.degree() * static_cast<unsigned>(-u));
  }
  throw unrepresentable_error(
      "p-mean value does not collapse into the radical-sum language for p = " +
      latticebm::to_string(p));
}

PMeanComparison compare_with_p_mean(const Rational& value, const Rational& a, const Rational& b,
                                    const Rational& lambda, const ExtendedExponent& p) {
  require_weight(lambda);
  require_nonneg(a, b);
  if (value < 0) throw input_error("compared value must be nonnegative");

  auto finish = [](RadicalSum lhs, RadicalSum rhs) {
    OrderingCertificate cert = compare_radicals(lhs, rhs);
    return PMeanComparison{cert.relation, std::move(lhs), std::move(rhs), cert};
  };

  if (a == 0 || b == 0 || p.is_pos_inf() || p.is_neg_inf())
    return finish(RadicalSum(value), p_mean(a, b, lambda, p));

  const Rational& pv = p.value();
  if (pv == 0) {
    // Multiplicative form: value^t versus a^(t-s) * b^s, both under one t-th root.
    unsigned t = static_cast<unsigned>(lambda.get_den().get_ui());
    long s = static_cast<long>(lambda.get_num().get_si());
    RadicalSum lhs = value == 0 ? RadicalSum()
                                : RadicalSum::power_root(Rational(1), value,
                                                         static_cast<long>(t), t);
    RadicalSum rhs = RadicalSum::power_root(Rational(1), a, static_cast<long>(t) - s, t) *
                     RadicalSum::power_root(Rational(1), b, s, t);
    return finish(std::move(lhs), std::move(rhs));
  }

  long u = static_cast<long>(pv.get_num().get_si());
  unsigned v = static_cast<unsigned>(pv.get_den().get_ui());
  RadicalSum inner = RadicalSum::power_root(1 - lambda, a, u, v) +
                     RadicalSum::power_root(lambda, b, u, v);
  if (u > 0) {
    RadicalSum lhs = value == 0 ? RadicalSum()
                                : RadicalSum::power_root(Rational(1), value, u, v);
    return finish(std::move(lhs), std::move(inner));
  }
  // u < 0: x -> x^(u/v) reverses order, so the claim value >= M_p reads
  // inner >= value^(u/v). value = 0 makes the mean strictly larger.
  if (value == 0) return finish(RadicalSum(), std::move(inner));
  RadicalSum powered = RadicalSum::power_root(Rational(1), value, u, v);
  return finish(std::move(inner), std::move(powered));
}

Rational dyadic_ceil_p_mean(const Rational& a, const Rational& b, const Rational& lambda,
                            const ExtendedExponent& p, unsigned frac_bits) {
  require_weight(lambda);
  require_nonneg(a, b);
  Rational grid = pow2(static_cast<long>(frac_bits));

  auto exact_ceil = [&](const Rational& m) -> Rational {
    Integer c = rat_ceil(m * grid);
    return Rational(c) / grid;
  };
  if (a == 0 || b == 0) return Rational(0);
  if (p.is_pos_inf()) return exact_ceil(std::max(a, b));
  if (p.is_neg_inf()) return exact_ceil(std::min(a, b));

  // Propose a candidate from a 192-bit upper enclosure of the mean, then make
  // the final decision with exact comparisons.
  const Rational& pv = p.value();
  mpfr_t x, y, w;
  mpfr_inits2(192, x, y, w, static_cast<mpfr_ptr>(nullptr));
  auto powq = [&](mpfr_t out, const Rational& base, long num, unsigned long den, mpfr_rnd_t rnd) {
    // base^(num/den) with directed rounding: exact rational power, then root.
    Rational pw = pow_rational(base, num);
    mpfr_set_q(out, pw.get_mpq_t(), rnd);
    if (den != 1) mpfr_rootn_ui(out, out, den, rnd);
  };
  long u;
  unsigned long v = 1;
  Rational om = 1 - lambda;
  if (pv == 0) {
    u = static_cast<long>(lambda.get_den().get_ui());  // mean = (a^(t-s) b^s)^(1/t)
    Rational inner = pow_rational(a, u - static_cast<long>(lambda.get_num().get_si())) *
                     pow_rational(b, static_cast<long>(lambda.get_num().get_si()));
    mpfr_set_q(x, inner.get_mpq_t(), MPFR_RNDU);
    mpfr_rootn_ui(w, x, static_cast<unsigned long>(u), MPFR_RNDU);
  } else {
    u = static_cast<long>(pv.get_num().get_si());
    v = static_cast<unsigned long>(pv.get_den().get_ui());
    // inner = (1-lambda) a^(u/v) + lambda b^(u/v), rounded up
    powq(x, a, u, v, MPFR_RNDU);
    mpfr_set_q(y, om.get_mpq_t(), MPFR_RNDU);
    mpfr_mul(x, x, y, MPFR_RNDU);
    powq(w, b, u, v, MPFR_RNDU);
    mpfr_set_q(y, lambda.get_mpq_t(), MPFR_RNDU);
    mpfr_mul(w, w, y, MPFR_RNDU);
    mpfr_add(w, w, x, MPFR_RNDU);
    // mean = inner^(v/u); for u < 0 the map is decreasing, so an upper bound
    // of the mean needs a LOWER bound of inner. Recompute directed down.
    if (u < 0) {
      powq(x, a, u, v, MPFR_RNDD);
      mpfr_set_q(y, om.get_mpq_t(), MPFR_RNDD);
      mpfr_mul(x, x, y, MPFR_RNDD);
      powq(y, b, u, v, MPFR_RNDD);
      mpfr_t l;
      mpfr_init2(l, 192);
      mpfr_set_q(l, lambda.get_mpq_t(), MPFR_RNDD);
      mpfr_mul(y, y, l, MPFR_RNDD);
      mpfr_add(w, x, y, MPFR_RNDD);
      mpfr_clear(l);
      // w^(v/u) = (w^v)^(1/u) with u < 0: invert after the positive root
      mpfr_pow_ui(w, w, v, MPFR_RNDD);
      mpfr_rootn_ui(w, w, static_cast<unsigned long>(-u), MPFR_RNDD);
      mpfr_ui_div(w, 1, w, MPFR_RNDU);
    } else {
      mpfr_pow_ui(w, w, v, MPFR_RNDU);
      mpfr_rootn_ui(w, w, static_cast<unsigned long>(u), MPFR_RNDU);
    }
  }
  mpfr_mul_2ui(w, w, frac_bits, MPFR_RNDU);
  Integer c;
  mpfr_get_z(c.get_mpz_t(), w, MPFR_RNDU);
  mpfr_clears(x, y, w, static_cast<mpfr_ptr>(nullptr));

  auto at_least_mean = [&](const Rational& d) {
    return compare_with_p_mean(d, a, b, lambda, p).relation != Relation::Less;
  };
  Rational cand = Rational(c) / grid;
  while (!at_least_mean(cand)) cand += 1 / grid;
  while (cand > 0 && at_least_mean(cand - 1 / grid)) cand -= 1 / grid;
  return cand;
}

}  // namespace latticebm
