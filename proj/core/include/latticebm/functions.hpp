#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "latticebm/exponent.hpp"
#include "latticebm/radical_sum.hpp"
#include "latticebm/sets.hpp"

namespace latticebm {

// Nonnegative function on R^n: a finite map of positive point masses plus an
// optional characteristic component worth 1 on its set. Evaluation is the max
// of the two, so zero is simply absence.
class PointMassFunction {
 public:
  explicit PointMassFunction(int dim);
  PointMassFunction(int dim, std::map<RatVec, Rational, RatVecLess> support,
                    std::optional<SetExpr> char_part);
  static PointMassFunction characteristic(SetExpr s);

  void set(RatVec x, Rational v);
  Rational eval(const RatVec& x) const;

  int dim() const { return dim_; }
  const std::map<RatVec, Rational, RatVecLess>& support() const { return support_; }
  const std::optional<SetExpr>& char_part() const { return char_part_; }

 private:
  int dim_;
  std::map<RatVec, Rational, RatVecLess> support_;
  std::optional<SetExpr> char_part_;
};

// The corrector cubes, by shape. none stands for {0}, the identity corrector.
// custom admits any box, which also covers the proof-internal degenerate
// cubes like (-1,1)^(n-1) x {0}.
struct CubeSpec {
  enum class Kind { OpenSym, ClosedSym, ClosedUnit, HalfOpenUnit, None, Custom };

  Kind kind = Kind::None;
  Rational radius;
  std::optional<Box> custom;

  static CubeSpec open_sym(Rational r);
  static CubeSpec closed_sym(Rational r);
  static CubeSpec closed_unit() { return CubeSpec{Kind::ClosedUnit, Rational(), {}}; }
  static CubeSpec half_open_unit() { return CubeSpec{Kind::HalfOpenUnit, Rational(), {}}; }
  static CubeSpec none() { return CubeSpec{Kind::None, Rational(), {}}; }
  static CubeSpec custom_box(Box b);

  Box to_box(int n) const;
};

// Lazy sup-convolution (phi ^ cube)(z) = sup { phi(z + u) : u in cube }. An
// atom at p is visible from z exactly when p - z lands in the cube, and the
// characteristic part M contributes 1 when z + cube meets M; both are the
// reflected-translate test, which matters for asymmetric cubes.
class SupConvView {
 public:
  SupConvView(PointMassFunction base, Box cube);

  Rational eval(const RatVec& z) const;
  int dim() const { return base_.dim(); }

 private:
  PointMassFunction base_;
  Box cube_;
};

SupConvView sup_conv(const PointMassFunction& h, const CubeSpec& cube);

// Sum of phi over the lattice points of omega.
template <typename F>
Rational lattice_sum(const F& phi, const SetExpr& omega) {
  Rational total = 0;
  for (const auto& z : integer_points(omega)) {
    RatVec x;
    x.reserve(z.size());
    for (const Integer& v : z) x.push_back(Rational(v));
    total += phi.eval(x);
  }
  return total;
}

// The same sum evaluated through the layer-cake ladder: with positive values
// k_1 < ... < k_r taken on omega's lattice points, sums (k_i - k_{i-1}) times
// the count of points at level >= k_i. Agrees with lattice_sum exactly.
template <typename F>
Rational cavalieri_sum(const F& phi, const SetExpr& omega) {
  std::vector<Rational> values;
  for (const auto& z : integer_points(omega)) {
    RatVec x;
    x.reserve(z.size());
    for (const Integer& v : z) x.push_back(Rational(v));
    Rational v = phi.eval(x);
    if (v > 0) values.push_back(std::move(v));
  }
  std::sort(values.begin(), values.end());
  Rational total = 0, level = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0 && values[i] == values[i - 1]) continue;
    total += (values[i] - level) * Rational(static_cast<unsigned long>(values.size() - i));
    level = values[i];
  }
  return total;
}

struct HypothesisViolation {
  RatVec x, y;
};

// Decides whether h((1-l)x + l y) >= M_p(f(x), g(y), l) for every pair with
// f(x) g(y) > 0, x in K, y in L. Characteristic parts make the pair set
// infinite; those obligations reduce to exact box-cover checks against the
// superlevel sets of h. Returns the first violating pair found, if any.
std::optional<HypothesisViolation> check_hypothesis(const PointMassFunction& f,
                                                    const PointMassFunction& g,
                                                    const PointMassFunction& h, const SetExpr& K,
                                                    const SetExpr& L, const Rational& lambda,
                                                    const ExtendedExponent& p);

// Smallest h on the combination points whose values are dyadic rationals with
// precision_bits fractional bits and dominate every required p-mean. Rounding
// up keeps the hypothesis satisfied, so the generated triple always verifies.
PointMassFunction make_admissible_h(const PointMassFunction& f, const PointMassFunction& g,
                                    const SetExpr& K, const SetExpr& L, const Rational& lambda,
                                    const ExtendedExponent& p, unsigned precision_bits);

}  // namespace latticebm
