#include "latticebm/functions.hpp"

#include <utility>

#include "latticebm/errors.hpp"

namespace latticebm {

PointMassFunction::PointMassFunction(int dim) : dim_(dim) {
  if (dim < 1) throw input_error("function dimension must be positive");
}

PointMassFunction::PointMassFunction(int dim, std::map<RatVec, Rational, RatVecLess> support,
                                     std::optional<SetExpr> char_part)
    : dim_(dim), char_part_(std::move(char_part)) {
  if (dim < 1) throw input_error("function dimension must be positive");
  for (auto& [x, v] : support) set(x, std::move(v));
  if (char_part_ && char_part_->dim != dim_) throw input_error("dimension mismatch");
}

PointMassFunction PointMassFunction::characteristic(SetExpr s) {
  int n = s.dim;
  return PointMassFunction(n, {}, std::move(s));
}

void PointMassFunction::set(RatVec x, Rational v) {
  if (static_cast<int>(x.size()) != dim_) throw input_error("dimension mismatch");
  for (Rational& c : x) c.canonicalize();
  v.canonicalize();
  if (v <= 0) throw input_error("point masses must be positive");
  support_[std::move(x)] = std::move(v);
}

Rational PointMassFunction::eval(const RatVec& x) const {
  if (static_cast<int>(x.size()) != dim_) throw input_error("dimension mismatch");
  Rational best = 0;
  auto it = support_.find(x);
  if (it != support_.end()) best = it->second;
  if (best < 1 && char_part_ && membership(*char_part_, x)) best = 1;
  return best;
}

CubeSpec CubeSpec::open_sym(Rational r) {
  if (r <= 0) throw input_error("cube radius must be positive");
  return CubeSpec{Kind::OpenSym, std::move(r), {}};
}

CubeSpec CubeSpec::closed_sym(Rational r) {
  if (r <= 0) throw input_error("cube radius must be positive");
  return CubeSpec{Kind::ClosedSym, std::move(r), {}};
}

CubeSpec CubeSpec::custom_box(Box b) { return CubeSpec{Kind::Custom, Rational(), std::move(b)}; }

Box CubeSpec::to_box(int n) const {
  if (n < 1) throw input_error("cube dimension must be positive");
  std::size_t count = static_cast<std::size_t>(n);
  std::vector<Interval1D> fs;
  switch (kind) {
    case Kind::OpenSym:
      fs.assign(count, Interval1D(-radius, radius, true, true));
      break;
    case Kind::ClosedSym:
      fs.assign(count, Interval1D(-radius, radius));
      break;
    case Kind::ClosedUnit:
      fs.assign(count, Interval1D(Rational(0), Rational(1)));
      break;
    case Kind::HalfOpenUnit:
      fs.assign(count, Interval1D(Rational(0), Rational(1), false, true));
      break;
    case Kind::None:
      fs.assign(count, Interval1D(Rational(0), Rational(0)));
      break;
    case Kind::Custom:
      if (!custom || custom->dim() != n) throw input_error("cube dimension mismatch");
      return *custom;
  }
  return Box(std::move(fs));
}

SupConvView::SupConvView(PointMassFunction base, Box cube)
    : base_(std::move(base)), cube_(std::move(cube)) {
  if (base_.dim() != cube_.dim()) throw input_error("dimension mismatch");
}

Rational SupConvView::eval(const RatVec& z) const {
  if (static_cast<int>(z.size()) != base_.dim()) throw input_error("dimension mismatch");
  Rational best = 0;
  for (const auto& [p, v] : base_.support()) {
    if (v <= best) continue;
    RatVec d;
    d.reserve(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) d.push_back(p[i] - z[i]);
    if (cube_.contains(d)) best = v;
  }
  if (best < 1 && base_.char_part()) {
    std::vector<Interval1D> shifted;
    shifted.reserve(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      const Interval1D& f = cube_.factors[i];
      shifted.emplace_back(f.lo + z[i], f.hi + z[i], f.lo_open, f.hi_open);
    }
    Box window(std::move(shifted));
    for (const Box& b : base_.char_part()->boxes)
      if (intersect(b, window)) return Rational(1);
    for (const RatVec& p : base_.char_part()->points) {
      RatVec d;
      d.reserve(z.size());
      for (std::size_t i = 0; i < z.size(); ++i) d.push_back(p[i] - z[i]);
      if (cube_.contains(d)) return Rational(1);
    }
  }
  return best;
}

SupConvView sup_conv(const PointMassFunction& h, const CubeSpec& cube) {
  return SupConvView(h, cube.to_box(h.dim()));
}

namespace {

// A constant piece of a function's support: either a single atom or one box
// or point of the characteristic part, restricted to the window.
struct Piece {
  std::optional<Box> box;
  RatVec point;
  Rational value;
};

std::vector<Piece> pieces_of(const PointMassFunction& fn, const SetExpr& window) {
  std::vector<Piece> out;
  for (const auto& [x, v] : fn.support())
    if (membership(window, x)) out.push_back({std::nullopt, x, v});
  if (fn.char_part()) {
    SetExpr region = intersect_sets(*fn.char_part(), window);
    for (const Box& b : region.boxes) out.push_back({b, {}, Rational(1)});
    for (const RatVec& p : region.points) out.push_back({std::nullopt, p, Rational(1)});
  }
  return out;
}

Box as_box(const Piece& pc) {
  if (pc.box) return *pc.box;
  std::vector<Interval1D> fs;
  fs.reserve(pc.point.size());
  for (const Rational& x : pc.point) fs.emplace_back(x, x);
  return Box(std::move(fs));
}

Box point_box(const RatVec& p) {
  std::vector<Interval1D> fs;
  fs.reserve(p.size());
  for (const Rational& x : p) fs.emplace_back(x, x);
  return Box(std::move(fs));
}

Box combine_boxes(const Box& a, const Box& b, const Rational& om, const Rational& lambda) {
  std::vector<Interval1D> fs;
  fs.reserve(a.factors.size());
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    const Interval1D& f = a.factors[i];
    const Interval1D& g = b.factors[i];
    fs.emplace_back(om * f.lo + lambda * g.lo, om * f.hi + lambda * g.hi,
                    f.lo_open || g.lo_open, f.hi_open || g.hi_open);
  }
  return Box(std::move(fs));
}

bool is_degenerate(const Box& b) {
  for (const Interval1D& f : b.factors)
    if (!f.is_point()) return false;
  return true;
}

Rational interval_sample(const Interval1D& iv) {
  if (!iv.lo_open) return iv.lo;
  if (!iv.hi_open) return iv.hi;
  return (iv.lo + iv.hi) / 2;
}

// Recovers a pair (x, y) with x in fp, y in gp and (1-l)x + l y = w.
HypothesisViolation reconstruct(const Piece& fp, const Piece& gp, const RatVec& w,
                                const Rational& lambda) {
  Rational om = 1 - lambda;
  Box fb = as_box(fp), gb = as_box(gp);
  RatVec x, y;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Interval1D& fi = fb.factors[i];
    const Interval1D& gi = gb.factors[i];
    // y = (w - (1-l)x)/l runs over gi exactly when x runs over this range
    Interval1D from_g((w[i] - lambda * gi.hi) / om, (w[i] - lambda * gi.lo) / om, gi.hi_open,
                      gi.lo_open);
    auto feasible = intersect(fi, from_g);
    if (!feasible) throw std::logic_error("combination point lost its representation");
    x.push_back(interval_sample(*feasible));
    y.push_back((w[i] - om * x.back()) / lambda);
  }
  return {std::move(x), std::move(y)};
}

}  // namespace

std::optional<HypothesisViolation> check_hypothesis(const PointMassFunction& f,
                                                    const PointMassFunction& g,
                                                    const PointMassFunction& h, const SetExpr& K,
                                                    const SetExpr& L, const Rational& lambda,
                                                    const ExtendedExponent& p) {
  if (f.dim() != g.dim() || f.dim() != h.dim() || K.dim != f.dim() || L.dim != f.dim())
    throw input_error("dimension mismatch");
  if (lambda <= 0 || lambda >= 1)
    throw input_error("weight must lie strictly between 0 and 1");
  Rational om = 1 - lambda;
  auto fps = pieces_of(f, K);
  auto gps = pieces_of(g, L);
  for (const Piece& fp : fps) {
    for (const Piece& gp : gps) {
      Box region = combine_boxes(as_box(fp), as_box(gp), om, lambda);
      if (is_degenerate(region)) {
        RatVec z;
        z.reserve(region.factors.size());
        for (const Interval1D& fi : region.factors) z.push_back(fi.lo);
        if (compare_with_p_mean(h.eval(z), fp.value, gp.value, lambda, p).relation ==
            Relation::Less)
          return reconstruct(fp, gp, z, lambda);
        continue;
      }
      // The obligation over a full piece pair is a cover question: the region
      // must lie inside the superlevel set of h at the required mean.
      std::vector<Box> cover;
      bool char_reaches =
          compare_with_p_mean(Rational(1), fp.value, gp.value, lambda, p).relation !=
          Relation::Less;
      if (char_reaches && h.char_part()) {
        for (const Box& b : h.char_part()->boxes) cover.push_back(b);
        for (const RatVec& q : h.char_part()->points) cover.push_back(point_box(q));
      }
      for (const auto& [q, v] : h.support())
        if (compare_with_p_mean(v, fp.value, gp.value, lambda, p).relation != Relation::Less)
          cover.push_back(point_box(q));
      if (auto w = uncovered_point(region, cover)) return reconstruct(fp, gp, *w, lambda);
    }
  }
  return std::nullopt;
}

PointMassFunction make_admissible_h(const PointMassFunction& f, const PointMassFunction& g,
                                    const SetExpr& K, const SetExpr& L, const Rational& lambda,
                                    const ExtendedExponent& p, unsigned precision_bits) {
  if (f.dim() != g.dim() || K.dim != f.dim() || L.dim != f.dim())
    throw input_error("dimension mismatch");
  if (lambda <= 0 || lambda >= 1)
    throw input_error("weight must lie strictly between 0 and 1");
  auto atoms = [](const PointMassFunction& fn, const SetExpr& window) {
    std::map<RatVec, Rational, RatVecLess> out;
    for (const auto& [x, v] : fn.support())
      if (membership(window, x)) out[x] = v;
    if (fn.char_part()) {
      if (!fn.char_part()->boxes.empty())
        throw input_error("admissible-h generation needs finite supports");
      for (const RatVec& q : fn.char_part()->points)
        if (membership(window, q)) {
          Rational& slot = out[q];
          if (slot < 1) slot = 1;
        }
    }
    return out;
  };
  auto fa = atoms(f, K);
  auto ga = atoms(g, L);
  Rational om = 1 - lambda;
  PointMassFunction h(f.dim());
  for (const auto& [x, vx] : fa) {
    for (const auto& [y, vy] : ga) {
      RatVec z;
      z.reserve(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) z.push_back(om * x[i] + lambda * y[i]);
      Rational need = dyadic_ceil_p_mean(vx, vy, lambda, p, precision_bits);
      if (h.eval(z) < need) h.set(std::move(z), std::move(need));
    }
  }
  return h;
}

}  // namespace latticebm
