#pragma once

#include <optional>
#include <vector>

#include "latticebm/rational.hpp"

namespace latticebm {

// One factor of a box. Never empty: lo < hi, or lo == hi with both endpoints
// closed (a single point).
struct Interval1D {
  Rational lo, hi;
  bool lo_open = false, hi_open = false;

  Interval1D(Rational lo_, Rational hi_, bool lo_open_ = false, bool hi_open_ = false);

  bool is_point() const { return lo == hi; }
  bool contains(const Rational& x) const;
};

struct Box {
  std::vector<Interval1D> factors;

  explicit Box(std::vector<Interval1D> factors_);

  int dim() const { return static_cast<int>(factors.size()); }
  bool contains(const RatVec& x) const;
};

// A bounded subset of R^n: a union of boxes and a finite point set. The only
// empty value is the explicit one produced by empty() or by a section that
// misses; user-facing inputs are validated non-empty at the boundary.
struct SetExpr {
  int dim = 0;
  std::vector<Box> boxes;
  std::vector<RatVec> points;

  SetExpr(int dim_, std::vector<Box> boxes_, std::vector<RatVec> points_);

  static SetExpr empty(int dim);
  static SetExpr from_box(Box b);
  static SetExpr from_interval(Interval1D iv);
  static SetExpr from_point(RatVec p);
  static SetExpr from_points(std::vector<RatVec> pts);

  bool is_empty() const { return boxes.empty() && points.empty(); }
};

// Basis v_1..v_n of a sublattice of R^n, columns of an invertible matrix.
// apply is x -> sum x_j v_j, solve is its exact inverse.
class LatticeBasis {
 public:
  explicit LatticeBasis(std::vector<RatVec> rows);

  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<RatVec>& rows() const { return rows_; }
  bool is_diagonal() const;
  RatVec apply(const RatVec& x) const;
  RatVec solve(const RatVec& p) const;

 private:
  std::vector<RatVec> rows_;
  std::vector<RatVec> inverse_;
};

// {c s : s in S} for c >= 0. Scaling by zero collapses to the origin.
SetExpr scale(const SetExpr& s, const Rational& c);

// {a + b : a in A, b in B}. An endpoint of a summed interval is open exactly
// when either contributing endpoint is open.
SetExpr minkowski_sum(const SetExpr& a, const SetExpr& b);

// |S intersect Z^n|, counting overlap between boxes and points once.
Integer count_lattice(const SetExpr& s);

bool membership(const SetExpr& s, const RatVec& x);

// All lattice points of S, sorted and deduplicated.
std::vector<std::vector<Integer>> integer_points(const SetExpr& s);

// {x in R^(n-1) : (x, t) in S}; may be empty.
SetExpr section(const SetExpr& s, const Rational& t);

// Image of S under projection onto the last coordinate.
SetExpr project_last(const SetExpr& s);

// Sorted, pairwise disjoint intervals covering a 1-d set. With closed_hull,
// every piece (a, b) is widened to [floor a, ceil b] first, so the result is
// a disjoint union of compact intervals with integer endpoints.
std::vector<Interval1D> normalize_1d(const SetExpr& s, bool closed_hull);

// Number of non-integer endpoints over a disjoint list of closed intervals.
long noninteger_endpoints(const std::vector<Interval1D>& intervals);

// Pulls S back through the basis map: points solve exactly; boxes transform
// factorwise when the basis is diagonal and otherwise collapse to the finite
// set of lattice points of S in the spanned lattice, preimaged to Z^n.
SetExpr lattice_transform(const SetExpr& s, const LatticeBasis& basis);

// Exact intersections; empty results come back disengaged. At a shared
// endpoint the intersection is open when either operand is.
std::optional<Interval1D> intersect(const Interval1D& a, const Interval1D& b);
std::optional<Box> intersect(const Box& a, const Box& b);
SetExpr intersect_sets(const SetExpr& a, const SetExpr& b);

// Some point of the box, preferring closed endpoints.
RatVec sample_point(const Box& b);

// A point of target not covered by any box in cover, or nullopt when the
// union covers target. Splits target along cover endpoints, so it is exact
// with respect to open/closed flags.
std::optional<RatVec> uncovered_point(const Box& target, const std::vector<Box>& cover);

}  // namespace latticebm
