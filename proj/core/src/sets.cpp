#include "latticebm/sets.hpp"

#include <algorithm>
#include <utility>

#include "latticebm/errors.hpp"

namespace latticebm {

namespace {

std::optional<Interval1D> make_valid(const Rational& lo, const Rational& hi, bool lo_open,
                                     bool hi_open) {
  if (lo > hi) return std::nullopt;
  if (lo == hi && (lo_open || hi_open)) return std::nullopt;
  return Interval1D(lo, hi, lo_open, hi_open);
}

// Integers contained in the interval, as an inclusive range. False when none.
bool integer_range(const Interval1D& iv, Integer& lo, Integer& hi) {
  lo = rat_ceil(iv.lo);
  if (iv.lo_open && is_integer(iv.lo)) lo += 1;
  hi = rat_floor(iv.hi);
  if (iv.hi_open && is_integer(iv.hi)) hi -= 1;
  return lo <= hi;
}

void sort_unique(std::vector<RatVec>& pts) {
  std::sort(pts.begin(), pts.end(), RatVecLess{});
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

// Steps cur to the next tuple in the product of [lo_i, hi_i]; false on wrap.
bool advance(std::vector<Integer>& cur, const std::vector<Integer>& lo,
             const std::vector<Integer>& hi) {
  for (std::size_t i = cur.size(); i-- > 0;) {
    if (cur[i] < hi[i]) {
      cur[i] += 1;
      for (std::size_t j = i + 1; j < cur.size(); ++j) cur[j] = lo[j];
      return true;
    }
  }
  return false;
}

}  // namespace

Interval1D::Interval1D(Rational lo_, Rational hi_, bool lo_open_, bool hi_open_)
    : lo(std::move(lo_)), hi(std::move(hi_)), lo_open(lo_open_), hi_open(hi_open_) {
  // Callers may hand us unreduced fractions; equality tests below assume
  // canonical form, as does everything downstream.
  lo.canonicalize();
  hi.canonicalize();
  if (lo > hi || (lo == hi && (lo_open || hi_open)))
    throw input_error("interval is empty: " + to_string(lo) + ", " + to_string(hi));
}

bool Interval1D::contains(const Rational& x) const {
  if (x < lo || (x == lo && lo_open)) return false;
  if (x > hi || (x == hi && hi_open)) return false;
  return true;
}

Box::Box(std::vector<Interval1D> factors_) : factors(std::move(factors_)) {
  if (factors.empty()) throw input_error("box needs at least one factor");
}

bool Box::contains(const RatVec& x) const {
  if (x.size() != factors.size()) throw input_error("dimension mismatch");
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (!factors[i].contains(x[i])) return false;
  return true;
}

SetExpr::SetExpr(int dim_, std::vector<Box> boxes_, std::vector<RatVec> points_)
    : dim(dim_), boxes(std::move(boxes_)), points(std::move(points_)) {
  if (dim < 1) throw input_error("set dimension must be positive");
  for (const Box& b : boxes)
    if (b.dim() != dim) throw input_error("box dimension mismatch");
  for (RatVec& p : points) {
    if (static_cast<int>(p.size()) != dim) throw input_error("point dimension mismatch");
    for (Rational& c : p) c.canonicalize();
  }
}

SetExpr SetExpr::empty(int dim) { return SetExpr(dim, {}, {}); }

SetExpr SetExpr::from_box(Box b) {
  int n = b.dim();
  std::vector<Box> bs;
  bs.push_back(std::move(b));
  return SetExpr(n, std::move(bs), {});
}

SetExpr SetExpr::from_interval(Interval1D iv) {
  std::vector<Interval1D> fs;
  fs.push_back(std::move(iv));
  return from_box(Box(std::move(fs)));
}

SetExpr SetExpr::from_point(RatVec p) {
  int n = static_cast<int>(p.size());
  std::vector<RatVec> pts;
  pts.push_back(std::move(p));
  return SetExpr(n, {}, std::move(pts));
}

SetExpr SetExpr::from_points(std::vector<RatVec> pts) {
  if (pts.empty()) throw input_error("point set is empty");
  int n = static_cast<int>(pts[0].size());
  return SetExpr(n, {}, std::move(pts));
}

LatticeBasis::LatticeBasis(std::vector<RatVec> rows) : rows_(std::move(rows)) {
  std::size_t n = rows_.size();
  if (n == 0) throw input_error("basis must have positive dimension");
  for (RatVec& r : rows_) {
    if (r.size() != n) throw input_error("basis matrix must be square");
    for (Rational& c : r) c.canonicalize();
  }

  // Gauss-Jordan with exact arithmetic; singular input has no pivot somewhere.
  std::vector<RatVec> a = rows_;
  inverse_.assign(n, RatVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inverse_[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw input_error("basis matrix is singular");
    std::swap(a[piv], a[col]);
    std::swap(inverse_[piv], inverse_[col]);
    Rational d = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= d;
      inverse_[col][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inverse_[r][j] -= f * inverse_[col][j];
      }
    }
  }
}

bool LatticeBasis::is_diagonal() const {
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = 0; j < rows_.size(); ++j)
      if (i != j && rows_[i][j] != 0) return false;
  return true;
}

RatVec LatticeBasis::apply(const RatVec& x) const {
  if (x.size() != rows_.size()) throw input_error("dimension mismatch");
  RatVec y(rows_.size(), Rational(0));
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = 0; j < rows_.size(); ++j) y[i] += rows_[i][j] * x[j];
  return y;
}

RatVec LatticeBasis::solve(const RatVec& p) const {
  if (p.size() != rows_.size()) throw input_error("dimension mismatch");
  RatVec y(rows_.size(), Rational(0));
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = 0; j < rows_.size(); ++j) y[i] += inverse_[i][j] * p[j];
  return y;
}

SetExpr scale(const SetExpr& s, const Rational& c) {
  if (c < 0) throw input_error("scaling weight must be nonnegative");
  if (s.is_empty()) return SetExpr::empty(s.dim);
  if (c == 0) return SetExpr::from_point(RatVec(s.dim, Rational(0)));
  std::vector<Box> boxes;
  boxes.reserve(s.boxes.size());
  for (const Box& b : s.boxes) {
    std::vector<Interval1D> fs;
    fs.reserve(b.factors.size());
    for (const Interval1D& f : b.factors)
      fs.emplace_back(f.lo * c, f.hi * c, f.lo_open, f.hi_open);
    boxes.emplace_back(std::move(fs));
  }
  std::vector<RatVec> pts;
  pts.reserve(s.points.size());
  for (const RatVec& p : s.points) {
    RatVec q;
    q.reserve(p.size());
    for (const Rational& x : p) q.push_back(x * c);
    pts.push_back(std::move(q));
  }
  return SetExpr(s.dim, std::move(boxes), std::move(pts));
}

namespace {

Box translate(const Box& b, const RatVec& z) {
  std::vector<Interval1D> fs;
  fs.reserve(b.factors.size());
  for (std::size_t i = 0; i < b.factors.size(); ++i) {
    const Interval1D& f = b.factors[i];
    fs.emplace_back(f.lo + z[i], f.hi + z[i], f.lo_open, f.hi_open);
  }
  return Box(std::move(fs));
}

}  // namespace

SetExpr minkowski_sum(const SetExpr& a, const SetExpr& b) {
  if (a.dim != b.dim) throw input_error("dimension mismatch");
  if (a.is_empty() || b.is_empty()) return SetExpr::empty(a.dim);
  std::vector<Box> boxes;
  for (const Box& x : a.boxes)
    for (const Box& y : b.boxes) {
      std::vector<Interval1D> fs;
      fs.reserve(x.factors.size());
      for (std::size_t i = 0; i < x.factors.size(); ++i) {
        const Interval1D& f = x.factors[i];
        const Interval1D& g = y.factors[i];
        fs.emplace_back(f.lo + g.lo, f.hi + g.hi, f.lo_open || g.lo_open,
                        f.hi_open || g.hi_open);
      }
      boxes.emplace_back(std::move(fs));
    }
  for (const Box& x : a.boxes)
    for (const RatVec& q : b.points) boxes.push_back(translate(x, q));
  for (const Box& y : b.boxes)
    for (const RatVec& p : a.points) boxes.push_back(translate(y, p));
  std::vector<RatVec> pts;
  for (const RatVec& p : a.points)
    for (const RatVec& q : b.points) {
      RatVec r;
      r.reserve(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) r.push_back(p[i] + q[i]);
      pts.push_back(std::move(r));
    }
  sort_unique(pts);
  return SetExpr(a.dim, std::move(boxes), std::move(pts));
}

bool membership(const SetExpr& s, const RatVec& x) {
  if (static_cast<int>(x.size()) != s.dim) throw input_error("dimension mismatch");
  for (const Box& b : s.boxes)
    if (b.contains(x)) return true;
  for (const RatVec& p : s.points)
    if (p == x) return true;
  return false;
}

std::vector<std::vector<Integer>> integer_points(const SetExpr& s) {
  std::vector<std::vector<Integer>> out;
  std::size_t n = static_cast<std::size_t>(s.dim);
  for (const Box& b : s.boxes) {
    std::vector<Integer> lo(n), hi(n);
    bool any = true;
    for (std::size_t i = 0; i < n; ++i)
      if (!integer_range(b.factors[i], lo[i], hi[i])) {
        any = false;
        break;
      }
    if (!any) continue;
    std::vector<Integer> cur = lo;
    do {
      out.push_back(cur);
    } while (advance(cur, lo, hi));
  }
  for (const RatVec& p : s.points) {
    std::vector<Integer> z;
    z.reserve(n);
    bool integral = true;
    for (const Rational& x : p) {
      if (!is_integer(x)) {
        integral = false;
        break;
      }
      z.push_back(x.get_num());
    }
    if (integral) out.push_back(std::move(z));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Integer count_lattice(const SetExpr& s) {
  if (s.points.empty() && s.boxes.size() == 1) {
    Integer total = 1;
    for (const Interval1D& f : s.boxes[0].factors) {
      Integer lo, hi;
      if (!integer_range(f, lo, hi)) return 0;
      total *= hi - lo + 1;
    }
    return total;
  }
  return Integer(static_cast<unsigned long>(integer_points(s).size()));
}

SetExpr section(const SetExpr& s, const Rational& t) {
  if (s.dim < 2) throw input_error("section needs dimension at least 2");
  std::vector<Box> boxes;
  for (const Box& b : s.boxes) {
    if (!b.factors.back().contains(t)) continue;
    boxes.emplace_back(
        std::vector<Interval1D>(b.factors.begin(), b.factors.end() - 1));
  }
  std::vector<RatVec> pts;
  for (const RatVec& p : s.points) {
    if (p.back() != t) continue;
    pts.emplace_back(p.begin(), p.end() - 1);
  }
  return SetExpr(s.dim - 1, std::move(boxes), std::move(pts));
}

SetExpr project_last(const SetExpr& s) {
  std::vector<Box> boxes;
  for (const Box& b : s.boxes) boxes.push_back(Box({b.factors.back()}));
  std::vector<RatVec> pts;
  for (const RatVec& p : s.points) pts.push_back({p.back()});
  return SetExpr(1, std::move(boxes), std::move(pts));
}

std::vector<Interval1D> normalize_1d(const SetExpr& s, bool closed_hull) {
  if (s.dim != 1) throw input_error("normalize_1d needs a 1-d set");
  if (s.is_empty()) throw input_error("cannot normalize an empty set");
  std::vector<Interval1D> pieces;
  for (const Box& b : s.boxes) pieces.push_back(b.factors[0]);
  for (const RatVec& p : s.points) pieces.emplace_back(p[0], p[0]);
  if (closed_hull)
    for (Interval1D& iv : pieces)
      iv = Interval1D(Rational(rat_floor(iv.lo)), Rational(rat_ceil(iv.hi)));
  std::sort(pieces.begin(), pieces.end(), [](const Interval1D& a, const Interval1D& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return !a.lo_open && b.lo_open;
  });
  std::vector<Interval1D> out;
  for (const Interval1D& piece : pieces) {
    if (!out.empty()) {
      Interval1D& cur = out.back();
      bool joins = piece.lo < cur.hi ||
                   (piece.lo == cur.hi && (!cur.hi_open || !piece.lo_open));
      if (joins) {
        if (piece.lo == cur.lo) cur.lo_open = cur.lo_open && piece.lo_open;
        if (piece.hi > cur.hi) {
          cur.hi = piece.hi;
          cur.hi_open = piece.hi_open;
        } else if (piece.hi == cur.hi) {
          cur.hi_open = cur.hi_open && piece.hi_open;
        }
        continue;
      }
    }
    out.push_back(piece);
  }
  return out;
}

long noninteger_endpoints(const std::vector<Interval1D>& intervals) {
  long count = 0;
  for (const Interval1D& iv : intervals) {
    if (iv.lo_open || iv.hi_open)
      throw input_error("endpoint functional needs closed intervals");
    if (!is_integer(iv.lo)) ++count;
    if (!is_integer(iv.hi)) ++count;
  }
  return count;
}

SetExpr lattice_transform(const SetExpr& s, const LatticeBasis& basis) {
  if (basis.dim() != s.dim) throw input_error("dimension mismatch");
  std::size_t n = static_cast<std::size_t>(s.dim);
  std::vector<RatVec> pts;
  for (const RatVec& p : s.points) pts.push_back(basis.solve(p));
  if (s.boxes.empty()) {
    sort_unique(pts);
    return SetExpr(s.dim, {}, std::move(pts));
  }
  if (basis.is_diagonal()) {
    std::vector<Box> boxes;
    for (const Box& b : s.boxes) {
      std::vector<Interval1D> fs;
      for (std::size_t i = 0; i < n; ++i) {
        const Interval1D& f = b.factors[i];
        const Rational& d = basis.rows()[i][i];
        if (d > 0)
          fs.emplace_back(f.lo / d, f.hi / d, f.lo_open, f.hi_open);
        else
          fs.emplace_back(f.hi / d, f.lo / d, f.hi_open, f.lo_open);
      }
      boxes.emplace_back(std::move(fs));
    }
    sort_unique(pts);
    return SetExpr(s.dim, std::move(boxes), std::move(pts));
  }
  // A non-diagonal image of a box is a parallelepiped, which the
  // representation cannot hold. Collapse each box to its points in the
  // spanned lattice, pulled back to integer vectors. Preimage bounds come
  // from the box corners since the inverse map is linear.
  for (const Box& b : s.boxes) {
    std::vector<RatVec> corners{{}};
    for (const Interval1D& f : b.factors) {
      std::vector<RatVec> next;
      for (const RatVec& c : corners) {
        RatVec lo = c, hi = c;
        lo.push_back(f.lo);
        hi.push_back(f.hi);
        next.push_back(std::move(lo));
        next.push_back(std::move(hi));
      }
      corners = std::move(next);
    }
    std::vector<Integer> zlo(n), zhi(n);
    bool first = true;
    for (const RatVec& c : corners) {
      RatVec z = basis.solve(c);
      for (std::size_t i = 0; i < n; ++i) {
        Integer f = rat_floor(z[i]), g = rat_ceil(z[i]);
        if (first || f < zlo[i]) zlo[i] = f;
        if (first || g > zhi[i]) zhi[i] = g;
      }
      first = false;
    }
    std::vector<Integer> cur = zlo;
    do {
      RatVec z;
      z.reserve(n);
      for (const Integer& v : cur) z.push_back(Rational(v));
      if (b.contains(basis.apply(z))) pts.push_back(z);
    } while (advance(cur, zlo, zhi));
  }
  sort_unique(pts);
  return SetExpr(s.dim, {}, std::move(pts));
}

std::optional<Interval1D> intersect(const Interval1D& a, const Interval1D& b) {
  Rational lo = a.lo;
  bool lo_open = a.lo_open;
  if (b.lo > lo) {
    lo = b.lo;
    lo_open = b.lo_open;
  } else if (b.lo == lo) {
    lo_open = lo_open || b.lo_open;
  }
  Rational hi = a.hi;
  bool hi_open = a.hi_open;
  if (b.hi < hi) {
    hi = b.hi;
    hi_open = b.hi_open;
  } else if (b.hi == hi) {
    hi_open = hi_open || b.hi_open;
  }
  return make_valid(lo, hi, lo_open, hi_open);
}

std::optional<Box> intersect(const Box& a, const Box& b) {
  if (a.dim() != b.dim()) throw input_error("dimension mismatch");
  std::vector<Interval1D> fs;
  fs.reserve(a.factors.size());
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    auto f = intersect(a.factors[i], b.factors[i]);
    if (!f) return std::nullopt;
    fs.push_back(*f);
  }
  return Box(std::move(fs));
}

SetExpr intersect_sets(const SetExpr& a, const SetExpr& b) {
  if (a.dim != b.dim) throw input_error("dimension mismatch");
  std::vector<Box> boxes;
  for (const Box& x : a.boxes)
    for (const Box& y : b.boxes)
      if (auto common = intersect(x, y)) boxes.push_back(std::move(*common));
  std::vector<RatVec> pts;
  for (const RatVec& p : a.points)
    if (membership(b, p)) pts.push_back(p);
  for (const RatVec& q : b.points)
    if (membership(a, q)) pts.push_back(q);
  sort_unique(pts);
  return SetExpr(a.dim, std::move(boxes), std::move(pts));
}

RatVec sample_point(const Box& b) {
  RatVec x;
  x.reserve(b.factors.size());
  for (const Interval1D& f : b.factors) {
    if (!f.lo_open)
      x.push_back(f.lo);
    else if (!f.hi_open)
      x.push_back(f.hi);
    else
      x.push_back((f.lo + f.hi) / 2);
  }
  return x;
}

std::optional<RatVec> uncovered_point(const Box& target, const std::vector<Box>& cover) {
  const Box* hit = nullptr;
  std::optional<Box> overlap;
  for (const Box& c : cover) {
    overlap = intersect(target, c);
    if (overlap) {
      hit = &c;
      break;
    }
  }
  if (!hit) return sample_point(target);
  // Peel the part of target outside hit, axis by axis. Each peeled slab is
  // disjoint from hit, so recursion on it makes progress; what remains after
  // all axes is overlap itself, which hit covers.
  Box remaining = target;
  for (std::size_t i = 0; i < remaining.factors.size(); ++i) {
    const Interval1D& t = remaining.factors[i];
    const Interval1D& h = hit->factors[i];
    auto recurse = [&](const Interval1D& slab) -> std::optional<RatVec> {
      Box piece = remaining;
      piece.factors[i] = slab;
      return uncovered_point(piece, cover);
    };
    if (auto below = make_valid(t.lo, h.lo, t.lo_open, !h.lo_open)) {
      if (auto slab = intersect(*below, t)) {
        if (auto found = recurse(*slab)) return found;
      }
    }
    if (auto above = make_valid(h.hi, t.hi, !h.hi_open, t.hi_open)) {
      if (auto slab = intersect(*above, t)) {
        if (auto found = recurse(*slab)) return found;
      }
    }
    remaining.factors[i] = overlap->factors[i];
  }
  return std::nullopt;
}

}  // namespace latticebm
