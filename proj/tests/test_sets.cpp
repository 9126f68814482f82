#include <doctest.h>

#include <algorithm>
#include <optional>
#include <vector>

#include "latticebm/errors.hpp"
#include "latticebm/sets.hpp"

using namespace latticebm;

namespace {

struct TestRng {
  unsigned long long state = 0x2545f4914f6cdd1dull;
  unsigned long long next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  long next_in(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }
  bool next_bool() { return next() & 1; }
  Rational next_rational(long lo, long hi, long den_max) {
    long den = next_in(1, den_max);
    return rational_from_long(next_in(lo * den, hi * den), den);
  }
};

Interval1D rand_interval(TestRng& rng) {
  Rational a = rng.next_rational(-4, 4, 3);
  Rational b = rng.next_rational(-4, 4, 3);
  if (a > b) std::swap(a, b);
  if (a == b) return Interval1D(a, b);
  return Interval1D(a, b, rng.next_bool(), rng.next_bool());
}

Box rand_box(TestRng& rng, int n) {
  std::vector<Interval1D> fs;
  for (int i = 0; i < n; ++i) fs.push_back(rand_interval(rng));
  return Box(std::move(fs));
}

SetExpr rand_set(TestRng& rng, int n, int max_boxes, int max_points) {
  std::vector<Box> boxes;
  for (long i = rng.next_in(0, max_boxes); i > 0; --i) boxes.push_back(rand_box(rng, n));
  std::vector<RatVec> pts;
  for (long i = rng.next_in(0, max_points); i > 0; --i) {
    RatVec p;
    for (int j = 0; j < n; ++j) p.push_back(rng.next_rational(-4, 4, 2));
    pts.push_back(std::move(p));
  }
  if (boxes.empty() && pts.empty()) boxes.push_back(rand_box(rng, n));
  return SetExpr(n, std::move(boxes), std::move(pts));
}

// Counting oracle: enumerate the integer bounding box, test membership.
Integer brute_count(const SetExpr& s) {
  std::vector<Integer> lo(s.dim), hi(s.dim);
  bool first = true;
  auto widen = [&](const RatVec& p) {
    for (int i = 0; i < s.dim; ++i) {
      Integer f = rat_floor(p[i]), c = rat_ceil(p[i]);
      if (first || f < lo[i]) lo[i] = f;
      if (first || c > hi[i]) hi[i] = c;
    }
    first = false;
  };
  for (const Box& b : s.boxes) {
    RatVec los, his;
    for (const Interval1D& f : b.factors) {
      los.push_back(f.lo);
      his.push_back(f.hi);
    }
    widen(los);
    widen(his);
  }
  for (const RatVec& p : s.points) widen(p);
  if (first) return 0;
  Integer count = 0;
  std::vector<Integer> cur = lo;
  while (true) {
    RatVec x;
    for (const Integer& v : cur) x.push_back(Rational(v));
    if (membership(s, x)) count += 1;
    int i = s.dim;
    while (--i >= 0) {
      if (cur[i] < hi[i]) {
        cur[i] += 1;
        for (int j = i + 1; j < s.dim; ++j) cur[j] = lo[j];
        break;
      }
    }
    if (i < 0) break;
  }
  return count;
}

RatVec rv(std::initializer_list<long> xs) {
  RatVec v;
  for (long x : xs) v.push_back(Rational(x));
  return v;
}

SetExpr square(const Interval1D& iv) { return SetExpr::from_box(Box({iv, iv})); }

}  // namespace

TEST_CASE("interval and box invariants") {
  CHECK_THROWS_AS(Interval1D(Rational(1), Rational(0)), input_error);
  CHECK_THROWS_AS(Interval1D(Rational(1), Rational(1), true, false), input_error);
  CHECK_NOTHROW(Interval1D(Rational(1), Rational(1)));
  Interval1D open(Rational(-1), Rational(1), true, true);
  CHECK(open.contains(Rational(0)));
  CHECK(!open.contains(Rational(1)));
  CHECK(!open.contains(Rational(-1)));
  Interval1D unit(Rational(0), Rational(1));
  CHECK(unit.contains(Rational(1)));
  CHECK_THROWS_AS(Box({}), input_error);
  CHECK_THROWS_AS(SetExpr(2, {Box({unit})}, {}), input_error);
  CHECK_THROWS_AS(SetExpr(1, {}, {rv({1, 2})}), input_error);
}

TEST_CASE("scaling") {
  SetExpr s = SetExpr::from_interval(Interval1D(Rational(0), Rational(3)));
  SetExpr half = scale(s, rational_from_long(1, 2));
  CHECK(half.boxes[0].factors[0].lo == 0);
  CHECK(half.boxes[0].factors[0].hi == rational_from_long(3, 2));

  SetExpr pt = scale(SetExpr::from_point(rv({2, 4})), rational_from_long(1, 2));
  CHECK(pt.points[0] == rv({1, 2}));

  SetExpr zero = scale(SetExpr::from_interval(Interval1D(Rational(-1), Rational(1), true, true)),
                       Rational(0));
  CHECK(zero.boxes.empty());
  CHECK(zero.points == std::vector<RatVec>{rv({0})});

  CHECK_THROWS_AS(scale(s, Rational(-1)), input_error);
}

TEST_CASE("minkowski sums") {
  SetExpr unit = SetExpr::from_interval(Interval1D(Rational(0), Rational(1)));
  SetExpr cube = SetExpr::from_interval(Interval1D(Rational(-1), Rational(1), true, true));
  SetExpr sum = minkowski_sum(unit, cube);
  REQUIRE(sum.boxes.size() == 1);
  const Interval1D& f = sum.boxes[0].factors[0];
  CHECK(f.lo == -1);
  CHECK(f.hi == 2);
  CHECK(f.lo_open);
  CHECK(f.hi_open);

  SetExpr a = SetExpr::from_points({rv({0, 0}), rv({1, 1})});
  SetExpr b = SetExpr::from_points({rv({0, 0}), rv({0, 1}), rv({1, 0}), rv({1, 1})});
  SetExpr c = minkowski_sum(a, b);
  std::vector<RatVec> want = {rv({0, 0}), rv({0, 1}), rv({1, 0}), rv({1, 1}),
                              rv({1, 2}), rv({2, 1}), rv({2, 2})};
  CHECK(c.points == want);

  SetExpr k = SetExpr::from_interval(Interval1D(Rational(0), Rational(3)));
  SetExpr l = SetExpr::from_interval(Interval1D(Rational(-3), Rational(0)));
  SetExpr kl = minkowski_sum(k, l);
  CHECK(kl.boxes[0].factors[0].lo == -3);
  CHECK(kl.boxes[0].factors[0].hi == 3);

  CHECK_THROWS_AS(minkowski_sum(unit, a), input_error);
}

TEST_CASE("lattice point counts") {
  CHECK(count_lattice(SetExpr::from_interval(Interval1D(Rational(0), Rational(5)))) == 6);
  CHECK(count_lattice(square(Interval1D(rational_from_long(-5, 3), rational_from_long(11, 3)))) ==
        25);
  CHECK(count_lattice(SetExpr::from_interval(Interval1D(Rational(-1), Rational(1), true, true))) ==
        1);

  SetExpr k2 = square(Interval1D(Rational(0), Rational(3)));
  SetExpr c2 = square(Interval1D(Rational(-1), Rational(1), true, true));
  CHECK(count_lattice(minkowski_sum(k2, c2)) == 16);

  // overlap between boxes and points is counted once
  SetExpr overlap(1, {Box({Interval1D(Rational(0), Rational(2))})}, {rv({1}), rv({5})});
  CHECK(count_lattice(overlap) == 4);
}

TEST_CASE("membership") {
  SetExpr open = SetExpr::from_interval(Interval1D(Rational(-1), Rational(1), true, true));
  CHECK(!membership(open, {Rational(1)}));
  SetExpr unit = SetExpr::from_interval(Interval1D(Rational(0), Rational(1)));
  CHECK(membership(unit, {Rational(1)}));
  SetExpr pt = SetExpr::from_point(rv({1, 2}));
  CHECK(membership(pt, rv({1, 2})));
  CHECK(!membership(pt, rv({2, 1})));
}

TEST_CASE("sections and projections") {
  Box b({Interval1D(Rational(0), Rational(2)), Interval1D(Rational(0), Rational(3))});
  SetExpr s = SetExpr::from_box(b);
  SetExpr sec = section(s, Rational(1));
  REQUIRE(sec.boxes.size() == 1);
  CHECK(sec.dim == 1);
  CHECK(sec.boxes[0].factors[0].hi == 2);
  SetExpr proj = project_last(s);
  CHECK(proj.dim == 1);
  CHECK(proj.boxes[0].factors[0].hi == 3);

  SetExpr pt = SetExpr::from_point(rv({1, 5}));
  SetExpr hit = section(pt, Rational(5));
  CHECK(hit.points == std::vector<RatVec>{rv({1})});
  SetExpr miss = section(pt, Rational(4));
  CHECK(miss.is_empty());

  CHECK_THROWS_AS(section(proj, Rational(0)), input_error);
}

TEST_CASE("1-d normalization") {
  SetExpr s(1,
            {Box({Interval1D(Rational(0), Rational(1))}),
             Box({Interval1D(rational_from_long(1, 2), Rational(2))})},
            {rv({3})});
  auto merged = normalize_1d(s, false);
  REQUIRE(merged.size() == 2);
  CHECK(merged[0].lo == 0);
  CHECK(merged[0].hi == 2);
  CHECK(merged[1].lo == 3);
  CHECK(merged[1].hi == 3);

  auto hull = normalize_1d(SetExpr::from_point({rational_from_long(1, 4)}), true);
  REQUIRE(hull.size() == 1);
  CHECK(hull[0].lo == 0);
  CHECK(hull[0].hi == 1);

  long m = 4;
  SetExpr sym(1,
              {Box({Interval1D(Rational(-m), rational_from_long(-1, 2))}),
               Box({Interval1D(rational_from_long(1, 2), Rational(m))})},
              {});
  auto two = normalize_1d(sym, false);
  REQUIRE(two.size() == 2);
  CHECK(two[0].lo == -m);
  CHECK(two[0].hi == rational_from_long(-1, 2));
  CHECK(two[1].lo == rational_from_long(1, 2));
  CHECK(two[1].hi == m);

  // an open gap of one point is preserved
  SetExpr gap(1,
              {Box({Interval1D(Rational(0), Rational(1), false, true)}),
               Box({Interval1D(Rational(1), Rational(2), true, false)})},
              {});
  CHECK(normalize_1d(gap, false).size() == 2);
  SetExpr plugged = gap;
  plugged.points.push_back(rv({1}));
  CHECK(normalize_1d(plugged, false).size() == 1);
}

TEST_CASE("endpoint functional") {
  long m = 4;
  std::vector<Interval1D> sym = {Interval1D(Rational(-m), rational_from_long(-1, 2)),
                                 Interval1D(rational_from_long(1, 2), Rational(m))};
  CHECK(noninteger_endpoints(sym) == 2);
  CHECK(noninteger_endpoints({Interval1D(Rational(0), Rational(1))}) == 0);
  CHECK(noninteger_endpoints({Interval1D(rational_from_long(1, 3), rational_from_long(5, 2))}) ==
        2);
  CHECK_THROWS_AS(noninteger_endpoints({Interval1D(Rational(0), Rational(1), true, false)}),
                  input_error);
}

TEST_CASE("lattice basis transforms") {
  LatticeBasis twice({{Rational(2)}});
  SetExpr s = SetExpr::from_interval(Interval1D(Rational(0), Rational(4)));
  SetExpr t = lattice_transform(s, twice);
  CHECK(t.boxes[0].factors[0].hi == 2);

  LatticeBasis id({{Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
  SetExpr sq = square(Interval1D(Rational(0), Rational(2)));
  SetExpr same = lattice_transform(sq, id);
  CHECK(count_lattice(same) == 9);

  LatticeBasis shear({{Rational(1), Rational(1)}, {Rational(0), Rational(1)}});
  SetExpr pt = lattice_transform(SetExpr::from_point(rv({2, 1})), shear);
  CHECK(pt.points == std::vector<RatVec>{rv({1, 1})});

  CHECK_THROWS_AS(LatticeBasis({{Rational(1), Rational(1)}, {Rational(1), Rational(1)}}),
                  input_error);

  // non-diagonal basis collapses boxes to the lattice points they contain
  SetExpr shsq = lattice_transform(sq, shear);
  CHECK(shsq.boxes.empty());
  Integer direct = 0;
  for (long x = -10; x <= 10; ++x)
    for (long y = -10; y <= 10; ++y)
      if (membership(sq, shear.apply(rv({x, y})))) direct += 1;
  CHECK(count_lattice(shsq) == direct);
}

TEST_CASE("counting agrees with bounding-box enumeration") {
  TestRng rng;
  for (int i = 0; i < 400; ++i) {
    int n = static_cast<int>(rng.next_in(1, 3));
    SetExpr s = SetExpr::from_box(rand_box(rng, n));
    CHECK(count_lattice(s) == brute_count(s));
  }
  for (int i = 0; i < 200; ++i) {
    int n = static_cast<int>(rng.next_in(1, 2));
    SetExpr s = rand_set(rng, n, 3, 3);
    CHECK(count_lattice(s) == brute_count(s));
  }
}

TEST_CASE("minkowski sum properties") {
  TestRng rng;
  for (int i = 0; i < 60; ++i) {
    int n = static_cast<int>(rng.next_in(1, 2));
    SetExpr a = rand_set(rng, n, 2, 2);
    SetExpr b = rand_set(rng, n, 2, 2);
    SetExpr c = rand_set(rng, n, 2, 2);
    CHECK(count_lattice(minkowski_sum(minkowski_sum(a, b), c)) ==
          count_lattice(minkowski_sum(a, minkowski_sum(b, c))));
  }
  for (int i = 0; i < 80; ++i) {
    int n = static_cast<int>(rng.next_in(1, 3));
    SetExpr s = rand_set(rng, n, 2, 2);
    RatVec z;
    for (int j = 0; j < n; ++j) z.push_back(Rational(rng.next_in(-3, 3)));
    CHECK(count_lattice(minkowski_sum(s, SetExpr::from_point(z))) == count_lattice(s));
  }
}

TEST_CASE("sections tile the count") {
  TestRng rng;
  for (int i = 0; i < 80; ++i) {
    int n = static_cast<int>(rng.next_in(2, 3));
    SetExpr s = rand_set(rng, n, 3, 0);
    Integer total = 0;
    for (const auto& t : integer_points(project_last(s)))
      total += count_lattice(section(s, Rational(t[0])));
    CHECK(total == count_lattice(s));
  }
}

TEST_CASE("combinations contain sampled combinations of members") {
  TestRng rng;
  for (int i = 0; i < 60; ++i) {
    int n = static_cast<int>(rng.next_in(1, 2));
    SetExpr k = rand_set(rng, n, 2, 2);
    SetExpr l = rand_set(rng, n, 2, 2);
    Rational lambda = rational_from_long(rng.next_in(0, 4), 4);
    SetExpr combo = minkowski_sum(scale(k, 1 - lambda), scale(l, lambda));
    for (int probe = 0; probe < 8; ++probe) {
      auto pick = [&](const SetExpr& s) -> RatVec {
        auto pts = integer_points(s);
        if (!pts.empty() && rng.next_bool()) {
          RatVec x;
          for (const auto& v : pts[static_cast<std::size_t>(rng.next_in(
                   0, static_cast<long>(pts.size()) - 1))])
            x.push_back(Rational(v));
          return x;
        }
        if (!s.points.empty())
          return s.points[static_cast<std::size_t>(
              rng.next_in(0, static_cast<long>(s.points.size()) - 1))];
        RatVec x;
        for (const Interval1D& f : s.boxes[0].factors) x.push_back((f.lo + f.hi) / 2);
        return x;
      };
      RatVec x = pick(k), y = pick(l);
      if (!membership(k, x) || !membership(l, y)) continue;
      RatVec z;
      for (int j = 0; j < n; ++j) z.push_back((1 - lambda) * x[j] + lambda * y[j]);
      CHECK(membership(combo, z));
    }
  }
}

TEST_CASE("normalization covers exactly") {
  TestRng rng;
  for (int i = 0; i < 120; ++i) {
    SetExpr s = rand_set(rng, 1, 3, 2);
    for (bool hull : {false, true}) {
      auto parts = normalize_1d(s, hull);
      REQUIRE(!parts.empty());
      for (std::size_t j = 0; j + 1 < parts.size(); ++j) {
        CHECK(parts[j].hi <= parts[j + 1].lo);
        if (parts[j].hi == parts[j + 1].lo) CHECK((parts[j].hi_open || parts[j + 1].lo_open));
      }
      if (hull)
        for (const Interval1D& iv : parts) {
          CHECK(is_integer(iv.lo));
          CHECK(is_integer(iv.hi));
          CHECK(!iv.lo_open);
          CHECK(!iv.hi_open);
        }
      // membership on a fine probe grid matches the normalized cover
      for (long num = -60; num <= 60; num += 3) {
        Rational x = rational_from_long(num, 12);
        bool in_parts = false;
        for (const Interval1D& iv : parts) in_parts = in_parts || iv.contains(x);
        if (!hull) {
          CHECK(in_parts == membership(s, {x}));
        } else if (membership(s, {x})) {
          CHECK(in_parts);
        }
      }
    }
  }
}

TEST_CASE("cover peeling finds exactly the uncovered points") {
  TestRng rng;
  for (int i = 0; i < 150; ++i) {
    int n = static_cast<int>(rng.next_in(1, 2));
    Box target = rand_box(rng, n);
    std::vector<Box> cover;
    for (long j = rng.next_in(0, 3); j > 0; --j) cover.push_back(rand_box(rng, n));
    auto witness = uncovered_point(target, cover);
    if (witness) {
      CHECK(target.contains(*witness));
      for (const Box& c : cover) CHECK(!c.contains(*witness));
    } else {
      // probe a fine grid of the target
      std::vector<RatVec> probes = {{}};
      for (const Interval1D& f : target.factors) {
        std::vector<RatVec> next;
        for (Rational x = f.lo; x <= f.hi; x += rational_from_long(1, 12)) {
          if (!f.contains(x)) continue;
          for (const RatVec& p : probes) {
            RatVec q = p;
            q.push_back(x);
            next.push_back(std::move(q));
          }
        }
        probes = std::move(next);
      }
      for (const RatVec& p : probes) {
        bool covered = false;
        for (const Box& c : cover) covered = covered || c.contains(p);
        CHECK(covered);
      }
    }
  }
}

TEST_CASE("diagonal transforms count the sublattice") {
  TestRng rng;
  for (int i = 0; i < 60; ++i) {
    int n = static_cast<int>(rng.next_in(1, 2));
    std::vector<RatVec> rows(static_cast<std::size_t>(n),
                             RatVec(static_cast<std::size_t>(n), Rational(0)));
    for (int j = 0; j < n; ++j) {
      long d = rng.next_in(1, 3);
      rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] =
          rng.next_bool() ? Rational(d) : Rational(-d);
    }
    LatticeBasis basis(rows);
    SetExpr s = SetExpr::from_box(rand_box(rng, n));
    Integer direct = 0;
    for (long x = -15; x <= 15; ++x) {
      if (n == 1) {
        if (membership(s, basis.apply({Rational(x)}))) direct += 1;
        continue;
      }
      for (long y = -15; y <= 15; ++y)
        if (membership(s, basis.apply(rv({x, y})))) direct += 1;
    }
    CHECK(count_lattice(lattice_transform(s, basis)) == direct);
  }
}
