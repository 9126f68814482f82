#include <doctest.h>

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "latticebm/errors.hpp"
#include "latticebm/json_io.hpp"

using namespace latticebm;

namespace {

struct TestRng {
  unsigned long long state = 0xa54ff53a5f1d36f1ull;
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
  Rational a = rng.next_rational(-3, 3, 2);
  Rational b = rng.next_rational(-3, 3, 2);
  if (a > b) std::swap(a, b);
  if (a == b) return Interval1D(a, b);
  return Interval1D(a, b, rng.next_bool(), rng.next_bool());
}

Box rand_box(TestRng& rng, int n) {
  std::vector<Interval1D> fs;
  for (int i = 0; i < n; ++i) fs.push_back(rand_interval(rng));
  return Box(std::move(fs));
}

RatVec rand_point(TestRng& rng, int n) {
  RatVec p;
  for (int i = 0; i < n; ++i) p.push_back(rng.next_rational(-3, 3, 2));
  return p;
}

SetExpr rand_set(TestRng& rng, int n) {
  std::vector<Box> boxes;
  for (long i = rng.next_in(0, 2); i > 0; --i) boxes.push_back(rand_box(rng, n));
  std::vector<RatVec> pts;
  long min_pts = boxes.empty() ? 1 : 0;
  for (long i = rng.next_in(min_pts, 2); i > 0; --i) pts.push_back(rand_point(rng, n));
  return SetExpr(n, std::move(boxes), std::move(pts));
}

std::string dump_set(const SetExpr& s) {
  std::ostringstream out;
  out << s.dim << "#";
  for (const Box& b : s.boxes) {
    for (const Interval1D& iv : b.factors)
      out << (iv.lo_open ? '(' : '[') << iv.lo.get_str() << "," << iv.hi.get_str()
          << (iv.hi_open ? ')' : ']');
    out << ";";
  }
  for (const RatVec& p : s.points) {
    for (const Rational& c : p) out << c.get_str() << ",";
    out << ";";
  }
  return out.str();
}

}  // namespace

TEST_CASE("sets round-trip exactly") {
  SetExpr sample(2,
                 {Box({Interval1D(rational_from_long(-5, 2), Rational(1), true, false),
                       Interval1D(Rational(0), Rational(3))})},
                 {{Rational(2), rational_from_long(7, 3)}});
  SetExpr back = set_from_json(to_json(sample));
  CHECK(dump_set(back) == dump_set(sample));
  CHECK(count_lattice(back) == count_lattice(sample));
  CHECK(to_json(back) == to_json(sample));

  TestRng rng;
  for (int it = 0; it < 50; ++it) {
    int n = 1 + (it % 3);
    SetExpr s = rand_set(rng, n);
    SetExpr r = set_from_json(to_json(s));
    CHECK(dump_set(r) == dump_set(s));
    CHECK(count_lattice(r) == count_lattice(s));
    RatVec probe = rand_point(rng, n);
    CHECK(membership(r, probe) == membership(s, probe));
  }
}

TEST_CASE("functions round-trip exactly") {
  PointMassFunction f(2);
  f.set({Rational(0), Rational(1)}, rational_from_long(5, 2));
  f.set({rational_from_long(1, 2), Rational(-1)}, Rational(3));
  PointMassFunction with_char(
      2, f.support(),
      SetExpr::from_box(Box({Interval1D(Rational(0), Rational(2)),
                             Interval1D(Rational(0), Rational(2), false, true)})));

  for (const PointMassFunction* fn : {&f, &with_char}) {
    PointMassFunction back = function_from_json(to_json(*fn));
    CHECK(back.dim() == fn->dim());
    CHECK(back.support() == fn->support());
    CHECK(back.char_part().has_value() == fn->char_part().has_value());
    CHECK(to_json(back) == to_json(*fn));
    for (long x = -2; x <= 3; ++x)
      for (long y = -2; y <= 3; ++y)
        CHECK(back.eval({Rational(x), Rational(y)}) == fn->eval({Rational(x), Rational(y)}));
  }

  TestRng rng;
  for (int it = 0; it < 30; ++it) {
    int n = 1 + (it % 2);
    PointMassFunction fn(n);
    for (long i = rng.next_in(1, 4); i > 0; --i)
      fn.set(rand_point(rng, n), rng.next_rational(0, 3, 4) + rational_from_long(1, 5));
    PointMassFunction back = function_from_json(to_json(fn));
    CHECK(back.support() == fn.support());
    SetExpr window = rand_set(rng, n);
    CHECK(lattice_sum(back, window) == lattice_sum(fn, window));
  }
}

TEST_CASE("bases round-trip exactly") {
  LatticeBasis shear({{Rational(1), Rational(1)}, {Rational(0), rational_from_long(3, 2)}});
  LatticeBasis back = basis_from_json(to_json(shear));
  REQUIRE(back.dim() == 2);
  CHECK(back.rows() == shear.rows());
  RatVec x{rational_from_long(1, 3), Rational(2)};
  CHECK(back.apply(x) == shear.apply(x));
}

TEST_CASE("certificate serialization carries the exact radical forms") {
  SetExpr A(2, {}, {{Rational(0), Rational(0)},
                    {Rational(1), Rational(0)},
                    {Rational(2), Rational(0)},
                    {Rational(1), Rational(1)}});
  SetExpr B(2, {}, {{Rational(0), Rational(0)},
                    {Rational(0), Rational(1)},
                    {Rational(1), Rational(0)},
                    {Rational(1), Rational(1)}});
  Certificate cert = verify_card_sum(A, B);
  auto node = nlohmann::json::parse(to_json(cert));
  CHECK(node["theorem"] == "card_sum");
  CHECK(node["verdict"] == "HoldsStrict");
  CHECK(node["lhs"]["degree"] == 2);
  REQUIRE(node["lhs"]["terms"].size() == 1);
  CHECK(node["lhs"]["terms"][0][0] == "3");
  CHECK(node["lhs"]["terms"][0][1] == "2");
  CHECK(node["rhs"]["terms"][0][0] == "4");
  CHECK(node["rhs"]["terms"][0][1] == "1");
  CHECK(node.find("witness") == node.end());

  VerifyRequest bad{"naive",
                    SetExpr::from_interval(Interval1D(Rational(0), rational_from_long(5, 2))),
                    SetExpr::from_interval(Interval1D(Rational(0), rational_from_long(13, 4))),
                    Rational(1, 2),
                    {},
                    {},
                    false};
  auto violated = nlohmann::json::parse(to_json(verify_bm(bad)));
  CHECK(violated["verdict"] == "Violated");
  REQUIRE(violated.find("witness") != violated.end());
  CHECK(!violated["witness"]["note"].get<std::string>().empty());
}

TEST_CASE("scan reports serialize with their instances") {
  InstanceFamily fam;
  fam.kind = InstanceFamily::Kind::BoxUnion;
  fam.dimension = 1;
  fam.window = 3;
  fam.max_boxes = 2;
  fam.denominator_bound = 2;
  fam.seed = 20;
  ScanReport report = scan(fam, {Rational(1, 2)}, "naive", 25);
  auto node = nlohmann::json::parse(to_json(report));
  CHECK(node["theorem"] == "naive");
  CHECK(node["instances_run"] == 25);
  CHECK(node["violations"].size() == report.violations.size());
  CHECK(!report.violations.empty());
  CHECK(node["min_slack"]["certificate"]["verdict"] == "Violated");
  CHECK(node["min_slack"]["lambda"] == "1/2");

  SetExpr K = set_from_json(node["min_slack"]["K"].dump());
  SetExpr L = set_from_json(node["min_slack"]["L"].dump());
  Certificate again = verify_bm(VerifyRequest{"naive", K, L, Rational(1, 2), {}, {}, false});
  CHECK(verdict_name(again.verdict) ==
        node["min_slack"]["certificate"]["verdict"].get<std::string>());
}

TEST_CASE("check tables and limit steps serialize") {
  auto checks = nlohmann::json::parse(to_json(std::vector<ReproCheck>{
      {"sample-check", "a recorded value", true}}));
  CHECK(checks["checks"][0]["name"] == "sample-check");
  CHECK(checks["checks"][0]["pass"] == true);

  SetExpr third = SetExpr::from_interval(Interval1D(Rational(0), rational_from_long(1, 3)));
  SetExpr window = SetExpr::from_interval(Interval1D(Rational(-1), Rational(1)));
  auto steps = nlohmann::json::parse(to_json(riemann_limit_demo(third, window, 3)));
  REQUIRE(steps["steps"].size() == 4);
  CHECK(steps["steps"][3]["k"] == 3);
  CHECK(steps["steps"][3]["lower_sum"] == "1/4");
}

TEST_CASE("malformed input is rejected as an input error") {
  CHECK_THROWS_AS(set_from_json("not json"), input_error);
  CHECK_THROWS_AS(set_from_json("[1,2]"), input_error);
  CHECK_THROWS_AS(set_from_json(R"({"boxes": []})"), input_error);
  CHECK_THROWS_AS(set_from_json(R"({"dim": "two"})"), input_error);
  CHECK_THROWS_AS(set_from_json(R"({"dim": 1, "points": [[0.5]]})"), input_error);
  CHECK_THROWS_AS(set_from_json(R"({"dim": 1, "points": [["1/0"]]})"), input_error);
  CHECK_THROWS_AS(set_from_json(R"({"dim": 1, "boxes": [[{"lo": "1"}]]})"), input_error);
  CHECK_THROWS_AS(function_from_json(R"({"dim": 1, "atoms": [{"x": ["0"]}]})"), input_error);
  CHECK_THROWS_AS(basis_from_json(R"({"rows": [["1","0"]]})"), input_error);
  CHECK_THROWS_AS(load_set("/nonexistent/path/set.json"), input_error);
  try {
    load_set("/nonexistent/path/set.json");
  } catch (const input_error& e) {
    CHECK(std::string(e.what()).find("/nonexistent/path/set.json") != std::string::npos);
  }
}
