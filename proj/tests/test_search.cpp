#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "latticebm/errors.hpp"
#include "latticebm/search.hpp"

using namespace latticebm;

namespace {

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

std::string dump_pairs(const std::vector<std::pair<SetExpr, SetExpr>>& pairs) {
  std::string out;
  for (const auto& pr : pairs) out += dump_set(pr.first) + "|" + dump_set(pr.second) + "\n";
  return out;
}

std::string dump_instance(const ScanInstance& inst) {
  return dump_set(inst.K) + "|" + dump_set(inst.L) + "|" + inst.lambda.get_str() + "|" +
         inst.certificate.lhs.to_string() + "|" + inst.certificate.rhs.to_string() + "|" +
         verdict_name(inst.certificate.verdict);
}

std::string dump_report(const ScanReport& r) {
  std::string out = r.theorem_id + "/" + std::to_string(r.instances_run) + "/" +
                    std::to_string(r.skipped_preconditions) + "\n";
  if (r.min_slack) out += "min " + dump_instance(*r.min_slack) + "\n";
  for (const ScanInstance& e : r.equalities) out += "eq " + dump_instance(e) + "\n";
  for (const ScanInstance& v : r.violations) out += "viol " + dump_instance(v) + "\n";
  return out;
}

InstanceFamily points_family(int n, std::uint64_t seed) {
  InstanceFamily f;
  f.kind = InstanceFamily::Kind::LatticePoints;
  f.dimension = n;
  f.window = 3;
  f.density = Rational(1, 4);
  f.seed = seed;
  return f;
}

InstanceFamily boxes_family(int n, std::uint64_t seed) {
  InstanceFamily f;
  f.kind = InstanceFamily::Kind::BoxUnion;
  f.dimension = n;
  f.window = 3;
  f.max_boxes = 2;
  f.denominator_bound = 3;
  f.seed = seed;
  return f;
}

}  // namespace

TEST_CASE("stream matches the documented algorithm") {
  SplitMix64 a(0);
  CHECK(a.next() == 0xe66723570e24e595ull);
  CHECK(a.next() == 0x334556b085e68104ull);
  CHECK(a.next() == 0xf20c361d03f0a592ull);

  SplitMix64 b(42);
  CHECK(b.next() == 0xe5b0789510ed65a1ull);
  CHECK(b.next() == 0x87d64026837312c6ull);

  SplitMix64 c(7);
  for (int i = 0; i < 200; ++i) {
    long v = c.next_in(-3, 3);
    CHECK(v >= -3);
    CHECK(v <= 3);
  }
  CHECK(c.next_below(1) == 0);

  SplitMix64 parent(9), expected(9);
  SplitMix64 child = parent.split();
  CHECK(child.next() == SplitMix64(expected.next()).next());
}

TEST_CASE("generation is deterministic and respects its bounds") {
  SUBCASE("identical seeds give identical pairs") {
    InstanceFamily f = points_family(2, 11);
    CHECK(dump_pairs(generate(f, 6)) == dump_pairs(generate(f, 6)));
    InstanceFamily g = boxes_family(1, 11);
    CHECK(dump_pairs(generate(g, 6)) == dump_pairs(generate(g, 6)));

    InstanceFamily other = f;
    other.seed = 12;
    CHECK(dump_pairs(generate(f, 6)) != dump_pairs(generate(other, 6)));
  }

  SUBCASE("full density fills the window cube") {
    InstanceFamily f = points_family(2, 3);
    f.window = 2;
    f.density = Rational(1);
    auto pairs = generate(f, 2);
    for (const auto& pr : pairs) {
      CHECK(count_lattice(pr.first) == 25);
      CHECK(count_lattice(pr.second) == 25);
    }
  }

  SUBCASE("point sets stay inside the window and are never empty") {
    InstanceFamily f = points_family(3, 17);
    f.density = Rational(1, 100);
    for (const auto& pr : generate(f, 20)) {
      for (const SetExpr* s : {&pr.first, &pr.second}) {
        CHECK(!s->is_empty());
        for (const RatVec& p : s->points)
          for (const Rational& c : p) {
            CHECK(c >= -3);
            CHECK(c <= 3);
            CHECK(c.get_den() == 1);
          }
      }
    }
  }

  SUBCASE("boxes keep bounded denominators inside the window") {
    InstanceFamily f = boxes_family(1, 23);
    for (const auto& pr : generate(f, 20)) {
      for (const SetExpr* s : {&pr.first, &pr.second}) {
        CHECK(!s->is_empty());
        CHECK(s->boxes.size() <= 2);
        for (const Box& b : s->boxes)
          for (const Interval1D& iv : b.factors) {
            CHECK(iv.lo >= -3);
            CHECK(iv.hi <= 3);
            CHECK(iv.lo.get_den() <= 3);
            CHECK(iv.hi.get_den() <= 3);
          }
      }
    }
  }

  SUBCASE("family validation") {
    InstanceFamily f = points_family(1, 1);
    CHECK_THROWS_AS(generate(f, 0), input_error);
    f.density = Rational(0);
    CHECK_THROWS_AS(generate(f, 1), input_error);
    f.density = Rational(3, 2);
    CHECK_THROWS_AS(generate(f, 1), input_error);
    f = points_family(0, 1);
    CHECK_THROWS_AS(generate(f, 1), input_error);
    f = boxes_family(1, 1);
    f.denominator_bound = 0;
    CHECK_THROWS_AS(generate(f, 1), input_error);
    f = boxes_family(1, 1);
    f.max_boxes = 0;
    CHECK_THROWS_AS(generate(f, 1), input_error);
  }
}

TEST_CASE("covered scans stay clean") {
  const std::vector<Rational> grid = {Rational(1, 3), Rational(1, 2), Rational(2, 3)};

  SUBCASE("open cube form over point pairs") {
    ScanReport r = scan(points_family(2, 5), grid, "main_bm", 40);
    CHECK(r.instances_run == 120);
    CHECK(r.skipped_preconditions == 0);
    CHECK(r.violations.empty());
    REQUIRE(r.min_slack.has_value());
    for (const ScanInstance& e : r.equalities) {
      Certificate again = verify_bm(
          VerifyRequest{"main_bm", e.K, e.L, e.lambda, {}, {}, false});
      CHECK(again.verdict == Verdict::HoldsEqual);
      CHECK(again.lhs.to_string() == e.certificate.lhs.to_string());
    }
  }

  SUBCASE("box unions across every guarded form") {
    ScanReport r = scan(boxes_family(1, 6), grid, "main_bm", 40);
    CHECK(r.violations.empty());
    CHECK(r.instances_run == 120);

    ScanReport mean = scan(boxes_family(2, 7), {Rational(1, 2)}, "bm_pmean", 25,
                           ScanOptions{ExtendedExponent::finite(Rational(0)), {}, {}, false, 1});
    CHECK(mean.violations.empty());
    CHECK(mean.instances_run == 25);

    ScanOptions dil;
    dil.dilation = DilationTriple{1, 2, 3};
    ScanReport thirds = scan(boxes_family(1, 8), {}, "rational_dilation", 40, dil);
    CHECK(thirds.violations.empty());
    CHECK(thirds.instances_run + thirds.skipped_preconditions == 40);

    ScanReport halves = scan(boxes_family(1, 9), {}, "half_sum", 40);
    CHECK(halves.violations.empty());
    CHECK(halves.instances_run + halves.skipped_preconditions == 40);
    CHECK(halves.skipped_preconditions > 0);  // some drawn unions miss the lattice

    ScanReport prod = scan(boxes_family(2, 10), {}, "hks_sqrt", 25);
    CHECK(prod.violations.empty());
    CHECK(prod.instances_run == 25);
  }

  SUBCASE("cardinality forms over point pairs") {
    ScanReport r = scan(points_family(2, 12), {}, "card_sum", 40);
    CHECK(r.violations.empty());
    CHECK(r.instances_run == 40);
    ScanReport t = scan(points_family(1, 13), {}, "trivial_card", 40);
    CHECK(t.violations.empty());

    InstanceFamily cubes = points_family(2, 14);
    cubes.window = 1;
    cubes.density = Rational(1);
    ScanReport sharp = scan(cubes, {}, "card_sum", 3);
    CHECK(!sharp.equalities.empty());
  }
}

TEST_CASE("uncovered scans surface violations") {
  ScanReport r = scan(boxes_family(1, 20), {Rational(1, 2)}, "naive", 60);
  CHECK(!r.violations.empty());
  for (const ScanInstance& v : r.violations) {
    CHECK(v.certificate.verdict == Verdict::Violated);
    CHECK(v.certificate.witness.has_value());
  }
}

TEST_CASE("reports are pure functions of family and grid") {
  const std::vector<Rational> grid = {Rational(1, 3), Rational(1, 2)};
  ScanReport a = scan(boxes_family(1, 31), grid, "main_bm", 30);
  ScanReport b = scan(boxes_family(1, 31), grid, "main_bm", 30);
  CHECK(dump_report(a) == dump_report(b));

  ScanOptions four;
  four.jobs = 4;
  ScanReport c = scan(boxes_family(1, 31), grid, "main_bm", 30, four);
  CHECK(dump_report(a) == dump_report(c));

  ScanOptions many;
  many.jobs = 3;
  ScanReport d = scan(points_family(2, 32), grid, "card_sum", 30, many);
  ScanReport e = scan(points_family(2, 32), grid, "card_sum", 30);
  CHECK(dump_report(d) == dump_report(e));
}

TEST_CASE("minimum slack is minimal over the whole scan") {
  InstanceFamily fam = boxes_family(1, 44);
  ScanReport r = scan(fam, {Rational(1, 2)}, "main_bm", 25);
  REQUIRE(r.min_slack.has_value());
  const Certificate& best = r.min_slack->certificate;
  for (const auto& pr : generate(fam, 25)) {
    Certificate cert =
        verify_bm(VerifyRequest{"main_bm", pr.first, pr.second, Rational(1, 2), {}, {}, false});
    Relation rel = compare_radicals(cert.lhs + best.rhs, best.lhs + cert.rhs).relation;
    CHECK(rel != Relation::Less);
  }
  if (!r.equalities.empty()) {
    // zero slack cannot be undercut on a violation-free scan
    CHECK(best.verdict == Verdict::HoldsEqual);
  }
}

TEST_CASE("scan configuration is validated") {
  InstanceFamily f = points_family(1, 2);
  CHECK_THROWS_AS(scan(f, {}, "main_bm", 5), input_error);
  CHECK_THROWS_AS(scan(f, {Rational(1)}, "main_bm", 5), input_error);
  CHECK_THROWS_AS(scan(f, {Rational(1, 2)}, "no_such_form", 5), input_error);
  CHECK_THROWS_AS(scan(f, {}, "rational_dilation", 5), input_error);
  CHECK_THROWS_AS(scan(f, {Rational(1, 2)}, "custom", 5), input_error);
}

TEST_CASE("coverage flags") {
  ScanOptions plain;
  CHECK(theorem_covered("main_bm", plain));
  CHECK(theorem_covered("half_sum", plain));
  CHECK(theorem_covered("card_sum", plain));
  CHECK(!theorem_covered("naive", plain));
  CHECK(!theorem_covered("custom", plain));

  ScanOptions probing;
  probing.unguarded = true;
  CHECK(!theorem_covered("half_sum", probing));

  ScanOptions shrunk;
  shrunk.corrector = CubeSpec::closed_unit();
  CHECK(!theorem_covered("main_bm", shrunk));
}

TEST_CASE("unguarded probing runs instances the guard would reject") {
  InstanceFamily f = boxes_family(1, 9);
  ScanOptions probe;
  probe.unguarded = true;
  ScanReport r = scan(f, {}, "half_sum", 40, probe);
  CHECK(r.skipped_preconditions == 0);
  CHECK(r.instances_run == 40);
  // findings are reported, not asserted: the guarded theorem says nothing here
}

TEST_CASE("worked example replays") {
  auto checks = repro_paper();
  CHECK(checks.size() == 20);
  std::set<std::string> names;
  for (const ReproCheck& c : checks) {
    CAPTURE(c.name);
    CHECK(c.pass);
    CHECK(!c.detail.empty());
    names.insert(c.name);
  }
  CHECK(names.size() == checks.size());

  CHECK(repro_check("lambda-third-failure").pass);
  CHECK(repro_check("hks-noncomparable").pass);
  CHECK_THROWS_AS(repro_check("nonexistent-check"), input_error);

  auto listed = repro_check_names();
  CHECK(listed.size() == checks.size());
  CHECK(std::find(listed.begin(), listed.end(), "grid-floor-identity") != listed.end());
}
