#include <string>
#include <utility>
#include <vector>

#include "latticebm/errors.hpp"
#include "latticebm/functions.hpp"
#include "latticebm/search.hpp"

namespace latticebm {

namespace {

SetExpr closed_cube(int n, long lo, long hi) {
  std::vector<Interval1D> fs(static_cast<std::size_t>(n),
                             Interval1D(Rational(lo), Rational(hi)));
  return SetExpr::from_box(Box(std::move(fs)));
}

VerifyRequest plain_request(std::string id, SetExpr K, SetExpr L, Rational lambda) {
  return VerifyRequest{std::move(id), std::move(K), std::move(L), std::move(lambda), {}, {}, false};
}

ReproCheck check_midpoint_shrink() {
  SetExpr K = SetExpr::from_interval(Interval1D(Rational(0), rational_from_long(5, 2)));
  SetExpr L = SetExpr::from_interval(Interval1D(Rational(0), rational_from_long(13, 4)));
  Certificate cert = verify_bm(plain_request("naive", K, L, Rational(1, 2)));
  bool pass = cert.verdict == Verdict::Violated && cert.lhs.rational_value() == 3 &&
              cert.rhs.rational_value() == rational_from_long(7, 2);
  return {"midpoint-shrink", "bare midpoint combination counts 3 < 7/2", pass};
}

ReproCheck check_lambda_third_failure() {
  bool pass = true;
  for (int n = 1; n <= 2; ++n) {
    VerifyRequest req =
        plain_request("custom", closed_cube(n, 0, 1), closed_cube(n, -5, 6), Rational(1, 3));
    req.corrector = CubeSpec::closed_unit();
    Certificate cert = verify_bm(req);
    pass = pass && cert.verdict == Verdict::Violated && cert.lhs.rational_value() == 5 &&
           cert.rhs.rational_value() == rational_from_long(16, 3);
  }
  return {"lambda-third-failure",
          "closed unit cube at weight 1/3 reaches only 5 < 16/3 in dimensions 1 and 2", pass};
}

ReproCheck check_no_smaller_interval() {
  VerifyRequest req = plain_request("custom", closed_cube(1, -1, 0), closed_cube(1, -2, 0),
                                    Rational(1, 4));
  req.corrector =
      CubeSpec::custom_box(Box({Interval1D(rational_from_long(-1, 2), Rational(1), false, true)}));
  Certificate cert = verify_bm(req);
  bool pass = cert.verdict == Verdict::Violated && cert.lhs.rational_value() == 2 &&
              cert.rhs.rational_value() == rational_from_long(9, 4);
  return {"no-smaller-interval",
          "the interval [-1/2, 1) collects 2 < 2 + lambda at weight 1/4", pass};
}

ReproCheck check_open_cube_equality() {
  bool pass = true;
  for (int n = 1; n <= 2 && pass; ++n)
    for (long m = 1; m <= 3 && pass; ++m)
      for (const Rational& lambda : {Rational(1, 3), Rational(1, 2)}) {
        SetExpr cube = closed_cube(n, 0, m);
        Certificate cert = verify_bm(plain_request("main_bm", cube, cube, lambda));
        pass = cert.verdict == Verdict::HoldsEqual && cert.lhs.rational_value() == m + 1;
        if (!pass) break;
      }
  return {"open-cube-equality", "equal cubes [0,m]^n are tight at every weight", pass};
}

ReproCheck check_half_sum_odd_equality() {
  bool pass = true;
  for (int n = 1; n <= 2 && pass; ++n)
    for (long m = 1; m <= 3 && pass; m += 2) {
      Certificate cert =
          verify_bm(plain_request("half_sum", closed_cube(n, 0, m), closed_cube(n, -m, 0),
                                  Rational(1, 2)));
      pass = cert.verdict == Verdict::HoldsEqual && cert.lhs.rational_value() == m + 1;
    }
  return {"half-sum-odd-equality", "opposite odd cubes are tight for the half-sum bound", pass};
}

ReproCheck check_hks_noncomparable() {
  SetExpr frac(1, {Box({Interval1D(rational_from_long(-3, 2), rational_from_long(3, 2))})}, {});
  SetExpr open_cube = SetExpr::from_box(CubeSpec::open_sym(1).to_box(1));
  Integer closed_frac = count_lattice(minkowski_sum(frac, closed_cube(1, 0, 1)));
  Integer open_frac = count_lattice(minkowski_sum(frac, open_cube));

  SetExpr whole = closed_cube(1, -2, 2);
  Integer closed_whole = count_lattice(minkowski_sum(whole, closed_cube(1, 0, 1)));
  Integer open_whole = count_lattice(minkowski_sum(whole, open_cube));

  bool pass = closed_frac == 4 && open_frac == 5 && closed_whole == 6 && open_whole == 5;
  return {"hks-noncomparable",
          "closed vs open cube counts: 4 < 5 at radius 3/2 and 6 > 5 at radius 2", pass};
}

ReproCheck check_bent_tetromino() {
  SetExpr A(2, {}, {{Rational(0), Rational(0)},
                    {Rational(1), Rational(0)},
                    {Rational(2), Rational(0)},
                    {Rational(1), Rational(1)}});
  SetExpr B(2, {}, {{Rational(0), Rational(0)},
                    {Rational(0), Rational(1)},
                    {Rational(1), Rational(0)},
                    {Rational(1), Rational(1)}});
  Certificate cert = verify_card_sum(A, B);
  bool pass = cert.verdict == Verdict::HoldsStrict &&
              cert.lhs.pow(2).rational_value() == 18;
  return {"bent-tetromino-sum", "padded sumset of the bent tetromino has 18 points", pass};
}

ReproCheck check_stretched_tetromino() {
  SetExpr A(2, {}, {{Rational(0), Rational(0)},
                    {Rational(0), Rational(1)},
                    {Rational(1), Rational(1)},
                    {Rational(4), Rational(1)}});
  SetExpr B(2, {}, {{Rational(0), Rational(0)},
                    {Rational(0), Rational(1)},
                    {Rational(1), Rational(0)},
                    {Rational(1), Rational(1)}});
  Certificate cert = verify_card_sum(A, B);
  bool pass = cert.verdict == Verdict::HoldsStrict &&
              cert.lhs.pow(2).rational_value() == 24;
  return {"stretched-tetromino-sum", "padded sumset of the stretched tetromino has 24 points",
          pass};
}

ReproCheck check_lattice_cube_sum() {
  std::vector<RatVec> a, b;
  for (long x = 0; x <= 2; ++x)
    for (long y = 0; y <= 2; ++y) a.push_back({Rational(x), Rational(y)});
  for (long x = 0; x <= 1; ++x)
    for (long y = 0; y <= 1; ++y) b.push_back({Rational(x), Rational(y)});
  Certificate cert = verify_card_sum(SetExpr::from_points(a), SetExpr::from_points(b));
  bool pass = cert.verdict == Verdict::HoldsEqual && cert.lhs.rational_value() == 5 &&
              cert.rhs.rational_value() == 5;
  return {"lattice-cube-sum-equality", "lattice cubes give 5 = 3 + 2 with equality", pass};
}

ReproCheck check_grid_halves() {
  VerifyRequest req =
      plain_request("rational_dilation", closed_cube(1, 0, 2), closed_cube(1, 0, 4),
                    Rational(1, 2));
  req.dilation = DilationTriple{1, 1, 2};
  Certificate cert = verify_bm(req);
  bool pass = cert.verdict == Verdict::HoldsEqual && cert.lhs.rational_value() == 4;
  return {"grid-corrector-halves", "half dilations of [0,2] and [0,4] are tight at 4", pass};
}

ReproCheck check_grid_thirds() {
  VerifyRequest req =
      plain_request("rational_dilation", closed_cube(1, 0, 3), closed_cube(1, 0, 6),
                    Rational(1, 2));
  req.dilation = DilationTriple{1, 1, 3};
  Certificate cert = verify_bm(req);
  bool pass = cert.verdict == Verdict::HoldsStrict && cert.lhs.rational_value() == 4 &&
              cert.rhs.rational_value() == rational_from_long(11, 3);
  return {"grid-corrector-thirds", "third dilations of [0,3] and [0,6] give 4 > 11/3", pass};
}

ReproCheck check_geometric_mean() {
  Certificate cert =
      verify_bm_pmean(plain_request("main_bm", closed_cube(1, 0, 1), closed_cube(1, 0, 3),
                                    Rational(1, 2)),
                      ExtendedExponent::finite(Rational(0)));
  auto terms = cert.rhs.terms();
  bool pass = cert.verdict == Verdict::HoldsStrict && cert.lhs.rational_value() == 3 &&
              terms.size() == 1 && terms[0].coeff == 2 && terms[0].radicand == 2;
  return {"geometric-mean-interval", "geometric mean bound reads 3 > 2*sqrt(2)", pass};
}

ReproCheck check_minimum_mean() {
  Certificate cert =
      verify_bm_pmean(plain_request("main_bm", closed_cube(1, 0, 4), closed_cube(1, 0, 2),
                                    Rational(1, 3)),
                      ExtendedExponent::finite(Rational(-1)));
  bool pass = cert.verdict == Verdict::HoldsStrict && cert.lhs.rational_value() == 5 &&
              cert.rhs.rational_value() == 3;
  return {"minimum-mean-boundary", "boundary exponent compares 5 against min(5, 3) = 3", pass};
}

ReproCheck check_cover_lemma_slack() {
  SetExpr K(1, {Box({Interval1D(Rational(-4), Rational(-1))}),
                Box({Interval1D(Rational(1), Rational(4))})},
            {});
  SetExpr L = SetExpr::from_point({Rational(0)});
  SetExpr snug(1, {Box({Interval1D(Rational(-2), rational_from_long(-1, 2))}),
                   Box({Interval1D(rational_from_long(1, 2), Rational(2))})},
               {});
  Certificate tight = verify_lemma_ell(K, L, snug, Rational(1, 2));
  Certificate hull = verify_lemma_ell(K, L, closed_cube(1, -2, 2), Rational(1, 2));
  bool pass = tight.verdict == Verdict::HoldsStrict && tight.lhs.rational_value() == 6 &&
              tight.rhs.rational_value() == rational_from_long(9, 2) &&
              hull.verdict == Verdict::HoldsStrict && hull.lhs.rational_value() == 5;
  return {"cover-lemma-slack",
          "covers of the split combination score 6 and 5 against 9/2", pass};
}

ReproCheck check_cover_lemma_equality() {
  SetExpr cube = closed_cube(1, 0, 5);
  Certificate cert = verify_lemma_ell(cube, cube, cube, Rational(1, 3));
  bool pass = cert.verdict == Verdict::HoldsEqual && cert.lhs.rational_value() == 6;
  return {"cover-lemma-equality", "the interval [0,5] covers itself with 6 = 6", pass};
}

ReproCheck check_dyadic_majorant() {
  PointMassFunction f(1), g(1);
  f.set({Rational(0)}, Rational(1));
  f.set({Rational(1)}, Rational(4));
  g.set({Rational(0)}, Rational(2));
  SetExpr K = SetExpr::from_points({{Rational(0)}, {Rational(1)}});
  SetExpr L = SetExpr::from_point({Rational(0)});
  ExtendedExponent p = ExtendedExponent::finite(Rational(0));
  PointMassFunction h = make_admissible_h(f, g, K, L, Rational(1, 2), p, 8);
  Certificate cert = verify_bbl(f, g, h, K, L, Rational(1, 2), p);
  auto terms = cert.rhs.terms();
  bool pass = cert.verdict == Verdict::HoldsStrict &&
              cert.lhs.rational_value() == rational_from_long(725, 128) && terms.size() == 1 &&
              terms[0].coeff == 1 && terms[0].radicand == 10;
  return {"dyadic-majorant-bound",
          "the 8-bit majorant sums to 725/128 against sqrt(10)", pass};
}

ReproCheck check_rounded_pair_product() {
  PointMassFunction f(1), g(1), h(1), k(1);
  f.set({Rational(0)}, Rational(2));
  g.set({Rational(1)}, Rational(3));
  h.set({Rational(0)}, Rational(2));
  k.set({Rational(1)}, Rational(3));
  Certificate cert = verify_hks(f, g, h, k, Rational(1, 3), closed_cube(1, -1, 2));
  bool pass = cert.verdict == Verdict::HoldsEqual && cert.lhs.rational_value() == 6;
  return {"rounded-pair-product", "floor-ceiling pair products balance at 6 = 6", pass};
}

ReproCheck check_riemann_third() {
  SetExpr third = SetExpr::from_interval(Interval1D(Rational(0), rational_from_long(1, 3)));
  auto steps = riemann_limit_demo(third, closed_cube(1, -1, 1), 10);
  bool pass = steps.size() == 11 && steps.back().lower_sum == rational_from_long(341, 1024);
  if (pass) {
    Rational gap = rational_from_long(1, 3) - steps.back().lower_sum;
    pass = gap >= 0 && gap <= rational_from_long(1, 1024);
    for (std::size_t i = 1; i < steps.size() && pass; ++i)
      pass = steps[i - 1].lower_sum <= steps[i].lower_sum;
  }
  return {"riemann-third-lower-sum",
          "lower sums for [0,1/3] reach 341/1024 at depth 10, within 2^-10", pass};
}

ReproCheck check_half_floor_identity() {
  SplitMix64 rng(0x8f);
  bool pass = true;
  for (int i = 0; i < 300 && pass; ++i) {
    Rational x = rational_from_long(rng.next_in(-60, 60), rng.next_in(1, 8));
    Rational y = rational_from_long(rng.next_in(-60, 60), rng.next_in(1, 8));
    Rational lhs = Rational(rat_floor((x + y) / 2)) + rational_from_long(1, 2);
    Rational rhs = (Rational(rat_floor(x)) + Rational(rat_floor(y))) / 2;
    pass = lhs >= rhs;
  }
  return {"half-floor-identity", "floor((x+y)/2) + 1/2 dominates the floor average", pass};
}

ReproCheck check_grid_floor_identity() {
  SplitMix64 rng(0x2d);
  bool pass = true;
  for (int i = 0; i < 300 && pass; ++i) {
    Rational x = rational_from_long(rng.next_in(-60, 60), rng.next_in(1, 8));
    Rational y = rational_from_long(rng.next_in(-60, 60), rng.next_in(1, 8));
    long q = rng.next_in(2, 6);
    long m = rng.next_in(1, q - 1);
    long p = rng.next_in(1, q - m);
    Rational lhs = Rational(
        rat_floor((Rational(m) * x + Rational(p) * y + Rational(q - 1)) / Rational(q)));
    Rational rhs =
        (Rational(m) * Rational(rat_floor(x)) + Rational(p) * Rational(rat_floor(y))) /
        Rational(q);
    pass = lhs >= rhs;
  }
  return {"grid-floor-identity",
          "floor((mx + py + q - 1)/q) dominates the weighted floor average", pass};
}

struct NamedCheck {
  const char* name;
  ReproCheck (*run)();
};

const NamedCheck kChecks[] = {
    {"midpoint-shrink", check_midpoint_shrink},
    {"lambda-third-failure", check_lambda_third_failure},
    {"no-smaller-interval", check_no_smaller_interval},
    {"open-cube-equality", check_open_cube_equality},
    {"half-sum-odd-equality", check_half_sum_odd_equality},
    {"hks-noncomparable", check_hks_noncomparable},
    {"bent-tetromino-sum", check_bent_tetromino},
    {"stretched-tetromino-sum", check_stretched_tetromino},
    {"lattice-cube-sum-equality", check_lattice_cube_sum},
    {"grid-corrector-halves", check_grid_halves},
    {"grid-corrector-thirds", check_grid_thirds},
    {"geometric-mean-interval", check_geometric_mean},
    {"minimum-mean-boundary", check_minimum_mean},
    {"cover-lemma-slack", check_cover_lemma_slack},
    {"cover-lemma-equality", check_cover_lemma_equality},
    {"dyadic-majorant-bound", check_dyadic_majorant},
    {"rounded-pair-product", check_rounded_pair_product},
    {"riemann-third-lower-sum", check_riemann_third},
    {"half-floor-identity", check_half_floor_identity},
    {"grid-floor-identity", check_grid_floor_identity},
};

}  // namespace

std::vector<std::string> repro_check_names() {
  std::vector<std::string> names;
  for (const NamedCheck& c : kChecks) names.emplace_back(c.name);
  return names;
}

ReproCheck repro_check(const std::string& name) {
  for (const NamedCheck& c : kChecks)
    if (name == c.name) return c.run();
  throw input_error("unknown repro check: " + name);
}

std::vector<ReproCheck> repro_paper() {
  std::vector<ReproCheck> out;
  for (const NamedCheck& c : kChecks) out.push_back(c.run());
  return out;
}

}  // namespace latticebm
