#include "latticebm/verifiers.hpp"

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "latticebm/errors.hpp"

namespace latticebm {

namespace {

Verdict verdict_of(Relation r) {
  switch (r) {
    case Relation::Less: return Verdict::Violated;
    case Relation::Equal: return Verdict::HoldsEqual;
    case Relation::Greater: return Verdict::HoldsStrict;
  }
  return Verdict::Violated;
}

void require_weight(const Rational& lambda) {
  if (lambda <= 0 || lambda >= 1) throw input_error("weight must lie strictly between 0 and 1");
}

void require_pair(const SetExpr& K, const SetExpr& L) {
  if (K.dim < 1) throw input_error("sets must have positive dimension");
  if (K.dim != L.dim) throw input_error("the two sets must share a dimension");
  if (K.is_empty() || L.is_empty()) throw input_error("sets must be non-empty");
}

void require_exponent_range(const ExtendedExponent& p, int n) {
  if (p.is_neg_inf() || (p.is_finite() && p.value() < Rational(-1) / Rational(n)))
    throw input_error("the mean exponent must be at least -1/n");
}

std::string vec_string(const RatVec& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) out += ", ";
    out += x[i].get_str();
  }
  return out + ")";
}

Certificate make_certificate(std::string id, RadicalSum lhs, RadicalSum rhs,
                             const char* fail_note) {
  OrderingCertificate ord = compare_radicals(lhs, rhs);
  Certificate cert{std::move(id), verdict_of(ord.relation), std::move(lhs), std::move(rhs), {}};
  if (cert.verdict == Verdict::Violated) cert.witness = Witness{fail_note, {}, {}};
  return cert;
}

// host covers piece, endpoint flags included.
bool interval_covers(const Interval1D& host, const Interval1D& piece) {
  bool lo_ok = host.lo < piece.lo || (host.lo == piece.lo && (!host.lo_open || piece.lo_open));
  bool hi_ok = host.hi > piece.hi || (host.hi == piece.hi && (!host.hi_open || piece.hi_open));
  return lo_ok && hi_ok;
}

PointMassFunction pull_back(const PointMassFunction& fn, const LatticeBasis& basis) {
  std::map<RatVec, Rational, RatVecLess> atoms;
  for (const auto& [x, v] : fn.support()) atoms.emplace(basis.solve(x), v);
  std::optional<SetExpr> cp;
  if (fn.char_part()) cp = lattice_transform(*fn.char_part(), basis);
  return PointMassFunction(fn.dim(), std::move(atoms), std::move(cp));
}

SetExpr function_support(const PointMassFunction& fn) {
  std::vector<Box> boxes;
  std::vector<RatVec> points;
  if (fn.char_part()) {
    boxes = fn.char_part()->boxes;
    points = fn.char_part()->points;
  }
  for (const auto& [x, v] : fn.support()) points.push_back(x);
  if (boxes.empty() && points.empty()) return SetExpr::empty(fn.dim());
  return SetExpr(fn.dim(), std::move(boxes), std::move(points));
}

void require_lattice_atoms(const PointMassFunction& fn, const char* which) {
  for (const auto& [x, v] : fn.support())
    for (const Rational& c : x)
      if (!is_integer(c))
        throw input_error(std::string(which) + " must place its masses on lattice points");
}

void require_point_set(const SetExpr& s, const char* which) {
  if (s.dim < 1) throw input_error("sets must have positive dimension");
  if (s.is_empty()) throw input_error("sets must be non-empty");
  if (!s.boxes.empty()) throw input_error(std::string(which) + " must be a finite point set");
  for (const RatVec& x : s.points)
    for (const Rational& c : x)
      if (!is_integer(c)) throw input_error(std::string(which) + " must consist of lattice points");
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::HoldsStrict: return "HoldsStrict";
    case Verdict::HoldsEqual: return "HoldsEqual";
    case Verdict::Violated: return "Violated";
  }
  return "?";
}

Certificate verify_bm(const VerifyRequest& req) {
  require_pair(req.K, req.L);
  const int n = req.K.dim;
  const unsigned deg = static_cast<unsigned>(n);
  const std::string& id = req.theorem_id;

  const bool is_main = id == "main_bm";
  const bool is_dilation = id == "rational_dilation";
  const bool is_half = id == "half_sum";
  const bool is_naive = id == "naive";
  const bool is_custom = id == "custom";
  if (!is_main && !is_dilation && !is_half && !is_naive && !is_custom)
    throw input_error("unknown theorem id: " + id);
  if (req.dilation && !is_dilation)
    throw input_error("dilation coefficients only apply to the grid corrector form");

  Rational alpha, beta;
  CubeSpec cube = CubeSpec::none();
  if (is_dilation) {
    if (!req.dilation) throw input_error("the grid corrector form needs its m, p, q coefficients");
    const DilationTriple& d = *req.dilation;
    if (d.m == 0 || d.p == 0 || d.q == 0)
      throw input_error("dilation coefficients must be positive");
    if (Integer(d.m) + Integer(d.p) > Integer(d.q))
      throw input_error("dilation coefficients must satisfy m + p <= q");
    alpha = Rational(d.m) / Rational(d.q);
    beta = Rational(d.p) / Rational(d.q);
    cube = CubeSpec::closed_sym(Rational(d.q - 1) / Rational(d.q));
  } else {
    Rational lam = req.lambda;
    lam.canonicalize();  // the equality test below needs reduced form
    require_weight(lam);
    if (is_half && lam != Rational(1, 2))
      throw input_error("the half-sum form fixes the weight at 1/2");
    if (is_custom && !req.corrector)
      throw input_error("custom verification needs an explicit corrector");
    alpha = 1 - lam;
    beta = lam;
    if (is_main) cube = CubeSpec::open_sym(1);
    if (is_half) cube = CubeSpec::closed_unit();
  }
  if (req.corrector) cube = *req.corrector;

  const Integer gk = count_lattice(req.K);
  const Integer gl = count_lattice(req.L);
  if ((is_dilation || is_half) && !req.unguarded && (gk == 0 || gl == 0))
    throw input_error("this form assumes lattice points in both sets");

  SetExpr combo = minkowski_sum(scale(req.K, alpha), scale(req.L, beta));
  SetExpr corrected = minkowski_sum(combo, SetExpr::from_box(cube.to_box(n)));

  RadicalSum lhs = RadicalSum::root(Rational(count_lattice(corrected)), deg);
  RadicalSum rhs = RadicalSum::term(alpha, Rational(gk), deg) +
                   RadicalSum::term(beta, Rational(gl), deg);
  return make_certificate(id, std::move(lhs), std::move(rhs),
                          "the corrected combination has too few lattice points");
}

Certificate verify_bm_pmean(const VerifyRequest& req, const ExtendedExponent& p) {
  require_pair(req.K, req.L);
  const int n = req.K.dim;
  require_weight(req.lambda);
  require_exponent_range(p, n);
  if (req.dilation)
    throw input_error("dilation coefficients only apply to the grid corrector form");
  if (req.corrector) throw input_error("the mean form is tied to the open symmetric cube");

  SetExpr combo = minkowski_sum(scale(req.K, 1 - req.lambda), scale(req.L, req.lambda));
  SetExpr corrected = minkowski_sum(combo, SetExpr::from_box(CubeSpec::open_sym(1).to_box(n)));
  Rational count(count_lattice(corrected));

  PMeanComparison cmp = compare_with_p_mean(count, Rational(count_lattice(req.K)),
                                            Rational(count_lattice(req.L)), req.lambda,
                                            conj_exponent(p, n));
  Certificate cert{"bm_pmean", verdict_of(cmp.relation), std::move(cmp.lhs), std::move(cmp.rhs),
                   {}};
  if (cert.verdict == Verdict::Violated)
    cert.witness = Witness{"the corrected combination falls below the conjugated mean", {}, {}};
  return cert;
}

Certificate verify_lemma_ell(const SetExpr& K, const SetExpr& L, const SetExpr& M,
                             const Rational& lambda) {
  require_pair(K, L);
  if (K.dim != 1 || M.dim != 1) throw input_error("the cover lemma is one-dimensional");
  if (M.is_empty()) throw input_error("sets must be non-empty");
  require_weight(lambda);

  std::vector<Interval1D> cover = normalize_1d(M, false);
  long ell = noninteger_endpoints(cover);

  SetExpr combo = minkowski_sum(scale(K, 1 - lambda), scale(L, lambda));
  for (const Interval1D& piece : normalize_1d(combo, false)) {
    bool contained = false;
    for (const Interval1D& host : cover)
      if (interval_covers(host, piece)) {
        contained = true;
        break;
      }
    if (!contained)
      throw input_error("the combination escapes the cover between " + piece.lo.get_str() +
                        " and " + piece.hi.get_str());
  }

  Rational lhs_value = Rational(count_lattice(M)) + Rational(ell);
  Rational rhs_value =
      (1 - lambda) * Rational(count_lattice(K)) + lambda * Rational(count_lattice(L));
  return make_certificate("lemma_ell", RadicalSum(lhs_value), RadicalSum(rhs_value),
                          "the cover counts fall below the weighted bound");
}

Certificate verify_bbl(const PointMassFunction& f, const PointMassFunction& g,
                       const PointMassFunction& h, const SetExpr& K, const SetExpr& L,
                       const Rational& lambda, const ExtendedExponent& p,
                       const std::optional<LatticeBasis>& basis) {
  require_pair(K, L);
  const int n = K.dim;
  if (f.dim() != n || g.dim() != n || h.dim() != n)
    throw input_error("functions and sets must share a dimension");
  require_weight(lambda);
  require_exponent_range(p, n);
  if (basis && basis->dim() != n) throw input_error("the basis must match the dimension");

  const PointMassFunction ff = basis ? pull_back(f, *basis) : f;
  const PointMassFunction gg = basis ? pull_back(g, *basis) : g;
  const PointMassFunction hh = basis ? pull_back(h, *basis) : h;
  const SetExpr KK = basis ? lattice_transform(K, *basis) : K;
  const SetExpr LL = basis ? lattice_transform(L, *basis) : L;

  if (auto bad = check_hypothesis(ff, gg, hh, KK, LL, lambda, p))
    throw input_error("the pointwise mean hypothesis fails at x = " + vec_string(bad->x) +
                      ", y = " + vec_string(bad->y));

  SetExpr combo = minkowski_sum(scale(KK, 1 - lambda), scale(LL, lambda));
  SetExpr region = minkowski_sum(combo, SetExpr::from_box(CubeSpec::open_sym(1).to_box(n)));
  Rational lhs_value = lattice_sum(sup_conv(hh, CubeSpec::open_sym(1)), region);

  PMeanComparison cmp = compare_with_p_mean(lhs_value, lattice_sum(ff, KK), lattice_sum(gg, LL),
                                            lambda, conj_exponent(p, n));
  Certificate cert{"bbl", verdict_of(cmp.relation), std::move(cmp.lhs), std::move(cmp.rhs), {}};
  if (cert.verdict == Verdict::Violated)
    cert.witness = Witness{"the enlarged sum falls below the conjugated mean", {}, {}};
  return cert;
}

namespace {

std::vector<RatVec> lattice_support(const PointMassFunction& fn) {
  std::vector<RatVec> out;
  for (const auto& z : integer_points(function_support(fn))) {
    RatVec x;
    x.reserve(z.size());
    for (const Integer& c : z) x.push_back(Rational(c));
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

Certificate verify_hks(const PointMassFunction& f, const PointMassFunction& g,
                       const PointMassFunction& h, const PointMassFunction& k,
                       const Rational& lambda, const SetExpr& window) {
  const int n = f.dim();
  if (n < 1) throw input_error("sets must have positive dimension");
  if (g.dim() != n || h.dim() != n || k.dim() != n || window.dim != n)
    throw input_error("functions and window must share a dimension");
  require_weight(lambda);
  if (window.is_empty()) throw input_error("sets must be non-empty");
  require_lattice_atoms(f, "f");
  require_lattice_atoms(g, "g");
  require_lattice_atoms(h, "h");
  require_lattice_atoms(k, "k");

  std::vector<RatVec> sf = lattice_support(f);
  std::vector<RatVec> sg = lattice_support(g);
  for (const RatVec& x : sf)
    if (!membership(window, x)) throw input_error("the supports must sit inside the window");
  for (const RatVec& y : sg)
    if (!membership(window, y)) throw input_error("the supports must sit inside the window");

  const Rational om = 1 - lambda;
  RatVec zf(static_cast<std::size_t>(n)), zc(static_cast<std::size_t>(n));
  for (const RatVec& x : sf) {
    const Rational fx = f.eval(x);
    for (const RatVec& y : sg) {
      const Rational gy = g.eval(y);
      for (int i = 0; i < n; ++i) {
        std::size_t j = static_cast<std::size_t>(i);
        zf[j] = Rational(rat_floor(om * x[j] + lambda * y[j]));
        zc[j] = Rational(rat_ceil(lambda * x[j] + om * y[j]));
      }
      if (h.eval(zf) * k.eval(zc) < fx * gy)
        throw input_error("the floor-ceiling hypothesis fails at x = " + vec_string(x) +
                          ", y = " + vec_string(y));
    }
  }

  Rational sum_h = lattice_sum(h, function_support(h));
  Rational sum_k = lattice_sum(k, function_support(k));
  Rational sum_f = lattice_sum(f, function_support(f));
  Rational sum_g = lattice_sum(g, function_support(g));
  return make_certificate("hks", RadicalSum(sum_h * sum_k), RadicalSum(sum_f * sum_g),
                          "the product of the rounded sums is too small");
}

Certificate verify_hks_characteristic(const SetExpr& K, const SetExpr& L) {
  require_pair(K, L);
  const int n = K.dim;
  const std::size_t count = static_cast<std::size_t>(n);
  SetExpr mid = scale(minkowski_sum(K, L), Rational(1, 2));

  Box below(std::vector<Interval1D>(count, Interval1D(-1, 0, true, false)));
  Box above(std::vector<Interval1D>(count, Interval1D(0, 1, false, true)));
  PointMassFunction h =
      PointMassFunction::characteristic(minkowski_sum(mid, SetExpr::from_box(std::move(below))));
  PointMassFunction k =
      PointMassFunction::characteristic(minkowski_sum(mid, SetExpr::from_box(std::move(above))));

  std::vector<Box> boxes = K.boxes;
  boxes.insert(boxes.end(), L.boxes.begin(), L.boxes.end());
  std::vector<RatVec> pts = K.points;
  pts.insert(pts.end(), L.points.begin(), L.points.end());
  SetExpr window(n, std::move(boxes), std::move(pts));

  Certificate cert =
      verify_hks(PointMassFunction::characteristic(K), PointMassFunction::characteristic(L), h, k,
                 Rational(1, 2), window);
  cert.theorem_id = "hks_characteristic";
  return cert;
}

Certificate verify_hks_sqrt(const SetExpr& K, const SetExpr& L) {
  require_pair(K, L);
  const int n = K.dim;
  SetExpr mid = scale(minkowski_sum(K, L), Rational(1, 2));
  SetExpr fattened = minkowski_sum(mid, SetExpr::from_box(CubeSpec::closed_unit().to_box(n)));
  Rational c(count_lattice(fattened));
  Rational product = Rational(count_lattice(K)) * Rational(count_lattice(L));
  return make_certificate("hks_sqrt", RadicalSum(c * c), RadicalSum(product),
                          "the closed-cube count squared undercuts the product");
}

Certificate verify_card_sum(const SetExpr& A, const SetExpr& B) {
  if (A.dim != B.dim) throw input_error("the two sets must share a dimension");
  require_point_set(A, "A");
  require_point_set(B, "B");
  const int n = A.dim;
  const unsigned deg = static_cast<unsigned>(n);

  std::vector<RatVec> cube;
  RatVec cur(static_cast<std::size_t>(n), Rational(0));
  for (;;) {
    cube.push_back(cur);
    std::size_t i = 0;
    while (i < cur.size() && cur[i] == 1) cur[i++] = 0;
    if (i == cur.size()) break;
    cur[i] = 1;
  }

  SetExpr total = minkowski_sum(minkowski_sum(A, B), SetExpr::from_points(std::move(cube)));
  RadicalSum lhs = RadicalSum::root(Rational(count_lattice(total)), deg);
  RadicalSum rhs = RadicalSum::root(Rational(count_lattice(A)), deg) +
                   RadicalSum::root(Rational(count_lattice(B)), deg);
  return make_certificate("card_sum", std::move(lhs), std::move(rhs),
                          "the padded sumset is too small");
}

Certificate verify_trivial_card(const SetExpr& A, const SetExpr& B) {
  if (A.dim != B.dim) throw input_error("the two sets must share a dimension");
  require_point_set(A, "A");
  require_point_set(B, "B");
  Rational count(count_lattice(minkowski_sum(A, B)));
  Rational bound = Rational(count_lattice(A)) + Rational(count_lattice(B)) - 1;
  return make_certificate("trivial_card", RadicalSum(count), RadicalSum(bound),
                          "the sumset is smaller than the inclusion bound");
}

std::vector<RiemannStep> riemann_limit_demo(const SetExpr& f_set, const SetExpr& window,
                                            unsigned k_max) {
  if (f_set.dim != window.dim) throw input_error("the window must share the set's dimension");
  const int n = window.dim;
  if (n < 1) throw input_error("sets must have positive dimension");
  if (window.boxes.size() != 1 || !window.points.empty())
    throw input_error("the window must be a single box");
  const Box& wb = window.boxes[0];

  // Containment keeps every subdivided cell's corner on the sampling grid,
  // which is what makes the lower sums nondecreasing in k.
  for (const Box& b : f_set.boxes)
    for (int i = 0; i < n; ++i) {
      std::size_t j = static_cast<std::size_t>(i);
      if (!interval_covers(wb.factors[j], b.factors[j]))
        throw input_error("the window must contain the set");
    }
  for (const RatVec& pt : f_set.points)
    if (!wb.contains(pt)) throw input_error("the window must contain the set");

  std::vector<RiemannStep> out;
  out.reserve(k_max + 1);
  for (unsigned k = 0; k <= k_max; ++k) {
    Integer q = Integer(1) << k;
    Rational step = Rational(1) / Rational(q);
    Integer covered = 0;
    for (const auto& z : integer_points(scale(window, Rational(q)))) {
      std::vector<Interval1D> cell;
      cell.reserve(static_cast<std::size_t>(n));
      for (const Integer& zi : z) {
        Rational lo = Rational(zi) / Rational(q);
        cell.emplace_back(lo, lo + step);
      }
      if (!uncovered_point(Box(std::move(cell)), f_set.boxes)) covered += 1;
    }
    Rational cell_volume = 1;
    for (int i = 0; i < n; ++i) cell_volume *= step;
    out.push_back({k, Rational(covered) * cell_volume});
  }
  return out;
}

}  // namespace latticebm
