#include "latticebm/search.hpp"

#include <algorithm>
#include <cstdint>
#include <thread>
#include <utility>

#include "latticebm/errors.hpp"

namespace latticebm {

std::uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1dce4e5bull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t rem = (UINT64_MAX % bound + 1) % bound;  // 2^64 mod bound
  while (true) {
    std::uint64_t r = next();
    if (rem == 0 || r <= UINT64_MAX - rem) return r % bound;
  }
}

long SplitMix64::next_in(long lo, long hi) {
  return lo + static_cast<long>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
}

namespace {

void validate_family(const InstanceFamily& f) {
  if (f.dimension < 1) throw input_error("instance family needs a positive dimension");
  if (f.window < 1) throw input_error("instance family needs a positive window");
  if (f.density <= 0 || f.density > 1) throw input_error("density must lie in (0, 1]");
  if (f.max_boxes < 1) throw input_error("box families need max_boxes >= 1");
  if (f.denominator_bound < 1) throw input_error("the denominator bound must be at least 1");
}

SetExpr draw_points(SplitMix64& rng, const InstanceFamily& f) {
  const Integer num_z = f.density.get_num(), den_z = f.density.get_den();
  if (!num_z.fits_ulong_p() || !den_z.fits_ulong_p())
    throw input_error("density numerator and denominator must fit a machine word");
  const std::uint64_t num = num_z.get_ui(), den = den_z.get_ui();

  std::vector<RatVec> pts;
  std::vector<long> z(static_cast<std::size_t>(f.dimension), -f.window);
  while (true) {
    if (rng.next_below(den) < num) {
      RatVec p;
      p.reserve(z.size());
      for (long c : z) p.push_back(Rational(c));
      pts.push_back(std::move(p));
    }
    std::size_t i = 0;
    while (i < z.size() && z[i] == f.window) z[i++] = -f.window;
    if (i == z.size()) break;
    ++z[i];
  }
  if (pts.empty()) {
    RatVec p;
    for (int j = 0; j < f.dimension; ++j) p.push_back(Rational(rng.next_in(-f.window, f.window)));
    pts.push_back(std::move(p));
  }
  return SetExpr::from_points(std::move(pts));
}

SetExpr draw_boxes(SplitMix64& rng, const InstanceFamily& f) {
  std::vector<Box> boxes;
  const long nb = 1 + static_cast<long>(rng.next_below(static_cast<std::uint64_t>(f.max_boxes)));
  for (long b = 0; b < nb; ++b) {
    std::vector<Interval1D> fs;
    for (int j = 0; j < f.dimension; ++j) {
      long q = 1 + static_cast<long>(rng.next_below(static_cast<std::uint64_t>(f.denominator_bound)));
      long lo = rng.next_in(-f.window * q, f.window * q);
      long hi = rng.next_in(-f.window * q, f.window * q);
      if (lo > hi) std::swap(lo, hi);
      if (lo == hi)
        fs.emplace_back(rational_from_long(lo, q), rational_from_long(hi, q));
      else
        fs.emplace_back(rational_from_long(lo, q), rational_from_long(hi, q), rng.next_bool(),
                        rng.next_bool());
    }
    boxes.emplace_back(std::move(fs));
  }
  return SetExpr(f.dimension, std::move(boxes), {});
}

SetExpr draw_set(SplitMix64& rng, const InstanceFamily& f) {
  return f.kind == InstanceFamily::Kind::LatticePoints ? draw_points(rng, f) : draw_boxes(rng, f);
}

std::string set_signature(const SetExpr& s) {
  std::string out = "d" + std::to_string(s.dim);
  for (const Box& b : s.boxes) {
    out += ";B";
    for (const Interval1D& iv : b.factors) {
      out += iv.lo_open ? '(' : '[';
      out += iv.lo.get_str() + "," + iv.hi.get_str();
      out += iv.hi_open ? ')' : ']';
    }
  }
  for (const RatVec& p : s.points) {
    out += ";P";
    for (const Rational& c : p) {
      out += c.get_str();
      out += ',';
    }
  }
  return out;
}

std::string instance_signature(const ScanInstance& inst) {
  return set_signature(inst.K) + "|" + set_signature(inst.L) + "|" + inst.lambda.get_str();
}

Certificate run_one(const std::string& id, const SetExpr& K, const SetExpr& L,
                    const Rational& lambda, const ScanOptions& opt) {
  if (id == "card_sum") return verify_card_sum(K, L);
  if (id == "trivial_card") return verify_trivial_card(K, L);
  if (id == "hks_characteristic") return verify_hks_characteristic(K, L);
  if (id == "hks_sqrt") return verify_hks_sqrt(K, L);
  VerifyRequest req{id == "bm_pmean" ? std::string("main_bm") : id,
                    K,
                    L,
                    lambda,
                    opt.dilation,
                    opt.corrector,
                    opt.unguarded};
  if (id == "bm_pmean")
    return verify_bm_pmean(req, opt.exponent.value_or(ExtendedExponent::pos_inf()));
  return verify_bm(req);
}

}  // namespace

std::vector<std::pair<SetExpr, SetExpr>> generate(const InstanceFamily& family, long count) {
  validate_family(family);
  if (count < 1) throw input_error("generation count must be positive");
  SplitMix64 rng(family.seed);
  std::vector<std::pair<SetExpr, SetExpr>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    SetExpr K = draw_set(rng, family);
    SetExpr L = draw_set(rng, family);
    out.emplace_back(std::move(K), std::move(L));
  }
  return out;
}

bool theorem_covered(const std::string& theorem_id, const ScanOptions& options) {
  if (theorem_id == "naive" || theorem_id == "custom") return false;
  return !options.unguarded && !options.corrector;
}

ScanReport scan(const InstanceFamily& family, const std::vector<Rational>& lambda_grid,
                const std::string& theorem_id, long count, const ScanOptions& options) {
  static const std::vector<std::string> known = {
      "main_bm",  "naive",       "custom",       "half_sum",           "rational_dilation",
      "bm_pmean", "card_sum",    "trivial_card", "hks_characteristic", "hks_sqrt"};
  if (std::find(known.begin(), known.end(), theorem_id) == known.end())
    throw input_error("unknown theorem id: " + theorem_id);

  const bool weighted = theorem_id == "main_bm" || theorem_id == "naive" ||
                        theorem_id == "custom" || theorem_id == "bm_pmean";
  std::vector<Rational> grid;
  if (weighted) {
    if (lambda_grid.empty()) throw input_error("this form scans over a weight grid");
    for (const Rational& l : lambda_grid)
      if (l <= 0 || l >= 1)
        throw input_error("weight grid entries must lie strictly between 0 and 1");
    grid = lambda_grid;
  } else if (theorem_id == "rational_dilation") {
    if (!options.dilation)
      throw input_error("the grid corrector form needs dilation coefficients");
    grid = {Rational(static_cast<unsigned long>(options.dilation->m)) /
            Rational(static_cast<unsigned long>(options.dilation->q))};
  } else if (theorem_id == "half_sum") {
    grid = {Rational(1, 2)};
  } else {
    grid = {Rational(1, 2)};  // recorded only; these bounds take no weight
  }
  if (theorem_id == "custom" && !options.corrector)
    throw input_error("custom verification needs an explicit corrector");

  const auto pairs = generate(family, count);
  const std::size_t width = grid.size();
  const std::size_t total = pairs.size() * width;
  std::vector<std::optional<Certificate>> slots(total);

  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t t = lo; t < hi; ++t) {
      const auto& pr = pairs[t / width];
      try {
        slots[t] = run_one(theorem_id, pr.first, pr.second, grid[t % width], options);
      } catch (const input_error&) {
        // a per-instance precondition miss; tallied as skipped below
      }
    }
  };

  const int jobs = std::max(1, options.jobs);
  if (jobs == 1 || total <= 1) {
    work(0, total);
  } else {
    const std::size_t chunk = (total + jobs - 1) / static_cast<std::size_t>(jobs);
    std::vector<std::thread> threads;
    for (std::size_t lo = 0; lo < total; lo += chunk)
      threads.emplace_back(work, lo, std::min(total, lo + chunk));
    for (auto& th : threads) th.join();
  }

  ScanReport report;
  report.theorem_id = theorem_id;
  for (std::size_t t = 0; t < total; ++t) {
    if (!slots[t]) {
      ++report.skipped_preconditions;
      continue;
    }
    ++report.instances_run;
    ScanInstance inst{pairs[t / width].first, pairs[t / width].second, grid[t % width],
                      std::move(*slots[t])};
    if (inst.certificate.verdict == Verdict::HoldsEqual) report.equalities.push_back(inst);
    if (inst.certificate.verdict == Verdict::Violated) report.violations.push_back(inst);
    if (!report.min_slack) {
      report.min_slack = std::move(inst);
      continue;
    }
    const Certificate& best = report.min_slack->certificate;
    Relation rel =
        compare_radicals(inst.certificate.lhs + best.rhs, best.lhs + inst.certificate.rhs)
            .relation;
    if (rel == Relation::Less ||
        (rel == Relation::Equal &&
         instance_signature(inst) < instance_signature(*report.min_slack)))
      report.min_slack = std::move(inst);
  }
  return report;
}

}  // namespace latticebm
