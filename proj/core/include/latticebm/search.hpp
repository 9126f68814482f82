#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latticebm/verifiers.hpp"

namespace latticebm {

// SplitMix64. State advances by the golden-ratio increment and the output is
// run through the murmur-style finalizer (Steele, Lea, Flood, "Fast
// splittable pseudorandom number generators"). Spelled out here so a report
// is reproducible from its seed without reading the code: next() is
//   state += 0x9e3779b97f4a7c15
//   z = state; z = (z ^ (z >> 30)) * 0xbf58476d1dce4e5b
//   z = (z ^ (z >> 27)) * 0x94d049bb133111eb; return z ^ (z >> 31)
// split() seeds a child stream with next(), advancing the parent once.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Uniform in [0, bound) by rejection, bound >= 1.
  std::uint64_t next_below(std::uint64_t bound);
  long next_in(long lo, long hi);
  bool next_bool() { return next() & 1; }
  SplitMix64 split() { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

// A reproducible instance distribution. Sets live in [-window, window]^n.
// lattice_points keeps each lattice point of the window with probability
// density (exactly, via one draw below its denominator); an empty draw is
// replaced by a single uniform point so generated sets are never empty.
// box_union draws 1..max_boxes random boxes per set, with endpoints on a
// grid (1/q)Z for a per-axis q <= denominator_bound and random open flags.
struct InstanceFamily {
  enum class Kind { LatticePoints, BoxUnion };

  Kind kind = Kind::LatticePoints;
  int dimension = 1;
  long window = 5;
  Rational density = Rational(3, 10);
  int max_boxes = 2;
  long denominator_bound = 2;
  std::uint64_t seed = 1;
};

std::vector<std::pair<SetExpr, SetExpr>> generate(const InstanceFamily& family, long count);

struct ScanOptions {
  std::optional<ExtendedExponent> exponent;  // bm_pmean, default +inf
  std::optional<DilationTriple> dilation;    // required for rational_dilation
  std::optional<CubeSpec> corrector;
  bool unguarded = false;
  int jobs = 1;
};

struct ScanInstance {
  SetExpr K, L;
  Rational lambda;
  Certificate certificate;
};

// Scan outcome. min_slack is the ran instance whose lhs - rhs margin is
// smallest in the exact cross-sum order (lhs_a + rhs_b vs lhs_b + rhs_a),
// ties broken by the lexicographically smallest instance signature, so the
// report is a pure function of the family and grid. Instances whose
// preconditions fail (a set without lattice points under a guarded form,
// boxes fed to a cardinality bound) are counted in skipped_preconditions
// rather than aborting the scan; unguarded scans skip nothing.
struct ScanReport {
  std::string theorem_id;
  long instances_run = 0;
  long skipped_preconditions = 0;
  std::optional<ScanInstance> min_slack;
  std::vector<ScanInstance> equalities;
  std::vector<ScanInstance> violations;
};

// True when the scanned form carries a theorem guarantee, so any violation
// is a bug signal (exit code 3 at the CLI): every id except naive and
// custom, run guarded and without a corrector override.
bool theorem_covered(const std::string& theorem_id, const ScanOptions& options);

// Runs the selected verifier over count generated pairs crossed with the
// weight grid. Forms that fix their own weight (half_sum, rational_dilation)
// or use none (card_sum, trivial_card, hks_characteristic, hks_sqrt) run
// once per pair; the recorded lambda is then the pinned weight, m/q for the
// dilation form, and 1/2 for the weightless bounds. jobs > 1 partitions the
// instance list across threads; the report is identical for any job count.
ScanReport scan(const InstanceFamily& family, const std::vector<Rational>& lambda_grid,
                const std::string& theorem_id, long count, const ScanOptions& options = {});

// One replayed worked example: pass means every recorded value matched
// exactly. detail carries the values for the printed table.
struct ReproCheck {
  std::string name;
  std::string detail;
  bool pass = false;
};

std::vector<std::string> repro_check_names();
ReproCheck repro_check(const std::string& name);
std::vector<ReproCheck> repro_paper();

}  // namespace latticebm
