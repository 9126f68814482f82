#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latticebm/functions.hpp"
#include "latticebm/radical_sum.hpp"
#include "latticebm/sets.hpp"

namespace latticebm {

enum class Verdict { HoldsStrict, HoldsEqual, Violated };
std::string verdict_name(Verdict v);

// Data pinpointing a failure: a free-form note, plus the offending pair when
// the statement quantifies over pairs.
struct Witness {
  std::string note;
  std::optional<RatVec> x, y;
};

// Outcome of one exact check. lhs and rhs are oriented so the claim under
// test reads lhs >= rhs; the verdict always agrees with
// compare_radicals(lhs, rhs), and Violated carries a witness.
struct Certificate {
  std::string theorem_id;
  Verdict verdict;
  RadicalSum lhs, rhs;
  std::optional<Witness> witness;
};

// Dilation coefficients m/q and p/q for the grid-corrector form. Natural
// numbers with m + p <= q, so the combination stays inside a unit dilate.
struct DilationTriple {
  unsigned long m = 1;
  unsigned long p = 1;
  unsigned long q = 2;
};

// Input to the geometric checkers. theorem_id selects the corrector cube and
// the hypothesis set:
//   main_bm            (1-l)K + lL + (-1,1)^n; no counting hypothesis
//   rational_dilation  (m/q)K + (p/q)L + [-(q-1)/q,(q-1)/q]^n; needs the
//                      triple and lattice points in both sets
//   half_sum           (K+L)/2 + [0,1]^n; l pinned to 1/2, needs lattice
//                      points in both sets
//   naive              bare (1-l)K + lL, the known-failing form
//   custom             caller-supplied corrector box
// An explicit corrector overrides the theorem default, which is how the
// counterexample shapes are probed. unguarded drops the lattice-point
// hypothesis so the open half_sum question can be explored; verdicts from
// unguarded runs carry no theorem backing.
struct VerifyRequest {
  std::string theorem_id = "main_bm";
  SetExpr K, L;
  Rational lambda = Rational(1, 2);
  std::optional<DilationTriple> dilation;
  std::optional<CubeSpec> corrector;
  bool unguarded = false;
};

// Compares G_n(combination + corrector)^(1/n) against the weighted sum of
// G_n(K)^(1/n) and G_n(L)^(1/n), exactly. Hypothesis failures are input
// errors, never Violated verdicts.
Certificate verify_bm(const VerifyRequest& req);

// Mean-strengthened form of main_bm: the same left side against the
// p/(np+1)-mean of the two counts. Requires -1/n <= p <= inf; the corrector
// is pinned to the open symmetric cube. The certificate holds the
// power-domain pair used for the exact comparison.
Certificate verify_bm_pmean(const VerifyRequest& req, const ExtendedExponent& p);

// One-dimensional cover lemma: for M a finite union of closed intervals
// containing (1-l)K + lL, certifies
//   G_1(M) + (number of non-integer endpoints of M) >= (1-l)G_1(K) + lG_1(L)
// in exact rationals. Containment is checked exactly; failure is an input
// error naming an uncovered piece.
Certificate verify_lemma_ell(const SetExpr& K, const SetExpr& L, const SetExpr& M,
                             const Rational& lambda);

// Functional form: the lattice sum of the sup-convolution of h with the open
// unit-radius cube, taken over (1-l)K + lL + (-1,1)^n, against the
// p/(np+1)-mean of the lattice sums of f and g. The pointwise hypothesis
// h((1-l)x + ly) >= M_p(f(x), g(y), l) is checked first; a violating pair is
// an input error. A basis pulls every input through its inverse before
// verification: boxes survive a diagonal basis exactly, while a general
// basis keeps only the lattice points, which is enough for atom-supported
// data.
Certificate verify_bbl(const PointMassFunction& f, const PointMassFunction& g,
                       const PointMassFunction& h, const SetExpr& K, const SetExpr& L,
                       const Rational& lambda, const ExtendedExponent& p,
                       const std::optional<LatticeBasis>& basis = std::nullopt);

// Four-function product inequality on the integer lattice: given
//   h(floor((1-l)x + ly)) * k(ceil(lx + (1-l)y)) >= f(x) g(y)
// for all lattice pairs (checked over the supports, which must sit inside
// window), certifies (sum h)(sum k) >= (sum f)(sum g). All four functions
// must have their atoms on the lattice; a hypothesis failure is an input
// error carrying the pair.
Certificate verify_hks(const PointMassFunction& f, const PointMassFunction& g,
                       const PointMassFunction& h, const PointMassFunction& k,
                       const Rational& lambda, const SetExpr& window);

// The characteristic instance of verify_hks: f, g indicate K and L, while h
// and k indicate (K+L)/2 + (-1,0]^n and (K+L)/2 + [0,1)^n. The floor and
// ceiling of a midpoint land in those half-open shifts, so the hypothesis
// holds by construction.
Certificate verify_hks_characteristic(const SetExpr& K, const SetExpr& L);

// Squared multiplicative consequence: G_n((K+L)/2 + [0,1]^n)^2 >= G_n(K)G_n(L),
// compared in exact integers.
Certificate verify_hks_sqrt(const SetExpr& K, const SetExpr& L);

// |A + B + {0,1}^n|^(1/n) >= |A|^(1/n) + |B|^(1/n) for non-empty finite
// integer point sets, as an exact degree-n radical comparison.
Certificate verify_card_sum(const SetExpr& A, const SetExpr& B);

// The elementary bound |A + B| >= |A| + |B| - 1, in exact integers.
Certificate verify_trivial_card(const SetExpr& A, const SetExpr& B);

struct RiemannStep {
  unsigned k;
  Rational lower_sum;
};

// Lower Riemann sums of the characteristic function of a box union on the
// grids 2^(-k)Z^n for k = 0..k_max: counts the grid cells x + [0,2^(-k)]^n
// contained in the union and scales by the cell volume, all exactly. window
// must be a single closed box containing the union; the sequence is then
// nondecreasing and approaches the union's volume from below.
std::vector<RiemannStep> riemann_limit_demo(const SetExpr& f_set, const SetExpr& window,
                                            unsigned k_max);

}  // namespace latticebm
