#ifndef NFDYN_DYNSIM_HPP
#define NFDYN_DYNSIM_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "nfdyn/multipoly.hpp"
#include "nfdyn/quadreal.hpp"

namespace nfdyn {

// Finite union of half-open intervals inside [0,1), sorted and disjoint.
// Endpoints are exact; translations by an irrational rotation stay exact.
struct IntervalSet {
  std::vector<std::pair<QuadReal, QuadReal>> intervals;

  // wraps each [lo, hi) with hi - lo <= 1 into [0,1), splitting at 0
  static IntervalSet normalized(const std::vector<std::pair<QuadReal, QuadReal>>& raw);
  static IntervalSet interval(const mpq_class& lo, const mpq_class& hi);

  QuadReal measure() const;
  IntervalSet translated(const QuadReal& shift) const;  // A + shift mod 1
};

IntervalSet intersect(const IntervalSet& x, const IntervalSet& y);

// Rotation x -> x + alpha on the circle with a fixed reference set A.
struct IntervalRotationSystem {
  QuadReal alpha;
  IntervalSet A;
};

// mu(A intersect (A - s_1(n) alpha) ... intersect (A - s_k(n) alpha)) for
// n in [n_lo, n_hi]; shifts are univariate Z-valued polynomials.
std::vector<QuadReal> multicorrelation(const IntervalRotationSystem& sys,
                                       const std::vector<MultiPolyQ>& shifts,
                                       long n_lo, long n_hi);

// Rotation by a on Z_m with set membership bits.
struct FiniteRotationSystem {
  unsigned long m = 1;
  long a = 0;
  std::vector<std::uint8_t> A;  // length m, 0/1

  mpq_class density() const;
};

std::vector<mpq_class> multicorrelation(const FiniteRotationSystem& sys,
                                        const std::vector<MultiPolyQ>& shifts,
                                        long n_lo, long n_hi);

// (x, y) -> (x + alpha, y + 2x + alpha) on T^2; the orbit of (0,0) visits
// (n alpha, n^2 alpha). Sets are unions of axis-aligned rational rectangles.
struct SkewProductSystem {
  QuadReal alpha;
  std::vector<std::array<mpq_class, 4>> rects;  // x_lo, x_hi, y_lo, y_hi

  mpq_class area() const;
  bool contains(double x, double y) const;
};

struct MonteCarloEstimate {
  double value = 0.0;
  double sigma3 = 0.0;  // three-standard-deviation half width
};

// Monte Carlo multicorrelation along the skew orbit shifts, seeded.
std::vector<MonteCarloEstimate> multicorrelation(const SkewProductSystem& sys,
                                                 const std::vector<MultiPolyQ>& shifts,
                                                 long n_lo, long n_hi,
                                                 unsigned long samples,
                                                 std::uint64_t seed);

struct KhintchineReport {
  double threshold = 0.0;          // delta^{k+1} - epsilon
  std::vector<long> popular;       // n with correlation strictly above threshold
  long max_gap = 0;                // largest gap between consecutive popular n
  double density = 0.0;            // |popular| / |range|
  bool gap_stable = false;         // max_gap unchanged across two range doublings
};

KhintchineReport khintchine_report(const std::vector<double>& correlations,
                                   long n_lo, const mpq_class& delta, unsigned k,
                                   double epsilon);

// Piecewise-constant function on [0,1): value[i] on [breaks[i], breaks[i+1]),
// last piece wraps to 1. breaks[0] must be 0.
struct StepFunction {
  std::vector<mpq_class> breaks;
  std::vector<mpq_class> values;

  static StepFunction one();
  static StepFunction indicator(const mpq_class& lo, const mpq_class& hi);
  mpq_class at(const mpq_class& x) const;
  mpq_class mean() const;
};

struct LimitCheckResult {
  double lhs = 0.0;       // Cesaro average up to the largest N in the ladder
  double rhs = 0.0;       // exact double integral over the closed subgroup line
  double gap = 0.0;
  std::vector<double> ladder_gaps;  // |lhs(N) - rhs| per requested N
};

// Average of int f0(x) f1(x + r p(n) alpha) f2(x + s p(n) alpha) dx versus the
// limit integral over the line {(r u, s u)}; both sides exact per term.
LimitCheckResult kronecker_limit_check(const QuadReal& alpha, long r, long s,
                                       const MultiPolyQ& p, const StepFunction& f0,
                                       const StepFunction& f1, const StepFunction& f2,
                                       const std::vector<long>& n_ladder);

struct FiniteRationalReport {
  unsigned long period = 1;
  mpq_class average;      // exact UC-limit: mean over one full period
  mpq_class prediction;   // independent-family product of densities
  bool matches_prediction = false;
};

FiniteRationalReport finite_rational_check(const FiniteRotationSystem& sys,
                                           const std::vector<MultiPolyQ>& shifts);

}  // namespace nfdyn

#endif
