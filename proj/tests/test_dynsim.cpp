#include <doctest.h>

#include <cmath>
#include <random>

#include "nfdyn/dynsim.hpp"
#include "nfdyn/errors.hpp"

using namespace nfdyn;

namespace {

MultiPolyQ nvar(unsigned deg, long coeff = 1) {
  MultiPolyQ p = MultiPolyQ::zero(1);
  p.terms[{deg}] = mpq_class(coeff);
  return p;
}

QuadReal sqrt2m1() { return QuadReal(mpq_class(-1), mpq_class(1), 2); }
QuadReal golden() { return QuadReal(mpq_class(1, 2), mpq_class(1, 2), 5); }

// independent float oracle: measure of A inter (A - s1) inter (A - s2) on the
// circle, by sampled midpoints of a fine grid
double float_sweep(double a_lo, double a_hi, const std::vector<double>& shifts,
                   int grid = 2000000) {
  auto inside = [&](double x) {
    x -= std::floor(x);
    return x >= a_lo && x < a_hi;
  };
  int hits = 0;
  for (int i = 0; i < grid; ++i) {
    double x = (i + 0.5) / grid;
    bool all = inside(x);
    for (double s : shifts)
      if (all) all = inside(x + s);
    if (all) ++hits;
  }
  return static_cast<double>(hits) / grid;
}

}  // namespace

TEST_CASE("interval set basics") {
  IntervalSet a = IntervalSet::interval(mpq_class(0), mpq_class(3, 10));
  CHECK(a.measure() == QuadReal(mpq_class(3, 10)));
  // wrapping translation splits at 0
  IntervalSet b = a.translated(QuadReal(mpq_class(9, 10)));
  CHECK(b.intervals.size() == 2);
  CHECK(b.measure() == QuadReal(mpq_class(3, 10)));
  IntervalSet c = intersect(a, b);
  CHECK(c.measure() == QuadReal(mpq_class(1, 5)));
  // intervals of total length >= 1 cover the circle
  IntervalSet full = IntervalSet::normalized({{QuadReal(mpq_class(1, 3)), QuadReal(mpq_class(3, 2))}});
  CHECK(full.measure() == QuadReal(mpq_class(1)));
}

TEST_CASE("multicorrelation trivial cases") {
  IntervalRotationSystem sys{sqrt2m1(), IntervalSet::interval(0, 1)};
  auto full = multicorrelation(sys, {nvar(2), nvar(2, 2)}, 1, 5);
  for (const auto& v : full) CHECK(v == QuadReal(mpq_class(1)));

  IntervalRotationSystem sys3{sqrt2m1(), IntervalSet::interval(mpq_class(0), mpq_class(3, 10))};
  // n = 0 shifts: no translation at all
  auto at0 = multicorrelation(sys3, {nvar(2), nvar(2, 2)}, 0, 0);
  CHECK(at0[0] == QuadReal(mpq_class(3, 10)));
  CHECK_THROWS_AS(multicorrelation(sys3, {nvar(1)}, 3, 2), EmptyRange);
}

TEST_CASE("exact sweep agrees with a float oracle") {
  IntervalRotationSystem sys{sqrt2m1(), IntervalSet::interval(mpq_class(0), mpq_class(3, 10))};
  auto values = multicorrelation(sys, {nvar(2), nvar(2, 2)}, 1, 30);
  double alpha = sys.alpha.to_double();
  for (long n = 1; n <= 30; ++n) {
    double n2 = static_cast<double>(n) * static_cast<double>(n);
    double oracle = float_sweep(0.0, 0.3, {-n2 * alpha, -2 * n2 * alpha});
    CHECK(std::abs(values[static_cast<std::size_t>(n - 1)].to_double() - oracle) < 1e-5);
  }
  // the n = 1 value is exactly zero: A and A - alpha are disjoint
  CHECK(values[0] == QuadReal(mpq_class(0)));
}

TEST_CASE("translation invariance and monotonicity") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<long> num(0, 6);
  for (int trial = 0; trial < 10; ++trial) {
    mpq_class lo(num(rng), 10), len(1 + num(rng) % 4, 10), beta(num(rng), 7);
    lo.canonicalize();
    len.canonicalize();
    beta.canonicalize();
    IntervalRotationSystem sys{golden(), IntervalSet::interval(lo, lo + len)};
    IntervalRotationSystem moved{golden(), sys.A.translated(QuadReal(beta))};
    auto v1 = multicorrelation(sys, {nvar(2), nvar(2, 2)}, 1, 8);
    auto v2 = multicorrelation(moved, {nvar(2), nvar(2, 2)}, 1, 8);
    for (std::size_t i = 0; i < v1.size(); ++i) CHECK(v1[i] == v2[i]);

    // a superset can only increase each correlation
    IntervalRotationSystem bigger{golden(), IntervalSet::interval(lo, lo + len + mpq_class(1, 10))};
    auto v3 = multicorrelation(bigger, {nvar(2), nvar(2, 2)}, 1, 8);
    for (std::size_t i = 0; i < v1.size(); ++i) CHECK(v1[i] <= v3[i]);
  }
}

TEST_CASE("khintchine report") {
  // threshold strictness: no popular value may sit at or below the threshold
  std::vector<double> values{0.05, 0.001, 0.3, 0.027, 0.4};
  KhintchineReport rep = khintchine_report(values, 1, mpq_class(3, 10), 2, 0.0);
  for (long n : rep.popular)
    CHECK(values[static_cast<std::size_t>(n - 1)] > rep.threshold);
  CHECK(rep.threshold == doctest::Approx(0.027).epsilon(1e-12));

  // huge epsilon: every positive value is popular
  KhintchineReport all = khintchine_report(values, 1, mpq_class(3, 10), 2, 1.0);
  CHECK(all.popular.size() == values.size());

  // degenerate all-zero correlations report empty
  std::vector<double> zeros(5, 0.0);
  KhintchineReport none = khintchine_report(zeros, 1, mpq_class(0), 2, 1.0);
  CHECK(none.popular.empty());
  CHECK(none.density == 0.0);
}

TEST_CASE("finite rotation systems") {
  FiniteRotationSystem sys;
  sys.m = 5;
  sys.a = 1;
  sys.A.assign(5, 0);
  sys.A[0] = 1;
  // A = {0}, shifts (n, n^2): only n = 0 mod 5 contributes
  FiniteRationalReport rep = finite_rational_check(sys, {nvar(1), nvar(2)});
  CHECK(rep.period == 5);
  CHECK(rep.average == mpq_class(1, 25));

  // full set averages to one
  FiniteRotationSystem full;
  full.m = 6;
  full.a = 1;
  full.A.assign(6, 1);
  CHECK(finite_rational_check(full, {nvar(1)}).average == 1);

  // zero shifts average to the density
  FiniteRotationSystem half;
  half.m = 4;
  half.a = 1;
  half.A = {1, 1, 0, 0};
  MultiPolyQ zero = MultiPolyQ::zero(1);
  CHECK(finite_rational_check(half, {zero}).average == mpq_class(1, 2));

  // partial averages at multiples of the period equal the UC limit
  auto vals = multicorrelation(sys, {nvar(1), nvar(2)}, 0, 24);
  mpq_class sum(0);
  for (int i = 0; i < 25; ++i) {
    sum += vals[static_cast<std::size_t>(i)];
    if ((i + 1) % 5 == 0) CHECK(sum / (i + 1) == rep.average);
  }
}

TEST_CASE("skew product monte carlo stays near the sweep") {
  // a skew product set of full horizontal extent behaves like the rotation
  SkewProductSystem sys;
  sys.alpha = sqrt2m1();
  sys.rects.push_back({mpq_class(0), mpq_class(1), mpq_class(0), mpq_class(1, 2)});
  auto est = multicorrelation(sys, {nvar(1)}, 1, 3, 200000, 99);
  for (const auto& e : est) {
    CHECK(e.value > 0.0);
    CHECK(e.sigma3 < 0.01);
  }
  CHECK(sys.area() == mpq_class(1, 2));
}

TEST_CASE("kronecker limit check trivial cases") {
  StepFunction one = StepFunction::one();
  auto res = kronecker_limit_check(sqrt2m1() + QuadReal(mpq_class(1)), 1, 2, nvar(2), one,
                                   one, one, {50, 100});
  CHECK(res.lhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.rhs == doctest::Approx(1.0).epsilon(1e-12));

  // a mean-zero middle function kills both sides exactly
  StepFunction mean_zero;
  mean_zero.breaks = {mpq_class(0), mpq_class(1, 2)};
  mean_zero.values = {mpq_class(1), mpq_class(-1)};
  auto res0 = kronecker_limit_check(sqrt2m1() + QuadReal(mpq_class(1)), 1, 2, nvar(1), one,
                                    mean_zero, one, {64});
  CHECK(std::abs(res0.rhs) < 1e-15);
  CHECK(std::abs(res0.lhs) < 0.05);

  CHECK_THROWS_AS(kronecker_limit_check(sqrt2m1(), 2, 2, nvar(1), one, one, one, {10}),
                  DegenerateShifts);
}

TEST_CASE("monte carlo crosscheck of the interval sweep") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<long> num(0, 9);
  const unsigned long samples = 100000;
  for (int trial = 0; trial < 20; ++trial) {
    mpq_class lo(num(rng), 10), len(1 + num(rng) % 5, 10);
    lo.canonicalize();
    len.canonicalize();
    IntervalRotationSystem sys{golden(), IntervalSet::interval(lo, lo + len)};
    long n = 1 + num(rng) % 7;
    QuadReal exact = multicorrelation(sys, {nvar(2), nvar(2, 2)}, n, n)[0];
    double alpha = sys.alpha.to_double();
    double s1 = static_cast<double>(n) * n * alpha;
    std::mt19937_64 mc(static_cast<std::uint64_t>(trial) * 77 + 5);
    auto inside = [&](double x) {
      x -= std::floor(x);
      return x >= lo.get_d() && x < mpq_class(lo + len).get_d();
    };
    unsigned long hits = 0;
    for (unsigned long i = 0; i < samples; ++i) {
      double x = static_cast<double>(mc() >> 11) * 0x1.0p-53;
      if (inside(x) && inside(x + s1) && inside(x + 2 * s1)) ++hits;
    }
    double est = static_cast<double>(hits) / static_cast<double>(samples);
    double p = exact.to_double();
    double sigma = std::sqrt(std::max(p * (1 - p), 1e-6) / samples);
    CHECK(std::abs(est - p) <= 3.5 * sigma + 1e-4);
  }
}
