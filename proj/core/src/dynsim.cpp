#include "nfdyn/dynsim.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <random>

#include "nfdyn/errors.hpp"

namespace nfdyn {

namespace {

mpz_class eval_z(const MultiPolyQ& p, long n) {
  mpq_class v = p.eval(QVec{mpq_class(n)});
  if (v.get_den() != 1) throw ValidationError("shift polynomial is not Z-valued");
  return v.get_num();
}

}  // namespace

IntervalSet IntervalSet::normalized(const std::vector<std::pair<QuadReal, QuadReal>>& raw) {
  std::vector<std::pair<QuadReal, QuadReal>> pieces;
  const QuadReal one{mpq_class(1)};
  for (const auto& [lo, hi] : raw) {
    QuadReal len = hi - lo;
    if (len.sign() <= 0) continue;
    if (!(len < one)) return interval(0, 1);
    QuadReal l = lo.frac();
    QuadReal h = l + len;
    if (h <= one) {
      pieces.emplace_back(l, h);
    } else {
      pieces.emplace_back(l, one);
      pieces.emplace_back(QuadReal(mpq_class(0)), h - one);
    }
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  IntervalSet s;
  for (auto& p : pieces) {
    if (!s.intervals.empty() && p.first <= s.intervals.back().second) {
      if (s.intervals.back().second < p.second) s.intervals.back().second = p.second;
    } else {
      s.intervals.push_back(std::move(p));
    }
  }
  return s;
}

IntervalSet IntervalSet::interval(const mpq_class& lo, const mpq_class& hi) {
  IntervalSet s;
  if (lo < hi) s.intervals.emplace_back(QuadReal(lo), QuadReal(hi));
  return s;
}

QuadReal IntervalSet::measure() const {
  QuadReal m{mpq_class(0)};
  for (const auto& [lo, hi] : intervals) m = m + (hi - lo);
  return m;
}

IntervalSet IntervalSet::translated(const QuadReal& shift) const {
  std::vector<std::pair<QuadReal, QuadReal>> raw;
  for (const auto& [lo, hi] : intervals) raw.emplace_back(lo + shift, hi + shift);
  return normalized(raw);
}

IntervalSet intersect(const IntervalSet& x, const IntervalSet& y) {
  IntervalSet r;
  std::size_t i = 0, j = 0;
  while (i < x.intervals.size() && j < y.intervals.size()) {
    const QuadReal& lo = std::max(x.intervals[i].first, y.intervals[j].first);
    const QuadReal& hi = std::min(x.intervals[i].second, y.intervals[j].second);
    if (lo < hi) r.intervals.emplace_back(lo, hi);
    if (x.intervals[i].second < y.intervals[j].second)
      ++i;
    else
      ++j;
  }
  return r;
}

std::vector<QuadReal> multicorrelation(const IntervalRotationSystem& sys,
                                       const std::vector<MultiPolyQ>& shifts,
                                       long n_lo, long n_hi) {
  if (n_lo > n_hi) throw EmptyRange();
  std::vector<QuadReal> out;
  out.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
  for (long n = n_lo; n <= n_hi; ++n) {
    IntervalSet cur = sys.A;
    for (const auto& s : shifts) {
      mpq_class v(eval_z(s, n));
      cur = intersect(cur, sys.A.translated(-(v * sys.alpha)));
      if (cur.intervals.empty()) break;
    }
    out.push_back(cur.measure());
  }
  return out;
}

mpq_class FiniteRotationSystem::density() const {
  long count = std::count(A.begin(), A.end(), std::uint8_t{1});
  mpq_class q(count, static_cast<long>(m));
  q.canonicalize();
  return q;
}

namespace {

unsigned long reduce_mod(const mpz_class& v, unsigned long m) {
  mpz_class r;
  mpz_class mm(static_cast<long>(m));
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), mm.get_mpz_t());
  return r.get_ui();
}

mpq_class finite_correlation(const FiniteRotationSystem& sys,
                             const std::vector<unsigned long>& offsets) {
  unsigned long count = 0;
  for (unsigned long x = 0; x < sys.m; ++x) {
    if (!sys.A[x]) continue;
    bool all = true;
    for (unsigned long o : offsets)
      if (!sys.A[(x + o) % sys.m]) {
        all = false;
        break;
      }
    if (all) ++count;
  }
  mpq_class q(static_cast<long>(count), static_cast<long>(sys.m));
  q.canonicalize();
  return q;
}

std::vector<unsigned long> finite_offsets(const FiniteRotationSystem& sys,
                                          const std::vector<MultiPolyQ>& shifts, long n) {
  std::vector<unsigned long> offsets;
  for (const auto& s : shifts)
    offsets.push_back(reduce_mod(eval_z(s, n) * sys.a, sys.m));
  return offsets;
}

}  // namespace

std::vector<mpq_class> multicorrelation(const FiniteRotationSystem& sys,
                                        const std::vector<MultiPolyQ>& shifts,
                                        long n_lo, long n_hi) {
  if (n_lo > n_hi) throw EmptyRange();
  std::vector<mpq_class> out;
  for (long n = n_lo; n <= n_hi; ++n)
    out.push_back(finite_correlation(sys, finite_offsets(sys, shifts, n)));
  return out;
}

mpq_class SkewProductSystem::area() const {
  mpq_class a(0);
  for (const auto& r : rects) a += (r[1] - r[0]) * (r[3] - r[2]);
  return a;
}

bool SkewProductSystem::contains(double x, double y) const {
  for (const auto& r : rects)
    if (x >= r[0].get_d() && x < r[1].get_d() && y >= r[2].get_d() && y < r[3].get_d())
      return true;
  return false;
}

std::vector<MonteCarloEstimate> multicorrelation(const SkewProductSystem& sys,
                                                 const std::vector<MultiPolyQ>& shifts,
                                                 long n_lo, long n_hi,
                                                 unsigned long samples,
                                                 std::uint64_t seed) {
  if (n_lo > n_hi) throw EmptyRange();
  const double alpha = sys.alpha.to_double();
  std::vector<MonteCarloEstimate> out;
  for (long n = n_lo; n <= n_hi; ++n) {
    std::vector<double> jd;
    for (const auto& s : shifts) jd.push_back(eval_z(s, n).get_d());
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(n - n_lo));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    unsigned long hits = 0;
    for (unsigned long t = 0; t < samples; ++t) {
      double x = unif(rng), y = unif(rng);
      if (!sys.contains(x, y)) continue;
      bool all = true;
      for (double j : jd) {
        // T^j (x, y) = (x + j a, y + 2 j x + j^2 a)
        double xs = x + j * alpha;
        double ys = y + 2.0 * j * x + j * j * alpha;
        xs -= std::floor(xs);
        ys -= std::floor(ys);
        if (!sys.contains(xs, ys)) {
          all = false;
          break;
        }
      }
      if (all) ++hits;
    }
    double p = static_cast<double>(hits) / static_cast<double>(samples);
    MonteCarloEstimate e;
    e.value = p;
    e.sigma3 = 3.0 * std::sqrt(std::max(p * (1.0 - p), 1.0 / samples) /
                               static_cast<double>(samples));
    out.push_back(e);
  }
  return out;
}

namespace {

long window_max_gap(const std::vector<long>& popular, long lo, long hi) {
  long prev = lo - 1;
  long gap = 0;
  for (long n : popular) {
    if (n > hi) break;
    gap = std::max(gap, n - prev);
    prev = n;
  }
  gap = std::max(gap, hi + 1 - prev);
  return gap;
}

}  // namespace

KhintchineReport khintchine_report(const std::vector<double>& correlations,
                                   long n_lo, const mpq_class& delta, unsigned k,
                                   double epsilon) {
  KhintchineReport rep;
  mpq_class dk(1);
  for (unsigned i = 0; i <= k; ++i) dk *= delta;
  rep.threshold = dk.get_d() - epsilon;
  // a nonpositive threshold still demands a strictly positive correlation, so
  // the all-zero degenerate case reports an empty popular set
  const double effective = std::max(rep.threshold, 0.0);
  const long n_hi = n_lo + static_cast<long>(correlations.size()) - 1;
  for (std::size_t i = 0; i < correlations.size(); ++i)
    if (correlations[i] > effective) rep.popular.push_back(n_lo + static_cast<long>(i));
  rep.max_gap = window_max_gap(rep.popular, n_lo, n_hi);
  rep.density = correlations.empty()
                    ? 0.0
                    : static_cast<double>(rep.popular.size()) /
                          static_cast<double>(correlations.size());
  const long len = n_hi - n_lo + 1;
  if (len >= 4) {
    long g4 = window_max_gap(rep.popular, n_lo, n_lo + len / 4 - 1);
    long g2 = window_max_gap(rep.popular, n_lo, n_lo + len / 2 - 1);
    rep.gap_stable = (g4 == g2 && g2 == rep.max_gap);
  }
  return rep;
}

StepFunction StepFunction::one() {
  StepFunction f;
  f.breaks = {mpq_class(0)};
  f.values = {mpq_class(1)};
  return f;
}

StepFunction StepFunction::indicator(const mpq_class& lo, const mpq_class& hi) {
  assert(0 <= lo && lo < hi && hi <= 1);
  StepFunction f;
  f.breaks.push_back(0);
  f.values.push_back(lo == 0 ? 1 : 0);
  if (lo != 0) {
    f.breaks.push_back(lo);
    f.values.push_back(1);
  }
  if (hi != 1) {
    f.breaks.push_back(hi);
    f.values.push_back(0);
  }
  return f;
}

mpq_class StepFunction::at(const mpq_class& x) const {
  std::size_t i = breaks.size() - 1;
  while (i > 0 && x < breaks[i]) --i;
  return values[i];
}

mpq_class StepFunction::mean() const {
  mpq_class m(0);
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    mpq_class next = (i + 1 < breaks.size()) ? breaks[i + 1] : mpq_class(1);
    m += values[i] * (next - breaks[i]);
  }
  return m;
}

namespace {

mpq_class step_at_quad(const StepFunction& f, const QuadReal& x) {
  std::size_t i = f.breaks.size() - 1;
  while (i > 0 && x < QuadReal(f.breaks[i])) --i;
  return f.values[i];
}

// exact integral of f0(x) f1(x + o1) f2(x + o2) over the circle
QuadReal shifted_triple_integral(const StepFunction& f0, const StepFunction& f1,
                                 const StepFunction& f2, const QuadReal& o1,
                                 const QuadReal& o2) {
  std::vector<QuadReal> cuts;
  for (const auto& b : f0.breaks) cuts.emplace_back(b);
  for (const auto& b : f1.breaks) cuts.push_back((QuadReal(b) - o1).frac());
  for (const auto& b : f2.breaks) cuts.push_back((QuadReal(b) - o2).frac());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  QuadReal total{mpq_class(0)};
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const QuadReal& lo = cuts[i];
    QuadReal hi = (i + 1 < cuts.size()) ? cuts[i + 1] : QuadReal(mpq_class(1));
    mpq_class v = step_at_quad(f0, lo) * step_at_quad(f1, (lo + o1).frac()) *
                  step_at_quad(f2, (lo + o2).frac());
    if (v != 0) total = total + v * (hi - lo);
  }
  return total;
}

mpq_class rational_frac(const mpq_class& x) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return x - mpq_class(f);
}

// g(t) = int f0(z) f1(z + r t) f2(z + s t) dz at a rational point
mpq_class line_integrand(const StepFunction& f0, const StepFunction& f1,
                         const StepFunction& f2, long r, long s, const mpq_class& t) {
  std::vector<mpq_class> cuts;
  for (const auto& b : f0.breaks) cuts.push_back(b);
  for (const auto& b : f1.breaks) cuts.push_back(rational_frac(b - r * t));
  for (const auto& b : f2.breaks) cuts.push_back(rational_frac(b - s * t));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  mpq_class total(0);
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const mpq_class& lo = cuts[i];
    mpq_class hi = (i + 1 < cuts.size()) ? cuts[i + 1] : mpq_class(1);
    mpq_class v = f0.at(lo) * f1.at(rational_frac(lo + r * t)) *
                  f2.at(rational_frac(lo + s * t));
    total += v * (hi - lo);
  }
  return total;
}

}  // namespace

LimitCheckResult kronecker_limit_check(const QuadReal& alpha, long r, long s,
                                       const MultiPolyQ& p, const StepFunction& f0,
                                       const StepFunction& f1, const StepFunction& f2,
                                       const std::vector<long>& n_ladder) {
  if (r == s) throw DegenerateShifts();
  if (r == 0 || s == 0) throw ValidationError("multipliers must be nonzero");
  if (n_ladder.empty()) throw EmptyRange();

  // rhs: g is continuous piecewise linear in t; kinks only where discontinuity
  // sets collide, at t = (break difference + integer) / delta
  std::vector<mpq_class> tcuts{mpq_class(0)};
  auto add_cuts = [&](const std::vector<mpq_class>& b1, const std::vector<mpq_class>& b2,
                      long delta) {
    if (delta == 0) return;
    for (const auto& x : b1)
      for (const auto& y : b2) {
        mpq_class diff = x - y;
        // t = (diff + k) / delta in [0, 1)
        long w = std::abs(delta) + 1;
        for (long k = -w; k <= w; ++k) {
          mpq_class t = (diff + k) / delta;
          if (t >= 0 && t < 1) tcuts.push_back(t);
        }
      }
  };
  add_cuts(f1.breaks, f0.breaks, r);
  add_cuts(f2.breaks, f0.breaks, s);
  add_cuts(f1.breaks, f2.breaks, s - r);
  std::sort(tcuts.begin(), tcuts.end());
  tcuts.erase(std::unique(tcuts.begin(), tcuts.end()), tcuts.end());
  mpq_class rhs_exact(0);
  mpq_class gprev = line_integrand(f0, f1, f2, r, s, tcuts[0]);
  mpq_class g0 = gprev;
  for (std::size_t i = 1; i <= tcuts.size(); ++i) {
    mpq_class tn = (i < tcuts.size()) ? tcuts[i] : mpq_class(1);
    mpq_class gn = (i < tcuts.size()) ? line_integrand(f0, f1, f2, r, s, tcuts[i]) : g0;
    rhs_exact += (tn - tcuts[i - 1]) * (gprev + gn) / 2;
    gprev = gn;
  }

  LimitCheckResult res;
  res.rhs = rhs_exact.get_d();

  std::vector<long> ladder = n_ladder;
  std::sort(ladder.begin(), ladder.end());
  const long n_max = ladder.back();
  double sum = 0.0, comp = 0.0;
  std::size_t li = 0;
  for (long n = 1; n <= n_max; ++n) {
    mpq_class pn = p.eval(QVec{mpq_class(n)});
    if (pn.get_den() != 1) throw ValidationError("polynomial is not Z-valued");
    QuadReal o1 = (mpq_class(r) * (pn * alpha)).frac();
    QuadReal o2 = (mpq_class(s) * (pn * alpha)).frac();
    double v = shifted_triple_integral(f0, f1, f2, o1, o2).to_double();
    double y = v - comp, t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    while (li < ladder.size() && ladder[li] == n) {
      res.ladder_gaps.push_back(std::abs(sum / static_cast<double>(n) - res.rhs));
      ++li;
    }
  }
  res.lhs = sum / static_cast<double>(n_max);
  res.gap = std::abs(res.lhs - res.rhs);
  return res;
}

FiniteRationalReport finite_rational_check(const FiniteRotationSystem& sys,
                                           const std::vector<MultiPolyQ>& shifts) {
  mpz_class den(1);
  for (const auto& s : shifts)
    for (const auto& [e, c] : s.terms)
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  mpz_class period_z = den * static_cast<long>(sys.m);
  if (!period_z.fits_ulong_p() || period_z.get_ui() > 1000000)
    throw ValidationError("shift period too large");
  unsigned long big = period_z.get_ui();

  // minimal period of the offset tuple sequence divides m * lcm(denominators)
  std::vector<std::vector<unsigned long>> seq;
  for (unsigned long n = 0; n < big; ++n)
    seq.push_back(finite_offsets(sys, shifts, static_cast<long>(n)));
  unsigned long period = big;
  for (unsigned long p = 1; p <= big / 2; ++p) {
    if (big % p != 0) continue;
    bool ok = true;
    for (unsigned long n = 0; n + p < big && ok; ++n)
      if (seq[n] != seq[n + p]) ok = false;
    if (ok) {
      period = p;
      break;
    }
  }

  FiniteRationalReport rep;
  rep.period = period;
  mpq_class total(0);
  for (unsigned long n = 0; n < period; ++n) total += finite_correlation(sys, seq[n]);
  rep.average = total / static_cast<long>(period);
  rep.prediction = 1;
  for (std::size_t i = 0; i <= shifts.size(); ++i) rep.prediction *= sys.density();
  rep.matches_prediction = (rep.average == rep.prediction);
  return rep;
}

}  // namespace nfdyn
