#include "nfdyn/torus.hpp"

#include <atomic>
#include <cassert>
#include <cmath>
#include <numbers>
#include <thread>

#include "nfdyn/errors.hpp"
#include "nfdyn/intpoly.hpp"

namespace nfdyn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ZMat minus_identity(const ZMat& a) {
  ZMat n = a;
  for (std::size_t i = 0; i < n.rows; ++i) n(i, i) -= 1;
  return n;
}

bool is_zero(const ZMat& m) {
  for (const auto& x : m.a)
    if (x != 0) return false;
  return true;
}

SymVec apply_matrix(const ZMat& a, const SymVec& x) {
  SymVec r(a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      r[i] = r[i] + mpq_class(a(i, j)) * x[j];
  return r;
}

}  // namespace

SymVec apply(const AffineUnipotentMap& map, const SymVec& x) {
  assert(x.size() == map.dim());
  SymVec r = apply_matrix(map.A, x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] + map.t[i];
  return r;
}

void validate_system(const std::vector<AffineUnipotentMap>& maps) {
  for (const auto& map : maps) {
    const std::size_t m = map.A.rows;
    if (map.A.cols != m || map.t.size() != m)
      throw ValidationError("affine map has inconsistent dimensions");
    ZMat n = minus_identity(map.A);
    ZMat p = ZMat::identity(m);
    for (std::size_t k = 0; k < m; ++k) p = mul(p, n);
    if (!is_zero(p)) throw NotUnipotent();
  }
  for (std::size_t i = 0; i < maps.size(); ++i)
    for (std::size_t j = i + 1; j < maps.size(); ++j) {
      if (!(mul(maps[i].A, maps[j].A) == mul(maps[j].A, maps[i].A))) throw NonCommuting();
      SymVec lhs = apply_matrix(minus_identity(maps[i].A), maps[j].t);
      SymVec rhs = apply_matrix(minus_identity(maps[j].A), maps[i].t);
      for (std::size_t k = 0; k < lhs.size(); ++k)
        if (!lhs[k].equal_mod1(rhs[k])) throw NonCommuting("translations incompatible");
    }
}

SymVec PolynomialTorusSequence::eval(const QVec& n) const {
  SymVec r(torus_dim);
  for (std::size_t i = 0; i < torus_dim; ++i) r[i] = coords[i].eval(n);
  return r;
}

SymVec PolynomialTorusSequence::eval_int(const std::vector<long>& n) const {
  QVec q(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) q[i] = mpq_class(n[i]);
  return eval(q);
}

namespace {

using PolyMat = std::vector<std::vector<MultiPolyQ>>;

PolyMat poly_identity(std::size_t m, std::size_t nvars) {
  PolyMat r(m, std::vector<MultiPolyQ>(m, MultiPolyQ::zero(nvars)));
  for (std::size_t i = 0; i < m; ++i) r[i][i] = MultiPolyQ::constant(nvars, 1);
  return r;
}

PolyMat poly_mat_mul(const PolyMat& x, const PolyMat& y) {
  const std::size_t m = x.size();
  const std::size_t nvars = x[0][0].nvars;
  PolyMat r(m, std::vector<MultiPolyQ>(m, MultiPolyQ::zero(nvars)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      if (x[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (y[k][j].is_zero()) continue;
        r[i][j] = r[i][j] + x[i][k] * y[k][j];
      }
    }
  return r;
}

std::vector<SymRealPoly> poly_mat_apply(const PolyMat& x, const std::vector<SymRealPoly>& v) {
  const std::size_t m = x.size();
  const std::size_t nvars = x[0][0].nvars;
  std::vector<SymRealPoly> r(m, SymRealPoly::zero(nvars));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      if (x[i][k].is_zero()) continue;
      r[i] = r[i] + x[i][k] * v[k];
    }
  return r;
}

// sum_s binomial(p, s + shift) N^s as a polynomial matrix; N nilpotent.
PolyMat unipotent_power(const ZMat& nil, const MultiPolyQ& p, unsigned shift) {
  const std::size_t m = nil.rows;
  const std::size_t nvars = p.nvars;
  PolyMat r(m, std::vector<MultiPolyQ>(m, MultiPolyQ::zero(nvars)));
  ZMat npow = ZMat::identity(m);
  for (unsigned s = 0; s < m; ++s) {
    if (s > 0) {
      npow = mul(npow, nil);
      if (is_zero(npow)) break;
    }
    MultiPolyQ b = binomial_of(p, s + shift);
    if (b.is_zero()) continue;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (npow(i, j) != 0) r[i][j] = r[i][j] + mpq_class(npow(i, j)) * b;
  }
  return r;
}

}  // namespace

PolynomialTorusSequence closed_form_orbit(const std::vector<AffineUnipotentMap>& maps,
                                          const std::vector<MultiPolyQ>& exponents,
                                          const SymVec& x, const GeneratorSet& gens) {
  if (maps.empty() || maps.size() != exponents.size())
    throw ValidationError("closed_form_orbit: one exponent polynomial per map required");
  validate_system(maps);
  const std::size_t m = maps[0].dim();
  if (x.size() != m) throw ValidationError("base point dimension mismatch");
  const std::size_t nvars = exponents[0].nvars;
  for (const auto& p : exponents) {
    if (p.nvars != nvars) throw ValidationError("exponent variable count mismatch");
    if (!is_z_valued(p)) throw ValidationError("exponent polynomial is not Z-valued");
  }

  PolyMat mat = poly_identity(m, nvars);
  std::vector<SymRealPoly> v(m, SymRealPoly::zero(nvars));
  for (std::size_t j = 0; j < maps.size(); ++j) {
    ZMat nil = minus_identity(maps[j].A);
    PolyMat apow = unipotent_power(nil, exponents[j], 0);
    PolyMat ssum = unipotent_power(nil, exponents[j], 1);
    mat = poly_mat_mul(apow, mat);
    v = poly_mat_apply(apow, v);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k)
        if (!ssum[i][k].is_zero())
          v[i] = v[i] + SymRealPoly::scaled(ssum[i][k], maps[j].t[k]);
  }

  PolynomialTorusSequence u;
  u.torus_dim = m;
  u.nvars = nvars;
  u.gens = gens;
  u.coords.assign(m, SymRealPoly::zero(nvars));
  for (std::size_t i = 0; i < m; ++i) {
    SymRealPoly c = v[i];
    for (std::size_t k = 0; k < m; ++k)
      if (!mat[i][k].is_zero()) c = c + SymRealPoly::scaled(mat[i][k], x[k]);
    u.coords[i] = std::move(c);
  }
  return u;
}

SubtorusCosetUnion orbit_closure(const PolynomialTorusSequence& u) {
  const std::size_t m = u.torus_dim;
  const std::size_t d = u.nvars;
  const MultiPolyQ::Expo zero_expo(d, 0);

  // V: rational span of all nonconstant monomial coefficient vectors of the
  // generator coefficient polynomials
  std::vector<QVec> span;
  for (std::size_t g = 0; g < u.gens.size(); ++g) {
    std::map<MultiPolyQ::Expo, QVec> vecs;
    for (std::size_t c = 0; c < m; ++c) {
      MultiPolyQ gp = u.coords[c].generator_part(g);
      for (const auto& [e, coeff] : gp.terms) {
        if (e == zero_expo) continue;
        auto [it, inserted] = vecs.try_emplace(e, QVec(m, mpq_class(0)));
        it->second[c] = coeff;
      }
    }
    for (auto& [e, vec] : vecs) span.push_back(std::move(vec));
  }

  SubtorusCosetUnion closure;
  closure.v_basis = saturate_span(span, m);
  {
    std::vector<QVec> basis_q;
    for (const auto& v : closure.v_basis) {
      QVec q(m);
      for (std::size_t i = 0; i < m; ++i) q[i] = mpq_class(v[i]);
      basis_q.push_back(std::move(q));
    }
    closure.v_annihilator = annihilator(basis_q, m);
  }

  // congruence modulus: lcm of denominators of nonconstant rational coefficients
  mpz_class mod(1);
  for (std::size_t c = 0; c < m; ++c) {
    MultiPolyQ rp = u.coords[c].rational_part();
    for (const auto& [e, coeff] : rp.terms) {
      if (e == zero_expo) continue;
      mpz_lcm(mod.get_mpz_t(), mod.get_mpz_t(), coeff.get_den().get_mpz_t());
    }
  }
  if (!mod.fits_ulong_p()) throw ValidationError("congruence modulus too large");
  closure.modulus = mod.get_ui();
  const unsigned long M = closure.modulus;

  double classes_d = std::pow(static_cast<double>(M), static_cast<double>(d));
  if (classes_d > 1e6) throw ValidationError("congruence structure too large");

  auto in_same_coset = [&](const SymVec& a, const SymVec& b) {
    for (const auto& chr : closure.v_annihilator) {
      SymbolicReal s;
      for (std::size_t i = 0; i < m; ++i) s = s + mpq_class(chr[i]) * (a[i] - b[i]);
      if (!s.terms.empty()) return false;
      if (s.q0.get_den() != 1) return false;
    }
    return true;
  };

  std::vector<unsigned long> cls(d, 0);
  for (;;) {
    QVec point(d);
    for (std::size_t i = 0; i < d; ++i) point[i] = mpq_class(cls[i]);
    SymVec offset = u.eval(point);
    std::size_t idx = closure.cosets.size();
    for (std::size_t i = 0; i < closure.cosets.size(); ++i)
      if (in_same_coset(offset, closure.cosets[i])) {
        idx = i;
        break;
      }
    if (idx == closure.cosets.size()) closure.cosets.push_back(offset);
    closure.class_to_coset[cls] = idx;
    std::size_t i = 0;
    while (i < d) {
      if (++cls[i] < M) break;
      cls[i] = 0;
      ++i;
    }
    if (i == d) break;
  }
  return closure;
}

namespace {

// unimodular matrix whose first column is the given primitive vector
ZMat complete_basis(const ZVec& v) {
  const std::size_t m = v.size();
  ZMat u = ZMat::identity(m);
  ZVec w = v;
  for (std::size_t i = 1; i < m; ++i) {
    if (w[i] == 0) continue;
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), w[0].get_mpz_t(),
               w[i].get_mpz_t());
    mpz_class p = w[0] / g, q = w[i] / g;
    // column update: U <- U * R^{-1} for the row op R = [[s, t], [-q, p]]
    for (std::size_t r = 0; r < m; ++r) {
      mpz_class c0 = u(r, 0), ci = u(r, i);
      u(r, 0) = p * c0 + q * ci;
      u(r, i) = -t * c0 + s * ci;
    }
    w[0] = g;
    w[i] = 0;
  }
  // primitive input: gcd is 1 up to sign
  if (w[0] < 0)
    for (std::size_t r = 0; r < m; ++r) u(r, 0) = -u(r, 0);
  return u;
}

ZMat integer_inverse_unimodular(const ZMat& u) {
  const std::size_t m = u.rows;
  QMat q = to_rational(u);
  ZMat inv(m, m);
  for (std::size_t col = 0; col < m; ++col) {
    QVec e(m, mpq_class(0));
    e[col] = 1;
    auto x = solve(q, e);
    assert(x);
    for (std::size_t row = 0; row < m; ++row) {
      assert((*x)[row].get_den() == 1);
      inv(row, col) = (*x)[row].get_num();
    }
  }
  return inv;
}

Triangularization triangularize_rec(const std::vector<ZMat>& mats) {
  const std::size_t m = mats[0].rows;
  Triangularization out;
  if (m == 1) {
    out.P = ZMat::identity(1);
    out.B = mats;
    return out;
  }
  // common fixed vector of all maps
  QMat stacked(mats.size() * m, m);
  for (std::size_t j = 0; j < mats.size(); ++j) {
    ZMat nil = minus_identity(mats[j]);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) stacked(j * m + r, c) = mpq_class(nil(r, c));
  }
  auto kernel = nullspace(stacked);
  assert(!kernel.empty());  // commuting unipotents share an eigenvector
  ZVec v = primitive_integer(kernel.front());
  ZMat u = complete_basis(v);
  ZMat uinv = integer_inverse_unimodular(u);

  std::vector<ZMat> sub;
  std::vector<ZVec> tops;
  for (const auto& a : mats) {
    ZMat conj = mul(uinv, mul(a, u));
    ZMat s(m - 1, m - 1);
    ZVec top(m - 1);
    for (std::size_t r = 1; r < m; ++r) {
      assert(conj(r, 0) == 0);
      for (std::size_t c = 1; c < m; ++c) s(r - 1, c - 1) = conj(r, c);
    }
    assert(conj(0, 0) == 1);
    for (std::size_t c = 1; c < m; ++c) top[c - 1] = conj(0, c);
    sub.push_back(std::move(s));
    tops.push_back(std::move(top));
  }
  Triangularization rec = triangularize_rec(sub);

  ZMat block(m, m);
  block(0, 0) = 1;
  for (std::size_t r = 1; r < m; ++r)
    for (std::size_t c = 1; c < m; ++c) block(r, c) = rec.P(r - 1, c - 1);
  out.P = mul(u, block);
  for (std::size_t j = 0; j < mats.size(); ++j) {
    ZMat b(m, m);
    b(0, 0) = 1;
    // top row: w_j * P'
    for (std::size_t c = 1; c < m; ++c) {
      mpz_class acc(0);
      for (std::size_t k = 0; k < m - 1; ++k) acc += tops[j][k] * rec.P(k, c - 1);
      b(0, c) = acc;
    }
    for (std::size_t r = 1; r < m; ++r)
      for (std::size_t c = 1; c < m; ++c) b(r, c) = rec.B[j](r - 1, c - 1);
    out.B.push_back(std::move(b));
  }
  return out;
}

}  // namespace

Triangularization simultaneous_triangularize(const std::vector<ZMat>& matrices, bool lower) {
  if (matrices.empty()) throw ValidationError("no matrices given");
  const std::size_t m = matrices[0].rows;
  for (const auto& a : matrices) {
    if (a.rows != m || a.cols != m) throw ValidationError("matrix size mismatch");
    ZMat nil = minus_identity(a);
    ZMat p = ZMat::identity(m);
    for (std::size_t k = 0; k < m; ++k) p = mul(p, nil);
    if (!is_zero(p)) throw NotUnipotent();
  }
  for (std::size_t i = 0; i < matrices.size(); ++i)
    for (std::size_t j = i + 1; j < matrices.size(); ++j)
      if (!(mul(matrices[i], matrices[j]) == mul(matrices[j], matrices[i])))
        throw NotCommuting();

  Triangularization tri = triangularize_rec(matrices);
  if (lower) {
    // conjugate by the basis reversal permutation
    ZMat rev(m, m);
    for (std::size_t i = 0; i < m; ++i) rev(i, m - 1 - i) = 1;
    tri.P = mul(tri.P, rev);
    for (auto& b : tri.B) b = mul(rev, mul(b, rev));
  }
  return tri;
}

FolnerBox FolnerBox::centered(std::size_t nvars, long side) {
  FolnerBox box;
  for (std::size_t i = 0; i < nvars; ++i) box.ranges.emplace_back(-side, side);
  return box;
}

unsigned long long FolnerBox::size() const {
  unsigned long long s = 1;
  for (const auto& [lo, hi] : ranges) {
    if (hi < lo) return 0;
    s *= static_cast<unsigned long long>(hi - lo + 1);
  }
  return s;
}

namespace {

struct PhaseTerm {
  MultiPolyQ::Expo expo;
  double coeff;
};

double eval_phase(const std::vector<PhaseTerm>& terms, const std::vector<long>& n) {
  double phase = 0.0;
  for (const auto& t : terms) {
    double mono = t.coeff;
    for (std::size_t i = 0; i < n.size(); ++i)
      for (unsigned k = 0; k < t.expo[i]; ++k) mono *= static_cast<double>(n[i]);
    phase += mono;
  }
  return phase;
}

}  // namespace

std::complex<double> weyl_average(const ZVec& character, const PolynomialTorusSequence& u,
                                  const FolnerBox& box, unsigned threads) {
  if (character.size() != u.torus_dim) throw ValidationError("character dimension mismatch");
  if (box.ranges.size() != u.nvars || box.size() == 0) throw EmptyBox();

  SymRealPoly phase = SymRealPoly::zero(u.nvars);
  for (std::size_t j = 0; j < u.torus_dim; ++j)
    phase = phase + mpq_class(character[j]) * u.coords[j];

  const MultiPolyQ::Expo zero_expo(u.nvars, 0);
  bool exact_constant = true;
  for (const auto& [e, c] : phase.terms) {
    if (e == zero_expo) continue;
    if (!c.terms.empty() || c.q0.get_den() != 1) {
      exact_constant = false;
      break;
    }
  }
  if (exact_constant) {
    double f = phase.constant_term().frac_double(u.gens);
    return {std::cos(kTwoPi * f), std::sin(kTwoPi * f)};
  }

  std::vector<PhaseTerm> terms;
  for (const auto& [e, c] : phase.terms)
    terms.push_back(PhaseTerm{e, c.q0.get_den() == 1 && c.terms.empty()
                                     ? 0.0  // integer coefficients never move the phase
                                     : c.frac_double(u.gens)});
  std::erase_if(terms, [](const PhaseTerm& t) { return t.coeff == 0.0; });

  const unsigned long long total = box.size();
  const unsigned long long chunk = 1 << 14;
  const unsigned long long nchunks = (total + chunk - 1) / chunk;
  std::vector<std::pair<double, double>> partial(nchunks, {0.0, 0.0});

  auto index_to_n = [&](unsigned long long flat, std::vector<long>& n) {
    for (std::size_t i = 0; i < box.ranges.size(); ++i) {
      auto [lo, hi] = box.ranges[i];
      unsigned long long w = static_cast<unsigned long long>(hi - lo + 1);
      n[i] = lo + static_cast<long>(flat % w);
      flat /= w;
    }
  };

  auto run_chunk = [&](unsigned long long ci) {
    unsigned long long begin = ci * chunk;
    unsigned long long end = std::min(total, begin + chunk);
    double sr = 0.0, cr = 0.0, si = 0.0, cc = 0.0;  // Kahan sums + compensations
    std::vector<long> n(u.nvars);
    for (unsigned long long flat = begin; flat < end; ++flat) {
      index_to_n(flat, n);
      double p = eval_phase(terms, n);
      double ang = kTwoPi * (p - std::floor(p));
      double re = std::cos(ang), im = std::sin(ang);
      double y = re - cr, t = sr + y;
      cr = (t - sr) - y;
      sr = t;
      y = im - cc;
      t = si + y;
      cc = (t - si) - y;
      si = t;
    }
    partial[ci] = {sr, si};
  };

  if (threads <= 1 || nchunks == 1) {
    for (unsigned long long ci = 0; ci < nchunks; ++ci) run_chunk(ci);
  } else {
    std::atomic<unsigned long long> next{0};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < threads; ++w)
      workers.emplace_back([&] {
        for (;;) {
          unsigned long long ci = next.fetch_add(1);
          if (ci >= nchunks) return;
          run_chunk(ci);
        }
      });
    for (auto& w : workers) w.join();
  }

  double sr = 0.0, si = 0.0, cr = 0.0, cc = 0.0;
  for (const auto& [re, im] : partial) {
    double y = re - cr, t = sr + y;
    cr = (t - sr) - y;
    sr = t;
    y = im - cc;
    t = si + y;
    cc = (t - si) - y;
    si = t;
  }
  double inv = 1.0 / static_cast<double>(total);
  return {sr * inv, si * inv};
}

EquidistributionReport equidistribution_report(const PolynomialTorusSequence& u,
                                               const SubtorusCosetUnion& closure,
                                               const std::vector<long>& ladder,
                                               long c_max, unsigned threads) {
  if (ladder.empty()) throw ValidationError("empty box ladder");
  EquidistributionReport report;
  report.ladder = ladder;
  const long n_max = *std::max_element(ladder.begin(), ladder.end());
  report.tolerance = std::max(0.02, 5.0 / std::sqrt(static_cast<double>(n_max)));

  const std::size_t m = u.torus_dim;
  ZVec c(m, mpz_class(-c_max));
  for (;;) {
    bool all_zero = true;
    for (const auto& x : c)
      if (x != 0) all_zero = false;
    if (!all_zero) {
      EquidistributionRow row;
      row.character = c;
      bool annihilates = true;
      for (const auto& v : closure.v_basis) {
        mpz_class dot(0);
        for (std::size_t i = 0; i < m; ++i) dot += c[i] * v[i];
        if (dot != 0) {
          annihilates = false;
          break;
        }
      }
      row.structured = annihilates;
      if (annihilates) {
        double re = 0.0, im = 0.0;
        for (const auto& [cls, idx] : closure.class_to_coset) {
          SymbolicReal dot;
          for (std::size_t i = 0; i < m; ++i)
            dot = dot + mpq_class(c[i]) * closure.cosets[idx][i];
          double f = dot.frac_double(u.gens);
          re += std::cos(kTwoPi * f);
          im += std::sin(kTwoPi * f);
        }
        double count = static_cast<double>(closure.class_to_coset.size());
        row.predicted = {re / count, im / count};
      } else {
        row.predicted = {0.0, 0.0};
      }
      for (long side : ladder)
        row.measured.push_back(
            weyl_average(c, u, FolnerBox::centered(u.nvars, side), threads));
      row.bound = report.tolerance;
      if (annihilates) {
        row.pass = std::abs(row.measured.back() - row.predicted) <= report.tolerance;
      } else {
        row.pass = std::abs(row.measured.back()) <= report.tolerance;
        for (std::size_t i = 0; i < ladder.size(); ++i) {
          double envelope =
              std::max(report.tolerance,
                       1.5 * 5.0 / std::sqrt(static_cast<double>(ladder[i])));
          if (std::abs(row.measured[i]) > envelope) row.pass = false;
        }
      }
      if (!row.pass) report.all_pass = false;
      report.rows.push_back(std::move(row));
    }
    std::size_t i = 0;
    while (i < m) {
      c[i] += 1;
      if (c[i] <= c_max) break;
      c[i] = -c_max;
      ++i;
    }
    if (i == m) break;
  }
  return report;
}

}  // namespace nfdyn
