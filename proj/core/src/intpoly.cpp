#include "nfdyn/intpoly.hpp"

#include <cassert>
#include <random>

#include "nfdyn/errors.hpp"

namespace nfdyn {

PolyOverK::PolyOverK(std::vector<AlgebraicNumber> c) : coeffs(std::move(c)) {
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  if (degree() > kMaxPolyDegree) throw DegreeLimit();
}

PolyOverK poly_from_rational_coeffs(const QVec& coeffs, const NumberFieldSpec& field) {
  std::vector<AlgebraicNumber> c;
  c.reserve(coeffs.size());
  for (const auto& q : coeffs) c.push_back(from_rational(q, field));
  return PolyOverK(std::move(c));
}

PolyOverK scale_poly(const AlgebraicNumber& s, const PolyOverK& p, const NumberFieldSpec& field) {
  std::vector<AlgebraicNumber> c;
  c.reserve(p.coeffs.size());
  for (const auto& a : p.coeffs) c.push_back(mul(s, a, field));
  return PolyOverK(std::move(c));
}

AlgebraicNumber eval_poly(const PolyOverK& p, const AlgebraicNumber& x,
                          const NumberFieldSpec& field) {
  AlgebraicNumber r = algebraic_zero(field);
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it)
    r = add(mul(r, x, field), *it);
  return r;
}

namespace {

// Element of K with MultiPolyQ coordinates; product through structure constants.
using SymElem = std::vector<MultiPolyQ>;

SymElem sym_zero(const NumberFieldSpec& field, std::size_t nvars) {
  return SymElem(field.degree, MultiPolyQ::zero(nvars));
}

SymElem sym_mul(const SymElem& f, const SymElem& g, const NumberFieldSpec& field) {
  const std::size_t d = field.degree;
  SymElem r = sym_zero(field, f[0].nvars);
  for (std::size_t j = 0; j < d; ++j) {
    if (f[j].is_zero()) continue;
    for (std::size_t l = 0; l < d; ++l) {
      if (g[l].is_zero()) continue;
      MultiPolyQ prod = f[j] * g[l];
      for (std::size_t m = 0; m < d; ++m) {
        const mpz_class& s = field.a(j, l, m);
        if (s != 0) r[m] = r[m] + mpq_class(s) * prod;
      }
    }
  }
  return r;
}

}  // namespace

CoordinateSystem coordinate_expand(const PolyOverK& p, const NumberFieldSpec& field) {
  const std::size_t d = field.degree;
  SymElem generic = sym_zero(field, d);
  for (std::size_t i = 0; i < d; ++i) generic[i] = MultiPolyQ::variable(d, i);
  SymElem acc = sym_zero(field, d);
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
    acc = sym_mul(acc, generic, field);
    for (std::size_t i = 0; i < d; ++i)
      acc[i] = acc[i] + MultiPolyQ::constant(d, it->coords[i]);
  }
  return CoordinateSystem{std::move(acc)};
}

bool is_z_valued(const MultiPolyQ& q) {
  const std::size_t d = q.nvars;
  std::vector<unsigned> dims(d);
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    dims[i] = q.degree_in(i) + 1;
    total *= dims[i];
  }
  // tabulate on the grid [0, deg_i]^d
  std::vector<mpq_class> grid(total);
  std::vector<unsigned> idx(d, 0);
  QVec point(d);
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (std::size_t i = 0; i < d; ++i) point[i] = mpq_class(idx[i]);
    grid[flat] = q.eval(point);
    for (std::size_t i = 0; i < d; ++i) {
      if (++idx[i] < dims[i]) break;
      idx[i] = 0;
    }
  }
  // Newton forward-difference transform along each axis turns values into
  // binomial-basis coefficients
  std::size_t stride = 1;
  for (std::size_t axis = 0; axis < d; ++axis) {
    const unsigned n = dims[axis];
    for (std::size_t base = 0; base < total; ++base) {
      if ((base / stride) % n != 0) continue;
      for (unsigned step = 1; step < n; ++step)
        for (unsigned i = n - 1; i >= step; --i) {
          std::size_t hi = base + i * stride;
          grid[hi] -= grid[hi - stride];
        }
    }
    stride *= n;
  }
  for (const auto& v : grid)
    if (v.get_den() != 1) return false;
  return true;
}

bool is_ok_valued(const PolyOverK& p, const NumberFieldSpec& field) {
  CoordinateSystem cs = coordinate_expand(p, field);
  for (const auto& comp : cs.comps)
    if (!is_z_valued(comp)) return false;
  return true;
}

bool independence_with_constants(const std::vector<MultiPolyQ>& family) {
  if (family.empty()) return true;
  const std::size_t nvars = family[0].nvars;
  std::map<MultiPolyQ::Expo, std::size_t> monomials;
  monomials[MultiPolyQ::Expo(nvars, 0)] = 0;  // the constant monomial
  for (const auto& p : family)
    for (const auto& [e, c] : p.terms)
      if (!monomials.count(e)) {
        std::size_t id = monomials.size();
        monomials[e] = id;
      }
  QMat m(family.size() + 1, monomials.size());
  m(0, 0) = 1;  // the polynomial 1
  for (std::size_t i = 0; i < family.size(); ++i)
    for (const auto& [e, c] : family[i].terms) m(i + 1, monomials[e]) = c;
  return rank(m) == family.size() + 1;
}

namespace {

std::vector<QVec> jacobian_probe_points(std::size_t nvars) {
  std::vector<QVec> pts;
  const long ratios[] = {0, 1, 2, 3, 5};
  for (long ratio : ratios) {
    QVec p(nvars);
    mpq_class v(1);
    for (std::size_t i = 0; i < nvars; ++i) {
      if (ratio == 1)
        p[i] = mpq_class(static_cast<long>(i + 1));  // (1, 2, 3, ...)
      else
        p[i] = v;
      v *= ratio;
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace

bool jacobian_alg_independence(const std::vector<MultiPolyQ>& family, std::size_t nvars) {
  const std::size_t k = family.size();
  if (k > nvars) throw TooManyPolynomials();
  if (k == 0) return true;
  std::vector<std::vector<MultiPolyQ>> jac(k);
  for (std::size_t i = 0; i < k; ++i) {
    assert(family[i].nvars == nvars);
    for (std::size_t j = 0; j < nvars; ++j) jac[i].push_back(family[i].partial(j));
  }
  for (const auto& pt : jacobian_probe_points(nvars)) {
    QMat m(k, nvars);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < nvars; ++j) m(i, j) = jac[i][j].eval(pt);
    if (rank(m) == k) return true;
  }
  if (k <= 4) {
    // symbolic minors: full generic rank iff some k x k minor is a nonzero polynomial
    std::vector<std::size_t> cols(k);
    for (std::size_t i = 0; i < k; ++i) cols[i] = i;
    for (;;) {
      // symbolic determinant by Leibniz expansion (k <= 4)
      std::vector<std::size_t> perm(k);
      for (std::size_t i = 0; i < k; ++i) perm[i] = i;
      MultiPolyQ detp = MultiPolyQ::zero(nvars);
      do {
        int sign = 1;
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = i + 1; j < k; ++j)
            if (perm[i] > perm[j]) sign = -sign;
        MultiPolyQ term = MultiPolyQ::constant(nvars, sign);
        for (std::size_t i = 0; i < k; ++i) term = term * jac[i][cols[perm[i]]];
        detp = detp + term;
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (!detp.is_zero()) return true;
      // next column subset
      long pos = static_cast<long>(k) - 1;
      while (pos >= 0 && cols[pos] == nvars - k + pos) --pos;
      if (pos < 0) break;
      ++cols[pos];
      for (std::size_t i = pos + 1; i < k; ++i) cols[i] = cols[i - 1] + 1;
    }
  }
  return false;
}

mpz_class denominator_lcm(const PolyOverK& p) {
  mpz_class den(1);
  for (const auto& a : p.coeffs)
    for (const auto& q : a.coords)
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
  return den;
}

std::optional<AlgebraicNumber> joint_intersectivity_search(
    const std::vector<PolyOverK>& family, const AlgebraicNumber& r,
    const NumberFieldSpec& field) {
  if (r.is_zero()) throw ZeroModulus();
  for (const auto& p : family)
    if (!is_ok_valued(p, field))
      throw ValidationError("joint_intersectivity_search: family member is not O_K-valued");
  mpz_class delta(1);
  for (const auto& p : family)
    mpz_lcm(delta.get_mpz_t(), delta.get_mpz_t(), denominator_lcm(p).get_mpz_t());
  AlgebraicNumber modulus = scale(mpq_class(delta), r);
  for (const auto& xi : residues(modulus, field)) {
    bool all_in = true;
    for (const auto& p : family) {
      if (!subgroup_membership(eval_poly(p, xi, field), r, field)) {
        all_in = false;
        break;
      }
    }
    if (all_in) return xi;
  }
  return std::nullopt;
}

IntersectiveShift intersective_shift(const std::vector<PolyOverK>& family,
                                     const AlgebraicNumber& r, const AlgebraicNumber& xi,
                                     const NumberFieldSpec& field) {
  if (r.is_zero()) throw ZeroModulus();
  for (const auto& p : family)
    if (!subgroup_membership(eval_poly(p, xi, field), r, field))
      throw PreconditionFailed("intersective_shift: p(xi) not in r O_K");
  AlgebraicNumber D;
  if (norm_abs(r, field) == 1) {
    D = algebraic_one(field);
  } else {
    mpz_class l(1);
    for (const auto& p : family)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), denominator_lcm(p).get_mpz_t());
    D = scale(mpq_class(l), r);
  }
  // verify the containment on pseudorandom arguments
  std::mt19937 rng(0xD15Cu);
  std::uniform_int_distribution<long> coord(-50, 50);
  for (int trial = 0; trial < 100; ++trial) {
    AlgebraicNumber n = algebraic_zero(field);
    for (auto& q : n.coords) q = mpq_class(coord(rng));
    AlgebraicNumber arg = add(xi, mul(D, n, field));
    for (const auto& p : family)
      if (!subgroup_membership(eval_poly(p, arg, field), r, field))
        throw Error("intersective_shift: containment check failed");
  }
  return IntersectiveShift{xi, D};
}

}  // namespace nfdyn
