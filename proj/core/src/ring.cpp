#include "nfdyn/ring.hpp"

#include <cassert>

#include "nfdyn/errors.hpp"

namespace nfdyn {

bool AlgebraicNumber::is_zero() const {
  for (const auto& q : coords)
    if (q != 0) return false;
  return true;
}

bool AlgebraicNumber::is_integral() const {
  for (const auto& q : coords)
    if (q.get_den() != 1) return false;
  return true;
}

AlgebraicNumber algebraic_zero(const NumberFieldSpec& field) {
  return AlgebraicNumber{QVec(field.degree, mpq_class(0))};
}

AlgebraicNumber algebraic_one(const NumberFieldSpec& field) {
  return from_rational(1, field);
}

AlgebraicNumber from_rational(const mpq_class& q, const NumberFieldSpec& field) {
  AlgebraicNumber a = algebraic_zero(field);
  a.coords[0] = q;
  return a;
}

AlgebraicNumber generator(const NumberFieldSpec& field) {
  if (field.degree < 2) throw ValidationError("generator: field has degree 1");
  AlgebraicNumber a = algebraic_zero(field);
  a.coords[1] = 1;
  return a;
}

namespace {

void check_same_field(const AlgebraicNumber& a, const NumberFieldSpec& field) {
  if (a.coords.size() != field.degree)
    throw FieldMismatch("element has " + std::to_string(a.coords.size()) +
                        " coordinates, field degree is " + std::to_string(field.degree));
}

}  // namespace

AlgebraicNumber add(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.coords.size() != b.coords.size()) throw FieldMismatch();
  AlgebraicNumber r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
  return r;
}

AlgebraicNumber sub(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.coords.size() != b.coords.size()) throw FieldMismatch();
  AlgebraicNumber r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= b.coords[i];
  return r;
}

AlgebraicNumber negate(const AlgebraicNumber& a) {
  AlgebraicNumber r = a;
  for (auto& q : r.coords) q = -q;
  return r;
}

AlgebraicNumber scale(const mpq_class& s, const AlgebraicNumber& a) {
  AlgebraicNumber r = a;
  for (auto& q : r.coords) q *= s;
  return r;
}

NumberFieldSpec make_field(const QPoly& min_poly, bool assert_irreducible) {
  if (min_poly.degree() < 1 || !min_poly.is_monic()) throw NotMonic();
  for (const auto& c : min_poly.c)
    if (c.get_den() != 1) throw NotMonic("coefficients must be integers");

  const std::size_t d = static_cast<std::size_t>(min_poly.degree());

  if (!assert_irreducible) {
    static const unsigned long primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                           43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101};
    bool certified = false;
    for (unsigned long p : primes) {
      if (irreducible_mod_p(min_poly, p)) {
        certified = true;
        break;
      }
    }
    if (!certified)
      throw NotIrreducible("no prime p <= 101 certifies irreducibility of " +
                           to_string(min_poly));
  }

  NumberFieldSpec field;
  field.degree = d;
  field.min_poly = min_poly;

  // theta^k over the power basis, k = 0 .. 2d-2, reducing by the monic min_poly
  std::vector<ZVec> theta_pow(2 * d - 1, ZVec(d, mpz_class(0)));
  theta_pow[0][0] = 1;
  for (std::size_t k = 1; k < 2 * d - 1; ++k) {
    // shift up one degree
    ZVec shifted(d + 1, mpz_class(0));
    for (std::size_t i = 0; i < d; ++i) shifted[i + 1] = theta_pow[k - 1][i];
    // reduce theta^d = -(c_0 + c_1 theta + ... + c_{d-1} theta^{d-1})
    if (shifted[d] != 0) {
      for (std::size_t i = 0; i < d; ++i)
        shifted[i] -= shifted[d] * min_poly.c[i].get_num();
    }
    for (std::size_t i = 0; i < d; ++i) theta_pow[k][i] = shifted[i];
  }

  field.structure.assign(d * d * d, mpz_class(0));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t m = 0; m < d; ++m)
        field.structure[(j * d + l) * d + m] = theta_pow[j + l][m];
  return field;
}

AlgebraicNumber mul(const AlgebraicNumber& a, const AlgebraicNumber& b,
                    const NumberFieldSpec& field) {
  check_same_field(a, field);
  check_same_field(b, field);
  const std::size_t d = field.degree;
  AlgebraicNumber r = algebraic_zero(field);
  for (std::size_t j = 0; j < d; ++j) {
    if (a.coords[j] == 0) continue;
    for (std::size_t l = 0; l < d; ++l) {
      if (b.coords[l] == 0) continue;
      mpq_class prod = a.coords[j] * b.coords[l];
      for (std::size_t m = 0; m < d; ++m) {
        const mpz_class& s = field.a(j, l, m);
        if (s != 0) r.coords[m] += prod * s;
      }
    }
  }
  return r;
}

QMat mult_matrix(const AlgebraicNumber& alpha, const NumberFieldSpec& field) {
  check_same_field(alpha, field);
  const std::size_t d = field.degree;
  QMat m(d, d);
  for (std::size_t col = 0; col < d; ++col) {
    AlgebraicNumber basis = algebraic_zero(field);
    basis.coords[col] = 1;
    AlgebraicNumber prod = mul(alpha, basis, field);
    for (std::size_t row = 0; row < d; ++row) m(row, col) = prod.coords[row];
  }
  return m;
}

QPoly min_poly_of(const AlgebraicNumber& alpha, const NumberFieldSpec& field) {
  QPoly chi(charpoly(mult_matrix(alpha, field)));
  return squarefree_part(chi);
}

bool conjugates_negate(const AlgebraicNumber& alpha, const NumberFieldSpec& field) {
  check_same_field(alpha, field);
  if (alpha.is_zero()) throw ZeroInput();
  QPoly m = min_poly_of(alpha, field);
  QPoly refl = m.reflected();
  if (refl.leading() < 0) refl = mpq_class(-1) * refl;
  QPoly g = poly_gcd(m, refl);
  return g.degree() >= 1;
}

mpz_class norm_abs(const AlgebraicNumber& r, const NumberFieldSpec& field) {
  mpq_class d = det(mult_matrix(r, field));
  assert(d.get_den() == 1 || !r.is_integral());
  mpq_class ad = abs(d);
  assert(ad.get_den() == 1);
  return ad.get_num();
}

bool subgroup_membership(const AlgebraicNumber& n, const AlgebraicNumber& r,
                         const NumberFieldSpec& field) {
  check_same_field(n, field);
  check_same_field(r, field);
  if (r.is_zero()) throw ZeroDivisor();
  auto x = solve(mult_matrix(r, field), n.coords);
  if (!x) return false;  // cannot happen for r != 0 in a field, kept for safety
  for (const auto& q : *x)
    if (q.get_den() != 1) return false;
  return true;
}

std::vector<AlgebraicNumber> residues(const AlgebraicNumber& r, const NumberFieldSpec& field) {
  check_same_field(r, field);
  if (r.is_zero()) throw ZeroDivisor();
  if (!r.is_integral()) throw ValidationError("residues: generator must lie in O_K");
  const std::size_t d = field.degree;
  QMat mq = mult_matrix(r, field);
  ZMat lattice(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      assert(mq(i, j).get_den() == 1);
      lattice(i, j) = mq(i, j).get_num();
    }
  ZMat h = hnf(lattice);
  std::vector<AlgebraicNumber> reps;
  ZVec v(d, mpz_class(0));
  for (;;) {
    AlgebraicNumber a = algebraic_zero(field);
    for (std::size_t i = 0; i < d; ++i) a.coords[i] = mpq_class(v[i]);
    reps.push_back(std::move(a));
    // odometer over the HNF fundamental domain 0 <= v_i < h(i,i)
    std::size_t i = 0;
    while (i < d) {
      v[i] += 1;
      if (v[i] < h(i, i)) break;
      v[i] = 0;
      ++i;
    }
    if (i == d) break;
  }
  return reps;
}

}  // namespace nfdyn
