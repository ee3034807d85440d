#ifndef NFDYN_RING_HPP
#define NFDYN_RING_HPP

#include <vector>

#include "nfdyn/qlinalg.hpp"
#include "nfdyn/qpoly.hpp"

namespace nfdyn {

// A degree-d number field K = Q[x]/(min_poly) with the power basis
// 1, theta, ..., theta^(d-1) as integral basis. Structure constants
// a(j,l,m) satisfy b_j b_l = sum_m a(j,l,m) b_m and are integers
// because min_poly is monic with integer coefficients.
struct NumberFieldSpec {
  std::size_t degree = 0;
  QPoly min_poly;
  std::vector<mpz_class> structure;  // d^3 tensor, index (j*d + l)*d + m

  const mpz_class& a(std::size_t j, std::size_t l, std::size_t m) const {
    return structure[(j * degree + l) * degree + m];
  }
  bool operator==(const NumberFieldSpec& o) const { return min_poly == o.min_poly; }
};

// Element of K as exact rational coordinates over the power basis.
struct AlgebraicNumber {
  QVec coords;

  bool operator==(const AlgebraicNumber& o) const { return coords == o.coords; }
  bool is_zero() const;
  bool is_integral() const;  // all coordinates in Z, i.e. lies in O_K
};

AlgebraicNumber algebraic_zero(const NumberFieldSpec& field);
AlgebraicNumber algebraic_one(const NumberFieldSpec& field);
AlgebraicNumber from_rational(const mpq_class& q, const NumberFieldSpec& field);
// theta, the root of min_poly (requires degree >= 2)
AlgebraicNumber generator(const NumberFieldSpec& field);

AlgebraicNumber add(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber sub(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber negate(const AlgebraicNumber& a);
AlgebraicNumber scale(const mpq_class& s, const AlgebraicNumber& a);

// Builds the field description from a monic integer polynomial. Throws NotMonic for a
// non-monic or non-integer polynomial and NotIrreducible when no prime p <= 101
// certifies irreducibility mod p, unless assert_irreducible is set.
NumberFieldSpec make_field(const QPoly& min_poly, bool assert_irreducible = false);

AlgebraicNumber mul(const AlgebraicNumber& a, const AlgebraicNumber& b,
                    const NumberFieldSpec& field);

// Matrix of x -> alpha * x over the power basis; column m holds coords(alpha * b_m).
QMat mult_matrix(const AlgebraicNumber& alpha, const NumberFieldSpec& field);

// Monic minimal polynomial of alpha over Q: the squarefree part of the
// characteristic polynomial of its multiplication matrix.
QPoly min_poly_of(const AlgebraicNumber& alpha, const NumberFieldSpec& field);

// True iff two conjugates of alpha sum to zero, detected exactly via
// gcd(m(x), (-1)^deg m(-x)) being nonconstant. Throws ZeroInput for alpha = 0.
bool conjugates_negate(const AlgebraicNumber& alpha, const NumberFieldSpec& field);

// |N(r)| = |det mult_matrix(r)|
mpz_class norm_abs(const AlgebraicNumber& r, const NumberFieldSpec& field);

// Whether n lies in the subgroup r * O_K. Throws ZeroDivisor for r = 0.
// n may have rational coordinates; membership then requires the exact
// quotient n / r to land in O_K.
bool subgroup_membership(const AlgebraicNumber& n, const AlgebraicNumber& r,
                         const NumberFieldSpec& field);

// Exactly |N(r)| coset representatives of O_K / r O_K, from the HNF
// fundamental domain of the lattice r O_K. Throws ZeroDivisor for r = 0.
std::vector<AlgebraicNumber> residues(const AlgebraicNumber& r, const NumberFieldSpec& field);

}  // namespace nfdyn

#endif
