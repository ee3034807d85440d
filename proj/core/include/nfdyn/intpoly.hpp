#ifndef NFDYN_INTPOLY_HPP
#define NFDYN_INTPOLY_HPP

#include <optional>
#include <vector>

#include "nfdyn/multipoly.hpp"
#include "nfdyn/ring.hpp"

namespace nfdyn {

inline constexpr long kMaxPolyDegree = 64;

// Univariate polynomial over K, coefficients c[0] + c[1] x + ...
struct PolyOverK {
  std::vector<AlgebraicNumber> coeffs;

  PolyOverK() = default;
  explicit PolyOverK(std::vector<AlgebraicNumber> c);

  long degree() const { return static_cast<long>(coeffs.size()) - 1; }
  bool operator==(const PolyOverK& o) const { return coeffs == o.coeffs; }
};

// The d coordinate polynomials p_1..p_d of one PolyOverK, in d variables:
// p(sum_j x_j b_j) = sum_i comps[i](x_1..x_d) b_i.
struct CoordinateSystem {
  std::vector<MultiPolyQ> comps;
};

struct IntersectiveShift {
  AlgebraicNumber xi;
  AlgebraicNumber D;
};

PolyOverK poly_from_rational_coeffs(const QVec& coeffs, const NumberFieldSpec& field);
PolyOverK scale_poly(const AlgebraicNumber& s, const PolyOverK& p, const NumberFieldSpec& field);

AlgebraicNumber eval_poly(const PolyOverK& p, const AlgebraicNumber& x,
                          const NumberFieldSpec& field);

// Symbolic expansion of p through the structure constants; exact.
CoordinateSystem coordinate_expand(const PolyOverK& p, const NumberFieldSpec& field);

// Exact test for q(Z^d) subset of Z: all coefficients in the multivariate
// binomial basis prod_j C(x_j, k_j) are integers.
bool is_z_valued(const MultiPolyQ& q);

// p(O_K) subset of O_K, decided exactly through the coordinate expansion.
bool is_ok_valued(const PolyOverK& p, const NumberFieldSpec& field);

// True iff {1} and the family together are linearly independent over Q.
bool independence_with_constants(const std::vector<MultiPolyQ>& family);

// Full generic rank of the Jacobian, certified by a deterministic rational
// evaluation sequence with a symbolic minor fallback for families of size <= 4.
// Throws TooManyPolynomials if the family is larger than nvars.
bool jacobian_alg_independence(const std::vector<MultiPolyQ>& family, std::size_t nvars);

// lcm of the coordinate denominators of all coefficients of p.
mpz_class denominator_lcm(const PolyOverK& p);

// Exhaustive root search over the residues of r * Delta, where Delta clears
// all coefficient denominators. Returns the first xi with p_i(xi) in r O_K for
// every i, or nullopt, which certifies failure at modulus r.
std::optional<AlgebraicNumber> joint_intersectivity_search(
    const std::vector<PolyOverK>& family, const AlgebraicNumber& r,
    const NumberFieldSpec& field);

// The constructive shift (xi, D) with p_i(xi + D O_K) in r O_K; D is r times
// the lcm of per-polynomial coefficient denominators (1 when r is a unit).
// The containment is re-verified on 100 pseudorandom arguments.
IntersectiveShift intersective_shift(const std::vector<PolyOverK>& family,
                                     const AlgebraicNumber& r, const AlgebraicNumber& xi,
                                     const NumberFieldSpec& field);

}  // namespace nfdyn

#endif
