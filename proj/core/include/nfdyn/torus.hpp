#ifndef NFDYN_TORUS_HPP
#define NFDYN_TORUS_HPP

#include <complex>
#include <map>
#include <vector>

#include "nfdyn/multipoly.hpp"
#include "nfdyn/symreal.hpp"

namespace nfdyn {

using SymVec = std::vector<SymbolicReal>;  // point of T^m with symbolic coordinates

// x -> A x + t on T^m with A integer unipotent.
struct AffineUnipotentMap {
  ZMat A;
  SymVec t;

  std::size_t dim() const { return A.rows; }
};

// exact image A x + t, not reduced mod 1
SymVec apply(const AffineUnipotentMap& map, const SymVec& x);

// Throws NotUnipotent / NonCommuting when the system invariants fail:
// (A-I)^m = 0, A_i A_j = A_j A_i, and (A_i - I) t_j = (A_j - I) t_i mod 1.
void validate_system(const std::vector<AffineUnipotentMap>& maps);

// Closed-form orbit: each torus coordinate of prod_j T_j^{p_j(n)} x as an exact
// polynomial in n with symbolic-real coefficients.
struct PolynomialTorusSequence {
  std::size_t torus_dim = 0;
  std::size_t nvars = 0;  // dimension of the parameter n
  std::vector<SymRealPoly> coords;
  GeneratorSet gens;

  SymVec eval(const QVec& n) const;
  SymVec eval_int(const std::vector<long>& n) const;
};

// Exponent polynomials must be Z-valued; x, t entries live over gens.
PolynomialTorusSequence closed_form_orbit(const std::vector<AffineUnipotentMap>& maps,
                                          const std::vector<MultiPolyQ>& exponents,
                                          const SymVec& x, const GeneratorSet& gens);

// Orbit closure: a rational subtorus V (saturated HNF basis) plus finitely many
// coset offsets indexed by congruence classes of n modulo M.
struct SubtorusCosetUnion {
  std::vector<ZVec> v_basis;                 // saturated integer basis of V
  std::vector<ZVec> v_annihilator;           // integer characters vanishing on V
  std::vector<SymVec> cosets;                // offset per coset
  unsigned long modulus = 1;                 // M, same for every n-coordinate
  std::map<std::vector<unsigned long>, std::size_t> class_to_coset;
};

SubtorusCosetUnion orbit_closure(const PolynomialTorusSequence& u);

// Simultaneous unipotent triangularization A_j P = P B_j with integer P of
// nonzero determinant and integer triangular unipotent B_j. Upper-triangular
// by default; lower=true conjugates by the basis reversal.
struct Triangularization {
  ZMat P;
  std::vector<ZMat> B;
};

Triangularization simultaneous_triangularize(const std::vector<ZMat>& matrices,
                                             bool lower = false);

// Nested product box, per-coordinate inclusive ranges.
struct FolnerBox {
  std::vector<std::pair<long, long>> ranges;

  static FolnerBox centered(std::size_t nvars, long side);
  unsigned long long size() const;
};

// (1/|box|) sum over the box of e(c . u(n)). Exact when the phase polynomial is
// constant mod 1; compensated floating summation otherwise, with deterministic
// fixed-size chunking so the result is independent of the thread count.
std::complex<double> weyl_average(const ZVec& character, const PolynomialTorusSequence& u,
                                  const FolnerBox& box, unsigned threads = 1);

struct EquidistributionRow {
  ZVec character;
  bool structured = false;  // annihilates V and sees only the finite structure
  std::complex<double> predicted;
  std::vector<std::complex<double>> measured;  // one per ladder box
  double bound = 0.0;
  bool pass = false;
};

struct EquidistributionReport {
  std::vector<long> ladder;
  double tolerance = 0.0;
  std::vector<EquidistributionRow> rows;
  bool all_pass = true;
};

EquidistributionReport equidistribution_report(const PolynomialTorusSequence& u,
                                               const SubtorusCosetUnion& closure,
                                               const std::vector<long>& ladder,
                                               long c_max = 3, unsigned threads = 1);

}  // namespace nfdyn

#endif
