#ifndef NFDYN_SYMREAL_HPP
#define NFDYN_SYMREAL_HPP

#include <map>
#include <string>
#include <vector>

#include "nfdyn/multipoly.hpp"
#include "nfdyn/quadreal.hpp"

namespace nfdyn {

// A declared irrational generator. Rational independence of the generator set
// is an axiom supplied by the user; it is never verified.
struct Generator {
  std::string name;
  QuadReal value;
};

using GeneratorSet = std::vector<Generator>;

// Exact element of the group generated by 1 and the declared generators:
// q0 + sum_i terms[i] * alpha_i with rational coefficients. Unique
// representation: zero coefficients are never stored.
struct SymbolicReal {
  mpq_class q0;
  std::map<std::size_t, mpq_class> terms;

  SymbolicReal() = default;
  SymbolicReal(mpq_class rational) : q0(std::move(rational)) {}  // NOLINT
  static SymbolicReal generator_term(std::size_t index, const mpq_class& coeff = 1);

  bool is_rational() const { return terms.empty(); }
  bool is_zero() const { return q0 == 0 && terms.empty(); }
  // equal modulo 1: generator parts identical, rational parts differ by an integer
  bool equal_mod1(const SymbolicReal& o) const;
  void prune();

  double to_double(const GeneratorSet& gens) const;
  // fractional part in [0, 1), computed at 256-bit precision
  double frac_double(const GeneratorSet& gens) const;

  bool operator==(const SymbolicReal& o) const { return q0 == o.q0 && terms == o.terms; }
};

SymbolicReal operator+(const SymbolicReal& x, const SymbolicReal& y);
SymbolicReal operator-(const SymbolicReal& x, const SymbolicReal& y);
SymbolicReal operator-(const SymbolicReal& x);
SymbolicReal operator*(const mpq_class& s, const SymbolicReal& x);

// Polynomial in n in Z^nvars with SymbolicReal coefficients.
struct SymRealPoly {
  using Expo = MultiPolyQ::Expo;

  std::size_t nvars = 0;
  std::map<Expo, SymbolicReal> terms;

  static SymRealPoly zero(std::size_t nvars);
  static SymRealPoly constant(std::size_t nvars, SymbolicReal v);
  // lift a rational polynomial, or one scaled by a single symbolic coefficient
  static SymRealPoly from_rational(const MultiPolyQ& p);
  static SymRealPoly scaled(const MultiPolyQ& p, const SymbolicReal& coeff);

  bool is_constant() const;
  SymbolicReal constant_term() const;
  SymbolicReal eval(const QVec& point) const;
  // the purely rational polynomial part (q0 of each coefficient)
  MultiPolyQ rational_part() const;
  // the coefficient polynomial of generator i
  MultiPolyQ generator_part(std::size_t i) const;

  void prune();
  bool operator==(const SymRealPoly& o) const { return nvars == o.nvars && terms == o.terms; }
};

SymRealPoly operator+(const SymRealPoly& a, const SymRealPoly& b);
SymRealPoly operator-(const SymRealPoly& a, const SymRealPoly& b);
SymRealPoly operator*(const mpq_class& s, const SymRealPoly& a);
// product of a rational polynomial with a symbolic-coefficient polynomial
SymRealPoly operator*(const MultiPolyQ& p, const SymRealPoly& a);

}  // namespace nfdyn

#endif
