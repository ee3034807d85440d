#ifndef NFDYN_QPOLY_HPP
#define NFDYN_QPOLY_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "nfdyn/qlinalg.hpp"

namespace nfdyn {

// Univariate polynomial over Q, coefficients c[0] + c[1] x + ...
// Trailing zeros are always stripped; the zero polynomial has empty coefficients.
struct QPoly {
  QVec c;

  QPoly() = default;
  explicit QPoly(QVec coeffs) : c(std::move(coeffs)) { normalize(); }

  void normalize();
  bool is_zero() const { return c.empty(); }
  // degree of the zero polynomial is -1
  long degree() const { return static_cast<long>(c.size()) - 1; }
  mpq_class leading() const { return c.empty() ? mpq_class(0) : c.back(); }
  bool is_monic() const { return !c.empty() && c.back() == 1; }

  mpq_class eval(const mpq_class& x) const;
  QPoly derivative() const;
  // p(-x) with sign normalization factor applied by the caller if needed
  QPoly reflected() const;

  bool operator==(const QPoly& o) const { return c == o.c; }
};

QPoly operator+(const QPoly& a, const QPoly& b);
QPoly operator-(const QPoly& a, const QPoly& b);
QPoly operator*(const QPoly& a, const QPoly& b);
QPoly operator*(const mpq_class& s, const QPoly& a);

// quotient and remainder; divisor must be nonzero
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);

// monic gcd; gcd(0, 0) = 0
QPoly poly_gcd(QPoly a, QPoly b);

// monic p / gcd(p, p'); the radical for p a power of an irreducible
QPoly squarefree_part(const QPoly& p);

std::string to_string(const QPoly& p, const std::string& var = "x");

// Exhaustive irreducibility test of a monic integer polynomial over F_p (p small prime).
// Precondition: all coefficients integral, leading coefficient 1.
bool irreducible_mod_p(const QPoly& f, unsigned long p);

}  // namespace nfdyn

#endif
