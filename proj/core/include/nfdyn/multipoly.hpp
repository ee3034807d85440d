#ifndef NFDYN_MULTIPOLY_HPP
#define NFDYN_MULTIPOLY_HPP

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "nfdyn/qlinalg.hpp"

namespace nfdyn {

// Multivariate polynomial over Q in x_1..x_nvars, stored as a sparse
// exponent-vector -> coefficient map. Zero coefficients are never stored.
struct MultiPolyQ {
  using Expo = std::vector<unsigned>;

  std::size_t nvars = 0;
  std::map<Expo, mpq_class> terms;

  static MultiPolyQ zero(std::size_t nvars);
  static MultiPolyQ constant(std::size_t nvars, const mpq_class& q);
  static MultiPolyQ variable(std::size_t nvars, std::size_t i);

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const;
  mpq_class constant_term() const;
  unsigned total_degree() const;
  unsigned degree_in(std::size_t i) const;

  mpq_class eval(const QVec& point) const;
  MultiPolyQ partial(std::size_t i) const;

  void prune();  // drop zero coefficients

  bool operator==(const MultiPolyQ& o) const { return nvars == o.nvars && terms == o.terms; }
};

MultiPolyQ operator+(const MultiPolyQ& a, const MultiPolyQ& b);
MultiPolyQ operator-(const MultiPolyQ& a, const MultiPolyQ& b);
MultiPolyQ operator*(const MultiPolyQ& a, const MultiPolyQ& b);
MultiPolyQ operator*(const mpq_class& s, const MultiPolyQ& a);

// Generalized binomial C(p, j) = p (p-1) ... (p-j+1) / j! as a polynomial.
MultiPolyQ binomial_of(const MultiPolyQ& p, unsigned j);

std::string to_string(const MultiPolyQ& p);

}  // namespace nfdyn

#endif
