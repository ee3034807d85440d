#ifndef NFDYN_QLINALG_HPP
#define NFDYN_QLINALG_HPP

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace nfdyn {

using QVec = std::vector<mpq_class>;
using ZVec = std::vector<mpz_class>;

// Dense row-major rational matrix. Small sizes only; everything is exact.
struct QMat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<mpq_class> a;

  QMat() = default;
  QMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, mpq_class(0)) {}

  mpq_class& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const mpq_class& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static QMat identity(std::size_t n);
  bool operator==(const QMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

struct ZMat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<mpz_class> a;

  ZMat() = default;
  ZMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, mpz_class(0)) {}

  mpz_class& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static ZMat identity(std::size_t n);
  bool operator==(const ZMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

QMat mul(const QMat& x, const QMat& y);
QVec mul(const QMat& x, const QVec& v);
ZMat mul(const ZMat& x, const ZMat& y);
ZVec mul(const ZMat& x, const ZVec& v);

QMat to_rational(const ZMat& m);

mpq_class det(QMat m);          // by value: eliminated in place
std::size_t rank(QMat m);

// Unique solution of a nonsingular square system; nullopt if singular or inconsistent.
std::optional<QVec> solve(QMat m, QVec b);

// Basis of { v : M v = 0 } over Q.
std::vector<QVec> nullspace(QMat m);

// Monic characteristic polynomial coefficients c_0..c_{n-1}, 1 (Faddeev-LeVerrier).
QVec charpoly(const QMat& m);

// Column-style Hermite normal form of a nonsingular square integer matrix:
// lower triangular, positive diagonal, 0 <= h(i,j) < h(i,i) for j < i.
ZMat hnf(const ZMat& m);

// Saturated basis of { v in Z^cols : M v = 0 } (columns of the result, one per vector).
std::vector<ZVec> integer_kernel(const ZMat& m);

// Scale a rational vector to a primitive integer vector (gcd 1), preserving direction.
ZVec primitive_integer(const QVec& v);

// Saturated HNF basis of Z^m intersected with the rational span of the given vectors.
// Result is canonical: comparing two spans reduces to comparing these bases.
std::vector<ZVec> saturate_span(const std::vector<QVec>& span, std::size_t dim);

// Saturated basis of the integer annihilator { c in Z^dim : c . v = 0 for all v in span }.
std::vector<ZVec> annihilator(const std::vector<QVec>& span, std::size_t dim);

}  // namespace nfdyn

#endif
