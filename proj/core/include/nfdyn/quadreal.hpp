#ifndef NFDYN_QUADREAL_HPP
#define NFDYN_QUADREAL_HPP

#include <gmpxx.h>

namespace nfdyn {

// Exact real of the form a + b sqrt(disc) with rational a, b and a fixed
// nonnegative integer discriminant. All comparisons and floors are exact;
// covers every shipped irrational (sqrt2, sqrt3, golden ratio, sqrt2 - 1).
// disc = 0 encodes a plain rational.
struct QuadReal {
  mpq_class a;
  mpq_class b;
  unsigned long disc = 0;

  QuadReal() = default;
  QuadReal(mpq_class rational) : a(std::move(rational)) {}  // NOLINT: implicit by design
  QuadReal(mpq_class a_, mpq_class b_, unsigned long disc_);

  bool is_rational() const { return b == 0; }
  int sign() const;
  mpz_class floor() const;
  QuadReal frac() const;  // this - floor(), in [0, 1)
  double to_double() const;

  bool operator==(const QuadReal& o) const;
  bool operator<(const QuadReal& o) const;
  bool operator<=(const QuadReal& o) const { return *this == o || *this < o; }
};

QuadReal operator+(const QuadReal& x, const QuadReal& y);
QuadReal operator-(const QuadReal& x, const QuadReal& y);
QuadReal operator-(const QuadReal& x);
QuadReal operator*(const mpq_class& s, const QuadReal& x);

}  // namespace nfdyn

#endif
