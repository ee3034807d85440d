#include "nfdyn/quadreal.hpp"

#include <cassert>
#include <cmath>

#include "nfdyn/errors.hpp"

namespace nfdyn {

namespace {

// square discriminants collapse to rationals so mixed-disc arithmetic stays closed
bool is_square(unsigned long d, unsigned long* root) {
  mpz_class z(static_cast<long>(d));
  if (mpz_perfect_square_p(z.get_mpz_t())) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
    *root = r.get_ui();
    return true;
  }
  return false;
}

}  // namespace

QuadReal::QuadReal(mpq_class a_, mpq_class b_, unsigned long disc_)
    : a(std::move(a_)), b(std::move(b_)), disc(disc_) {
  unsigned long root = 0;
  if (b != 0 && is_square(disc, &root)) {
    a += b * mpq_class(root);
    b = 0;
  }
  if (b == 0) disc = 0;
}

int QuadReal::sign() const {
  int sa = sgn(a);
  int sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 with b^2 * disc
  mpq_class lhs = a * a;
  mpq_class rhs = b * b * mpq_class(disc);
  int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  return (c > 0) ? sa : sb;
}

bool QuadReal::operator==(const QuadReal& o) const { return (*this - o).sign() == 0; }
bool QuadReal::operator<(const QuadReal& o) const { return (*this - o).sign() < 0; }

mpz_class QuadReal::floor() const {
  if (b == 0) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), a.get_num().get_mpz_t(), a.get_den().get_mpz_t());
    return f;
  }
  double guess = to_double();
  mpz_class g(std::floor(guess));
  // exact adjustment around the floating-point guess
  while ((*this - QuadReal(mpq_class(g))).sign() < 0) g -= 1;
  while ((*this - QuadReal(mpq_class(g + 1))).sign() >= 0) g += 1;
  return g;
}

QuadReal QuadReal::frac() const {
  QuadReal r = *this - QuadReal(mpq_class(floor()));
  assert(r.sign() >= 0);
  return r;
}

double QuadReal::to_double() const {
  mpf_class f(0, 256);
  mpf_set_q(f.get_mpf_t(), a.get_mpq_t());
  if (b != 0) {
    mpf_class s(0, 256), bb(0, 256);
    mpf_set_ui(s.get_mpf_t(), disc);
    mpf_sqrt(s.get_mpf_t(), s.get_mpf_t());
    mpf_set_q(bb.get_mpf_t(), b.get_mpq_t());
    f += bb * s;
  }
  return f.get_d();
}

QuadReal operator+(const QuadReal& x, const QuadReal& y) {
  if (x.b != 0 && y.b != 0 && x.disc != y.disc)
    throw ValidationError("QuadReal: mixed discriminants");
  unsigned long disc = x.b != 0 ? x.disc : y.disc;
  return QuadReal(x.a + y.a, x.b + y.b, disc);
}

QuadReal operator-(const QuadReal& x, const QuadReal& y) { return x + (-y); }

QuadReal operator-(const QuadReal& x) { return QuadReal(-x.a, -x.b, x.disc); }

QuadReal operator*(const mpq_class& s, const QuadReal& x) {
  return QuadReal(s * x.a, s * x.b, x.disc);
}

}  // namespace nfdyn
