#include "nfdyn/qpoly.hpp"

#include <cassert>
#include <sstream>

namespace nfdyn {

void QPoly::normalize() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

mpq_class QPoly::eval(const mpq_class& x) const {
  mpq_class r(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

QPoly QPoly::derivative() const {
  QVec d;
  for (std::size_t i = 1; i < c.size(); ++i)
    d.push_back(c[i] * mpq_class(static_cast<unsigned long>(i)));
  return QPoly(std::move(d));
}

QPoly QPoly::reflected() const {
  QVec d = c;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (i % 2 == 1) d[i] = -d[i];
  return QPoly(std::move(d));
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  QVec r(std::max(a.c.size(), b.c.size()), mpq_class(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
  return QPoly(std::move(r));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  QVec r(std::max(a.c.size(), b.c.size()), mpq_class(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
  return QPoly(std::move(r));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  QVec r(a.c.size() + b.c.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
  return QPoly(std::move(r));
}

QPoly operator*(const mpq_class& s, const QPoly& a) {
  QVec r = a.c;
  for (auto& x : r) x *= s;
  return QPoly(std::move(r));
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  assert(!b.is_zero());
  QPoly rem = a;
  if (a.degree() < b.degree()) return {QPoly(), rem};
  QVec q(a.degree() - b.degree() + 1, mpq_class(0));
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    std::size_t shift = rem.degree() - b.degree();
    mpq_class f = rem.leading() / b.leading();
    q[shift] = f;
    for (std::size_t i = 0; i < b.c.size(); ++i) rem.c[shift + i] -= f * b.c[i];
    rem.normalize();
  }
  return {QPoly(std::move(q)), rem};
}

QPoly poly_gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero() && a.leading() != 1) a = (1 / a.leading()) * a;
  return a;
}

QPoly squarefree_part(const QPoly& p) {
  if (p.is_zero()) return p;
  QPoly g = poly_gcd(p, p.derivative());
  QPoly q = divmod(p, g).first;
  if (!q.is_zero() && q.leading() != 1) q = (1 / q.leading()) * q;
  return q;
}

std::string to_string(const QPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = p.degree(); i >= 0; --i) {
    const mpq_class& ci = p.c[i];
    if (ci == 0) continue;
    mpq_class a = ci;
    if (!first) {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool unit_coeff = (a == 1 || a == -1) && i > 0;
    if (!unit_coeff)
      os << a.get_str();
    else if (a == -1)
      os << "-";
    if (i > 0) {
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

namespace {

using FpPoly = std::vector<long>;  // coefficients mod p, trailing zeros stripped

void fp_norm(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f, long p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  // reduce mod f (monic)
  long df = static_cast<long>(f.size()) - 1;
  for (long i = static_cast<long>(r.size()) - 1; i >= df; --i) {
    long coef = r[i] % p;
    if (coef == 0) continue;
    for (long j = 0; j <= df; ++j)
      r[i - df + j] = ((r[i - df + j] - coef * f[j]) % p + p * p) % p;
  }
  r.resize(df);
  fp_norm(r);
  return r;
}

// x^(p^e) mod (f, p) via repeated frobenius by square-and-multiply on exponent p
FpPoly fp_frobenius_power(const FpPoly& f, long p, unsigned e) {
  FpPoly x = {0, 1};
  fp_norm(x);
  FpPoly cur = x;
  for (unsigned step = 0; step < e; ++step) {
    // cur := cur^p mod f
    FpPoly result = {1};
    FpPoly base = cur;
    long exp = p;
    while (exp > 0) {
      if (exp & 1) result = fp_mulmod(result, base, f, p);
      base = fp_mulmod(base, base, f, p);
      exp >>= 1;
    }
    cur = result;
  }
  return cur;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, long p) {
  auto inv = [&](long x) {
    long r = 1, e = p - 2, base = ((x % p) + p) % p;
    while (e > 0) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return r;
  };
  while (!b.empty()) {
    // a mod b
    long db = static_cast<long>(b.size()) - 1;
    long lead_inv = inv(b.back());
    FpPoly r = a;
    for (long i = static_cast<long>(r.size()) - 1; i >= db; --i) {
      long coef = r[i] * lead_inv % p;
      if (coef == 0) continue;
      for (long j = 0; j <= db; ++j)
        r[i - db + j] = ((r[i - db + j] - coef * b[j]) % p + p * p) % p;
    }
    if (!r.empty()) r.resize(db);
    fp_norm(r);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

bool irreducible_mod_p(const QPoly& f, unsigned long p) {
  assert(f.is_monic());
  const long pl = static_cast<long>(p);
  const unsigned d = static_cast<unsigned>(f.degree());
  if (d == 0) return false;
  FpPoly fp(d + 1);
  for (unsigned i = 0; i <= d; ++i) {
    assert(f.c[i].get_den() == 1);
    mpz_class r = f.c[i].get_num() % pl;
    long v = r.get_si();
    fp[i] = ((v % pl) + pl) % pl;
  }
  if (d == 1) return true;
  FpPoly x = {0, 1};
  // x^(p^d) == x mod f
  FpPoly xpd = fp_frobenius_power(fp, pl, d);
  FpPoly diff = xpd;
  diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
  diff[1] = ((diff[1] - 1) % pl + pl) % pl;
  fp_norm(diff);
  if (!diff.empty()) return false;
  // gcd(x^(p^(d/q)) - x, f) == 1 for each prime q | d
  for (unsigned q = 2; q <= d; ++q) {
    if (d % q != 0) continue;
    bool is_prime = true;
    for (unsigned t = 2; t * t <= q; ++t)
      if (q % t == 0) is_prime = false;
    if (!is_prime) continue;
    FpPoly xe = fp_frobenius_power(fp, pl, d / q);
    FpPoly g = xe;
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = ((g[1] - 1) % pl + pl) % pl;
    fp_norm(g);
    FpPoly gg = fp_gcd(fp, g, pl);
    if (gg.size() != 1) return false;
  }
  return true;
}

}  // namespace nfdyn
