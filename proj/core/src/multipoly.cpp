#include "nfdyn/multipoly.hpp"

#include <cassert>
#include <sstream>

namespace nfdyn {

MultiPolyQ MultiPolyQ::zero(std::size_t nvars) {
  MultiPolyQ p;
  p.nvars = nvars;
  return p;
}

MultiPolyQ MultiPolyQ::constant(std::size_t nvars, const mpq_class& q) {
  MultiPolyQ p = zero(nvars);
  if (q != 0) p.terms[Expo(nvars, 0)] = q;
  return p;
}

MultiPolyQ MultiPolyQ::variable(std::size_t nvars, std::size_t i) {
  assert(i < nvars);
  MultiPolyQ p = zero(nvars);
  Expo e(nvars, 0);
  e[i] = 1;
  p.terms[e] = 1;
  return p;
}

bool MultiPolyQ::is_constant() const {
  return terms.empty() || (terms.size() == 1 && terms.begin()->first == Expo(nvars, 0));
}

mpq_class MultiPolyQ::constant_term() const {
  auto it = terms.find(Expo(nvars, 0));
  return it == terms.end() ? mpq_class(0) : it->second;
}

unsigned MultiPolyQ::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms) {
    unsigned t = 0;
    for (unsigned x : e) t += x;
    d = std::max(d, t);
  }
  return d;
}

unsigned MultiPolyQ::degree_in(std::size_t i) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms) d = std::max(d, e[i]);
  return d;
}

mpq_class MultiPolyQ::eval(const QVec& point) const {
  assert(point.size() == nvars);
  mpq_class r(0);
  for (const auto& [e, c] : terms) {
    mpq_class t = c;
    for (std::size_t i = 0; i < nvars; ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
    r += t;
  }
  return r;
}

MultiPolyQ MultiPolyQ::partial(std::size_t i) const {
  assert(i < nvars);
  MultiPolyQ r = zero(nvars);
  for (const auto& [e, c] : terms) {
    if (e[i] == 0) continue;
    Expo d = e;
    d[i] -= 1;
    r.terms[d] += c * mpq_class(e[i]);
  }
  r.prune();
  return r;
}

void MultiPolyQ::prune() {
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second == 0)
      it = terms.erase(it);
    else
      ++it;
  }
}

MultiPolyQ operator+(const MultiPolyQ& a, const MultiPolyQ& b) {
  assert(a.nvars == b.nvars);
  MultiPolyQ r = a;
  for (const auto& [e, c] : b.terms) r.terms[e] += c;
  r.prune();
  return r;
}

MultiPolyQ operator-(const MultiPolyQ& a, const MultiPolyQ& b) {
  assert(a.nvars == b.nvars);
  MultiPolyQ r = a;
  for (const auto& [e, c] : b.terms) r.terms[e] -= c;
  r.prune();
  return r;
}

MultiPolyQ operator*(const MultiPolyQ& a, const MultiPolyQ& b) {
  assert(a.nvars == b.nvars);
  MultiPolyQ r = MultiPolyQ::zero(a.nvars);
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      MultiPolyQ::Expo e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.terms[e] += ca * cb;
    }
  r.prune();
  return r;
}

MultiPolyQ operator*(const mpq_class& s, const MultiPolyQ& a) {
  if (s == 0) return MultiPolyQ::zero(a.nvars);
  MultiPolyQ r = a;
  for (auto& [e, c] : r.terms) c *= s;
  return r;
}

MultiPolyQ binomial_of(const MultiPolyQ& p, unsigned j) {
  MultiPolyQ r = MultiPolyQ::constant(p.nvars, 1);
  mpz_class fact(1);
  for (unsigned i = 0; i < j; ++i) {
    r = r * (p - MultiPolyQ::constant(p.nvars, mpq_class(i)));
    fact *= (i + 1);
  }
  return mpq_class(mpz_class(1), fact) * r;
}

std::string to_string(const MultiPolyQ& p) {
  if (p.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms) {
    mpq_class a = c;
    if (!first) {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool any_var = false;
    for (unsigned x : e)
      if (x) any_var = true;
    if (!any_var || !(a == 1)) os << a.get_str();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "x" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

}  // namespace nfdyn
