#include "nfdyn/symreal.hpp"

#include <cassert>

namespace nfdyn {

SymbolicReal SymbolicReal::generator_term(std::size_t index, const mpq_class& coeff) {
  SymbolicReal s;
  if (coeff != 0) s.terms[index] = coeff;
  return s;
}

bool SymbolicReal::equal_mod1(const SymbolicReal& o) const {
  if (terms != o.terms) return false;
  mpq_class diff = q0 - o.q0;
  return diff.get_den() == 1;
}

void SymbolicReal::prune() {
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second == 0)
      it = terms.erase(it);
    else
      ++it;
  }
}

double SymbolicReal::to_double(const GeneratorSet& gens) const {
  mpf_class f(0, 256);
  mpf_set_q(f.get_mpf_t(), q0.get_mpq_t());
  for (const auto& [i, c] : terms) {
    assert(i < gens.size());
    mpf_class cc(0, 256), ga(0, 256);
    mpf_set_q(cc.get_mpf_t(), c.get_mpq_t());
    mpf_set_q(ga.get_mpf_t(), gens[i].value.a.get_mpq_t());
    if (gens[i].value.b != 0) {
      mpf_class s(0, 256), bb(0, 256);
      mpf_set_ui(s.get_mpf_t(), gens[i].value.disc);
      mpf_sqrt(s.get_mpf_t(), s.get_mpf_t());
      mpf_set_q(bb.get_mpf_t(), gens[i].value.b.get_mpq_t());
      ga += bb * s;
    }
    f += cc * ga;
  }
  return f.get_d();
}

double SymbolicReal::frac_double(const GeneratorSet& gens) const {
  mpf_class f(0, 256);
  mpf_set_q(f.get_mpf_t(), q0.get_mpq_t());
  for (const auto& [i, c] : terms) {
    assert(i < gens.size());
    mpf_class cc(0, 256), ga(0, 256);
    mpf_set_q(cc.get_mpf_t(), c.get_mpq_t());
    mpf_set_q(ga.get_mpf_t(), gens[i].value.a.get_mpq_t());
    if (gens[i].value.b != 0) {
      mpf_class s(0, 256), bb(0, 256);
      mpf_set_ui(s.get_mpf_t(), gens[i].value.disc);
      mpf_sqrt(s.get_mpf_t(), s.get_mpf_t());
      mpf_set_q(bb.get_mpf_t(), gens[i].value.b.get_mpq_t());
      ga += bb * s;
    }
    f += cc * ga;
  }
  mpf_class fl(0, 256);
  mpf_floor(fl.get_mpf_t(), f.get_mpf_t());
  f -= fl;
  double r = f.get_d();
  if (r >= 1.0) r -= 1.0;
  if (r < 0.0) r += 1.0;
  return r;
}

SymbolicReal operator+(const SymbolicReal& x, const SymbolicReal& y) {
  SymbolicReal r = x;
  r.q0 += y.q0;
  for (const auto& [i, c] : y.terms) r.terms[i] += c;
  r.prune();
  return r;
}

SymbolicReal operator-(const SymbolicReal& x, const SymbolicReal& y) {
  SymbolicReal r = x;
  r.q0 -= y.q0;
  for (const auto& [i, c] : y.terms) r.terms[i] -= c;
  r.prune();
  return r;
}

SymbolicReal operator-(const SymbolicReal& x) {
  SymbolicReal r;
  r.q0 = -x.q0;
  for (const auto& [i, c] : x.terms) r.terms[i] = -c;
  return r;
}

SymbolicReal operator*(const mpq_class& s, const SymbolicReal& x) {
  SymbolicReal r;
  if (s == 0) return r;
  r.q0 = s * x.q0;
  for (const auto& [i, c] : x.terms) r.terms[i] = s * c;
  return r;
}

SymRealPoly SymRealPoly::zero(std::size_t nvars) {
  SymRealPoly p;
  p.nvars = nvars;
  return p;
}

SymRealPoly SymRealPoly::constant(std::size_t nvars, SymbolicReal v) {
  SymRealPoly p = zero(nvars);
  if (!v.is_zero()) p.terms[Expo(nvars, 0)] = std::move(v);
  return p;
}

SymRealPoly SymRealPoly::from_rational(const MultiPolyQ& p) {
  SymRealPoly r = zero(p.nvars);
  for (const auto& [e, c] : p.terms) r.terms[e] = SymbolicReal(c);
  return r;
}

SymRealPoly SymRealPoly::scaled(const MultiPolyQ& p, const SymbolicReal& coeff) {
  SymRealPoly r = zero(p.nvars);
  for (const auto& [e, c] : p.terms) {
    SymbolicReal v = c * coeff;
    if (!v.is_zero()) r.terms[e] = std::move(v);
  }
  return r;
}

bool SymRealPoly::is_constant() const {
  return terms.empty() || (terms.size() == 1 && terms.begin()->first == Expo(nvars, 0));
}

SymbolicReal SymRealPoly::constant_term() const {
  auto it = terms.find(Expo(nvars, 0));
  return it == terms.end() ? SymbolicReal() : it->second;
}

SymbolicReal SymRealPoly::eval(const QVec& point) const {
  assert(point.size() == nvars);
  SymbolicReal r;
  for (const auto& [e, c] : terms) {
    mpq_class m(1);
    for (std::size_t i = 0; i < nvars; ++i)
      for (unsigned k = 0; k < e[i]; ++k) m *= point[i];
    r = r + m * c;
  }
  return r;
}

MultiPolyQ SymRealPoly::rational_part() const {
  MultiPolyQ p = MultiPolyQ::zero(nvars);
  for (const auto& [e, c] : terms)
    if (c.q0 != 0) p.terms[e] = c.q0;
  return p;
}

MultiPolyQ SymRealPoly::generator_part(std::size_t i) const {
  MultiPolyQ p = MultiPolyQ::zero(nvars);
  for (const auto& [e, c] : terms) {
    auto it = c.terms.find(i);
    if (it != c.terms.end() && it->second != 0) p.terms[e] = it->second;
  }
  return p;
}

void SymRealPoly::prune() {
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second.is_zero())
      it = terms.erase(it);
    else
      ++it;
  }
}

SymRealPoly operator+(const SymRealPoly& a, const SymRealPoly& b) {
  assert(a.nvars == b.nvars);
  SymRealPoly r = a;
  for (const auto& [e, c] : b.terms) r.terms[e] = r.terms.count(e) ? r.terms[e] + c : c;
  r.prune();
  return r;
}

SymRealPoly operator-(const SymRealPoly& a, const SymRealPoly& b) {
  assert(a.nvars == b.nvars);
  SymRealPoly r = a;
  for (const auto& [e, c] : b.terms) r.terms[e] = r.terms.count(e) ? r.terms[e] - c : -c;
  r.prune();
  return r;
}

SymRealPoly operator*(const mpq_class& s, const SymRealPoly& a) {
  SymRealPoly r = SymRealPoly::zero(a.nvars);
  if (s == 0) return r;
  for (const auto& [e, c] : a.terms) r.terms[e] = s * c;
  return r;
}

SymRealPoly operator*(const MultiPolyQ& p, const SymRealPoly& a) {
  assert(p.nvars == a.nvars);
  SymRealPoly r = SymRealPoly::zero(a.nvars);
  for (const auto& [ep, cp] : p.terms)
    for (const auto& [ea, ca] : a.terms) {
      SymRealPoly::Expo e = ep;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += ea[i];
      SymbolicReal add = cp * ca;
      r.terms[e] = r.terms.count(e) ? r.terms[e] + add : add;
    }
  r.prune();
  return r;
}

}  // namespace nfdyn
