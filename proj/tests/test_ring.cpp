#include <doctest.h>

#include <random>

#include "nfdyn/errors.hpp"
#include "nfdyn/presets.hpp"
#include "nfdyn/ring.hpp"

using namespace nfdyn;

namespace {

AlgebraicNumber elem(const NumberFieldSpec& f, std::vector<long> coords) {
  AlgebraicNumber a;
  for (long c : coords) a.coords.emplace_back(c);
  a.coords.resize(f.degree, mpq_class(0));
  return a;
}

}  // namespace

TEST_CASE("make_field rejects bad input") {
  CHECK_THROWS_AS(make_field(QPoly(QVec{mpq_class(1), mpq_class(2)})), NotMonic);
  CHECK_THROWS_AS(make_field(QPoly(QVec{mpq_class(1, 2), mpq_class(0), mpq_class(1)})),
                  NotMonic);
  // x^2 - 1 is reducible over every F_p
  CHECK_THROWS_AS(make_field(QPoly(QVec{mpq_class(-1), mpq_class(0), mpq_class(1)})),
                  NotIrreducible);
}

TEST_CASE("structure constants multiply correctly") {
  NumberFieldSpec f = make_preset_field("sqrt2");
  AlgebraicNumber theta = generator(f);
  AlgebraicNumber two = mul(theta, theta, f);
  CHECK(two == elem(f, {2, 0}));
  NumberFieldSpec g = make_preset_field("gaussian");
  CHECK(mul(generator(g), generator(g), g) == elem(g, {-1, 0}));
  NumberFieldSpec c = make_preset_field("cubic");
  // theta^3 = theta + 1
  AlgebraicNumber t2 = mul(generator(c), generator(c), c);
  CHECK(mul(t2, generator(c), c) == elem(c, {1, 1, 0}));
}

TEST_CASE("mult matrix agrees with multiplication") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> coeff(-9, 9);
  for (const auto& preset : field_presets()) {
    NumberFieldSpec f = make_field(preset.min_poly);
    for (int trial = 0; trial < 20; ++trial) {
      AlgebraicNumber a = algebraic_zero(f), b = algebraic_zero(f);
      for (std::size_t i = 0; i < f.degree; ++i) {
        a.coords[i] = coeff(rng);
        b.coords[i] = coeff(rng);
      }
      CHECK(mul(mult_matrix(a, f), b.coords) == mul(a, b, f).coords);
    }
  }
}

TEST_CASE("minimal polynomial annihilates its element") {
  NumberFieldSpec f = make_preset_field("cubic");
  AlgebraicNumber a = elem(f, {1, 2, -1});
  QPoly m = min_poly_of(a, f);
  // evaluate m at a through Horner over K
  AlgebraicNumber acc = algebraic_zero(f);
  for (std::size_t i = m.c.size(); i > 0; --i) {
    acc = mul(acc, a, f);
    acc = add(acc, from_rational(m.c[i - 1], f));
  }
  CHECK(acc.is_zero());
  CHECK(min_poly_of(from_rational(mpq_class(3), f), f).degree() == 1);
}

TEST_CASE("conjugate negation criterion") {
  NumberFieldSpec s2 = make_preset_field("sqrt2");
  CHECK(conjugates_negate(generator(s2), s2));                // sqrt2, -sqrt2
  CHECK_FALSE(conjugates_negate(elem(s2, {1, 1}), s2));       // 1 + sqrt2
  NumberFieldSpec g = make_preset_field("gaussian");
  CHECK(conjugates_negate(generator(g), g));                  // i, -i
  CHECK_FALSE(conjugates_negate(from_rational(2, g), g));
  CHECK_THROWS_AS(conjugates_negate(algebraic_zero(g), g), ZeroInput);
}

TEST_CASE("norm and residues") {
  NumberFieldSpec f = make_preset_field("gaussian");
  AlgebraicNumber r = elem(f, {1, 1});  // 1 + i, norm 2
  CHECK(norm_abs(r, f) == 2);
  CHECK(residues(r, f).size() == 2);
  AlgebraicNumber three = from_rational(3, f);
  CHECK(norm_abs(three, f) == 9);
  auto res = residues(three, f);
  CHECK(res.size() == 9);
  for (const auto& x : res) CHECK(x.is_integral());
  CHECK_THROWS_AS(residues(algebraic_zero(f), f), ZeroDivisor);
}

TEST_CASE("subgroup membership") {
  NumberFieldSpec f = make_preset_field("sqrt2");
  AlgebraicNumber r = generator(f);  // sqrt2 O_K
  CHECK(subgroup_membership(elem(f, {2, 0}), r, f));   // 2 = sqrt2 * sqrt2
  CHECK(subgroup_membership(elem(f, {0, 1}), r, f));
  CHECK_FALSE(subgroup_membership(elem(f, {1, 0}), r, f));
  CHECK_THROWS_AS(subgroup_membership(elem(f, {1, 0}), algebraic_zero(f), f), ZeroDivisor);
}

TEST_CASE("residue count equals norm for random divisors") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> coeff(-3, 3);
  for (const auto& name : {"gaussian", "sqrt2"}) {
    NumberFieldSpec f = make_preset_field(name);
    int done = 0;
    while (done < 5) {
      AlgebraicNumber r = algebraic_zero(f);
      for (std::size_t i = 0; i < f.degree; ++i) r.coords[i] = coeff(rng);
      if (r.is_zero()) continue;
      mpz_class n = norm_abs(r, f);
      if (n > 60) continue;
      CHECK(mpz_class(residues(r, f).size()) == n);
      ++done;
    }
  }
}
