#include <doctest.h>

#include <cmath>
#include <complex>

#include "nfdyn/errors.hpp"
#include "nfdyn/torus.hpp"

using namespace nfdyn;

namespace {

ZMat zmat(std::size_t r, std::size_t c, std::vector<long> v) {
  ZMat m(r, c);
  for (std::size_t i = 0; i < v.size(); ++i) m.a[i] = mpz_class(v[i]);
  return m;
}

GeneratorSet sqrt2_gens() {
  return {{"sqrt2", QuadReal(mpq_class(0), mpq_class(1), 2)}};
}

SymbolicReal alpha_term(const mpq_class& c = 1) {
  return SymbolicReal::generator_term(0, c);
}

MultiPolyQ nvar(unsigned deg) {
  MultiPolyQ p = MultiPolyQ::zero(1);
  p.terms[{deg}] = 1;
  return p;
}

}  // namespace

TEST_CASE("system validation") {
  AffineUnipotentMap bad{zmat(2, 2, {2, 0, 0, 1}), SymVec(2)};
  CHECK_THROWS_AS(validate_system({bad}), NotUnipotent);
  AffineUnipotentMap upper{zmat(2, 2, {1, 1, 0, 1}), SymVec(2)};
  AffineUnipotentMap lower{zmat(2, 2, {1, 0, 1, 1}), SymVec(2)};
  CHECK_THROWS_AS(validate_system({upper, lower}), NonCommuting);
  CHECK_NOTHROW(validate_system({upper, upper}));
  // translations must satisfy (A_i - I) t_j = (A_j - I) t_i mod 1
  AffineUnipotentMap s1{zmat(2, 2, {1, 0, 2, 1}), {alpha_term(), alpha_term()}};
  AffineUnipotentMap s2{zmat(2, 2, {1, 0, 2, 1}), {SymbolicReal(mpq_class(1, 3)), SymbolicReal()}};
  CHECK_THROWS_AS(validate_system({s1, s2}), NonCommuting);
}

TEST_CASE("closed form orbit matches iteration") {
  // skew map (x, y) -> (x + a, y + 2x + a)
  AffineUnipotentMap skew{zmat(2, 2, {1, 0, 2, 1}), {alpha_term(), alpha_term()}};
  SymVec x(2);
  PolynomialTorusSequence u = closed_form_orbit({skew}, {nvar(1)}, x, sqrt2_gens());
  SymVec cur = x;
  for (long k = 0; k <= 6; ++k) {
    SymVec closed = u.eval_int({k});
    REQUIRE(closed.size() == 2);
    CHECK(closed[0] == cur[0]);
    CHECK(closed[1] == cur[1]);
    cur = nfdyn::apply(skew, cur);
  }
  // the orbit of 0 is (k a, k^2 a)
  SymVec at5 = u.eval_int({5});
  CHECK(at5[0] == alpha_term(5));
  CHECK(at5[1] == alpha_term(25));
}

TEST_CASE("closed form with polynomial exponent") {
  AffineUnipotentMap skew{zmat(2, 2, {1, 0, 2, 1}), {alpha_term(), alpha_term()}};
  SymVec x(2);
  // exponent n^2: position component is n^2 a, height (n^2)^2 a
  PolynomialTorusSequence u = closed_form_orbit({skew}, {nvar(2)}, x, sqrt2_gens());
  SymVec at3 = u.eval_int({3});
  CHECK(at3[0] == alpha_term(9));
  CHECK(at3[1] == alpha_term(81));
  // rejects non-Z-valued exponents
  MultiPolyQ half = MultiPolyQ::zero(1);
  half.terms[{1}] = mpq_class(1, 2);
  CHECK_THROWS_AS(closed_form_orbit({skew}, {half}, x, sqrt2_gens()), ValidationError);
}

TEST_CASE("orbit closure of a full-rank sequence") {
  PolynomialTorusSequence u;
  u.torus_dim = 2;
  u.nvars = 1;
  u.gens = sqrt2_gens();
  u.coords.assign(2, SymRealPoly::zero(1));
  u.coords[0].terms[{1}] = alpha_term();  // n a
  u.coords[1].terms[{2}] = alpha_term();  // n^2 a
  SubtorusCosetUnion c = orbit_closure(u);
  CHECK(c.v_basis.size() == 2);
  CHECK(c.v_annihilator.empty());
  CHECK(c.modulus == 1);
  CHECK(c.cosets.size() == 1);
}

TEST_CASE("orbit closure of a line with congruence structure") {
  PolynomialTorusSequence u;
  u.torus_dim = 2;
  u.nvars = 1;
  u.gens = sqrt2_gens();
  u.coords.assign(2, SymRealPoly::zero(1));
  u.coords[0].terms[{1}] = alpha_term();
  u.coords[1].terms[{1}] = alpha_term(2);
  u.coords[1].terms[{2}] = SymbolicReal(mpq_class(1, 2));  // + n^2 / 2
  SubtorusCosetUnion c = orbit_closure(u);
  REQUIRE(c.v_basis.size() == 1);
  CHECK(c.v_basis[0][0] * 2 == c.v_basis[0][1]);
  REQUIRE(c.v_annihilator.size() == 1);
  CHECK(c.modulus == 2);
  CHECK(c.cosets.size() == 2);  // n even vs odd height offsets
  CHECK(c.class_to_coset.size() == 2);
}

TEST_CASE("simultaneous triangularization") {
  ZMat a = zmat(2, 2, {3, -4, 1, -1});
  Triangularization tri = simultaneous_triangularize({a});
  REQUIRE(tri.B.size() == 1);
  CHECK(mul(a, tri.P) == mul(tri.P, tri.B[0]));
  CHECK(tri.B[0](1, 0) == 0);
  CHECK(tri.B[0](0, 0) == 1);
  CHECK(tri.B[0](1, 1) == 1);
  CHECK(det(to_rational(tri.P)) != 0);

  // a commuting pair, lower-triangular form
  ZMat b = mul(a, a);
  Triangularization low = simultaneous_triangularize({a, b}, true);
  for (std::size_t j = 0; j < 2; ++j) {
    const ZMat& m = j == 0 ? a : b;
    CHECK(mul(m, low.P) == mul(low.P, low.B[j]));
    CHECK(low.B[j](0, 1) == 0);
  }

  CHECK_THROWS_AS(simultaneous_triangularize({zmat(2, 2, {2, 0, 0, 1})}), NotUnipotent);
  ZMat u1 = zmat(2, 2, {1, 1, 0, 1}), u2 = zmat(2, 2, {1, 0, 1, 1});
  CHECK_THROWS_AS(simultaneous_triangularize({u1, u2}), NotCommuting);
}

TEST_CASE("weyl averages") {
  PolynomialTorusSequence u;
  u.torus_dim = 1;
  u.nvars = 1;
  u.coords.assign(1, SymRealPoly::zero(1));
  u.coords[0].terms[{1}] = SymbolicReal(mpq_class(3));     // 3n
  u.coords[0].terms[{0}] = SymbolicReal(mpq_class(1, 3));  // + 1/3

  // phase is constant mod 1: the average is exactly e(1/3)
  auto v = weyl_average(ZVec{mpz_class(1)}, u, FolnerBox::centered(1, 100));
  CHECK(std::abs(v.real() - std::cos(2 * 3.14159265358979323846 / 3)) < 1e-14);
  CHECK(std::abs(v.imag() - std::sin(2 * 3.14159265358979323846 / 3)) < 1e-14);

  // n/2 alternates: the centered average is 1/(2N+1)
  u.coords[0].terms.clear();
  u.coords[0].terms[{1}] = SymbolicReal(mpq_class(1, 2));
  auto w = weyl_average(ZVec{mpz_class(1)}, u, FolnerBox::centered(1, 50));
  CHECK(std::abs(w.real() - 1.0 / 101.0) < 1e-12);
  CHECK(std::abs(w.imag()) < 1e-12);

  // deterministic across thread counts
  u.gens = sqrt2_gens();
  u.coords[0].terms.clear();
  u.coords[0].terms[{2}] = alpha_term();
  auto t1 = weyl_average(ZVec{mpz_class(1)}, u, FolnerBox::centered(1, 20000), 1);
  auto t3 = weyl_average(ZVec{mpz_class(1)}, u, FolnerBox::centered(1, 20000), 3);
  CHECK(t1.real() == t3.real());
  CHECK(t1.imag() == t3.imag());

  FolnerBox empty;
  empty.ranges = {{3, 2}};
  CHECK_THROWS_AS(weyl_average(ZVec{mpz_class(1)}, u, empty), EmptyBox);
}

TEST_CASE("equidistribution report distinguishes structure") {
  PolynomialTorusSequence u;
  u.torus_dim = 2;
  u.nvars = 1;
  u.gens = sqrt2_gens();
  u.coords.assign(2, SymRealPoly::zero(1));
  u.coords[0].terms[{1}] = alpha_term();
  u.coords[1].terms[{1}] = alpha_term(2);
  SubtorusCosetUnion c = orbit_closure(u);
  EquidistributionReport rep = equidistribution_report(u, c, {500, 2000}, 2);
  CHECK(rep.all_pass);
  bool saw_structured = false;
  for (const auto& row : rep.rows) {
    if (row.character[0] == 2 && row.character[1] == -1) {
      saw_structured = true;
      CHECK(row.structured);
      // the character is constant on the orbit: measured exactly equals 1
      CHECK(std::abs(row.measured.back() - std::complex<double>(1.0, 0.0)) < 1e-12);
      CHECK(std::abs(row.predicted - std::complex<double>(1.0, 0.0)) < 1e-12);
    }
  }
  CHECK(saw_structured);
}
