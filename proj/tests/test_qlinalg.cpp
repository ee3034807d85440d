#include <doctest.h>

#include "nfdyn/qlinalg.hpp"

using namespace nfdyn;

namespace {

QMat qmat(std::size_t r, std::size_t c, std::vector<long> v) {
  QMat m(r, c);
  for (std::size_t i = 0; i < v.size(); ++i) m.a[i] = mpq_class(v[i]);
  return m;
}

ZMat zmat(std::size_t r, std::size_t c, std::vector<long> v) {
  ZMat m(r, c);
  for (std::size_t i = 0; i < v.size(); ++i) m.a[i] = mpz_class(v[i]);
  return m;
}

}  // namespace

TEST_CASE("determinant and rank") {
  CHECK(det(qmat(2, 2, {1, 2, 3, 4})) == mpq_class(-2));
  CHECK(det(QMat::identity(4)) == 1);
  CHECK(rank(qmat(2, 2, {1, 2, 2, 4})) == 1);
  CHECK(rank(qmat(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1})) == 3);
  CHECK(rank(QMat(3, 3)) == 0);
}

TEST_CASE("solve") {
  auto x = solve(qmat(2, 2, {2, 1, 1, 1}), QVec{mpq_class(3), mpq_class(2)});
  REQUIRE(x);
  CHECK((*x)[0] == 1);
  CHECK((*x)[1] == 1);
  CHECK_FALSE(solve(qmat(2, 2, {1, 1, 1, 1}), QVec{mpq_class(0), mpq_class(1)}));
}

TEST_CASE("nullspace") {
  auto ns = nullspace(qmat(1, 3, {1, 1, 1}));
  REQUIRE(ns.size() == 2);
  for (const auto& v : ns) CHECK(v[0] + v[1] + v[2] == 0);
  CHECK(nullspace(QMat::identity(3)).empty());
}

TEST_CASE("charpoly via Faddeev-LeVerrier") {
  // [[2,1],[1,2]]: x^2 - 4x + 3
  QVec c = charpoly(qmat(2, 2, {2, 1, 1, 2}));
  REQUIRE(c.size() == 3);
  CHECK(c[0] == 3);
  CHECK(c[1] == -4);
  CHECK(c[2] == 1);
}

TEST_CASE("hnf of a nonsingular integer matrix") {
  ZMat h = hnf(zmat(2, 2, {2, 1, 0, 2}));
  // lower triangular, positive diagonal, reduced below
  CHECK(h(0, 1) == 0);
  CHECK(h(0, 0) > 0);
  CHECK(h(1, 1) > 0);
  CHECK(h(1, 0) >= 0);
  CHECK(h(1, 0) < h(1, 1));
  CHECK(h(0, 0) * h(1, 1) == 4);  // |det| preserved
}

TEST_CASE("integer kernel is saturated") {
  // kernel of [1 2 3] contains primitive vectors only
  auto k = integer_kernel(zmat(1, 3, {1, 2, 3}));
  REQUIRE(k.size() == 2);
  for (const auto& v : k) CHECK(v[0] + 2 * v[1] + 3 * v[2] == 0);
}

TEST_CASE("primitive integer vector") {
  ZVec v = primitive_integer(QVec{mpq_class(2, 3), mpq_class(4, 3)});
  CHECK(v[0] == 1);
  CHECK(v[1] == 2);
}

TEST_CASE("saturate_span canonical bases") {
  // span{(2,4)} saturates to the primitive direction (1,2)
  auto b = saturate_span({QVec{mpq_class(2), mpq_class(4)}}, 2);
  REQUIRE(b.size() == 1);
  CHECK(b[0][0] * 2 == b[0][1]);
  // two generating sets of the same plane agree after canonicalization
  auto b1 = saturate_span({QVec{mpq_class(1), mpq_class(0)}, QVec{mpq_class(0), mpq_class(1)}}, 2);
  auto b2 = saturate_span({QVec{mpq_class(1), mpq_class(1)}, QVec{mpq_class(1), mpq_class(-1)}}, 2);
  CHECK(b1 == b2);
}

TEST_CASE("annihilator") {
  auto ann = annihilator({QVec{mpq_class(1), mpq_class(2)}}, 2);
  REQUIRE(ann.size() == 1);
  CHECK(ann[0][0] + 2 * ann[0][1] == 0);
  CHECK(annihilator({}, 2).size() == 2);
}
