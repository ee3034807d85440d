#include <doctest.h>

#include <random>
#include <sstream>

#include "nfdyn/errors.hpp"
#include "nfdyn/popdiff.hpp"

using namespace nfdyn;

namespace {

MultiPolyQ nvar(unsigned deg, long coeff = 1) {
  MultiPolyQ p = MultiPolyQ::zero(1);
  p.terms[{deg}] = mpq_class(coeff);
  return p;
}

GridSet random_grid(unsigned d, unsigned long n, std::uint64_t seed) {
  GridSet g = GridSet::empty(d, n);
  std::mt19937_64 rng(seed);
  std::vector<unsigned long> x(d, 0);
  for (;;) {
    if (rng() & 1) g.set(x, true);
    unsigned i = 0;
    while (i < d) {
      if (++x[i] < n) break;
      x[i] = 0;
      ++i;
    }
    if (i == d) break;
  }
  return g;
}

}  // namespace

TEST_CASE("grid basics") {
  GridSet g = GridSet::empty(2, 10);
  CHECK(g.popcount() == 0);
  g.set({3, 7}, true);
  CHECK(g.get({3, 7}));
  CHECK_FALSE(g.get({7, 3}));
  g.set({3, 7}, false);
  CHECK(g.popcount() == 0);
  CHECK(GridSet::full(2, 10).popcount() == 100);
  CHECK(GridSet::full(1, 100).density() == 1);
  CHECK_THROWS_AS(GridSet::empty(4, 8), ValidationError);
}

TEST_CASE("trivial intersection counts") {
  GridSet full = GridSet::full(2, 12);
  CHECK(intersection_count(full, {{5, 3}, {-2, 7}}) == 144);
  GridSet g = random_grid(1, 100, 1);
  CHECK(intersection_count(g, {{0}}) == g.popcount());
  CHECK(intersection_count(g, {}) == g.popcount());
}

TEST_CASE("fast kernel equals naive exhaustively for small grids") {
  for (unsigned d = 1; d <= 2; ++d)
    for (unsigned long n : {3ul, 5ul, 16ul}) {
      GridSet g = random_grid(d, n, 17 * n + d);
      std::vector<long> v1(d, 0), v2(d, 0);
      // all shift pairs over the full grid of shift vectors in axis 0 and 1
      for (long a = 0; a < static_cast<long>(n); ++a)
        for (long b = 0; b < static_cast<long>(n); ++b) {
          v1[0] = a;
          v2[d - 1] = b;
          CHECK(intersection_count(g, {v1, v2}) == intersection_count_naive(g, {v1, v2}));
        }
    }
}

TEST_CASE("fast kernel equals naive on random large instances") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    unsigned d = 1 + trial % 2;
    unsigned long n = 64 + (rng() % 120);
    GridSet g = random_grid(d, n, rng());
    std::vector<std::vector<long>> shifts;
    for (int i = 0; i < 2; ++i) {
      std::vector<long> v(d);
      for (unsigned j = 0; j < d; ++j)
        v[j] = static_cast<long>(rng() % (3 * n)) - static_cast<long>(n);
      shifts.push_back(v);
    }
    CHECK(intersection_count(g, shifts) == intersection_count_naive(g, shifts));
  }
}

TEST_CASE("count invariances") {
  GridSet g = random_grid(2, 33, 5);
  std::vector<std::vector<long>> shifts{{4, 9}, {11, 2}};
  unsigned long base = intersection_count(g, shifts);
  // permutation of the shift set
  CHECK(intersection_count(g, {{11, 2}, {4, 9}}) == base);
  // cyclic translation of the whole set
  GridSet moved = GridSet::empty(2, 33);
  std::vector<unsigned long> x(2, 0);
  for (x[0] = 0; x[0] < 33; ++x[0])
    for (x[1] = 0; x[1] < 33; ++x[1])
      if (g.get(x)) moved.set({(x[0] + 7) % 33, (x[1] + 20) % 33}, true);
  CHECK(intersection_count(moved, shifts) == base);
  // a single nonzero shift is bounded by one layer: count <= |E|
  CHECK(intersection_count(g, {{1, 0}}) <= g.popcount());
}

TEST_CASE("popular differences") {
  GridSet full = GridSet::full(1, 64);
  auto rep = popular_differences(full, {{{nvar(1)}}, {{nvar(2)}}}, -8, 8, 0.1);
  CHECK(rep.popular.size() == 16);  // every n except 0
  CHECK(rep.max_gap == 2);          // only the hole at n = 0

  GridSet none = GridSet::empty(1, 64);
  auto rep0 = popular_differences(none, {{{nvar(1)}}}, -8, 8, 0.1);
  CHECK(rep0.popular.empty());
  CHECK(rep0.density == 0.0);

  CHECK_THROWS_AS(popular_differences(full, {{{nvar(1)}}}, 1, 0, 0.1), EmptyRange);
  CHECK_THROWS_AS(popular_differences(full, {{{nvar(1)}}}, -2, 2, 0.0), ValidationError);
}

TEST_CASE("structured instance densities") {
  CHECK(interval_set(1, 64, 0, 32).density() == mpq_class(1, 2));
  CHECK(residue_class_set(1, 63, 3, {0}).density() == mpq_class(1, 3));
  GridSet qr = quadratic_residue_set(1, 17);
  CHECK(qr.popcount() == 9);  // 8 nonzero residues plus 0
  GridSet rnd = random_set(1, 4096, mpq_class(1, 2), 42);
  double delta = rnd.density().get_d();
  CHECK(delta > 0.45);
  CHECK(delta < 0.55);
  auto lib = structured_instances(60);
  CHECK(lib.size() == 4);
}

TEST_CASE("bit dump round trip") {
  GridSet g = random_grid(2, 21, 9);
  std::stringstream buf;
  export_bits(g, buf);
  GridSet back = import_bits(buf);
  CHECK(back.d == g.d);
  CHECK(back.N == g.N);
  CHECK(back.words == g.words);

  std::stringstream bad("XXXX....");
  CHECK_THROWS_AS(import_bits(bad), ParseError);
}

TEST_CASE("rle round trip") {
  GridSet g = random_grid(1, 100, 13);
  std::stringstream buf;
  export_rle(g, buf);
  GridSet back = import_rle(buf);
  CHECK(back.words == g.words);

  GridSet empty = GridSet::empty(2, 9);
  std::stringstream buf2;
  export_rle(empty, buf2);
  CHECK(import_rle(buf2).popcount() == 0);

  std::stringstream bad("NFGS-RLE 1 10\n3 4\n");
  CHECK_THROWS_AS(import_rle(bad), ParseError);
}
