#include "nfdyn/popdiff.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "nfdyn/errors.hpp"

namespace nfdyn {

namespace {

void validate_shape(unsigned d, unsigned long N) {
  if (d < 1 || d > 3) throw ValidationError("grid dimension must be 1..3");
  if (N < 1) throw ValidationError("grid side must be positive");
  double cells = std::pow(static_cast<double>(N), static_cast<double>(d));
  if (cells > 4294967296.0) throw ValidationError("grid too large");
}

unsigned long ipow(unsigned long N, unsigned e) {
  unsigned long r = 1;
  for (unsigned i = 0; i < e; ++i) r *= N;
  return r;
}

}  // namespace

GridSet GridSet::empty(unsigned d, unsigned long N) {
  validate_shape(d, N);
  GridSet s;
  s.d = d;
  s.N = N;
  s.words.assign(s.rows() * s.words_per_row(), 0);
  return s;
}

GridSet GridSet::full(unsigned d, unsigned long N) {
  GridSet s = empty(d, N);
  const unsigned long wpr = s.words_per_row();
  for (unsigned long r = 0; r < s.rows(); ++r)
    for (unsigned long w = 0; w < wpr; ++w) {
      unsigned long bits = std::min<unsigned long>(64, N - 64 * w);
      s.words[r * wpr + w] = bits == 64 ? ~0ull : (1ull << bits) - 1;
    }
  return s;
}

unsigned long GridSet::rows() const { return ipow(N, d - 1); }
unsigned long GridSet::cells() const { return ipow(N, d); }

bool GridSet::get(const std::vector<unsigned long>& x) const {
  assert(x.size() == d);
  unsigned long r = 0;
  for (std::size_t i = x.size(); i > 1; --i) r = r * N + x[i - 1];
  return (words[r * words_per_row() + x[0] / 64] >> (x[0] % 64)) & 1;
}

void GridSet::set(const std::vector<unsigned long>& x, bool value) {
  assert(x.size() == d);
  unsigned long r = 0;
  for (std::size_t i = x.size(); i > 1; --i) r = r * N + x[i - 1];
  std::uint64_t& w = words[r * words_per_row() + x[0] / 64];
  std::uint64_t bit = 1ull << (x[0] % 64);
  if (value)
    w |= bit;
  else
    w &= ~bit;
}

unsigned long GridSet::popcount() const {
  unsigned long c = 0;
  for (std::uint64_t w : words) c += static_cast<unsigned long>(std::popcount(w));
  return c;
}

mpq_class GridSet::density() const {
  mpq_class q(static_cast<long>(popcount()), 1);
  q /= mpq_class(static_cast<unsigned long>(cells()), 1);
  return q;
}

namespace {

// bits pos..pos+cnt-1 of a padded row; pad bits read as zero
std::uint64_t read_span(const std::uint64_t* row, unsigned long wpr, unsigned long pos,
                        unsigned cnt) {
  unsigned long w = pos >> 6;
  unsigned off = pos & 63;
  std::uint64_t v = w < wpr ? row[w] >> off : 0;
  if (off != 0 && cnt > 64 - off && w + 1 < wpr) v |= row[w + 1] << (64 - off);
  if (cnt < 64) v &= (1ull << cnt) - 1;
  return v;
}

// 64 bits of the N-bit circular row starting at position p
std::uint64_t circ64(const std::uint64_t* row, unsigned long wpr, unsigned long N,
                     unsigned long p) {
  unsigned first = static_cast<unsigned>(std::min<unsigned long>(64, N - p));
  std::uint64_t v = read_span(row, wpr, p, first);
  if (first < 64) v |= read_span(row, wpr, 0, 64 - first) << first;
  return v;
}

std::vector<std::vector<unsigned long>> reduce_shifts(
    const GridSet& E, const std::vector<std::vector<long>>& shifts) {
  std::vector<std::vector<unsigned long>> out;
  for (const auto& v : shifts) {
    if (v.size() != E.d) throw ValidationError("shift dimension mismatch");
    std::vector<unsigned long> w(E.d);
    for (unsigned i = 0; i < E.d; ++i) {
      long r = v[i] % static_cast<long>(E.N);
      if (r < 0) r += static_cast<long>(E.N);
      w[i] = static_cast<unsigned long>(r);
    }
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

unsigned long intersection_count(const GridSet& E,
                                 const std::vector<std::vector<long>>& shifts) {
  auto red = reduce_shifts(E, shifts);
  const unsigned long wpr = E.words_per_row();
  const unsigned long nrows = E.rows();
  std::vector<std::uint64_t> acc = E.words;
  for (const auto& v : red) {
    const unsigned long s = v[0];
    for (unsigned long r = 0; r < nrows; ++r) {
      // outer coordinates of the source row, shifted cyclically
      unsigned long src;
      if (E.d == 1) {
        src = 0;
      } else if (E.d == 2) {
        src = (r + v[1]) % E.N;
      } else {
        unsigned long x1 = r % E.N, x2 = r / E.N;
        src = ((x2 + v[2]) % E.N) * E.N + (x1 + v[1]) % E.N;
      }
      const std::uint64_t* srow = E.words.data() + src * wpr;
      std::uint64_t* arow = acc.data() + r * wpr;
      for (unsigned long w = 0; w < wpr; ++w)
        arow[w] &= circ64(srow, wpr, E.N, (64 * w + s) % E.N);
    }
  }
  unsigned long c = 0;
  for (std::uint64_t w : acc) c += static_cast<unsigned long>(std::popcount(w));
  return c;
}

unsigned long intersection_count_naive(const GridSet& E,
                                       const std::vector<std::vector<long>>& shifts) {
  auto red = reduce_shifts(E, shifts);
  unsigned long count = 0;
  std::vector<unsigned long> x(E.d, 0), y(E.d, 0);
  for (;;) {
    if (E.get(x)) {
      bool all = true;
      for (const auto& v : red) {
        for (unsigned i = 0; i < E.d; ++i) y[i] = (x[i] + v[i]) % E.N;
        if (!E.get(y)) {
          all = false;
          break;
        }
      }
      if (all) ++count;
    }
    unsigned i = 0;
    while (i < E.d) {
      if (++x[i] < E.N) break;
      x[i] = 0;
      ++i;
    }
    if (i == E.d) break;
  }
  return count;
}

std::pair<long, long> default_range(unsigned long N) {
  long s = static_cast<long>(std::sqrt(static_cast<double>(N)));
  return {-s, s};
}

ConfigurationCountReport popular_differences(
    const GridSet& E, const std::vector<std::vector<MultiPolyQ>>& family, long n_lo,
    long n_hi, double eps) {
  if (eps <= 0.0) throw ValidationError("epsilon must be positive");
  if (n_lo > n_hi) throw EmptyRange();
  const unsigned k = static_cast<unsigned>(family.size());
  ConfigurationCountReport rep;
  double delta = E.density().get_d();
  rep.threshold = (std::pow(delta, static_cast<double>(k + 1)) - eps) *
                  static_cast<double>(E.cells());
  const double effective = std::max(rep.threshold, 0.0);

  unsigned long max_mag = 0;
  for (long n = n_lo; n <= n_hi; ++n) {
    std::vector<std::vector<long>> shifts;
    for (const auto& member : family) {
      if (member.size() != E.d) throw ValidationError("family coordinate count mismatch");
      std::vector<long> v(E.d);
      for (unsigned i = 0; i < E.d; ++i) {
        mpq_class val = member[i].eval(QVec{mpq_class(n)});
        if (val.get_den() != 1) throw ValidationError("family member is not Z-valued");
        mpz_class r;
        mpz_class mod(static_cast<long>(E.N));
        mpz_fdiv_r(r.get_mpz_t(), val.get_num().get_mpz_t(), mod.get_mpz_t());
        v[i] = r.get_si();
        unsigned long uv = static_cast<unsigned long>(v[i]);
        max_mag = std::max(max_mag, std::min(uv, E.N - uv));
      }
      shifts.push_back(std::move(v));
    }
    rep.ns.push_back(n);
    rep.counts.push_back(intersection_count(E, shifts));
    if (n != 0 && static_cast<double>(rep.counts.back()) > effective)
      rep.popular.push_back(n);
  }

  long prev = n_lo - 1;
  for (long n : rep.popular) {
    rep.max_gap = std::max(rep.max_gap, n - prev);
    prev = n;
  }
  rep.max_gap = std::max(rep.max_gap, n_hi + 1 - prev);
  long scanned = (n_hi - n_lo + 1) - (n_lo <= 0 && 0 <= n_hi ? 1 : 0);
  rep.density = scanned > 0 ? static_cast<double>(rep.popular.size()) /
                                  static_cast<double>(scanned)
                            : 0.0;
  rep.boundary_bound = static_cast<double>(k) * static_cast<double>(max_mag) *
                       std::pow(static_cast<double>(E.N), static_cast<double>(E.d - 1));
  return rep;
}

GridSet interval_set(unsigned d, unsigned long N, unsigned long lo, unsigned long hi) {
  GridSet s = GridSet::empty(d, N);
  std::vector<unsigned long> x(d, 0);
  for (;;) {
    if (x[0] >= lo && x[0] < hi) s.set(x, true);
    unsigned i = 0;
    while (i < d) {
      if (++x[i] < N) break;
      x[i] = 0;
      ++i;
    }
    if (i == d) break;
  }
  return s;
}

GridSet residue_class_set(unsigned d, unsigned long N, unsigned long mod,
                          const std::vector<unsigned long>& classes) {
  if (mod == 0) throw ValidationError("zero modulus");
  GridSet s = GridSet::empty(d, N);
  std::vector<unsigned long> x(d, 0);
  for (;;) {
    unsigned long r = x[0] % mod;
    if (std::find(classes.begin(), classes.end(), r) != classes.end()) s.set(x, true);
    unsigned i = 0;
    while (i < d) {
      if (++x[i] < N) break;
      x[i] = 0;
      ++i;
    }
    if (i == d) break;
  }
  return s;
}

GridSet quadratic_residue_set(unsigned d, unsigned long N) {
  std::vector<char> qr(N, 0);
  for (unsigned long y = 0; y < N; ++y) qr[(y * y) % N] = 1;
  GridSet s = GridSet::empty(d, N);
  std::vector<unsigned long> x(d, 0);
  for (;;) {
    if (qr[x[0]]) s.set(x, true);
    unsigned i = 0;
    while (i < d) {
      if (++x[i] < N) break;
      x[i] = 0;
      ++i;
    }
    if (i == d) break;
  }
  return s;
}

GridSet random_set(unsigned d, unsigned long N, const mpq_class& delta,
                   std::uint64_t seed) {
  if (delta < 0 || delta > 1) throw ValidationError("density out of range");
  GridSet s = GridSet::empty(d, N);
  std::mt19937_64 rng(seed);
  const double dd = delta.get_d();
  std::vector<unsigned long> x(d, 0);
  for (;;) {
    // top-53-bit uniform draw; avoids distribution objects for portability
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u < dd) s.set(x, true);
    unsigned i = 0;
    while (i < d) {
      if (++x[i] < N) break;
      x[i] = 0;
      ++i;
    }
    if (i == d) break;
  }
  double m = static_cast<double>(s.cells());
  double expected = m * dd;
  double window = 4.0 * std::sqrt(m * dd * (1.0 - dd));
  if (std::abs(static_cast<double>(s.popcount()) - expected) > window)
    throw ValidationError("random set failed the concentration check");
  return s;
}

std::vector<std::pair<std::string, GridSet>> structured_instances(unsigned long N) {
  std::vector<std::pair<std::string, GridSet>> lib;
  lib.emplace_back("interval-half", interval_set(1, N, 0, N / 2));
  lib.emplace_back("residue-0mod3", residue_class_set(1, N, 3, {0}));
  lib.emplace_back("quadratic-residues", quadratic_residue_set(1, N));
  lib.emplace_back("random-half", random_set(1, N, mpq_class(1, 2), 0x5EED));
  return lib;
}

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
  char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8),
               static_cast<char>(v >> 16), static_cast<char>(v >> 24)};
  os.write(b, 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  if (!is) throw ParseError("truncated grid header");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

template <typename Fn>
void for_each_cell(const GridSet& E, Fn&& fn) {
  std::vector<unsigned long> x(E.d, 0);
  for (;;) {
    fn(E.get(x));
    unsigned i = 0;
    while (i < E.d) {
      if (++x[i] < E.N) break;
      x[i] = 0;
      ++i;
    }
    if (i == E.d) break;
  }
}

}  // namespace

void export_bits(const GridSet& E, std::ostream& os) {
  os.write("NFGS", 4);
  put_u32(os, E.d);
  put_u32(os, static_cast<std::uint32_t>(E.N));
  put_u32(os, static_cast<std::uint32_t>(E.popcount()));
  unsigned char cur = 0;
  unsigned nbits = 0;
  for_each_cell(E, [&](bool bit) {
    if (bit) cur |= static_cast<unsigned char>(1u << nbits);
    if (++nbits == 8) {
      os.put(static_cast<char>(cur));
      cur = 0;
      nbits = 0;
    }
  });
  if (nbits > 0) os.put(static_cast<char>(cur));
}

GridSet import_bits(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::string(magic, 4) != "NFGS") throw ParseError("bad grid magic");
  std::uint32_t d = get_u32(is);
  std::uint32_t n = get_u32(is);
  std::uint32_t pop = get_u32(is);
  GridSet s = GridSet::empty(d, n);
  unsigned long total = s.cells();
  std::vector<unsigned long> x(s.d, 0);
  unsigned char cur = 0;
  for (unsigned long idx = 0; idx < total; ++idx) {
    if (idx % 8 == 0) {
      int c = is.get();
      if (c == std::char_traits<char>::eof()) throw ParseError("truncated grid bits");
      cur = static_cast<unsigned char>(c);
    }
    if ((cur >> (idx % 8)) & 1) s.set(x, true);
    unsigned i = 0;
    while (i < s.d) {
      if (++x[i] < s.N) break;
      x[i] = 0;
      ++i;
    }
  }
  if (s.popcount() != pop) throw ParseError("grid popcount mismatch");
  return s;
}

void export_rle(const GridSet& E, std::ostream& os) {
  os << "NFGS-RLE " << E.d << " " << E.N << "\n";
  bool run_value = false;  // runs alternate starting with zeros
  unsigned long run = 0;
  bool first = true;
  for_each_cell(E, [&](bool bit) {
    if (bit == run_value) {
      ++run;
    } else {
      os << (first ? "" : " ") << run;
      first = false;
      run_value = bit;
      run = 1;
    }
  });
  os << (first ? "" : " ") << run << "\n";
}

GridSet import_rle(std::istream& is) {
  std::string tag;
  unsigned d = 0;
  unsigned long n = 0;
  if (!(is >> tag >> d >> n) || tag != "NFGS-RLE") throw ParseError("bad RLE header");
  GridSet s = GridSet::empty(d, n);
  unsigned long total = s.cells();
  unsigned long idx = 0;
  bool value = false;
  std::vector<unsigned long> x(s.d, 0);
  unsigned long run = 0;
  while (idx < total && (is >> run)) {
    for (unsigned long j = 0; j < run; ++j) {
      if (idx >= total) throw ParseError("RLE runs exceed grid size");
      if (value) s.set(x, true);
      ++idx;
      unsigned i = 0;
      while (i < s.d) {
        if (++x[i] < s.N) break;
        x[i] = 0;
        ++i;
      }
    }
    value = !value;
  }
  if (idx != total) throw ParseError("RLE runs do not cover the grid");
  return s;
}

}  // namespace nfdyn
