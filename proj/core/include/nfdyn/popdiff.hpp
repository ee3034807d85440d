#ifndef NFDYN_POPDIFF_HPP
#define NFDYN_POPDIFF_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nfdyn/multipoly.hpp"

namespace nfdyn {

// Subset of the cyclic grid Z_N^d, d <= 3. Rows along the innermost axis are
// padded to whole 64-bit words so shifted intersections reduce to word rotates.
struct GridSet {
  unsigned d = 1;
  unsigned long N = 1;
  std::vector<std::uint64_t> words;

  static GridSet empty(unsigned d, unsigned long N);
  static GridSet full(unsigned d, unsigned long N);

  unsigned long words_per_row() const { return (N + 63) / 64; }
  unsigned long rows() const;
  unsigned long cells() const;  // N^d

  bool get(const std::vector<unsigned long>& x) const;
  void set(const std::vector<unsigned long>& x, bool value);

  unsigned long popcount() const;
  mpq_class density() const;
};

// |{x : x + v_i in E for all i}| cyclically; word-level rotate-and-AND kernel.
unsigned long intersection_count(const GridSet& E, const std::vector<std::vector<long>>& shifts);

// reference implementation: plain nested loops
unsigned long intersection_count_naive(const GridSet& E,
                                       const std::vector<std::vector<long>>& shifts);

struct ConfigurationCountReport {
  std::vector<long> ns;
  std::vector<unsigned long> counts;
  double threshold = 0.0;          // (delta^{k+1} - eps) N^d
  std::vector<long> popular;       // n != 0 with count strictly above threshold
  long max_gap = 0;
  double density = 0.0;            // popular fraction among scanned n != 0
  double boundary_bound = 0.0;     // k * max|v| * N^{d-1} wraparound error bound
};

// family[i] is the d coordinate polynomials of v_i(n), univariate and Z-valued.
ConfigurationCountReport popular_differences(const GridSet& E,
                                             const std::vector<std::vector<MultiPolyQ>>& family,
                                             long n_lo, long n_hi, double eps);

// |n| <= sqrt(N), the default scan range
std::pair<long, long> default_range(unsigned long N);

GridSet interval_set(unsigned d, unsigned long N, unsigned long lo, unsigned long hi);
GridSet residue_class_set(unsigned d, unsigned long N, unsigned long mod,
                          const std::vector<unsigned long>& classes);
GridSet quadratic_residue_set(unsigned d, unsigned long N);
// iid density-delta set; throws ValidationError when the popcount falls outside
// the 4 sigma binomial concentration window
GridSet random_set(unsigned d, unsigned long N, const mpq_class& delta, std::uint64_t seed);

std::vector<std::pair<std::string, GridSet>> structured_instances(unsigned long N);

// raw dump: 16-byte header (magic "NFGS", u32 d, u32 N, u32 popcount), then
// packed row-major bits without padding
void export_bits(const GridSet& E, std::ostream& os);
GridSet import_bits(std::istream& is);

// run-length text: "NFGS-RLE d N" then run lengths, zeros first
void export_rle(const GridSet& E, std::ostream& os);
GridSet import_rle(std::istream& is);

}  // namespace nfdyn

#endif
