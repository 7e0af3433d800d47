#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bfree/numtheory.hpp"

namespace bfree {

/// Closed integer interval [lo, hi]; empty when hi < lo.
struct Interval {
  Int lo = 0;
  Int hi = -1;

  bool empty() const { return hi < lo; }
  Int length() const { return empty() ? 0 : hi - lo + 1; }
  bool contains(Int x) const { return lo <= x && x <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// 0/1 word whose first cell sits at absolute position `left`.
struct Word {
  Int left = 0;
  std::vector<std::uint8_t> bits;

  Int right() const { return left + static_cast<Int>(bits.size()) - 1; }
  Interval interval() const { return {left, right()}; }
  std::uint8_t at(Int pos) const {
    return (pos < left || pos > right()) ? 0 : bits[pos - left];
  }

  friend bool operator==(const Word&, const Word&) = default;
};

/// Finite subset of Z together with the window it was observed in.
class FinitePattern {
 public:
  FinitePattern() = default;
  /// Window defaults to the bounding interval of the support.
  explicit FinitePattern(std::vector<Int> support);
  FinitePattern(std::vector<Int> support, Interval window);

  static FinitePattern from_word(const Word& w);

  const std::vector<Int>& support() const { return support_; }
  const Interval& window() const { return window_; }
  std::size_t size() const { return support_.size(); }
  bool empty() const { return support_.empty(); }
  bool contains(Int x) const;

  Word to_word() const;
  FinitePattern translated(Int t) const;

  friend bool operator==(const FinitePattern&, const FinitePattern&) = default;

 private:
  std::vector<Int> support_;
  Interval window_{0, -1};
};

struct Violation {
  Int modulus = 0;
  std::vector<Int> covered;  // always 0..modulus-1

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct AdmissibilityVerdict {
  bool admissible = true;
  std::optional<Violation> violation;

  friend bool operator==(const AdmissibilityVerdict&,
                         const AdmissibilityVerdict&) = default;
};

/// Sorted set {u mod b : u in U}, residues in [0, b).
std::vector<Int> occupied_residues(const FinitePattern& U, Int b);

/// Checks card(U mod b) <= b-1 for each b in B; only b <= |U| can fail.
/// Reports the smallest violating modulus.
AdmissibilityVerdict is_admissible(const FinitePattern& U, const BSpec& B);

/// Admissibility of the word with bit i at position i, given as a bit mask.
/// Positions only matter modulo b, so this is translation-free.
bool mask_admissible(std::uint64_t mask, int length, const BSpec& B);

/// {n in [a, b] : no element of B divides n}, by sieving.
FinitePattern bfree_window(const BSpec& B, Interval range);

struct DensityEstimate {
  long double observed = 0;
  long double product = 1;
  Int count = 0;
  Int half_width = 0;
};

/// Observed density of V_B on [-N, N] against the truncated product.
DensityEstimate density_estimate(const BSpec& B, Int half_width);

/// Reflection in the origin.
FinitePattern reflect(const FinitePattern& U);

struct PeriodicityCertificate {
  Int modulus = 0;        // element of B coprime to the period
  Int window_length = 0;  // every window this long is non-admissible
};

/// For the t-periodic extension of a non-empty seed, finds b in B coprime
/// to t; any window of length b*t holds b consecutive terms of an
/// arithmetic progression with step t, hence every residue mod b.
PeriodicityCertificate periodicity_certificate(const FinitePattern& seed,
                                               Int period, const BSpec& B);

/// Restriction of seed + tZ to a window.
FinitePattern periodic_extension(const FinitePattern& seed, Int period,
                                 Interval window);

/// Parses "{n1,n2,...}" (window = bounding interval) or "0110@-3"
/// (word form, left endpoint optional, defaults to 0).
FinitePattern parse_pattern(std::string_view text);
std::string format_set(const FinitePattern& U);
std::string format_word(const FinitePattern& U);

}  // namespace bfree
