#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bfree/numtheory.hpp"
#include "bfree/pattern.hpp"

namespace bfree {

inline constexpr int kDefaultRadiusCap = 3;
inline constexpr int kDefaultPeriodCap = 4;

/// Output bits of one local map, indexed by window. A window of radius rho
/// is read left to right with the leftmost cell as the most significant
/// bit, so index = sum_d x[j + d] * 2^(rho - d) for d in [-rho, rho].
using Table = std::vector<std::uint8_t>;

/// k local maps of common radius rho. The map applied at absolute
/// position j is maps[j mod k], so the family commutes with S^k.
class BlockCodeFamily {
 public:
  BlockCodeFamily(int period, int radius);
  BlockCodeFamily(int period, int radius, std::vector<Table> maps);

  int period() const { return period_; }
  int radius() const { return radius_; }
  int window_size() const { return 2 * radius_ + 1; }
  std::size_t table_size() const { return std::size_t{1} << window_size(); }

  const std::vector<Table>& maps() const { return maps_; }
  const Table& map(Int position) const {
    return maps_[static_cast<std::size_t>(mod(position, period_))];
  }
  std::uint8_t entry(int phase, std::uint32_t window) const {
    return maps_[phase][window];
  }
  void set_entry(int phase, std::uint32_t window, std::uint8_t value) {
    maps_[phase][window] = value;
  }

  friend bool operator==(const BlockCodeFamily&,
                         const BlockCodeFamily&) = default;

 private:
  int period_;
  int radius_;
  std::vector<Table> maps_;
};

/// Window index with a single 1 at offset d in [-rho, rho].
inline std::uint32_t singleton_window(int radius, int offset) {
  return std::uint32_t{1} << (radius - offset);
}

/// Cell at offset d in [-rho, rho] of a window index.
inline std::uint8_t window_cell(std::uint32_t window, int radius, int offset) {
  return (window >> (radius - offset)) & 1u;
}

/// Offsets d with a 1 in the window, increasing.
std::vector<int> window_support(std::uint32_t window, int radius);

/// Window with cells reversed (reflection about its center).
std::uint32_t mirror_window(std::uint32_t window, int radius);

/// Image of a word on [a, b] on the shrunken interval [a + rho, b - rho].
/// Throws WindowTooShort when b - a < 2 rho.
Word apply_family(const BlockCodeFamily& F, const Word& w);

/// Image of the finite configuration U (zeros outside U). The window of the
/// result is U's window widened by rho on both sides, which holds every
/// output position whose neighbourhood meets U's window.
FinitePattern apply_to_pattern(const BlockCodeFamily& F, const FinitePattern& U);

/// All maps read the cell at offset +t, realizing S^t (U -> U - t).
/// Throws RadiusTooSmall when |t| > rho.
BlockCodeFamily shift_family(int t, int period, int radius);

/// Conjugation by the reflection R: x -> -x. The returned family G satisfies
/// G = R F R, with maps reversed and phases negated.
BlockCodeFamily reflect_family(const BlockCodeFamily& F);

/// Same action on configurations, re-expressed at a larger radius and a
/// multiple of the period.
BlockCodeFamily widen_family(const BlockCodeFamily& F, int period, int radius);

enum class SingletonKind { Singleton, Empty, MultiPoint };

struct SingletonImage {
  SingletonKind kind = SingletonKind::Singleton;
  std::vector<Int> offsets;  // image of {m} minus m, increasing
};

struct SingletonProfile {
  bool empty_set_moved = false;     // some map sends the zero window to 1
  std::vector<SingletonImage> images;  // one per phase m = 0..k-1

  bool all_singletons() const;
  /// t(m) for every phase, if all images are singletons.
  std::optional<std::vector<Int>> translations() const;
  /// First pair of phases m < m' with m + t(m) = m' + t(m') mod k.
  std::optional<std::pair<int, int>> incongruence_violation(int period) const;
};

/// Applies F to each {m}, m = 0..k-1, on a zero background.
SingletonProfile singleton_profile(const BlockCodeFamily& F);

/// Smallest k' dividing k such that the maps are k'-periodic in the index.
int minimal_period(const BlockCodeFamily& F);

struct InjectivityResult {
  bool injective = true;
  int phase = 0;
  // Two distinct admissible words (bit i = position phase + i) with equal
  // images, when not injective.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> counterexample;
};

/// Tests that finite admissible configurations supported in a length-n
/// window map to distinct images, for each placement of the window's left
/// end modulo k. Images are compared on the common window widened by rho.
/// Throws LengthTooLarge for n > 20, PreconditionViolated for n < 2 rho + 1.
InjectivityResult injective_on_language(const BlockCodeFamily& F,
                                        const BSpec& B, int n);

/// Bit-exact hex form: entries packed little-endian (entry i is bit i%8 of
/// byte i/8), bytes written as two lowercase hex digits.
std::string table_to_hex(const Table& table);
Table table_from_hex(const std::string& hex, std::size_t entries);

}  // namespace bfree
