#pragma once

#include <cstdint>
#include <vector>

#include "bfree/numtheory.hpp"

namespace bfree {

/// Counts fit in 64 bits for every length below this bound.
inline constexpr int kMaxCountableLength = 62;
inline constexpr int kDefaultLengthBound = 24;
inline constexpr int kMaxListedLength = 20;

struct CountOptions {
  int length_bound = kDefaultLengthBound;
  unsigned threads = 1;
};

/// |L_n|: subsets of {0,...,n-1} admissible for B. Depth-first over
/// positions with per-modulus residue coverage; only b <= n can be covered.
/// Throws LengthTooLarge above the configured bound.
std::uint64_t count_admissible_words(const BSpec& B, int n,
                                     const CountOptions& opts = {});

/// Reference count by testing all 2^n subsets (tests and cross-checks).
std::uint64_t count_admissible_words_naive(const BSpec& B, int n);

/// Admissible words of length n <= 20 as bit masks (bit i = position i),
/// in increasing mask order.
std::vector<std::uint32_t> admissible_words(const BSpec& B, int n);

enum class EntropyUnit { Nats, Bits };

struct EntropyReport {
  std::vector<int> lengths;
  std::vector<std::uint64_t> counts;
  std::vector<double> estimates;  // (1/n) log |L_n|
  double closed_form = 0;         // log(2) * prod (1 - 1/b)
  double density_factor = 0;      // prod (1 - 1/b)
  EntropyUnit unit = EntropyUnit::Nats;

  // |L_{m+n}| > |L_m| |L_n| pairs found; expected empty.
  std::vector<std::pair<int, int>> submultiplicativity_failures;
  bool nonincreasing = true;
  bool above_closed_form = true;
  // n with |L_n| < 2^|V_B in [0, n-1]| (hereditary subsets of the B-free word)
  std::vector<int> bfree_bound_failures;
};

EntropyReport entropy_report(const BSpec& B, int n_max,
                             EntropyUnit unit = EntropyUnit::Nats,
                             const CountOptions& opts = {});

/// log(2) * prod over B of (1 - 1/b), in the requested unit.
double closed_form_entropy(const BSpec& B, EntropyUnit unit = EntropyUnit::Nats);

/// closed_form(B1) / closed_form(B2).
double entropy_ratio(const BSpec& B1, const BSpec& B2);

}  // namespace bfree
