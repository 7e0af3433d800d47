#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"

#include "bfree/error.hpp"
#include "bfree/numtheory.hpp"
#include "bfree/pattern.hpp"

namespace bfree::test {

inline constexpr std::uint64_t kSeed = 20240611;

inline BSpec small_squares() { return validate_bspec({4, 9, 25, 49}); }
inline BSpec degenerate() { return validate_bspec({2, 9, 25, 49}); }

inline FinitePattern set(std::vector<Int> s) { return FinitePattern(std::move(s)); }

// Brute-force admissibility straight from the definition, every b in B.
inline bool admissible_oracle(const std::vector<Int>& s, const BSpec& B) {
  for (Int b : B.elements()) {
    std::vector<bool> seen(static_cast<std::size_t>(b), false);
    Int hit = 0;
    for (Int x : s) {
      auto r = static_cast<std::size_t>(((x % b) + b) % b);
      if (!seen[r]) {
        seen[r] = true;
        ++hit;
      }
    }
    if (hit == b) return false;
  }
  return true;
}

inline std::vector<Int> random_subset(std::mt19937_64& rng, Int lo, Int hi, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Int> s;
  for (Int x = lo; x <= hi; ++x) {
    if (coin(rng)) s.push_back(x);
  }
  return s;
}

}  // namespace bfree::test

#define CHECK_ERROR_CODE(expr, ecode)                           \
  do {                                                          \
    bool thrown_ = false;                                       \
    try {                                                       \
      (void)(expr);                                             \
    } catch (const ::bfree::Error& e_) {                        \
      thrown_ = true;                                           \
      CHECK_MESSAGE(e_.code() == (ecode), e_.what());           \
    }                                                           \
    CHECK_MESSAGE(thrown_, "expected an error from " #expr);    \
  } while (0)
