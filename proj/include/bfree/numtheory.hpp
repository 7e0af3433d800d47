#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace bfree {

using Int = std::int64_t;

/// Default cap on CRT modulus products; exceeding it raises Overflow.
inline constexpr Int kDefaultModulusCap = Int{1} << 62;

enum class GeneratorKind { Explicit, PrimePowers, Custom };

struct Generator {
  GeneratorKind kind = GeneratorKind::Explicit;
  int exponent = 0;   // PrimePowers only
  Int prime_bound = 0;  // PrimePowers only

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// A finite, validated truncation of the set of moduli B.
///
/// Elements are > 1, strictly increasing and pairwise coprime. Thinness
/// (summable reciprocals) cannot be decided from a truncation and is only
/// carried along as declared metadata.
class BSpec {
 public:
  std::span<const Int> elements() const { return elements_; }
  const Generator& generator() const { return generator_; }
  bool thin_declared() const { return thin_declared_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(Int b) const;
  Int max_element() const { return elements_.back(); }

  /// Elements b <= bound, in increasing order.
  std::span<const Int> elements_up_to(Int bound) const;

  /// Product over the truncation of (1 - 1/b).
  long double density_product() const;

  friend bool operator==(const BSpec&, const BSpec&) = default;

 private:
  friend BSpec validate_bspec(std::vector<Int> raw, Generator generator,
                              bool thin_declared);
  std::vector<Int> elements_;
  Generator generator_;
  bool thin_declared_ = false;
};

/// Throws Error{EmptySpec | RepeatedOrUnordered | ContainsOne | NotCoprime |
/// GeneratorMismatch}.
BSpec validate_bspec(std::vector<Int> raw, Generator generator = {},
                     bool thin_declared = false);

/// {p^exponent : p prime, p <= prime_bound}.
BSpec prime_powers(int exponent, Int prime_bound, bool thin_declared = true);

std::vector<Int> primes_up_to(Int bound);

Int gcd(Int a, Int b);

/// Residue of a modulo m in [0, m).
inline Int mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

struct Congruence {
  Int residue = 0;
  Int modulus = 1;

  friend bool operator==(const Congruence&, const Congruence&) = default;
};

struct CrtSolution {
  Int residue = 0;
  Int modulus = 1;

  friend bool operator==(const CrtSolution&, const CrtSolution&) = default;
};

/// Unique x in [0, prod m_i) with x = r_i mod m_i. Residues are reduced on
/// entry. Throws ModuliNotCoprime, Overflow (product beyond `cap`).
CrtSolution crt_solve(std::span<const Congruence> system,
                      Int cap = kDefaultModulusCap);

using ElementPredicate = std::function<bool(Int)>;

/// Smallest b in B with gcd(b, t) = 1 that also satisfies `extra`.
/// Throws NotFoundInTruncation when the truncation is exhausted.
Int find_coprime_element(const BSpec& B, Int t,
                         const ElementPredicate& extra = {});

}  // namespace bfree
