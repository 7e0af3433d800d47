#include "bfree/numtheory.hpp"

#include <algorithm>
#include <string>

#include "bfree/error.hpp"

namespace bfree {

namespace {

using Wide = __int128;

Int checked_pow(Int base, int exponent) {
  Wide acc = 1;
  for (int i = 0; i < exponent; ++i) {
    acc *= base;
    if (acc > static_cast<Wide>(INT64_MAX)) {
      throw Error(ErrorCode::Overflow,
                  std::to_string(base) + "^" + std::to_string(exponent));
    }
  }
  return static_cast<Int>(acc);
}

// Inverse of a modulo m, for gcd(a, m) = 1.
Int inverse_mod(Int a, Int m) {
  Wide old_r = mod(a, m), r = m;
  Wide old_s = 1, s = 0;
  while (r != 0) {
    Wide q = old_r / r;
    Wide tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  Wide out = old_s % m;
  if (out < 0) out += m;
  return static_cast<Int>(out);
}

}  // namespace

Int gcd(Int a, Int b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::vector<Int> primes_up_to(Int bound) {
  std::vector<Int> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  for (Int p = 2; p <= bound; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (Int q = p * p; q <= bound; q += p) composite[q] = true;
  }
  return out;
}

bool BSpec::contains(Int b) const {
  return std::binary_search(elements_.begin(), elements_.end(), b);
}

std::span<const Int> BSpec::elements_up_to(Int bound) const {
  auto end = std::upper_bound(elements_.begin(), elements_.end(), bound);
  return {elements_.data(),
          static_cast<std::size_t>(end - elements_.begin())};
}

long double BSpec::density_product() const {
  long double prod = 1.0L;
  for (Int b : elements_) prod *= 1.0L - 1.0L / static_cast<long double>(b);
  return prod;
}

BSpec validate_bspec(std::vector<Int> raw, Generator generator,
                     bool thin_declared) {
  if (raw.empty()) throw Error(ErrorCode::EmptySpec, "no elements");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == 1) {
      throw Error(ErrorCode::ContainsOne,
                  "1 in B leaves no B-free integers");
    }
    if (raw[i] < 1) {
      throw Error(ErrorCode::RepeatedOrUnordered,
                  "element " + std::to_string(raw[i]) + " is not > 1");
    }
    if (i > 0 && raw[i] <= raw[i - 1]) {
      throw Error(ErrorCode::RepeatedOrUnordered,
                  std::to_string(raw[i - 1]) + " before " +
                      std::to_string(raw[i]));
    }
  }
  if (generator.kind == GeneratorKind::PrimePowers) {
    if (generator.exponent < 2) {
      throw Error(ErrorCode::GeneratorMismatch, "prime-power exponent < 2");
    }
    std::vector<Int> expected;
    for (Int p : primes_up_to(generator.prime_bound)) {
      expected.push_back(checked_pow(p, generator.exponent));
    }
    if (expected != raw) {
      throw Error(ErrorCode::GeneratorMismatch,
                  "elements are not {p^" + std::to_string(generator.exponent) +
                      " : p <= " + std::to_string(generator.prime_bound) + "}");
    }
  }
  // powers of distinct primes are coprime; only other lists need the O(n^2) pass
  if (generator.kind != GeneratorKind::PrimePowers) {
    for (std::size_t i = 0; i < raw.size(); ++i) {
      for (std::size_t j = i + 1; j < raw.size(); ++j) {
        if (gcd(raw[i], raw[j]) != 1) {
          throw Error(ErrorCode::NotCoprime,
                      "(" + std::to_string(raw[i]) + "," +
                          std::to_string(raw[j]) + ")");
        }
      }
    }
  }
  BSpec out;
  out.elements_ = std::move(raw);
  out.generator_ = generator;
  out.thin_declared_ = thin_declared;
  return out;
}

BSpec prime_powers(int exponent, Int prime_bound, bool thin_declared) {
  std::vector<Int> raw;
  for (Int p : primes_up_to(prime_bound)) raw.push_back(checked_pow(p, exponent));
  return validate_bspec(std::move(raw),
                        {GeneratorKind::PrimePowers, exponent, prime_bound},
                        thin_declared);
}

CrtSolution crt_solve(std::span<const Congruence> system, Int cap) {
  CrtSolution acc{0, 1};
  for (const auto& c : system) {
    if (c.modulus < 1) {
      throw Error(ErrorCode::InvalidArgument,
                  "modulus " + std::to_string(c.modulus));
    }
    if (gcd(acc.modulus, c.modulus) != 1) {
      throw Error(ErrorCode::ModuliNotCoprime,
                  "modulus " + std::to_string(c.modulus) +
                      " shares a factor with " + std::to_string(acc.modulus));
    }
    Wide product = static_cast<Wide>(acc.modulus) * c.modulus;
    if (product > cap) {
      throw Error(ErrorCode::Overflow, "modulus product exceeds cap");
    }
    // x = acc.residue + acc.modulus * y with y = (r - acc.residue) / acc.modulus.
    Int r = mod(c.residue, c.modulus);
    Int diff = mod(r - acc.residue, c.modulus);
    Int inv = c.modulus == 1 ? 0 : inverse_mod(acc.modulus, c.modulus);
    Int y = static_cast<Int>(static_cast<Wide>(diff) * inv % c.modulus);
    Wide x = acc.residue + static_cast<Wide>(acc.modulus) * y;
    acc.modulus = static_cast<Int>(product);
    acc.residue = static_cast<Int>(x % product);
  }
  return acc;
}

Int find_coprime_element(const BSpec& B, Int t, const ElementPredicate& extra) {
  if (t < 1) throw Error(ErrorCode::InvalidArgument, "t must be >= 1");
  for (Int b : B.elements()) {
    if (gcd(b, t) == 1 && (!extra || extra(b))) return b;
  }
  throw Error(ErrorCode::NotFoundInTruncation,
              "no element coprime to " + std::to_string(t) +
                  " satisfying the side condition");
}

}  // namespace bfree
