#include "bfree/language.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <string>

#include "bfree/error.hpp"
#include "bfree/pattern.hpp"

namespace bfree {

namespace {

// Coverage state for moduli b <= n; each b <= 62 so a 64-bit mask suffices.
// Pairwise coprime moduli below 63 number at most 18.
constexpr std::size_t kMaxModuli = 18;

struct Coverage {
  std::array<int, kMaxModuli> moduli{};
  std::array<std::uint64_t, kMaxModuli> full{};
  std::size_t size = 0;
};

using State = std::array<std::uint64_t, kMaxModuli>;

Coverage make_coverage(const BSpec& B, int n) {
  Coverage c;
  for (Int b : B.elements_up_to(n)) {
    c.moduli[c.size] = static_cast<int>(b);
    c.full[c.size] = (std::uint64_t{1} << b) - 1;
    ++c.size;
  }
  return c;
}

// Returns false if adding position `pos` covers every residue of some b.
bool extend(const Coverage& cov, State& state, int pos) {
  for (std::size_t j = 0; j < cov.size; ++j) {
    state[j] |= std::uint64_t{1} << (pos % cov.moduli[j]);
    if (state[j] == cov.full[j]) return false;
  }
  return true;
}

std::uint64_t count_from(const Coverage& cov, int n, int pos, State state) {
  if (pos == n) return 1;
  std::uint64_t total = count_from(cov, n, pos + 1, state);
  if (extend(cov, state, pos)) total += count_from(cov, n, pos + 1, state);
  return total;
}

void check_length(int n, int bound) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative length");
  if (bound > kMaxCountableLength) bound = kMaxCountableLength;
  if (n > bound) {
    throw Error(ErrorCode::LengthTooLarge,
                "n = " + std::to_string(n) + " exceeds bound " +
                    std::to_string(bound));
  }
}

}  // namespace

std::uint64_t count_admissible_words(const BSpec& B, int n,
                                     const CountOptions& opts) {
  check_length(n, opts.length_bound);
  const Coverage cov = make_coverage(B, n);
  const unsigned threads = opts.threads == 0 ? 1 : opts.threads;
  if (threads == 1 || n < 8) {
    return count_from(cov, n, 0, State{});
  }

  // Fix the first `width` cells; every prefix is an independent subtree.
  const int width = std::min(n, 8);
  std::vector<std::future<std::uint64_t>> parts;
  parts.reserve(threads);
  for (unsigned worker = 0; worker < threads; ++worker) {
    parts.push_back(std::async(std::launch::async, [&, worker] {
      std::uint64_t sum = 0;
      for (std::uint32_t prefix = worker; prefix < (1u << width);
           prefix += threads) {
        State state{};
        bool ok = true;
        for (int pos = 0; pos < width && ok; ++pos) {
          if (prefix >> pos & 1) ok = extend(cov, state, pos);
        }
        if (ok) sum += count_from(cov, n, width, state);
      }
      return sum;
    }));
  }
  std::uint64_t total = 0;
  for (auto& p : parts) total += p.get();
  return total;
}

std::uint64_t count_admissible_words_naive(const BSpec& B, int n) {
  if (n < 0 || n > 30) {
    throw Error(ErrorCode::LengthTooLarge, "naive count limited to n <= 30");
  }
  std::uint64_t total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (mask_admissible(mask, n, B)) ++total;
  }
  return total;
}

std::vector<std::uint32_t> admissible_words(const BSpec& B, int n) {
  if (n < 0 || n > kMaxListedLength) {
    throw Error(ErrorCode::LengthTooLarge,
                "explicit listing limited to n <= " +
                    std::to_string(kMaxListedLength));
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (mask_admissible(mask, n, B)) out.push_back(mask);
  }
  return out;
}

double closed_form_entropy(const BSpec& B, EntropyUnit unit) {
  const double factor = static_cast<double>(B.density_product());
  return unit == EntropyUnit::Nats ? std::log(2.0) * factor : factor;
}

double entropy_ratio(const BSpec& B1, const BSpec& B2) {
  return static_cast<double>(B1.density_product() / B2.density_product());
}

EntropyReport entropy_report(const BSpec& B, int n_max, EntropyUnit unit,
                             const CountOptions& opts) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
  EntropyReport r;
  r.unit = unit;
  r.density_factor = static_cast<double>(B.density_product());
  r.closed_form = closed_form_entropy(B, unit);
  const double scale = unit == EntropyUnit::Nats ? 1.0 : 1.0 / std::log(2.0);
  for (int n = 1; n <= n_max; ++n) {
    const auto count = count_admissible_words(B, n, opts);
    r.lengths.push_back(n);
    r.counts.push_back(count);
    r.estimates.push_back(std::log(static_cast<double>(count)) / n * scale);
  }
  // counts[i] holds |L_{i+1}|.
  for (int m = 1; m < n_max; ++m) {
    for (int n = 1; m + n <= n_max; ++n) {
      const auto lhs = static_cast<unsigned __int128>(r.counts[m + n - 1]);
      const auto rhs = static_cast<unsigned __int128>(r.counts[m - 1]) *
                       r.counts[n - 1];
      if (lhs > rhs) r.submultiplicativity_failures.emplace_back(m, n);
    }
  }
  for (std::size_t i = 0; i < r.estimates.size(); ++i) {
    if (i > 0 && r.estimates[i] > r.estimates[i - 1] + 1e-12) {
      r.nonincreasing = false;
    }
    if (r.estimates[i] < r.closed_form - 1e-12) r.above_closed_form = false;
  }
  const auto V = bfree_window(B, {0, n_max - 1});
  for (int n = 1; n <= n_max; ++n) {
    const auto free = std::count_if(V.support().begin(), V.support().end(),
                                    [n](Int x) { return x < n; });
    if (free < 64 && r.counts[n - 1] < (std::uint64_t{1} << free)) {
      r.bfree_bound_failures.push_back(n);
    }
  }
  return r;
}

}  // namespace bfree
