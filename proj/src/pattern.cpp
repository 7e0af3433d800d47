#include "bfree/pattern.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "bfree/error.hpp"

namespace bfree {

FinitePattern::FinitePattern(std::vector<Int> support)
    : support_(std::move(support)) {
  std::sort(support_.begin(), support_.end());
  support_.erase(std::unique(support_.begin(), support_.end()),
                 support_.end());
  if (!support_.empty()) window_ = {support_.front(), support_.back()};
}

FinitePattern::FinitePattern(std::vector<Int> support, Interval window)
    : FinitePattern(std::move(support)) {
  window_ = window;
  if (!support_.empty() &&
      (!window_.contains(support_.front()) ||
       !window_.contains(support_.back()))) {
    throw Error(ErrorCode::InvalidArgument, "support outside window");
  }
}

FinitePattern FinitePattern::from_word(const Word& w) {
  std::vector<Int> support;
  for (std::size_t i = 0; i < w.bits.size(); ++i) {
    if (w.bits[i]) support.push_back(w.left + static_cast<Int>(i));
  }
  return FinitePattern(std::move(support), w.interval());
}

bool FinitePattern::contains(Int x) const {
  return std::binary_search(support_.begin(), support_.end(), x);
}

Word FinitePattern::to_word() const {
  Word w{window_.lo, std::vector<std::uint8_t>(window_.length(), 0)};
  for (Int u : support_) w.bits[u - window_.lo] = 1;
  return w;
}

FinitePattern FinitePattern::translated(Int t) const {
  FinitePattern out = *this;
  for (Int& u : out.support_) u += t;
  if (!window_.empty()) out.window_ = {window_.lo + t, window_.hi + t};
  return out;
}

std::vector<Int> occupied_residues(const FinitePattern& U, Int b) {
  if (b < 1) throw Error(ErrorCode::InvalidArgument, "modulus < 1");
  std::vector<bool> seen(b, false);
  std::vector<Int> out;
  for (Int u : U.support()) {
    Int r = mod(u, b);
    if (!seen[r]) {
      seen[r] = true;
      out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

AdmissibilityVerdict is_admissible(const FinitePattern& U, const BSpec& B) {
  const Int n = static_cast<Int>(U.size());
  std::vector<bool> seen;
  for (Int b : B.elements_up_to(n)) {
    seen.assign(b, false);
    Int hit = 0;
    for (Int u : U.support()) {
      Int r = mod(u, b);
      if (!seen[r]) {
        seen[r] = true;
        if (++hit == b) break;
      }
    }
    if (hit == b) {
      Violation v{b, {}};
      v.covered.resize(b);
      for (Int r = 0; r < b; ++r) v.covered[r] = r;
      return {false, std::move(v)};
    }
  }
  return {true, std::nullopt};
}

bool mask_admissible(std::uint64_t mask, int length, const BSpec& B) {
  const int pop = __builtin_popcountll(mask);
  for (Int b : B.elements_up_to(pop)) {
    std::uint64_t covered = 0;
    for (int i = 0; i < length; ++i) {
      if (mask >> i & 1) covered |= std::uint64_t{1} << (i % b);
    }
    if (covered == (b >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << b) - 1)) {
      return false;
    }
  }
  return true;
}

FinitePattern bfree_window(const BSpec& B, Interval range) {
  if (range.empty()) {
    throw Error(ErrorCode::InvalidArgument, "empty interval");
  }
  std::vector<bool> hit(range.length(), false);
  for (Int b : B.elements()) {
    // First multiple of b that is >= lo.
    Int first = range.lo + mod(-range.lo, b);
    for (Int x = first; x <= range.hi; x += b) hit[x - range.lo] = true;
  }
  std::vector<Int> support;
  for (Int i = 0; i < range.length(); ++i) {
    if (!hit[i]) support.push_back(range.lo + i);
  }
  return FinitePattern(std::move(support), range);
}

DensityEstimate density_estimate(const BSpec& B, Int half_width) {
  if (half_width < 1) {
    throw Error(ErrorCode::InvalidArgument, "half-width must be >= 1");
  }
  auto V = bfree_window(B, {-half_width, half_width});
  DensityEstimate out;
  out.count = static_cast<Int>(V.size());
  out.half_width = half_width;
  out.observed = static_cast<long double>(out.count) /
                 static_cast<long double>(2 * half_width + 1);
  out.product = B.density_product();
  return out;
}

FinitePattern reflect(const FinitePattern& U) {
  std::vector<Int> support;
  support.reserve(U.size());
  for (Int u : U.support()) support.push_back(-u);
  Interval w = U.window().empty() ? Interval{0, -1}
                                  : Interval{-U.window().hi, -U.window().lo};
  return FinitePattern(std::move(support), w);
}

PeriodicityCertificate periodicity_certificate(const FinitePattern& seed,
                                               Int period, const BSpec& B) {
  if (seed.empty()) {
    throw Error(ErrorCode::PreconditionViolated, "seed must be non-empty");
  }
  if (period < 1) throw Error(ErrorCode::InvalidArgument, "period < 1");
  Int b = find_coprime_element(B, period);
  return {b, b * period};
}

FinitePattern periodic_extension(const FinitePattern& seed, Int period,
                                 Interval window) {
  std::vector<Int> support;
  for (Int r : occupied_residues(seed, period)) {
    for (Int x = window.lo + mod(r - window.lo, period); x <= window.hi;
         x += period) {
      support.push_back(x);
    }
  }
  return FinitePattern(std::move(support), window);
}

namespace {

Int parse_int(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  Int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::ParseError, "bad integer '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

FinitePattern parse_pattern(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty pattern");
  if (text.front() == '{') {
    if (text.back() != '}') throw Error(ErrorCode::ParseError, "missing '}'");
    std::string_view body = text.substr(1, text.size() - 2);
    std::vector<Int> support;
    while (!body.empty()) {
      auto comma = body.find(',');
      auto item = body.substr(0, comma);
      support.push_back(parse_int(item));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    return FinitePattern(std::move(support));
  }
  auto at = text.find('@');
  std::string_view bits = text.substr(0, at);
  Int left = at == std::string_view::npos ? 0 : parse_int(text.substr(at + 1));
  Word w{left, {}};
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::ParseError, "word form needs 0/1 characters");
    }
    w.bits.push_back(c == '1');
  }
  return FinitePattern::from_word(w);
}

std::string format_set(const FinitePattern& U) {
  std::string out = "{";
  for (std::size_t i = 0; i < U.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(U.support()[i]);
  }
  return out + "}";
}

std::string format_word(const FinitePattern& U) {
  if (U.window().empty()) return "@0";
  std::string out;
  for (auto bit : U.to_word().bits) out += bit ? '1' : '0';
  return out + "@" + std::to_string(U.window().lo);
}

}  // namespace bfree
