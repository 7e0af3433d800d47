#include "bfree/blockcode.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "bfree/error.hpp"
#include "bfree/language.hpp"

namespace bfree {

BlockCodeFamily::BlockCodeFamily(int period, int radius)
    : period_(period), radius_(radius) {
  if (period < 1) throw Error(ErrorCode::InvalidArgument, "period must be >= 1");
  if (radius < 0 || radius > 12) {
    throw Error(ErrorCode::InvalidArgument, "radius must lie in [0, 12]");
  }
  maps_.assign(period, Table(table_size(), 0));
}

BlockCodeFamily::BlockCodeFamily(int period, int radius, std::vector<Table> maps)
    : BlockCodeFamily(period, radius) {
  if (maps.size() != static_cast<std::size_t>(period)) {
    throw Error(ErrorCode::InvalidArgument, "need exactly k tables");
  }
  for (auto& t : maps) {
    if (t.size() != table_size()) {
      throw Error(ErrorCode::InvalidArgument, "table size must be 2^(2rho+1)");
    }
    for (auto& v : t) v = v ? 1 : 0;
  }
  maps_ = std::move(maps);
}

std::vector<int> window_support(std::uint32_t window, int radius) {
  std::vector<int> out;
  for (int d = -radius; d <= radius; ++d) {
    if (window_cell(window, radius, d)) out.push_back(d);
  }
  return out;
}

std::uint32_t mirror_window(std::uint32_t window, int radius) {
  std::uint32_t out = 0;
  for (int d = -radius; d <= radius; ++d) {
    if (window_cell(window, radius, d)) out |= singleton_window(radius, -d);
  }
  return out;
}

Word apply_family(const BlockCodeFamily& F, const Word& w) {
  const int rho = F.radius();
  const Int len = static_cast<Int>(w.bits.size());
  if (len < 2 * rho + 1) {
    throw Error(ErrorCode::WindowTooShort,
                "word of length " + std::to_string(len) + " at radius " +
                    std::to_string(rho));
  }
  Word out{w.left + rho, std::vector<std::uint8_t>(len - 2 * rho, 0)};
  const std::uint32_t mask = (std::uint32_t{1} << F.window_size()) - 1;
  std::uint32_t window = 0;
  for (Int i = 0; i < 2 * rho; ++i) window = (window << 1) | w.bits[i];
  for (Int i = 2 * rho; i < len; ++i) {
    window = ((window << 1) | w.bits[i]) & mask;
    const Int center = w.left + i - rho;
    out.bits[i - 2 * rho] = F.map(center)[window];
  }
  return out;
}

FinitePattern apply_to_pattern(const BlockCodeFamily& F, const FinitePattern& U) {
  const int rho = F.radius();
  Interval win = U.window();
  // Empty window: evaluate around 0 so maps that move the empty set show it.
  if (win.empty()) win = {0, 0};
  Word padded{win.lo - 2 * rho,
              std::vector<std::uint8_t>(win.length() + 4 * rho, 0)};
  for (Int u : U.support()) padded.bits[u - padded.left] = 1;
  return FinitePattern::from_word(apply_family(F, padded));
}

BlockCodeFamily shift_family(int t, int period, int radius) {
  if (std::abs(t) > radius) {
    throw Error(ErrorCode::RadiusTooSmall,
                "|t| = " + std::to_string(std::abs(t)) + " > rho = " +
                    std::to_string(radius));
  }
  BlockCodeFamily F(period, radius);
  for (int p = 0; p < period; ++p) {
    for (std::uint32_t w = 0; w < F.table_size(); ++w) {
      F.set_entry(p, w, window_cell(w, radius, t));
    }
  }
  return F;
}

BlockCodeFamily reflect_family(const BlockCodeFamily& F) {
  const int k = F.period();
  BlockCodeFamily G(k, F.radius());
  for (int p = 0; p < k; ++p) {
    const int src = static_cast<int>(mod(-p, k));
    for (std::uint32_t w = 0; w < F.table_size(); ++w) {
      G.set_entry(p, w, F.entry(src, mirror_window(w, F.radius())));
    }
  }
  return G;
}

BlockCodeFamily widen_family(const BlockCodeFamily& F, int period, int radius) {
  if (period % F.period() != 0 || radius < F.radius()) {
    throw Error(ErrorCode::InvalidArgument,
                "widening needs a period multiple and a radius >= the original");
  }
  BlockCodeFamily G(period, radius);
  const int shift = radius - F.radius();
  const std::uint32_t inner = (std::uint32_t{1} << F.window_size()) - 1;
  for (int p = 0; p < period; ++p) {
    for (std::uint32_t w = 0; w < G.table_size(); ++w) {
      G.set_entry(p, w, F.entry(p % F.period(), (w >> shift) & inner));
    }
  }
  return G;
}

bool SingletonProfile::all_singletons() const {
  if (empty_set_moved) return false;
  return std::all_of(images.begin(), images.end(), [](const SingletonImage& s) {
    return s.kind == SingletonKind::Singleton;
  });
}

std::optional<std::vector<Int>> SingletonProfile::translations() const {
  if (!all_singletons()) return std::nullopt;
  std::vector<Int> out;
  for (const auto& s : images) out.push_back(s.offsets.front());
  return out;
}

std::optional<std::pair<int, int>> SingletonProfile::incongruence_violation(
    int period) const {
  auto t = translations();
  if (!t) return std::nullopt;
  for (int m = 0; m < period; ++m) {
    for (int n = m + 1; n < period; ++n) {
      if (mod(m + (*t)[m], period) == mod(n + (*t)[n], period)) {
        return std::make_pair(m, n);
      }
    }
  }
  return std::nullopt;
}

SingletonProfile singleton_profile(const BlockCodeFamily& F) {
  SingletonProfile prof;
  for (int p = 0; p < F.period(); ++p) {
    if (F.entry(p, 0)) prof.empty_set_moved = true;
  }
  for (int m = 0; m < F.period(); ++m) {
    auto image = apply_to_pattern(F, FinitePattern({m}, {m, m}));
    SingletonImage s;
    for (Int x : image.support()) s.offsets.push_back(x - m);
    if (s.offsets.empty()) {
      s.kind = SingletonKind::Empty;
    } else if (s.offsets.size() > 1) {
      s.kind = SingletonKind::MultiPoint;
    }
    prof.images.push_back(std::move(s));
  }
  return prof;
}

int minimal_period(const BlockCodeFamily& F) {
  const int k = F.period();
  for (int d = 1; d <= k; ++d) {
    if (k % d != 0) continue;
    bool periodic = true;
    for (int p = d; p < k && periodic; ++p) {
      periodic = F.maps()[p] == F.maps()[p - d];
    }
    if (periodic) return d;
  }
  return k;
}

InjectivityResult injective_on_language(const BlockCodeFamily& F,
                                        const BSpec& B, int n) {
  if (n > kMaxListedLength) {
    throw Error(ErrorCode::LengthTooLarge,
                "injectivity test limited to n <= " +
                    std::to_string(kMaxListedLength));
  }
  if (n < F.window_size()) {
    throw Error(ErrorCode::PreconditionViolated, "n must be >= 2 rho + 1");
  }
  const auto words = admissible_words(B, n);
  const int rho = F.radius();
  for (int phase = 0; phase < F.period(); ++phase) {
    // Pad by 2 rho so the image covers [phase - rho, phase + n - 1 + rho].
    Word padded{phase - 2 * rho, std::vector<std::uint8_t>(n + 4 * rho, 0)};
    std::map<std::vector<std::uint8_t>, std::uint32_t> seen;
    for (std::uint32_t mask : words) {
      for (int i = 0; i < n; ++i) padded.bits[2 * rho + i] = mask >> i & 1;
      auto image = apply_family(F, padded);
      auto [it, inserted] = seen.emplace(std::move(image.bits), mask);
      if (!inserted) {
        return {false, phase, std::make_pair(it->second, mask)};
      }
    }
  }
  return {};
}

std::string table_to_hex(const Table& table) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  const std::size_t bytes = (table.size() + 7) / 8;
  for (std::size_t b = 0; b < bytes; ++b) {
    unsigned value = 0;
    for (std::size_t i = 0; i < 8 && 8 * b + i < table.size(); ++i) {
      value |= static_cast<unsigned>(table[8 * b + i] & 1u) << i;
    }
    out += kDigits[value >> 4];
    out += kDigits[value & 15u];
  }
  return out;
}

Table table_from_hex(const std::string& hex, std::size_t entries) {
  const std::size_t bytes = (entries + 7) / 8;
  if (hex.size() != 2 * bytes) {
    throw Error(ErrorCode::ParseError,
                "table hex needs " + std::to_string(2 * bytes) + " digits");
  }
  auto digit = [](char c) -> unsigned {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw Error(ErrorCode::ParseError, "bad hex digit");
  };
  Table t(entries, 0);
  for (std::size_t b = 0; b < bytes; ++b) {
    const unsigned value = digit(hex[2 * b]) << 4 | digit(hex[2 * b + 1]);
    for (std::size_t i = 0; i < 8; ++i) {
      const std::size_t idx = 8 * b + i;
      const bool bit = value >> i & 1u;
      if (idx < entries) {
        t[idx] = bit;
      } else if (bit) {
        throw Error(ErrorCode::ParseError, "padding bits must be zero");
      }
    }
  }
  return t;
}

}  // namespace bfree
