#include "bfree/centralizer.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <future>
#include <map>
#include <numeric>
#include <string>

#include "bfree/error.hpp"
#include "bfree/language.hpp"

namespace bfree {

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::EmptySetMoved: return "empty-set-moved";
    case RejectReason::EmptySingletonImage: return "empty-singleton-image";
    case RejectReason::MultiPointSingleton: return "multi-point-singleton";
    case RejectReason::CongruentTargets: return "congruent-targets";
    case RejectReason::NonUniformTranslation: return "non-uniform-translation";
    case RejectReason::CreatesPoint: return "creates-point";
    case RejectReason::ErasesPoint: return "erases-point";
    case RejectReason::NotInjective: return "not-injective";
  }
  return "unknown";
}

ParityMap Classification::as_parity_map() const {
  return kind == Kind::Shift ? ParityMap{-shift, -shift} : parity;
}

std::string Classification::describe() const {
  switch (kind) {
    case Kind::Shift: return "S^" + std::to_string(shift);
    case Kind::Parity:
      return "P(" + std::to_string(parity.u) + "," + std::to_string(parity.v) +
             ")";
    case Kind::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

FinitePattern place_word(std::uint32_t mask, int length, Int left) {
  std::vector<Int> support;
  for (int i = 0; i < length; ++i) {
    if (mask >> i & 1) support.push_back(left + i);
  }
  return FinitePattern(std::move(support), {left, left + length - 1});
}

std::vector<Int> translate(std::vector<Int> v, Int t) {
  for (auto& x : v) x += t;
  return v;
}

std::string join(const std::vector<Int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

std::string window_text(std::uint32_t window, int radius) {
  std::string out;
  for (int d = -radius; d <= radius; ++d) {
    out += window_cell(window, radius, d) ? '1' : '0';
  }
  return out;
}

// Work and findings of one branch of the search, merged in a fixed order.
struct Findings {
  std::array<std::uint64_t, kRejectReasonCount> rejections{};
  std::vector<RejectionSample> samples;
  std::vector<WitnessCertificate> certificates;
  std::vector<InjectivityEvidence> evidence;
  std::vector<std::string> unresolved;
  std::optional<Survivor> survivor;
  std::uint64_t nodes = 0;

  void reject(RejectReason r, std::string detail) {
    ++rejections[static_cast<std::size_t>(r)];
    samples.push_back({r, std::move(detail)});
  }
};

// Which cell a created/kept output at `phase` is sourced from.
struct TranslationScheme {
  std::vector<Int> t;  // singleton translation per phase
  bool parity = false;

  int source_offset(int phase) const {
    if (!parity) return static_cast<int>(-t[0]);
    return static_cast<int>(-t[mod(phase - t[0], 2)]);
  }
};

BlockCodeFamily singleton_family(int period, int radius, const std::vector<Int>& t) {
  BlockCodeFamily F(period, radius);
  for (int m = 0; m < period; ++m) {
    const int d = static_cast<int>(-t[m]);  // the output m + t reads {m} at offset -t
    F.set_entry(static_cast<int>(mod(m - d, period)), singleton_window(radius, d), 1);
  }
  return F;
}

Findings refine_candidate(const BSpec& B, const SearchParams& params,
                          const TranslationScheme& scheme,
                          const std::vector<std::uint8_t>& admissible_window) {
  Findings out;
  const int k = params.period;
  const int rho = params.radius;
  const auto base = singleton_family(k, rho, scheme.t);
  const std::string label = "t=(" + join(scheme.t) + ")";

  auto is_multi = [&](std::uint32_t w) {
    return __builtin_popcount(w) >= 2 && admissible_window[w];
  };

  // Stage 5: an output with an empty source cell must be 0.
  for (int p = 0; p < k; ++p) {
    const int src = scheme.source_offset(p);
    for (std::uint32_t w = 0; w < base.table_size(); ++w) {
      if (!is_multi(w) || window_cell(w, rho, src)) continue;
      ++out.nodes;
      auto G = base;
      G.set_entry(p, w, 1);
      try {
        auto cert = witness_noextra(G, B, p, w);
        out.reject(RejectReason::CreatesPoint,
                   label + " phase " + std::to_string(p) + " window " +
                       window_text(w, rho) + " -> 1, c=" +
                       std::to_string(cert.modulus));
        out.certificates.push_back(std::move(cert));
      } catch (const Error& e) {
        out.unresolved.push_back(label + " creation at phase " +
                                 std::to_string(p) + " window " +
                                 window_text(w, rho) + ": " + e.what());
      }
    }
  }

  // Stage 6: an output with an occupied source cell must be 1.
  auto forced = base;
  for (int p = 0; p < k; ++p) {
    const int src = scheme.source_offset(p);
    for (std::uint32_t w = 0; w < base.table_size(); ++w) {
      if (is_multi(w) && window_cell(w, rho, src)) forced.set_entry(p, w, 1);
    }
  }
  for (int p = 0; p < k; ++p) {
    const int src = scheme.source_offset(p);
    for (std::uint32_t w = 0; w < base.table_size(); ++w) {
      if (!is_multi(w) || !window_cell(w, rho, src)) continue;
      ++out.nodes;
      auto G = forced;
      G.set_entry(p, w, 0);
      const auto inj = injective_on_language(G, B, params.length);
      if (inj.injective) {
        out.unresolved.push_back(label + " erasure at phase " +
                                 std::to_string(p) + " window " +
                                 window_text(w, rho) +
                                 " not detected at length " +
                                 std::to_string(params.length));
        continue;
      }
      out.reject(RejectReason::ErasesPoint,
                 label + " phase " + std::to_string(p) + " window " +
                     window_text(w, rho) + " -> 0 collides words " +
                     std::to_string(inj.counterexample->first) + "," +
                     std::to_string(inj.counterexample->second));
      out.evidence.push_back({std::move(G), params.length, inj.phase,
                              inj.counterexample->first,
                              inj.counterexample->second});
    }
  }

  ++out.nodes;
  const auto inj = injective_on_language(forced, B, params.length);
  if (!inj.injective) {
    out.reject(RejectReason::NotInjective, label + " final family");
    out.evidence.push_back({forced, params.length, inj.phase,
                            inj.counterexample->first,
                            inj.counterexample->second});
    return out;
  }
  Survivor s{forced, classify_survivor(forced, B, params.length)};
  if (s.classification.kind == Classification::Kind::Unknown) {
    out.unresolved.push_back(label + " survivor could not be classified");
  }
  out.survivor = std::move(s);
  return out;
}

void merge(SearchReport& report, Findings&& f, std::size_t sample_cap,
           std::array<std::size_t, kRejectReasonCount>& sample_counts) {
  for (std::size_t i = 0; i < kRejectReasonCount; ++i) {
    report.rejections[i] += f.rejections[i];
  }
  for (auto& s : f.samples) {
    auto& n = sample_counts[static_cast<std::size_t>(s.reason)];
    if (n < sample_cap) {
      ++n;
      report.samples.push_back(std::move(s));
    }
  }
  for (auto& c : f.certificates) report.certificates.push_back(std::move(c));
  for (auto& e : f.evidence) report.injectivity_evidence.push_back(std::move(e));
  for (auto& u : f.unresolved) report.unresolved.push_back(std::move(u));
  if (f.survivor) report.survivors.push_back(std::move(*f.survivor));
  report.nodes += f.nodes;
}

int classification_rank(const Classification& c) {
  return c.kind == Classification::Kind::Shift    ? 0
         : c.kind == Classification::Kind::Parity ? 1
                                                  : 2;
}

}  // namespace

SearchReport search(const BSpec& B, const SearchParams& params,
                    const SearchOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const int k = params.period;
  const int rho = params.radius;
  if (k < 1 || rho < 0) {
    throw Error(ErrorCode::InvalidArgument, "need k >= 1 and rho >= 0");
  }
  if (rho > opts.radius_cap || k > opts.period_cap) {
    throw Error(ErrorCode::CapExceeded,
                "rho <= " + std::to_string(opts.radius_cap) + " and k <= " +
                    std::to_string(opts.period_cap) + " required");
  }
  if (params.length < 2 * rho + 1) {
    throw Error(ErrorCode::PreconditionViolated, "n must be >= 2 rho + 1");
  }
  if (params.length > kMaxListedLength) {
    throw Error(ErrorCode::LengthTooLarge, "n must be <= 20");
  }
  {
    bool adequate = false;
    for (Int b : B.elements()) adequate = adequate || (gcd(b, k) == 1 && b > 2 * rho + 2);
    if (!adequate) {
      throw Error(ErrorCode::TruncationInadequate,
                  "B needs an element coprime to k exceeding 2 rho + 2");
    }
  }

  SearchReport report;
  report.params = params;
  std::array<std::size_t, kRejectReasonCount> sample_counts{};
  const std::size_t table_size = std::size_t{1} << (2 * rho + 1);

  // Stage 1: each map sends the zero window to 0.
  {
    Findings f;
    for (int p = 0; p < k; ++p) {
      ++f.nodes;
      BlockCodeFamily G(k, rho);
      G.set_entry(p, 0, 1);
      try {
        auto cert = witness_periodic(G, B, p);
        f.reject(RejectReason::EmptySetMoved,
                 "phase " + std::to_string(p) + " zero window -> 1, c=" +
                     std::to_string(cert.modulus));
        f.certificates.push_back(std::move(cert));
      } catch (const Error& e) {
        f.unresolved.push_back("zero window at phase " + std::to_string(p) +
                               ": " + e.what());
      }
    }
    merge(report, std::move(f), opts.samples_per_reason, sample_counts);
  }

  // Stage 2: the image of {m} is fixed by the 2 rho + 1 entries
  // phi_{(m-d) mod k}(e_d); these sets are disjoint across m.
  std::vector<std::vector<Int>> stage4_candidates;
  {
    Findings f;
    std::map<std::pair<int, std::uint32_t>, bool> cert_done;
    std::vector<Int> t(k, 0);
    const std::uint32_t local_count = std::uint32_t{1} << (2 * rho + 1);

    auto local_family = [&](int m, std::uint32_t local) {
      BlockCodeFamily G(k, rho);
      for (int j = 0; j < 2 * rho + 1; ++j) {
        if (local >> j & 1) {
          const int d = j - rho;
          G.set_entry(static_cast<int>(mod(m - d, k)), singleton_window(rho, d), 1);
        }
      }
      return G;
    };

    auto leaf = [&] {
      // Stage 3: distinct target classes mod k.
      for (int m = 0; m < k; ++m) {
        for (int n = m + 1; n < k; ++n) {
          if (mod(m + t[m], k) == mod(n + t[n], k)) {
            f.reject(RejectReason::CongruentTargets,
                     "t=(" + join(t) + ") phases " + std::to_string(m) + "," +
                         std::to_string(n) + " share class " +
                         std::to_string(mod(m + t[m], k)) + " mod k");
            return;
          }
        }
      }
      // Stage 4: uniform translation, or one per parity class.
      const bool parity = B.contains(2) && k % 2 == 0;
      for (int m = 1; m < k; ++m) {
        const int base = parity ? m % 2 : 0;
        if (t[m] == t[base]) continue;
        auto G = singleton_family(k, rho, t);
        try {
          auto cert = witness_trans3(G, B, m, base);
          f.reject(RejectReason::NonUniformTranslation,
                   "t=(" + join(t) + ") phase " + std::to_string(m) +
                       " vs " + std::to_string(base) + ", c=" +
                       std::to_string(cert.modulus));
          f.certificates.push_back(std::move(cert));
        } catch (const Error& e) {
          f.unresolved.push_back("t=(" + join(t) + "): " + e.what());
        }
        return;
      }
      stage4_candidates.push_back(t);
    };

    auto dfs = [&](auto&& self, int m) -> void {
      if (m == k) {
        leaf();
        return;
      }
      for (std::uint32_t local = 0; local < local_count; ++local) {
        ++f.nodes;
        const int points = __builtin_popcount(local);
        if (points == 0) {
          f.reject(RejectReason::EmptySingletonImage,
                   "image of {" + std::to_string(m) + "} is empty");
          continue;
        }
        if (points > 1) {
          if (!cert_done[{m, local}]) {
            cert_done[{m, local}] = true;
            auto G = local_family(m, local);
            try {
              f.certificates.push_back(witness_trans1(G, B, m));
            } catch (const Error& e) {
              f.unresolved.push_back("multi-point image at phase " +
                                     std::to_string(m) + ": " + e.what());
            }
          }
          f.reject(RejectReason::MultiPointSingleton,
                   "image of {" + std::to_string(m) + "} has " +
                       std::to_string(points) + " points");
          continue;
        }
        const int d = __builtin_ctz(local) - rho;
        t[m] = -d;
        self(self, m + 1);
      }
    };
    dfs(dfs, 0);
    merge(report, std::move(f), opts.samples_per_reason, sample_counts);
  }

  // Stages 5 and 6 fix every remaining admissible entry; candidates are
  // independent and merged in enumeration order.
  std::vector<std::uint8_t> admissible_window(table_size);
  for (std::uint32_t w = 0; w < table_size; ++w) {
    admissible_window[w] = mask_admissible(w, 2 * rho + 1, B);
  }
  const bool parity = B.contains(2) && k % 2 == 0;
  std::vector<Findings> outcomes(stage4_candidates.size());
  const unsigned threads = std::max(1u, opts.threads);
  std::vector<std::future<void>> workers;
  for (unsigned wkr = 0; wkr < threads; ++wkr) {
    workers.push_back(std::async(std::launch::async, [&, wkr] {
      for (std::size_t i = wkr; i < stage4_candidates.size(); i += threads) {
        TranslationScheme scheme{stage4_candidates[i], parity};
        outcomes[i] = refine_candidate(B, params, scheme, admissible_window);
      }
    }));
  }
  for (auto& w : workers) w.get();
  for (auto& o : outcomes) {
    merge(report, std::move(o), opts.samples_per_reason, sample_counts);
  }

  std::stable_sort(report.survivors.begin(), report.survivors.end(),
                   [](const Survivor& a, const Survivor& b) {
                     const auto& x = a.classification;
                     const auto& y = b.classification;
                     if (classification_rank(x) != classification_rank(y)) {
                       return classification_rank(x) < classification_rank(y);
                     }
                     if (x.kind == Classification::Kind::Shift) return x.shift < y.shift;
                     return x.parity < y.parity;
                   });

  report.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return report;
}

BlockCodeFamily parity_family(int u, int v, int radius) {
  if (mod(u - v, 2) != 0) {
    throw Error(ErrorCode::OddTranslation, "u and v must agree mod 2");
  }
  if (std::max(std::abs(u), std::abs(v)) > radius) {
    throw Error(ErrorCode::RadiusTooSmall, "max(|u|,|v|) exceeds the radius");
  }
  BlockCodeFamily F(2, radius);
  for (int p = 0; p < 2; ++p) {
    // Output parity p comes from sources of parity p - u.
    const int src = mod(p - u, 2) == 0 ? -u : -v;
    for (std::uint32_t w = 0; w < F.table_size(); ++w) {
      F.set_entry(p, w, window_cell(w, radius, src));
    }
  }
  return F;
}

Classification classify_survivor(const BlockCodeFamily& F, const BSpec& B,
                                 int n) {
  const auto prof = singleton_profile(F);
  const auto t = prof.translations();
  if (!t) return {};
  const int k = F.period();
  Classification c;
  if (std::all_of(t->begin(), t->end(), [&](Int x) { return x == t->front(); })) {
    c.kind = Classification::Kind::Shift;
    c.shift = static_cast<int>(-t->front());
  } else {
    bool split = k % 2 == 0 && mod((*t)[0] - (*t)[1], 2) == 0;
    for (int m = 0; m < k && split; ++m) split = (*t)[m] == (*t)[m % 2];
    if (!split) return {};
    c.kind = Classification::Kind::Parity;
    c.parity = {static_cast<int>((*t)[0]), static_cast<int>((*t)[1])};
  }

  const auto words = admissible_words(B, n);
  for (int p = 0; p < k; ++p) {
    for (std::uint32_t mask : words) {
      const auto U = place_word(mask, n, p);
      const auto image = apply_to_pattern(F, U).support();
      std::vector<Int> expected;
      if (c.kind == Classification::Kind::Shift) {
        expected = translate(U.support(), -c.shift);
      } else if (!U.empty()) {
        const auto& s = U.support();
        const Int parity = mod(s.front(), 2);
        if (!std::all_of(s.begin(), s.end(),
                         [&](Int x) { return mod(x, 2) == parity; })) {
          return {};
        }
        expected = translate(s, parity == 0 ? c.parity.u : c.parity.v);
      }
      if (image != expected) return {};
    }
  }
  return c;
}

bool same_action(const BlockCodeFamily& F, const BlockCodeFamily& G,
                 const BSpec& B, int n) {
  const int period = std::lcm(F.period(), G.period());
  const auto words = admissible_words(B, n);
  for (int p = 0; p < period; ++p) {
    for (std::uint32_t mask : words) {
      const auto U = place_word(mask, n, p);
      if (apply_to_pattern(F, U).support() != apply_to_pattern(G, U).support()) {
        return false;
      }
    }
  }
  return true;
}

std::vector<ReversingElement> reversing_elements(const BSpec& B,
                                                 const SearchReport& report) {
  const int n = report.params.length;
  const int k = report.params.period;
  const auto words = admissible_words(B, n);
  std::vector<ReversingElement> out;
  for (const auto& s : report.survivors) {
    ReversingElement r;
    r.survivor = s.classification;
    r.description = "R*" + s.classification.describe();
    r.conjugates = true;
    // G = R H; check G(U - k) = G(U) + k, i.e. G S^k = S^-k G.
    for (int p = 0; p < k && r.conjugates; ++p) {
      for (std::uint32_t mask : words) {
        const auto U = place_word(mask, n, p);
        const auto lhs = reflect(apply_to_pattern(s.family, U.translated(-k)));
        const auto rhs = reflect(apply_to_pattern(s.family, U)).translated(k);
        ++r.words_checked;
        if (lhs.support() != rhs.support()) {
          r.conjugates = false;
          break;
        }
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

H2Report verify_h2_example(const BSpec& B, int t, int n) {
  if (mod(t, 2) != 0) throw Error(ErrorCode::OddTranslation, "t must be even");
  if (!B.contains(2)) {
    throw Error(ErrorCode::PreconditionViolated, "2 must be an element of B");
  }
  if (n <= std::abs(t)) throw Error(ErrorCode::PreconditionViolated, "need n > |t|");
  H2Report r;
  r.translation = t;
  r.family = parity_family(0, t, std::abs(t));
  r.commutes_with_s2 = true;
  r.commutes_with_s = true;
  r.swaps_parity_classes = true;
  const auto words = admissible_words(B, n);
  const auto& H = r.family;
  for (int p = 0; p < 2; ++p) {
    for (std::uint32_t mask : words) {
      const auto U = place_word(mask, n, p);
      const auto image = apply_to_pattern(H, U).support();
      ++r.words_checked;
      if (apply_to_pattern(H, U.translated(-2)).support() != translate(image, -2)) {
        r.commutes_with_s2 = false;
      }
      if (apply_to_pattern(H, U.translated(-1)).support() != translate(image, -1)) {
        if (r.commutes_with_s) r.s_counterexample = mask;
        r.commutes_with_s = false;
      }
      if (!U.empty()) {
        const Int parity = mod(U.support().front(), 2);
        for (Int x : translate(image, -1)) {
          if (mod(x, 2) == parity) r.swaps_parity_classes = false;
        }
      }
    }
  }
  return r;
}

}  // namespace bfree
