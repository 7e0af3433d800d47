#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bfree/blockcode.hpp"
#include "bfree/numtheory.hpp"
#include "bfree/witness.hpp"

namespace bfree {

/// Reasons a branch of the candidate space is discarded, in stage order.
enum class RejectReason {
  EmptySetMoved,        // stage 1, periodic witness
  EmptySingletonImage,  // stage 2, H({m}) = {} = H({})
  MultiPointSingleton,  // stage 2, trans1 witness
  CongruentTargets,     // stage 3, two phases hit the same class mod k
  NonUniformTranslation,  // stage 4, trans3 witness
  CreatesPoint,         // stage 5, no-extra witness
  ErasesPoint,          // stage 6, injectivity counterexample
  NotInjective,         // final injectivity filter
};
inline constexpr std::size_t kRejectReasonCount = 8;

std::string_view to_string(RejectReason reason);

/// Even-supported sets move by +u, odd-supported sets by +v (u = v mod 2).
struct ParityMap {
  int u = 0;
  int v = 0;

  friend bool operator==(const ParityMap&, const ParityMap&) = default;
  friend auto operator<=>(const ParityMap&, const ParityMap&) = default;
};

struct Classification {
  enum class Kind { Shift, Parity, Unknown };
  Kind kind = Kind::Unknown;
  int shift = 0;        // S^shift, i.e. U -> U - shift
  ParityMap parity;

  /// Shift t as the parity map (-t, -t).
  ParityMap as_parity_map() const;
  std::string describe() const;

  friend bool operator==(const Classification&, const Classification&) = default;
};

/// Two distinct admissible words with the same image.
struct InjectivityEvidence {
  BlockCodeFamily family{1, 0};
  int length = 0;
  int phase = 0;
  std::uint32_t first = 0;
  std::uint32_t second = 0;
};

/// Structural (non-certificate) rejection, kept as a sample.
struct RejectionSample {
  RejectReason reason = RejectReason::EmptySingletonImage;
  std::string detail;
};

struct Survivor {
  BlockCodeFamily family{1, 0};
  Classification classification;
};

struct SearchParams {
  int radius = 0;
  int period = 1;
  int length = 0;  // injectivity test length n
};

struct SearchOptions {
  int radius_cap = kDefaultRadiusCap;
  int period_cap = kDefaultPeriodCap;
  unsigned threads = 1;
  std::size_t samples_per_reason = 3;
};

struct SearchReport {
  SearchParams params;
  std::vector<Survivor> survivors;
  std::array<std::uint64_t, kRejectReasonCount> rejections{};
  std::vector<RejectionSample> samples;
  std::vector<WitnessCertificate> certificates;  // every distinct one emitted
  std::vector<InjectivityEvidence> injectivity_evidence;
  std::vector<std::string> unresolved;
  std::uint64_t nodes = 0;
  double seconds = 0;

  std::uint64_t rejection_count(RejectReason r) const {
    return rejections[static_cast<std::size_t>(r)];
  }
};

/// Staged search over k-tuples of radius-rho maps that could belong to the
/// full centraliser. Entries are fixed stage by stage; every discarded
/// branch carries a witness certificate or a structural reason.
/// Throws CapExceeded, TruncationInadequate, PreconditionViolated.
SearchReport search(const BSpec& B, const SearchParams& params,
                    const SearchOptions& opts = {});

/// Family moving even-supported sets by +u and odd-supported sets by +v.
/// Throws OddTranslation when u and v differ in parity, RadiusTooSmall when
/// max(|u|, |v|) > radius.
BlockCodeFamily parity_family(int u, int v, int radius);

/// Reads the singleton profile and confirms the claimed action on every
/// admissible word of length n at each phase.
Classification classify_survivor(const BlockCodeFamily& F, const BSpec& B,
                                 int n);

/// Sameness as maps on admissible words of length n (all placements mod k).
bool same_action(const BlockCodeFamily& F, const BlockCodeFamily& G,
                 const BSpec& B, int n);

struct ReversingElement {
  Classification survivor;
  std::string description;  // e.g. "R*S^1"
  bool conjugates = false;  // G S^k = S^-k G on every tested word
  std::size_t words_checked = 0;
};

/// R composed with each survivor, each checked to conjugate S^k to S^-k.
std::vector<ReversingElement> reversing_elements(const BSpec& B,
                                                 const SearchReport& report);

struct H2Report {
  BlockCodeFamily family{2, 0};
  int translation = 0;
  bool commutes_with_s2 = false;
  bool commutes_with_s = false;
  std::optional<std::uint32_t> s_counterexample;  // word, bit i = position i
  bool swaps_parity_classes = false;
  std::size_t words_checked = 0;
};

/// Identity on even-supported sets, translation by +t on odd-supported ones.
/// Throws OddTranslation, PreconditionViolated (2 not in B, n <= |t|).
H2Report verify_h2_example(const BSpec& B, int t, int n);

}  // namespace bfree
