#pragma once

#include <string>
#include <vector>

#include "bfree/blockcode.hpp"
#include "bfree/numtheory.hpp"
#include "bfree/pattern.hpp"

namespace bfree {

enum class WitnessKind {
  Trans1,    // multi-point image of a singleton
  Trans3,    // non-uniform translation of singletons
  NoExtra,   // a point created next to existing points
  Periodic,  // the empty configuration is moved
};

std::string_view to_string(WitnessKind kind);
WitnessKind witness_kind_from_string(std::string_view name);

struct AuditEntry {
  Int point = 0;
  std::vector<Congruence> congruences;

  friend bool operator==(const AuditEntry&, const AuditEntry&) = default;
};

/// An admissible pattern whose image under `family` occupies every residue
/// modulo `modulus`, so the family does not map the shift space to itself.
struct WitnessCertificate {
  WitnessKind kind = WitnessKind::Trans1;
  BlockCodeFamily family{1, 0};
  Int modulus = 0;
  int phase = 0;
  FinitePattern pattern;
  std::vector<Int> core;    // points of the offending window (NoExtra)
  std::vector<Int> spread;  // CRT-placed points, pairwise gaps > 2 rho
  std::vector<AuditEntry> audit;
  std::vector<Int> image_residues;  // image mod `modulus`

  friend bool operator==(const WitnessCertificate&,
                         const WitnessCertificate&) = default;
};

/// Construction for a singleton {m} whose image holds two points
/// m + l < m + l'. Places c - 1 points s_i = i mod c, s_i = m mod k and
/// s_i = 0 mod every smaller b in B coprime to k.
/// Throws PreconditionViolated (no multi-point image at m) or
/// NotFoundInTruncation (no c coprime to k with l' - l != 0 mod c).
WitnessCertificate witness_trans1(const BlockCodeFamily& F, const BSpec& B,
                                  int phase);

/// Construction for singletons translated by different amounts at phases
/// `base` and `phase` (l = t(phase) - t(base) != 0).
/// Throws DegenerateCase when 2 is in B, k is even and the two phases have
/// different parity; PreconditionViolated; NotFoundInTruncation.
WitnessCertificate witness_trans3(const BlockCodeFamily& F, const BSpec& B,
                                  int phase, int base = 0);

/// Construction for a map that fixes singletons up to a common translation
/// (or a parity-split one when 2 is in B and k is even) but outputs 1 at
/// `phase` on the admissible window `window` whose source cell is empty.
/// Throws PreconditionViolated or NotFoundInTruncation.
WitnessCertificate witness_noextra(const BlockCodeFamily& F, const BSpec& B,
                                   int phase, std::uint32_t window);

/// The empty configuration maps to a set containing phase + kZ; any window
/// of c*k cells then covers every residue mod c for c coprime to k.
WitnessCertificate witness_periodic(const BlockCodeFamily& F, const BSpec& B,
                                    int phase);

/// Re-derives every claim of the certificate from scratch.
bool verify_certificate(const BlockCodeFamily& F, const BSpec& B,
                        const WitnessCertificate& cert);

/// Verification with the reason of the first failed check ("" on success).
std::string certificate_problem(const BlockCodeFamily& F, const BSpec& B,
                                const WitnessCertificate& cert);

}  // namespace bfree
