#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "bfree/blockcode.hpp"
#include "bfree/centralizer.hpp"
#include "bfree/language.hpp"
#include "bfree/numtheory.hpp"
#include "bfree/pattern.hpp"
#include "bfree/witness.hpp"

namespace bfree::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr Int kDefaultPrimeBound = 10000;

/// B-spec config:
///   {"schema_version":1,"kind":"explicit","elements":[4,9],"thin_declared":false}
///   {"schema_version":1,"kind":"prime_powers","exponent":2,"prime_bound":10000}
Json bspec_to_json(const BSpec& B);
BSpec bspec_from_json(const Json& j);

/// "primes-sq", "primes-cube", "primes-4th", "primes-pow:E" (prime bound
/// from the argument), or an inline list "4,9,25,49".
BSpec bspec_from_argument(std::string_view text, Int prime_bound = kDefaultPrimeBound);

BSpec load_bspec(const std::filesystem::path& path);

/// {"k":..,"rho":..,"tables":["hex",...]}
Json family_to_json(const BlockCodeFamily& F);
BlockCodeFamily family_from_json(const Json& j);

Json pattern_to_json(const FinitePattern& U);
FinitePattern pattern_from_json(const Json& j);

Json certificate_to_json(const WitnessCertificate& cert);
WitnessCertificate certificate_from_json(const Json& j);

Json evidence_to_json(const InjectivityEvidence& e);
InjectivityEvidence evidence_from_json(const Json& j);

Json classification_to_json(const Classification& c);

/// Timing is left out unless asked for, so equal inputs give equal bytes.
Json search_report_to_json(const BSpec& B, const SearchReport& report,
                           bool include_timing = false);
Json entropy_report_to_json(const EntropyReport& r);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

/// Writes bspec.json, report.json, certificates.json, injectivity.json.
void write_bundle(const std::filesystem::path& dir, const BSpec& B,
                  const SearchReport& report);

struct BundleCheck {
  std::size_t certificates = 0;
  std::size_t certificates_ok = 0;
  std::size_t evidence = 0;
  std::size_t evidence_ok = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Re-checks every certificate and injectivity counterexample in a bundle
/// directory (or a single certificate file, with the B-spec given).
BundleCheck verify_bundle(const std::filesystem::path& dir);
BundleCheck verify_certificate_file(const std::filesystem::path& file,
                                    const BSpec& B);

/// True when the two words differ and have the same image.
bool check_evidence(const InjectivityEvidence& e);

}  // namespace bfree::io
