#include "bfree/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "bfree/error.hpp"

namespace bfree::io {

namespace {

void check_schema(const Json& j) {
  if (!j.contains("schema_version")) return;
  const int v = j.at("schema_version").get<int>();
  if (v != kSchemaVersion) {
    throw Error(ErrorCode::ParseError,
                "unsupported schema_version " + std::to_string(v));
  }
}

template <typename F>
auto parse_guard(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

FinitePattern word_pattern(std::uint32_t mask, int length, Int left) {
  std::vector<Int> support;
  for (int i = 0; i < length; ++i) {
    if (mask >> i & 1) support.push_back(left + i);
  }
  return FinitePattern(std::move(support), {left, left + length - 1});
}

}  // namespace

Json bspec_to_json(const BSpec& B) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  const auto& g = B.generator();
  if (g.kind == GeneratorKind::PrimePowers) {
    j["kind"] = "prime_powers";
    j["exponent"] = g.exponent;
    j["prime_bound"] = g.prime_bound;
  } else {
    j["kind"] = g.kind == GeneratorKind::Custom ? "custom" : "explicit";
    j["elements"] = std::vector<Int>(B.elements().begin(), B.elements().end());
  }
  j["thin_declared"] = B.thin_declared();
  return j;
}

BSpec bspec_from_json(const Json& j) {
  return parse_guard([&] {
    check_schema(j);
    const auto kind = j.at("kind").get<std::string>();
    const bool thin = j.value("thin_declared", false);
    if (kind == "prime_powers") {
      return prime_powers(j.at("exponent").get<int>(),
                          j.at("prime_bound").get<Int>(), thin);
    }
    if (kind == "explicit" || kind == "custom") {
      Generator g{kind == "custom" ? GeneratorKind::Custom : GeneratorKind::Explicit};
      return validate_bspec(j.at("elements").get<std::vector<Int>>(), g, thin);
    }
    throw Error(ErrorCode::ParseError, "unknown B-spec kind '" + kind + "'");
  });
}

BSpec bspec_from_argument(std::string_view text, Int prime_bound) {
  if (text == "primes-sq") return prime_powers(2, prime_bound);
  if (text == "primes-cube") return prime_powers(3, prime_bound);
  if (text == "primes-4th") return prime_powers(4, prime_bound);
  if (text.starts_with("primes-pow:")) {
    int e = 0;
    auto rest = text.substr(11);
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), e);
    if (ec != std::errc() || ptr != rest.data() + rest.size()) {
      throw Error(ErrorCode::ParseError, "bad exponent in '" + std::string(text) + "'");
    }
    return prime_powers(e, prime_bound);
  }
  std::vector<Int> raw;
  std::string_view rest = text;
  while (!rest.empty()) {
    auto comma = rest.find(',');
    auto item = rest.substr(0, comma);
    Int v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty()) {
      throw Error(ErrorCode::ParseError,
                  "bad B-spec element '" + std::string(item) + "'");
    }
    raw.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return validate_bspec(std::move(raw));
}

BSpec load_bspec(const std::filesystem::path& path) {
  return bspec_from_json(read_json_file(path));
}

Json family_to_json(const BlockCodeFamily& F) {
  Json j;
  j["k"] = F.period();
  j["rho"] = F.radius();
  Json tables = Json::array();
  for (const auto& t : F.maps()) tables.push_back(table_to_hex(t));
  j["tables"] = std::move(tables);
  return j;
}

BlockCodeFamily family_from_json(const Json& j) {
  return parse_guard([&] {
    const int k = j.at("k").get<int>();
    const int rho = j.at("rho").get<int>();
    const auto hex = j.at("tables").get<std::vector<std::string>>();
    const std::size_t entries = std::size_t{1} << (2 * rho + 1);
    std::vector<Table> maps;
    for (const auto& h : hex) maps.push_back(table_from_hex(h, entries));
    return BlockCodeFamily(k, rho, std::move(maps));
  });
}

Json pattern_to_json(const FinitePattern& U) {
  Json j;
  j["support"] = U.support();
  j["window"] = {U.window().lo, U.window().hi};
  return j;
}

FinitePattern pattern_from_json(const Json& j) {
  return parse_guard([&] {
    const auto w = j.at("window").get<std::vector<Int>>();
    if (w.size() != 2) throw Error(ErrorCode::ParseError, "window needs [lo, hi]");
    return FinitePattern(j.at("support").get<std::vector<Int>>(), {w[0], w[1]});
  });
}

Json certificate_to_json(const WitnessCertificate& cert) {
  Json j;
  j["construction"] = to_string(cert.kind);
  j["modulus"] = cert.modulus;
  j["phase"] = cert.phase;
  j["family"] = family_to_json(cert.family);
  j["pattern"] = pattern_to_json(cert.pattern);
  j["core"] = cert.core;
  j["points"] = cert.spread;
  Json audit = Json::array();
  for (const auto& a : cert.audit) {
    Json entry;
    entry["point"] = a.point;
    Json congr = Json::array();
    for (const auto& c : a.congruences) congr.push_back({c.residue, c.modulus});
    entry["congruences"] = std::move(congr);
    audit.push_back(std::move(entry));
  }
  j["congruence_audit"] = std::move(audit);
  j["image_residues"] = cert.image_residues;
  return j;
}

WitnessCertificate certificate_from_json(const Json& j) {
  return parse_guard([&] {
    WitnessCertificate cert;
    cert.kind = witness_kind_from_string(j.at("construction").get<std::string>());
    cert.modulus = j.at("modulus").get<Int>();
    cert.phase = j.at("phase").get<int>();
    cert.family = family_from_json(j.at("family"));
    cert.pattern = pattern_from_json(j.at("pattern"));
    cert.core = j.at("core").get<std::vector<Int>>();
    cert.spread = j.at("points").get<std::vector<Int>>();
    for (const auto& entry : j.at("congruence_audit")) {
      AuditEntry a;
      a.point = entry.at("point").get<Int>();
      for (const auto& c : entry.at("congruences")) {
        a.congruences.push_back({c.at(0).get<Int>(), c.at(1).get<Int>()});
      }
      cert.audit.push_back(std::move(a));
    }
    cert.image_residues = j.at("image_residues").get<std::vector<Int>>();
    return cert;
  });
}

Json evidence_to_json(const InjectivityEvidence& e) {
  Json j;
  j["family"] = family_to_json(e.family);
  j["length"] = e.length;
  j["phase"] = e.phase;
  j["first"] = format_word(word_pattern(e.first, e.length, e.phase));
  j["second"] = format_word(word_pattern(e.second, e.length, e.phase));
  return j;
}

InjectivityEvidence evidence_from_json(const Json& j) {
  return parse_guard([&] {
    InjectivityEvidence e;
    e.family = family_from_json(j.at("family"));
    e.length = j.at("length").get<int>();
    e.phase = j.at("phase").get<int>();
    auto mask_of = [&](const std::string& text) {
      const auto U = parse_pattern(text);
      if (U.window().lo != e.phase || U.window().length() != e.length) {
        throw Error(ErrorCode::ParseError, "evidence word has the wrong window");
      }
      std::uint32_t mask = 0;
      for (Int u : U.support()) mask |= std::uint32_t{1} << (u - e.phase);
      return mask;
    };
    e.first = mask_of(j.at("first").get<std::string>());
    e.second = mask_of(j.at("second").get<std::string>());
    return e;
  });
}

bool check_evidence(const InjectivityEvidence& e) {
  if (e.first == e.second) return false;
  const auto a = apply_to_pattern(e.family, word_pattern(e.first, e.length, e.phase));
  const auto b = apply_to_pattern(e.family, word_pattern(e.second, e.length, e.phase));
  return a.support() == b.support();
}

Json classification_to_json(const Classification& c) {
  Json j;
  switch (c.kind) {
    case Classification::Kind::Shift:
      j["kind"] = "shift";
      j["t"] = c.shift;
      break;
    case Classification::Kind::Parity:
      j["kind"] = "parity";
      j["u"] = c.parity.u;
      j["v"] = c.parity.v;
      break;
    case Classification::Kind::Unknown:
      j["kind"] = "unknown";
      break;
  }
  j["name"] = c.describe();
  return j;
}

Json search_report_to_json(const BSpec& B, const SearchReport& report,
                           bool include_timing) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["params"] = {{"bspec", bspec_to_json(B)},
                 {"rho", report.params.radius},
                 {"k", report.params.period},
                 {"n", report.params.length}};
  Json survivors = Json::array();
  for (const auto& s : report.survivors) {
    Json e = classification_to_json(s.classification);
    e["family"] = family_to_json(s.family);
    survivors.push_back(std::move(e));
  }
  j["survivor_count"] = report.survivors.size();
  j["survivors"] = std::move(survivors);
  Json rej;
  for (std::size_t i = 0; i < kRejectReasonCount; ++i) {
    rej[std::string(to_string(static_cast<RejectReason>(i)))] = report.rejections[i];
  }
  j["rejections"] = std::move(rej);
  Json samples = Json::array();
  for (const auto& s : report.samples) {
    samples.push_back({{"reason", to_string(s.reason)}, {"detail", s.detail}});
  }
  j["samples"] = std::move(samples);
  j["certificate_count"] = report.certificates.size();
  j["injectivity_evidence_count"] = report.injectivity_evidence.size();
  j["unresolved"] = report.unresolved;
  j["nodes"] = report.nodes;
  if (include_timing) j["seconds"] = report.seconds;
  return j;
}

Json entropy_report_to_json(const EntropyReport& r) {
  Json j;
  j["unit"] = r.unit == EntropyUnit::Nats ? "nats" : "bits";
  j["closed_form"] = r.closed_form;
  j["density_factor"] = r.density_factor;
  Json rows = Json::array();
  for (std::size_t i = 0; i < r.lengths.size(); ++i) {
    rows.push_back({{"n", r.lengths[i]},
                    {"count", r.counts[i]},
                    {"estimate", r.estimates[i]}});
  }
  j["rows"] = std::move(rows);
  Json fails = Json::array();
  for (auto [m, n] : r.submultiplicativity_failures) fails.push_back({m, n});
  j["submultiplicativity_failures"] = std::move(fails);
  j["nonincreasing"] = r.nonincreasing;
  j["above_closed_form"] = r.above_closed_form;
  j["bfree_bound_failures"] = r.bfree_bound_failures;
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path.string());
  return parse_guard([&] { return Json::parse(in); });
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void write_bundle(const std::filesystem::path& dir, const BSpec& B,
                  const SearchReport& report) {
  std::filesystem::create_directories(dir);
  write_json_file(dir / "bspec.json", bspec_to_json(B));
  write_json_file(dir / "report.json", search_report_to_json(B, report));
  Json certs = Json::array();
  for (const auto& c : report.certificates) certs.push_back(certificate_to_json(c));
  write_json_file(dir / "certificates.json", certs);
  Json ev = Json::array();
  for (const auto& e : report.injectivity_evidence) ev.push_back(evidence_to_json(e));
  write_json_file(dir / "injectivity.json", ev);
}

namespace {

void check_certificates(const Json& certs, const BSpec& B, BundleCheck& out) {
  std::size_t index = 0;
  for (const auto& j : certs) {
    ++out.certificates;
    try {
      const auto cert = certificate_from_json(j);
      const auto problem = certificate_problem(cert.family, B, cert);
      if (problem.empty()) {
        ++out.certificates_ok;
      } else {
        out.failures.push_back("certificate " + std::to_string(index) + ": " + problem);
      }
    } catch (const Error& e) {
      out.failures.push_back("certificate " + std::to_string(index) + ": " + e.what());
    }
    ++index;
  }
}

}  // namespace

BundleCheck verify_bundle(const std::filesystem::path& dir) {
  BundleCheck out;
  const auto B = load_bspec(dir / "bspec.json");
  check_certificates(read_json_file(dir / "certificates.json"), B, out);
  if (std::filesystem::exists(dir / "injectivity.json")) {
    std::size_t index = 0;
    for (const auto& j : read_json_file(dir / "injectivity.json")) {
      ++out.evidence;
      try {
        if (check_evidence(evidence_from_json(j))) {
          ++out.evidence_ok;
        } else {
          out.failures.push_back("evidence " + std::to_string(index) +
                                 ": words do not collide");
        }
      } catch (const Error& e) {
        out.failures.push_back("evidence " + std::to_string(index) + ": " + e.what());
      }
      ++index;
    }
  }
  return out;
}

BundleCheck verify_certificate_file(const std::filesystem::path& file,
                                    const BSpec& B) {
  BundleCheck out;
  auto j = read_json_file(file);
  if (!j.is_array()) j = Json::array({j});
  check_certificates(j, B, out);
  return out;
}

}  // namespace bfree::io
