// bfree: command-line front end for B-free subshift computations.
//
// Data goes to stdout, logs and timing to stderr. Every run can be saved as
// a JSON RunConfig (--save-config) and replayed with --config.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bfree/blockcode.hpp"
#include "bfree/centralizer.hpp"
#include "bfree/error.hpp"
#include "bfree/io.hpp"
#include "bfree/language.hpp"
#include "bfree/numtheory.hpp"
#include "bfree/pattern.hpp"
#include "bfree/witness.hpp"

namespace fs = std::filesystem;
using bfree::io::Json;

namespace {

struct Globals {
  std::string b_arg;
  std::string b_file;
  bfree::Int prime_bound = bfree::io::kDefaultPrimeBound;
  std::string format = "table";
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::string config_path;
  std::string save_config;
  std::optional<bfree::BSpec> config_bspec;
};

Globals g;

bfree::BSpec resolve_bspec() {
  if (!g.b_file.empty()) return bfree::io::load_bspec(g.b_file);
  if (!g.b_arg.empty()) return bfree::io::bspec_from_argument(g.b_arg, g.prime_bound);
  if (g.config_bspec) return *g.config_bspec;
  throw bfree::Error(bfree::ErrorCode::InvalidArgument,
                     "no B-spec given (use --b or --b-file)");
}

bool json_out() { return g.format == "json"; }

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::string fixed(long double x, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

bfree::Interval parse_range(const std::string& text) {
  auto colon = text.find(':', 1);
  if (colon == std::string::npos) {
    throw bfree::Error(bfree::ErrorCode::ParseError, "range must be lo:hi");
  }
  try {
    return {std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw bfree::Error(bfree::ErrorCode::ParseError, "bad range '" + text + "'");
  }
}

std::string word_string(std::uint32_t mask, int n, bfree::Int left) {
  std::string s;
  for (int i = 0; i < n; ++i) s += (mask >> i & 1) ? '1' : '0';
  return s + "@" + std::to_string(left);
}

// ---- subcommand state ----

struct GenerateArgs { std::string range; };
struct AdmissibleArgs { std::string pattern; };
struct DensityArgs { bfree::Int half_width = 100000; };
struct EntropyArgs { int n_max = 12; bool bits = false; };
struct RatioArgs { std::string b2; std::string b2_file; };
struct WordsArgs { int n = 4; bool list = false; bool naive = false; };
struct SearchArgs {
  int rho = 1, k = 1, n = 12;
  int rho_cap = bfree::kDefaultRadiusCap, k_cap = bfree::kDefaultPeriodCap;
  std::string out_dir;
  bool timing = false;
};
struct WitnessArgs {
  std::string family_file;
  std::string kind;
  int phase = 0;
  int base = 0;
  std::string window;
  std::string out;
  std::string verify;
};
struct H2Args { int t = 2; int n = 12; };
struct ReverseArgs { int rho = 1, k = 1, n = 12; };

GenerateArgs a_gen;
AdmissibleArgs a_adm;
DensityArgs a_den;
EntropyArgs a_ent;
RatioArgs a_rat;
WordsArgs a_words;
SearchArgs a_search;
WitnessArgs a_wit;
H2Args a_h2;
ReverseArgs a_rev;

// ---- commands ----

int cmd_generate() {
  const auto B = resolve_bspec();
  const auto V = bfree::bfree_window(B, parse_range(a_gen.range));
  if (json_out()) {
    print_json({{"window", {V.window().lo, V.window().hi}},
                {"support", V.support()},
                {"set", bfree::format_set(V)},
                {"word", bfree::format_word(V)}});
  } else {
    std::cout << "set   " << bfree::format_set(V) << '\n'
              << "word  " << bfree::format_word(V) << '\n'
              << "count " << V.size() << '\n';
  }
  return 0;
}

int cmd_admissible() {
  const auto B = resolve_bspec();
  const auto U = bfree::parse_pattern(a_adm.pattern);
  const auto v = bfree::is_admissible(U, B);
  if (json_out()) {
    Json j{{"pattern", bfree::format_set(U)}, {"admissible", v.admissible}};
    if (v.violation) {
      j["violation"] = {{"modulus", v.violation->modulus},
                        {"covered", v.violation->covered}};
    }
    print_json(j);
  } else {
    std::cout << bfree::format_set(U) << ": "
              << (v.admissible ? "admissible" : "not admissible");
    if (v.violation) {
      std::cout << " (all residues mod " << v.violation->modulus << " occupied)";
    }
    std::cout << '\n';
  }
  return v.admissible ? 0 : 1;
}

int cmd_density() {
  const auto B = resolve_bspec();
  const auto t0 = std::chrono::steady_clock::now();
  const auto d = bfree::density_estimate(B, a_den.half_width);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "density: " << fixed(secs, 3) << " s\n";
  if (json_out()) {
    print_json({{"N", d.half_width},
                {"count", d.count},
                {"observed", fixed(d.observed, 9)},
                {"product", fixed(d.product, 9)}});
  } else {
    std::cout << "N         " << d.half_width << '\n'
              << "count     " << d.count << '\n'
              << "observed  " << fixed(d.observed, 9) << '\n'
              << "product   " << fixed(d.product, 9) << '\n';
  }
  return 0;
}

int cmd_entropy() {
  const auto B = resolve_bspec();
  bfree::CountOptions opts;
  opts.threads = g.threads;
  const auto r = bfree::entropy_report(
      B, a_ent.n_max, a_ent.bits ? bfree::EntropyUnit::Bits : bfree::EntropyUnit::Nats,
      opts);
  if (json_out()) {
    print_json(bfree::io::entropy_report_to_json(r));
    return 0;
  }
  const char* unit = a_ent.bits ? "bits" : "nats";
  std::cout << std::setw(4) << "n" << std::setw(16) << "|L_n|" << std::setw(14)
            << "estimate" << '\n';
  for (std::size_t i = 0; i < r.lengths.size(); ++i) {
    std::cout << std::setw(4) << r.lengths[i] << std::setw(16) << r.counts[i]
              << std::setw(14) << fixed(r.estimates[i], 9) << '\n';
  }
  std::cout << "closed form      " << fixed(r.closed_form, 9) << ' ' << unit << '\n'
            << "density factor   " << fixed(r.density_factor, 9) << '\n'
            << "nonincreasing    " << (r.nonincreasing ? "yes" : "no") << '\n'
            << "above closed     " << (r.above_closed_form ? "yes" : "no") << '\n'
            << "submult. fails   " << r.submultiplicativity_failures.size() << '\n'
            << "B-free bound fails " << r.bfree_bound_failures.size() << '\n';
  return 0;
}

int cmd_ratio() {
  const auto B1 = resolve_bspec();
  bfree::BSpec B2 = !a_rat.b2_file.empty()
                        ? bfree::io::load_bspec(a_rat.b2_file)
                        : bfree::io::bspec_from_argument(a_rat.b2, g.prime_bound);
  const double r = bfree::entropy_ratio(B1, B2);
  if (json_out()) {
    print_json({{"ratio", fixed(r, 9)},
                {"closed_form_1", fixed(bfree::closed_form_entropy(B1), 9)},
                {"closed_form_2", fixed(bfree::closed_form_entropy(B2), 9)}});
  } else {
    std::cout << "ratio " << fixed(r, 9) << '\n';
  }
  return 0;
}

int cmd_words() {
  const auto B = resolve_bspec();
  bfree::CountOptions opts;
  opts.threads = g.threads;
  const std::uint64_t count = a_words.naive
                                  ? bfree::count_admissible_words_naive(B, a_words.n)
                                  : bfree::count_admissible_words(B, a_words.n, opts);
  std::vector<std::string> listing;
  if (a_words.list) {
    for (auto w : bfree::admissible_words(B, a_words.n)) {
      listing.push_back(word_string(w, a_words.n, 0));
    }
  }
  if (json_out()) {
    Json j{{"n", a_words.n}, {"count", count}};
    if (a_words.list) j["words"] = listing;
    print_json(j);
  } else {
    std::cout << "|L_" << a_words.n << "| = " << count << '\n';
    for (const auto& w : listing) std::cout << w << '\n';
  }
  return 0;
}

void print_search_table(const bfree::SearchReport& r) {
  std::cout << "rho " << r.params.radius << "  k " << r.params.period << "  n "
            << r.params.length << '\n'
            << "survivors " << r.survivors.size() << '\n';
  for (const auto& s : r.survivors) {
    std::cout << "  " << s.classification.describe() << '\n';
  }
  std::cout << "rejections\n";
  for (std::size_t i = 0; i < bfree::kRejectReasonCount; ++i) {
    std::cout << "  " << std::left << std::setw(26)
              << bfree::to_string(static_cast<bfree::RejectReason>(i)) << std::right
              << r.rejections[i] << '\n';
  }
  std::cout << "certificates " << r.certificates.size() << '\n'
            << "injectivity counterexamples " << r.injectivity_evidence.size() << '\n'
            << "unresolved " << r.unresolved.size() << '\n';
  for (const auto& u : r.unresolved) std::cout << "  UNRESOLVED " << u << '\n';
  std::cout << "nodes " << r.nodes << '\n'
            << "time " << fixed(r.seconds, 3) << " s\n";
}

int cmd_search() {
  const auto B = resolve_bspec();
  bfree::SearchOptions opts;
  opts.threads = g.threads;
  opts.radius_cap = a_search.rho_cap;
  opts.period_cap = a_search.k_cap;
  const auto r = bfree::search(B, {a_search.rho, a_search.k, a_search.n}, opts);
  std::cerr << "search: " << r.survivors.size() << " survivors, "
            << r.unresolved.size() << " unresolved, " << fixed(r.seconds, 3) << " s\n";
  if (json_out()) {
    print_json(bfree::io::search_report_to_json(B, r, a_search.timing));
  } else {
    print_search_table(r);
  }
  if (!a_search.out_dir.empty()) {
    bfree::io::write_bundle(a_search.out_dir, B, r);
    std::cerr << "bundle written to " << a_search.out_dir << '\n';
  }
  return r.unresolved.empty() ? 0 : 2;
}

int report_check(const bfree::io::BundleCheck& c) {
  if (json_out()) {
    print_json({{"certificates", c.certificates},
                {"certificates_ok", c.certificates_ok},
                {"injectivity_counterexamples", c.evidence},
                {"injectivity_ok", c.evidence_ok},
                {"failures", c.failures}});
  } else {
    std::cout << "certificates " << c.certificates_ok << "/" << c.certificates
              << " ok\n"
              << "injectivity counterexamples " << c.evidence_ok << "/" << c.evidence
              << " ok\n";
    for (const auto& f : c.failures) std::cout << "FAIL " << f << '\n';
  }
  return c.ok() ? 0 : 1;
}

int cmd_witness() {
  if (!a_wit.verify.empty()) {
    if (fs::is_directory(a_wit.verify)) {
      return report_check(bfree::io::verify_bundle(a_wit.verify));
    }
    return report_check(bfree::io::verify_certificate_file(a_wit.verify, resolve_bspec()));
  }
  if (a_wit.family_file.empty() || a_wit.kind.empty()) {
    throw bfree::Error(bfree::ErrorCode::InvalidArgument,
                       "witness needs --family and --kind (or --verify)");
  }
  const auto B = resolve_bspec();
  const auto F = bfree::io::family_from_json(bfree::io::read_json_file(a_wit.family_file));
  const auto kind = bfree::witness_kind_from_string(a_wit.kind);
  bfree::WitnessCertificate cert;
  switch (kind) {
    case bfree::WitnessKind::Trans1:
      cert = bfree::witness_trans1(F, B, a_wit.phase);
      break;
    case bfree::WitnessKind::Trans3:
      cert = bfree::witness_trans3(F, B, a_wit.phase, a_wit.base);
      break;
    case bfree::WitnessKind::NoExtra: {
      if (a_wit.window.empty()) {
        throw bfree::Error(bfree::ErrorCode::InvalidArgument,
                           "no-extra needs --window (bit string, leftmost cell first)");
      }
      const auto width = static_cast<std::size_t>(F.window_size());
      if (a_wit.window.size() != width ||
          a_wit.window.find_first_not_of("01") != std::string::npos) {
        throw bfree::Error(bfree::ErrorCode::ParseError,
                           "window must be " + std::to_string(width) + " bits");
      }
      std::uint32_t w = 0;
      for (char c : a_wit.window) w = (w << 1) | static_cast<std::uint32_t>(c == '1');
      cert = bfree::witness_noextra(F, B, a_wit.phase, w);
      break;
    }
    case bfree::WitnessKind::Periodic:
      cert = bfree::witness_periodic(F, B, a_wit.phase);
      break;
  }
  const bool ok = bfree::verify_certificate(F, B, cert);
  const auto j = bfree::io::certificate_to_json(cert);
  if (!a_wit.out.empty()) {
    bfree::io::write_json_file(a_wit.out, j);
    std::cerr << "certificate written to " << a_wit.out << '\n';
  }
  if (json_out()) {
    print_json(j);
  } else {
    std::cout << "construction " << bfree::to_string(cert.kind) << '\n'
              << "modulus      " << cert.modulus << '\n'
              << "phase        " << cert.phase << '\n'
              << "pattern      " << bfree::format_set(cert.pattern) << '\n'
              << "verified     " << (ok ? "yes" : "no") << '\n';
  }
  return ok ? 0 : 1;
}

int cmd_h2() {
  const auto B = resolve_bspec();
  const auto r = bfree::verify_h2_example(B, a_h2.t, a_h2.n);
  if (json_out()) {
    Json j{{"family", bfree::io::family_to_json(r.family)},
           {"t", r.translation},
           {"commutes_with_s2", r.commutes_with_s2},
           {"commutes_with_s", r.commutes_with_s},
           {"swaps_parity_classes", r.swaps_parity_classes},
           {"words_checked", r.words_checked}};
    if (r.s_counterexample) {
      j["s_counterexample"] = word_string(*r.s_counterexample, a_h2.n, 0);
    }
    print_json(j);
  } else {
    std::cout << "t                  " << r.translation << '\n'
              << "commutes with S^2  " << (r.commutes_with_s2 ? "yes" : "no") << '\n'
              << "commutes with S    " << (r.commutes_with_s ? "yes" : "no") << '\n';
    if (r.s_counterexample) {
      std::cout << "S counterexample   " << word_string(*r.s_counterexample, a_h2.n, 0)
                << '\n';
    }
    std::cout << "words checked      " << r.words_checked << '\n';
  }
  return r.commutes_with_s2 ? 0 : 1;
}

int cmd_reverse() {
  const auto B = resolve_bspec();
  bfree::SearchOptions opts;
  opts.threads = g.threads;
  const auto report = bfree::search(B, {a_rev.rho, a_rev.k, a_rev.n}, opts);
  const auto rev = bfree::reversing_elements(B, report);
  bool all = true;
  Json arr = Json::array();
  for (const auto& e : rev) {
    all = all && e.conjugates;
    arr.push_back({{"element", e.description},
                   {"conjugates", e.conjugates},
                   {"words_checked", e.words_checked}});
  }
  if (json_out()) {
    print_json({{"k", a_rev.k}, {"elements", arr}});
  } else {
    for (const auto& e : rev) {
      std::cout << std::left << std::setw(10) << e.description << std::right
                << (e.conjugates ? "conjugates S^k to S^-k" : "FAILS") << "  ("
                << e.words_checked << " words)\n";
    }
  }
  return all ? 0 : 1;
}

// ---- config round-trip ----

Json params_of(CLI::App* sub) {
  Json params = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->count() == 0) continue;
    const auto name = opt->get_single_name();
    if (opt->get_expected_min() == 0) {
      params[name] = true;
    } else {
      params[name] = opt->as<std::string>();
    }
  }
  return params;
}

std::vector<std::string> argv_from_config(const Json& cfg) {
  std::vector<std::string> args;
  if (cfg.contains("format")) args.insert(args.end(), {"--format", cfg["format"]});
  if (cfg.contains("seed")) {
    args.insert(args.end(), {"--seed", std::to_string(cfg["seed"].get<std::uint64_t>())});
  }
  if (cfg.contains("threads")) {
    args.insert(args.end(),
                {"--threads", std::to_string(cfg["threads"].get<unsigned>())});
  }
  args.push_back(cfg.at("command").get<std::string>());
  const Json params = cfg.value("params", Json::object());
  for (const auto& [key, value] : params.items()) {
    args.push_back("--" + key);
    if (!value.is_boolean()) args.push_back(value.get<std::string>());
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Erdos B-free subshifts: B-free sets, word counts, entropy, and "
               "a certificate-producing search of the full centraliser"};
  app.require_subcommand(0, 1);

  auto add_bspec = [](CLI::App* sub) {
    sub->add_option("--b", g.b_arg,
                    "B-spec: primes-sq, primes-cube, primes-4th, primes-pow:E, or a "
                    "list like 4,9,25,49");
    sub->add_option("--b-file", g.b_file, "B-spec JSON config file");
    sub->add_option("--prime-bound", g.prime_bound,
                    "prime bound for the primes-* aliases")
        ->capture_default_str();
  };

  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (results do not depend on it)")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "seed recorded in the run config")
      ->capture_default_str();
  app.add_option("--config", g.config_path, "replay a saved RunConfig JSON file");
  app.add_option("--save-config", g.save_config, "write this run's RunConfig JSON");

  auto* gen = app.add_subcommand("generate", "B-free integers in a range");
  add_bspec(gen);
  gen->add_option("--range", a_gen.range, "closed range lo:hi")->required();

  auto* adm = app.add_subcommand("admissible", "test a pattern for admissibility");
  add_bspec(adm);
  adm->add_option("--pattern", a_adm.pattern, "pattern like {0,1,3} or 1101@-2")
      ->required();

  auto* den = app.add_subcommand("density", "observed density on [-N, N]");
  add_bspec(den);
  den->add_option("--N", a_den.half_width, "half-width N")->capture_default_str();

  auto* ent = app.add_subcommand("entropy", "word counts and entropy estimates");
  add_bspec(ent);
  ent->add_option("--n-max", a_ent.n_max, "largest word length")->capture_default_str();
  ent->add_flag("--bits", a_ent.bits, "report entropy in bits instead of nats");

  auto* rat = app.add_subcommand("ratio", "ratio of closed-form entropies B / B2");
  add_bspec(rat);
  rat->add_option("--b2", a_rat.b2, "second B-spec");
  rat->add_option("--b2-file", a_rat.b2_file, "second B-spec JSON file");

  auto* words = app.add_subcommand("words", "count (or list) admissible words");
  add_bspec(words);
  words->add_option("--n", a_words.n, "word length")->capture_default_str();
  words->add_flag("--list", a_words.list, "list the words (n <= 20)");
  words->add_flag("--naive", a_words.naive, "count by testing all 2^n subsets");

  auto* srch = app.add_subcommand(
      "search", "search for block-code families in the full centraliser; exits 2 "
                "if any candidate is unresolved");
  add_bspec(srch);
  srch->add_option("--rho", a_search.rho, "radius")->capture_default_str();
  srch->add_option("--k", a_search.k, "period")->capture_default_str();
  srch->add_option("--n", a_search.n, "injectivity test length")->capture_default_str();
  srch->add_option("--rho-cap", a_search.rho_cap, "largest radius allowed")
      ->capture_default_str();
  srch->add_option("--k-cap", a_search.k_cap, "largest period allowed")
      ->capture_default_str();
  srch->add_option("--out-dir", a_search.out_dir, "write a certificate bundle here");
  srch->add_flag("--timing", a_search.timing, "include wall time in JSON output");

  auto* wit = app.add_subcommand("witness", "build or verify witness certificates");
  add_bspec(wit);
  wit->add_option("--family", a_wit.family_file, "family JSON {k, rho, tables}");
  wit->add_option("--kind", a_wit.kind, "trans1, trans3, no-extra or periodic");
  wit->add_option("--phase", a_wit.phase, "phase m")->capture_default_str();
  wit->add_option("--base", a_wit.base, "base phase for trans3")->capture_default_str();
  wit->add_option("--window", a_wit.window, "window bits for no-extra");
  wit->add_option("--out", a_wit.out, "write the certificate JSON here");
  wit->add_option("--verify", a_wit.verify,
                  "re-check a bundle directory or a certificate file");

  auto* h2 = app.add_subcommand(
      "h2", "identity on even-supported sets, +t on odd-supported sets");
  add_bspec(h2);
  h2->add_option("--t", a_h2.t, "translation of odd-supported sets")
      ->capture_default_str();
  h2->add_option("--n", a_h2.n, "word length checked")->capture_default_str();

  auto* rev = app.add_subcommand("reverse", "reversing elements R*S^t from a search");
  add_bspec(rev);
  rev->add_option("--rho", a_rev.rho, "radius")->capture_default_str();
  rev->add_option("--k", a_rev.k, "period")->capture_default_str();
  rev->add_option("--n", a_rev.n, "test length")->capture_default_str();

  try {
    app.parse(argc, argv);
    if (!g.config_path.empty()) {
      const auto cfg = bfree::io::read_json_file(g.config_path);
      if (cfg.value("schema_version", bfree::io::kSchemaVersion) !=
          bfree::io::kSchemaVersion) {
        throw bfree::Error(bfree::ErrorCode::ParseError, "unsupported schema_version");
      }
      if (cfg.contains("bspec")) g.config_bspec = bfree::io::bspec_from_json(cfg["bspec"]);
      auto merged = cfg;
      // Flags given on the command line win over the stored ones.
      if (app.get_option("--format")->count() > 0) merged["format"] = g.format;
      if (app.get_option("--threads")->count() > 0) merged["threads"] = g.threads;
      auto args = argv_from_config(merged);
      const std::string save = g.save_config;
      app.clear();
      g.config_path.clear();
      std::reverse(args.begin(), args.end());
      app.parse(args);
      if (!save.empty()) g.save_config = save;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const bfree::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }

  if (app.get_subcommands().empty()) {
    std::cerr << "a subcommand (or --config) is required\n" << app.help();
    return 106;
  }
  CLI::App* sub = app.get_subcommands().front();

  try {
    if (!g.save_config.empty()) {
      Json cfg;
      cfg["schema_version"] = bfree::io::kSchemaVersion;
      cfg["command"] = sub->get_name();
      if (!g.b_arg.empty() || !g.b_file.empty() || g.config_bspec) {
        cfg["bspec"] = bfree::io::bspec_to_json(resolve_bspec());
      }
      Json params = params_of(sub);
      params.erase("b");
      params.erase("b-file");
      params.erase("prime-bound");
      cfg["params"] = params;
      cfg["format"] = g.format;
      cfg["seed"] = g.seed;
      bfree::io::write_json_file(g.save_config, cfg);
      std::cerr << "config written to " << g.save_config << '\n';
    }

    const auto& name = sub->get_name();
    if (name == "generate") return cmd_generate();
    if (name == "admissible") return cmd_admissible();
    if (name == "density") return cmd_density();
    if (name == "entropy") return cmd_entropy();
    if (name == "ratio") return cmd_ratio();
    if (name == "words") return cmd_words();
    if (name == "search") return cmd_search();
    if (name == "witness") return cmd_witness();
    if (name == "h2") return cmd_h2();
    if (name == "reverse") return cmd_reverse();
  } catch (const bfree::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
