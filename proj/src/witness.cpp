#include "bfree/witness.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "bfree/error.hpp"

namespace bfree {

std::string_view to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::Trans1: return "trans1";
    case WitnessKind::Trans3: return "trans3";
    case WitnessKind::NoExtra: return "no-extra";
    case WitnessKind::Periodic: return "periodic";
  }
  return "unknown";
}

WitnessKind witness_kind_from_string(std::string_view name) {
  if (name == "trans1") return WitnessKind::Trans1;
  if (name == "trans3") return WitnessKind::Trans3;
  if (name == "no-extra" || name == "noextra") return WitnessKind::NoExtra;
  if (name == "periodic") return WitnessKind::Periodic;
  throw Error(ErrorCode::ParseError,
              "unknown witness kind '" + std::string(name) + "'");
}

namespace {

bool far_from_all(Int x, const std::vector<Int>& others, int radius) {
  return std::all_of(others.begin(), others.end(), [&](Int y) {
    return std::llabs(x - y) > 2 * static_cast<Int>(radius);
  });
}

// Smallest non-negative member of each CRT class that keeps every gap to
// `avoid` and to the points chosen so far above 2 rho.
std::vector<AuditEntry> place_points(
    const std::vector<std::vector<Congruence>>& systems, std::vector<Int> avoid,
    int radius) {
  std::vector<AuditEntry> out;
  for (const auto& system : systems) {
    const auto sol = crt_solve(system);
    Int x = sol.residue;
    while (!far_from_all(x, avoid, radius)) x += sol.modulus;
    avoid.push_back(x);
    std::vector<Congruence> reduced;
    for (const auto& c : system) {
      if (c.modulus > 1) reduced.push_back({mod(c.residue, c.modulus), c.modulus});
    }
    out.push_back({x, std::move(reduced)});
  }
  return out;
}

// Fills pattern, image residues and checks the claims; a failure here means
// the defect passed in does not hold for F.
void finish(WitnessCertificate& cert, const BSpec& B) {
  std::vector<Int> points = cert.core;
  for (const auto& a : cert.audit) {
    cert.spread.push_back(a.point);
    points.push_back(a.point);
  }
  if (cert.kind != WitnessKind::Periodic) cert.pattern = FinitePattern(points);
  const auto image = apply_to_pattern(cert.family, cert.pattern);
  cert.image_residues = occupied_residues(image, cert.modulus);
  const std::string problem = certificate_problem(cert.family, B, cert);
  if (!problem.empty()) {
    throw Error(ErrorCode::PreconditionViolated,
                std::string(to_string(cert.kind)) +
                    " construction does not refute the family: " + problem);
  }
}

SingletonProfile profile_or_throw(const BlockCodeFamily& F) {
  auto prof = singleton_profile(F);
  if (prof.empty_set_moved) {
    throw Error(ErrorCode::PreconditionViolated, "family moves the empty set");
  }
  return prof;
}

void check_phase(const BlockCodeFamily& F, int phase) {
  if (phase < 0 || phase >= F.period()) {
    throw Error(ErrorCode::InvalidArgument, "phase outside [0, k)");
  }
}

}  // namespace

WitnessCertificate witness_trans1(const BlockCodeFamily& F, const BSpec& B,
                                  int phase) {
  check_phase(F, phase);
  const auto prof = profile_or_throw(F);
  const auto& image = prof.images[phase];
  if (image.kind != SingletonKind::MultiPoint) {
    throw Error(ErrorCode::PreconditionViolated,
                "singleton image at phase " + std::to_string(phase) +
                    " is not multi-point");
  }
  const Int k = F.period();
  const Int gap = image.offsets[1] - image.offsets[0];
  const Int c = find_coprime_element(B, k, [&](Int b) { return gap % b != 0; });

  std::vector<Congruence> common{{phase, k}};
  for (Int b : B.elements_up_to(c - 1)) {
    if (gcd(b, k) == 1) common.push_back({0, b});
  }
  std::vector<std::vector<Congruence>> systems;
  for (Int i = 1; i < c; ++i) {
    auto sys = common;
    sys.insert(sys.begin(), Congruence{i, c});
    systems.push_back(std::move(sys));
  }

  WitnessCertificate cert;
  cert.kind = WitnessKind::Trans1;
  cert.family = F;
  cert.modulus = c;
  cert.phase = phase;
  cert.audit = place_points(systems, {}, F.radius());
  finish(cert, B);
  return cert;
}

WitnessCertificate witness_trans3(const BlockCodeFamily& F, const BSpec& B,
                                  int phase, int base) {
  check_phase(F, phase);
  check_phase(F, base);
  const auto prof = profile_or_throw(F);
  const auto t = prof.translations();
  if (!t) {
    throw Error(ErrorCode::PreconditionViolated,
                "singleton images are not all singletons");
  }
  const Int k = F.period();
  const Int shift = (*t)[phase] - (*t)[base];
  if (shift == 0) {
    throw Error(ErrorCode::PreconditionViolated,
                "phases translate uniformly, nothing to refute");
  }
  if (B.contains(2) && k % 2 == 0 && (phase - base) % 2 != 0) {
    throw Error(ErrorCode::DegenerateCase,
                "2 in B with even k: even and odd phases may translate "
                "differently");
  }
  const Int c = find_coprime_element(
      B, k, [&](Int b) { return b > 2 && shift % b != 0; });

  std::vector<Congruence> small;
  for (Int b : B.elements_up_to(c - 1)) {
    if (gcd(b, k) == 1) small.push_back({0, b});
  }
  std::vector<std::vector<Congruence>> systems;
  for (Int i = 1; i < c; ++i) {
    std::vector<Congruence> sys{{i, c}, {base, k}};
    sys.insert(sys.end(), small.begin(), small.end());
    systems.push_back(std::move(sys));
  }
  std::vector<Congruence> extra{{-shift, c}, {phase, k}};
  extra.insert(extra.end(), small.begin(), small.end());
  systems.push_back(std::move(extra));

  WitnessCertificate cert;
  cert.kind = WitnessKind::Trans3;
  cert.family = F;
  cert.modulus = c;
  cert.phase = phase;
  cert.audit = place_points(systems, {}, F.radius());
  finish(cert, B);
  return cert;
}

WitnessCertificate witness_noextra(const BlockCodeFamily& F, const BSpec& B,
                                   int phase, std::uint32_t window) {
  check_phase(F, phase);
  const int rho = F.radius();
  if (window >= F.table_size()) {
    throw Error(ErrorCode::InvalidArgument, "window index out of range");
  }
  const auto prof = profile_or_throw(F);
  const auto t = prof.translations();
  if (!t) {
    throw Error(ErrorCode::PreconditionViolated,
                "singleton images are not all singletons");
  }
  const int k = F.period();
  const bool uniform = std::all_of(t->begin(), t->end(),
                                   [&](Int x) { return x == t->front(); });
  bool parity = false;
  if (!uniform && B.contains(2) && k % 2 == 0) {
    parity = true;
    for (int m = 0; m < k; ++m) parity = parity && (*t)[m] == (*t)[m % 2];
  }
  if (!uniform && !parity) {
    throw Error(ErrorCode::PreconditionViolated,
                "singleton translations are neither uniform nor parity-split");
  }
  // Translation applied to a point at position x.
  auto translation = [&](Int x) { return uniform ? t->front() : (*t)[mod(x, 2)]; };

  if (F.entry(phase, window) != 1) {
    throw Error(ErrorCode::PreconditionViolated, "window maps to 0");
  }
  const auto offsets = window_support(window, rho);
  if (offsets.empty()) {
    throw Error(ErrorCode::PreconditionViolated,
                "zero window; use the periodic witness");
  }
  const Int out = phase;
  std::vector<Int> core;
  for (int d : offsets) core.push_back(out + d);
  if (!is_admissible(FinitePattern(core), B).admissible) {
    throw Error(ErrorCode::PreconditionViolated, "window is not admissible");
  }
  // The output at `out` would be the image of cell out - t(source); that
  // cell must be empty for the output to be a created point.
  const Int source = out - translation(out - (*t)[0]);
  if (std::find(core.begin(), core.end(), source) != core.end()) {
    throw Error(ErrorCode::PreconditionViolated,
                "source cell is occupied, the output is not a created point");
  }

  const Int anchor = core.front();
  const Int spread_shift = translation(anchor);
  const Int c = [&] {
    for (Int b : B.elements()) {
      if (b <= 2 * rho || b == 2) continue;
      bool clear = true;
      for (Int y : core) clear = clear && mod(y - (out - spread_shift), b) != 0;
      if (clear) return b;
    }
    throw Error(ErrorCode::NotFoundInTruncation,
                "no c > 2 rho in B keeps the window off the free residue");
  }();

  std::vector<Congruence> common;
  for (Int b : B.elements_up_to(c + 2 * rho)) {
    if (b != c) common.push_back({anchor, b});
  }
  std::vector<std::vector<Congruence>> systems;
  for (Int i = 1; i < c; ++i) {
    std::vector<Congruence> sys{{out - spread_shift + i, c}};
    sys.insert(sys.end(), common.begin(), common.end());
    systems.push_back(std::move(sys));
  }
  auto avoid = core;
  avoid.push_back(out);

  WitnessCertificate cert;
  cert.kind = WitnessKind::NoExtra;
  cert.family = F;
  cert.modulus = c;
  cert.phase = phase;
  cert.core = core;
  cert.audit = place_points(systems, avoid, rho);
  finish(cert, B);
  return cert;
}

WitnessCertificate witness_periodic(const BlockCodeFamily& F, const BSpec& B,
                                    int phase) {
  check_phase(F, phase);
  if (F.entry(phase, 0) != 1) {
    throw Error(ErrorCode::PreconditionViolated,
                "zero window maps to 0 at this phase");
  }
  const Int k = F.period();
  const Int c = find_coprime_element(B, k);
  WitnessCertificate cert;
  cert.kind = WitnessKind::Periodic;
  cert.family = F;
  cert.modulus = c;
  cert.phase = phase;
  cert.pattern = FinitePattern({}, {phase, phase + c * k - 1});
  finish(cert, B);
  return cert;
}

std::string certificate_problem(const BlockCodeFamily& F, const BSpec& B,
                                const WitnessCertificate& cert) {
  if (!(F == cert.family)) return "certificate refers to another family";
  if (!B.contains(cert.modulus)) return "modulus is not an element of B";
  const int rho = F.radius();

  std::vector<Int> points = cert.core;
  points.insert(points.end(), cert.spread.begin(), cert.spread.end());
  std::sort(points.begin(), points.end());
  if (points != cert.pattern.support()) {
    return "pattern is not the union of core and spread points";
  }
  if (cert.audit.size() != cert.spread.size()) return "audit size mismatch";
  for (std::size_t i = 0; i < cert.audit.size(); ++i) {
    const auto& entry = cert.audit[i];
    if (entry.point != cert.spread[i]) return "audit lists a different point";
    for (const auto& c : entry.congruences) {
      if (c.modulus < 1 || mod(entry.point, c.modulus) != mod(c.residue, c.modulus)) {
        return "point " + std::to_string(entry.point) + " violates " +
               std::to_string(c.residue) + " mod " + std::to_string(c.modulus);
      }
    }
  }
  for (std::size_t i = 0; i < cert.spread.size(); ++i) {
    for (std::size_t j = 0; j < cert.spread.size(); ++j) {
      if (i != j && std::llabs(cert.spread[i] - cert.spread[j]) <= 2 * rho) {
        return "spread points closer than 2 rho + 1";
      }
    }
    if (!far_from_all(cert.spread[i], cert.core, rho)) {
      return "spread point too close to the core";
    }
  }
  if (!is_admissible(cert.pattern, B).admissible) return "pattern not admissible";

  const auto image = apply_to_pattern(F, cert.pattern);
  const auto residues = occupied_residues(image, cert.modulus);
  if (residues != cert.image_residues) return "image residues differ";
  if (static_cast<Int>(residues.size()) != cert.modulus) {
    return "image misses a residue class";
  }
  return {};
}

bool verify_certificate(const BlockCodeFamily& F, const BSpec& B,
                        const WitnessCertificate& cert) {
  return certificate_problem(F, B, cert).empty();
}

}  // namespace bfree
