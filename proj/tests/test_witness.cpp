#include "helpers.hpp"

#include <algorithm>
#include <numeric>

#include "bfree/blockcode.hpp"
#include "bfree/centralizer.hpp"
#include "bfree/witness.hpp"

using namespace bfree;

namespace {

BlockCodeFamily or_code() {
  BlockCodeFamily F(1, 1);
  for (std::uint32_t w = 0; w < 8; ++w) {
    F.set_entry(0, w, window_cell(w, 1, 0) | window_cell(w, 1, 1));
  }
  return F;
}

// Identity, except the window 101 (both neighbours set, centre clear) gives 1.
BlockCodeFamily creating_code() {
  auto F = shift_family(0, 1, 1);
  F.set_entry(0, 0b101, 1);
  return F;
}

// Identity except window 100: the singleton {m} then maps to {m, m + 1}.
BlockCodeFamily left_neighbour_code() {
  auto F = shift_family(0, 1, 1);
  F.set_entry(0, 0b100, 1);
  return F;
}

void check_shape(const WitnessCertificate& c, const BlockCodeFamily& F, const BSpec& B) {
  CHECK(verify_certificate(F, B, c));
  CHECK(certificate_problem(F, B, c).empty());
  CHECK(B.contains(c.modulus));
  CHECK(is_admissible(c.pattern, B).admissible);
  const auto image = apply_to_pattern(F, c.pattern);
  CHECK(static_cast<Int>(occupied_residues(image, c.modulus).size()) == c.modulus);
  CHECK_FALSE(is_admissible(image, B).admissible);
  const Int gap = 2 * F.radius();
  for (std::size_t i = 0; i < c.spread.size(); ++i) {
    for (std::size_t j = i + 1; j < c.spread.size(); ++j) {
      CHECK(std::abs(c.spread[i] - c.spread[j]) > gap);
    }
  }
  for (Int s : c.spread) {
    for (Int y : c.core) CHECK(std::abs(s - y) > gap);
  }
  for (const auto& a : c.audit) {
    for (const auto& q : a.congruences) CHECK(bfree::mod(a.point - q.residue, q.modulus) == 0);
  }
}

}  // namespace

TEST_SUITE("witnesses") {

TEST_CASE("trans1 for the or-code") {
  auto B = test::small_squares();
  auto F = or_code();
  auto c = witness_trans1(F, B, 0);
  CHECK(c.kind == WitnessKind::Trans1);
  CHECK(c.modulus == 4);
  CHECK(c.spread.size() == 3);
  check_shape(c, F, B);
  for (std::size_t i = 0; i < c.spread.size(); ++i) {
    CHECK(bfree::mod(c.spread[i], c.modulus) == static_cast<Int>(i + 1));
  }
}

TEST_CASE("trans1 needs a multi-point singleton") {
  auto B = test::small_squares();
  CHECK_ERROR_CODE(witness_trans1(shift_family(1, 1, 1), B, 0),
                   ErrorCode::PreconditionViolated);
}

TEST_CASE("trans1 skips moduli dividing the offset gap or sharing a factor with k") {
  auto B = test::small_squares();
  // phase 0 of a k=2 family whose singleton image is {-2, 2}: gap 4
  BlockCodeFamily F(2, 2);
  F.set_entry(0, singleton_window(2, 2), 1);
  F.set_entry(0, singleton_window(2, -2), 1);
  auto c = witness_trans1(F, B, 0);
  CHECK(c.modulus == 9);
  check_shape(c, F, B);
}

TEST_CASE("trans3 for a parity split without 2 in B") {
  auto B = test::small_squares();
  auto F = parity_family(0, 2, 2);
  auto c = witness_trans3(F, B, 1, 0);
  CHECK(c.kind == WitnessKind::Trans3);
  CHECK(c.modulus >= 9);
  CHECK(std::gcd(c.modulus, Int{2}) == 1);
  check_shape(c, F, B);
}

TEST_CASE("trans3 errors") {
  CHECK_ERROR_CODE(witness_trans3(parity_family(0, 2, 2), test::degenerate(), 1, 0),
                   ErrorCode::DegenerateCase);
  CHECK_ERROR_CODE(witness_trans3(shift_family(1, 2, 1), test::small_squares(), 1, 0),
                   ErrorCode::PreconditionViolated);
}

TEST_CASE("no-extra for a code that creates a point") {
  auto B = test::small_squares();
  auto F = creating_code();
  auto c = witness_noextra(F, B, 0, 0b101);
  CHECK(c.kind == WitnessKind::NoExtra);
  // smallest c in B above 2 rho = 2 whose classes avoid the core
  CHECK(c.modulus == 4);
  CHECK(c.core == std::vector<Int>{-1, 1});
  CHECK(c.pattern.size() == c.core.size() + static_cast<std::size_t>(c.modulus) - 1);
  check_shape(c, F, B);
}

TEST_CASE("no-extra needs an offending window") {
  auto B = test::small_squares();
  CHECK_ERROR_CODE(witness_noextra(shift_family(0, 1, 1), B, 0, 0b101),
                   ErrorCode::PreconditionViolated);
  // a singleton window that outputs 1 is a multi-point defect instead
  auto F = left_neighbour_code();
  CHECK_ERROR_CODE(witness_noextra(F, B, 0, 0b100), ErrorCode::PreconditionViolated);
  auto c = witness_trans1(F, B, 0);
  check_shape(c, F, B);
}

TEST_CASE("periodic witness for a code that moves the empty set") {
  auto B = test::small_squares();
  BlockCodeFamily F(3, 1);
  F.set_entry(1, 0, 1);
  auto c = witness_periodic(F, B, 1);
  CHECK(c.kind == WitnessKind::Periodic);
  CHECK(c.pattern.empty());
  CHECK(c.modulus == 4);
  check_shape(c, F, B);
  CHECK_ERROR_CODE(witness_periodic(shift_family(0, 1, 1), B, 0),
                   ErrorCode::PreconditionViolated);
}

TEST_CASE("verification catches tampering") {
  auto B = test::small_squares();
  auto F = or_code();
  auto c = witness_trans1(F, B, 0);

  auto moved = c;
  auto s = moved.spread;
  s.back() += 1;
  moved.spread = s;
  auto support = moved.core;
  support.insert(support.end(), s.begin(), s.end());
  std::sort(support.begin(), support.end());
  moved.pattern = FinitePattern(support);
  CHECK_FALSE(verify_certificate(F, B, moved));

  auto foreign = c;
  foreign.modulus = 121;
  CHECK_FALSE(verify_certificate(F, B, foreign));

  auto other = c;
  CHECK_FALSE(verify_certificate(shift_family(0, 1, 1), B, other));

  auto residues = c;
  residues.image_residues.pop_back();
  CHECK_FALSE(verify_certificate(F, B, residues));

  auto audit = c;
  audit.audit.front().congruences.front().residue += 1;
  CHECK_FALSE(verify_certificate(F, B, audit));
}

TEST_CASE("witness images split into pointwise images") {
  auto B = test::small_squares();
  for (const auto& [F, c] : {std::pair{or_code(), witness_trans1(or_code(), B, 0)},
                             std::pair{creating_code(),
                                       witness_noextra(creating_code(), B, 0, 0b101)}}) {
    std::vector<Int> pieces;
    for (Int s : c.spread) {
      auto img = apply_to_pattern(F, FinitePattern({s})).support();
      pieces.insert(pieces.end(), img.begin(), img.end());
    }
    if (!c.core.empty()) {
      auto img = apply_to_pattern(F, FinitePattern(c.core)).support();
      pieces.insert(pieces.end(), img.begin(), img.end());
    }
    std::sort(pieces.begin(), pieces.end());
    pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
    CHECK(apply_to_pattern(F, c.pattern).support() == pieces);
  }
}

TEST_CASE("witness kind names") {
  CHECK(to_string(WitnessKind::NoExtra) == "no-extra");
  CHECK(witness_kind_from_string("trans3") == WitnessKind::Trans3);
  CHECK_ERROR_CODE(witness_kind_from_string("bogus"), ErrorCode::ParseError);
}

}  // TEST_SUITE
