#include "helpers.hpp"

#include <algorithm>

#include "bfree/blockcode.hpp"
#include "bfree/centralizer.hpp"
#include "bfree/io.hpp"
#include "bfree/language.hpp"

using namespace bfree;

namespace {

std::vector<std::string> names(const SearchReport& r) {
  std::vector<std::string> out;
  for (const auto& s : r.survivors) out.push_back(s.classification.describe());
  return out;
}

std::vector<std::string> shift_names(int rho) {
  std::vector<std::string> out;
  for (int t = -rho; t <= rho; ++t) out.push_back("S^" + std::to_string(t));
  return out;
}

void check_all_certificates(const SearchReport& r, const BSpec& B) {
  for (const auto& c : r.certificates) {
    INFO(to_string(c.kind));
    CHECK(certificate_problem(c.family, B, c) == "");
  }
  for (const auto& e : r.injectivity_evidence) CHECK(io::check_evidence(e));
}

}  // namespace

TEST_SUITE("centralizer") {

TEST_CASE("radius 0 leaves only the identity") {
  auto B = test::small_squares();
  auto r = search(B, {0, 1, 8});
  CHECK(names(r) == shift_names(0));
  CHECK(r.unresolved.empty());
  // constant 1 and negation move the empty set, constant 0 erases {0}
  CHECK(r.rejection_count(RejectReason::EmptySetMoved) == 1);
  CHECK(r.rejection_count(RejectReason::EmptySingletonImage) == 1);
  check_all_certificates(r, B);
}

TEST_CASE("radius 1 and 2 searches give the shifts") {
  auto B = test::small_squares();
  auto r1 = search(B, {1, 1, 10});
  CHECK(names(r1) == shift_names(1));
  auto r2 = search(B, {2, 3, 12});
  CHECK(names(r2) == shift_names(2));
  CHECK(r2.unresolved.empty());
  check_all_certificates(r1, B);
  check_all_certificates(r2, B);
  // survivors are stored with 0 on non-admissible windows
  for (const auto& s : r2.survivors) {
    CHECK(same_action(s.family, shift_family(s.classification.shift, 3, 2), B, 12));
    CHECK_FALSE(s.family == shift_family(s.classification.shift, 3, 2));
  }
}

TEST_CASE("degenerate case at even period gives the parity maps") {
  auto B = test::degenerate();
  auto r = search(B, {2, 2, 12});
  CHECK(r.survivors.size() == 13);
  CHECK(r.unresolved.empty());
  std::vector<ParityMap> got;
  for (const auto& s : r.survivors) got.push_back(s.classification.as_parity_map());
  std::sort(got.begin(), got.end());
  std::vector<ParityMap> want;
  for (int u = -2; u <= 2; ++u) {
    for (int v = -2; v <= 2; ++v) {
      if ((u - v) % 2 == 0) want.push_back({u, v});
    }
  }
  CHECK(got == want);
  check_all_certificates(r, B);
}

TEST_CASE("degenerate case at odd period gives shifts only") {
  auto B = test::degenerate();
  for (int k : {1, 3}) {
    auto r = search(B, {2, k, 12});
    CHECK(names(r) == shift_names(2));
    check_all_certificates(r, B);
  }
}

TEST_CASE("search argument checks") {
  auto B = test::small_squares();
  CHECK_ERROR_CODE(search(B, {4, 1, 12}), ErrorCode::CapExceeded);
  CHECK_ERROR_CODE(search(B, {1, 5, 12}), ErrorCode::CapExceeded);
  CHECK_ERROR_CODE(search(B, {2, 1, 4}), ErrorCode::PreconditionViolated);
  CHECK_ERROR_CODE(search(B, {1, 1, 21}), ErrorCode::LengthTooLarge);
  CHECK_ERROR_CODE(search(validate_bspec({4}), {1, 1, 8}), ErrorCode::TruncationInadequate);
  CHECK_ERROR_CODE(search(validate_bspec({4, 9}), {2, 3, 8}),
                   ErrorCode::TruncationInadequate);
}

TEST_CASE("search result does not depend on thread count") {
  auto B = test::degenerate();
  SearchOptions one;
  SearchOptions many;
  many.threads = 4;
  const auto a = io::search_report_to_json(B, search(B, {2, 2, 12}, one)).dump();
  const auto b = io::search_report_to_json(B, search(B, {2, 2, 12}, many)).dump();
  CHECK(a == b);
}

TEST_CASE("survivors at a divisor period embed") {
  for (const auto& B : {test::small_squares(), test::degenerate()}) {
    auto small = search(B, {1, 1, 10});
    auto big = search(B, {1, 2, 10});
    for (const auto& s : small.survivors) {
      auto widened = widen_family(s.family, 2, 1);
      const bool found = std::any_of(big.survivors.begin(), big.survivors.end(),
                                     [&](const Survivor& t) {
                                       return same_action(widened, t.family, B, 10);
                                     });
      CHECK(found);
    }
  }
}

TEST_CASE("survivors are pairwise distinct") {
  auto B = test::degenerate();
  auto r = search(B, {2, 2, 12});
  for (std::size_t i = 0; i < r.survivors.size(); ++i) {
    for (std::size_t j = i + 1; j < r.survivors.size(); ++j) {
      CHECK_FALSE(same_action(r.survivors[i].family, r.survivors[j].family, B, 12));
    }
  }
}

TEST_CASE("classify_survivor") {
  auto B = test::small_squares();
  auto id = classify_survivor(shift_family(0, 1, 1), B, 8);
  CHECK(id.kind == Classification::Kind::Shift);
  CHECK(id.shift == 0);
  auto s2 = classify_survivor(shift_family(2, 2, 2), B, 8);
  CHECK(s2.kind == Classification::Kind::Shift);
  CHECK(s2.shift == 2);
  auto h2 = classify_survivor(parity_family(0, 2, 2), test::degenerate(), 8);
  CHECK(h2.kind == Classification::Kind::Parity);
  CHECK(h2.parity == ParityMap{0, 2});
  CHECK(h2.describe() == "P(0,2)");
  BlockCodeFamily zero(1, 1);
  CHECK(classify_survivor(zero, B, 8).kind == Classification::Kind::Unknown);
  CHECK(Classification{Classification::Kind::Shift, 1, {}}.as_parity_map() ==
        ParityMap{-1, -1});
}

TEST_CASE("parity_family") {
  auto F = parity_family(0, 2, 2);
  CHECK(apply_to_pattern(F, FinitePattern({1, 3}, {0, 6})).support() ==
        std::vector<Int>{3, 5});
  CHECK(apply_to_pattern(F, FinitePattern({0, 4}, {0, 6})).support() ==
        std::vector<Int>{0, 4});
  CHECK(parity_family(-1, -1, 1) == shift_family(1, 2, 1));
  CHECK_ERROR_CODE(parity_family(0, 1, 2), ErrorCode::OddTranslation);
  CHECK_ERROR_CODE(parity_family(0, 2, 1), ErrorCode::RadiusTooSmall);
}

TEST_CASE("reversing elements") {
  auto B = test::small_squares();
  for (int rho = 0; rho <= 2; ++rho) {
    auto r = search(B, {rho, 2, 10});
    auto rev = reversing_elements(B, r);
    CHECK(rev.size() == static_cast<std::size_t>(2 * rho + 1));
    for (const auto& e : rev) {
      CHECK(e.conjugates);
      CHECK(e.words_checked > 0);
    }
  }
  auto r = search(B, {1, 1, 10});
  auto rev = reversing_elements(B, r);
  CHECK(rev[1].description == "R*S^0");
  auto d = search(test::degenerate(), {2, 2, 12});
  auto drev = reversing_elements(test::degenerate(), d);
  CHECK(drev.size() == 13);
  for (const auto& e : drev) CHECK(e.conjugates);
}

TEST_CASE("h2 example") {
  auto B = test::degenerate();
  auto zero = verify_h2_example(B, 0, 10);
  CHECK(zero.commutes_with_s);
  CHECK(zero.commutes_with_s2);
  auto two = verify_h2_example(B, 2, 10);
  CHECK(two.commutes_with_s2);
  CHECK_FALSE(two.commutes_with_s);
  CHECK(two.s_counterexample);
  CHECK(two.swaps_parity_classes);
  CHECK(two.family == parity_family(0, 2, 2));
  CHECK_ERROR_CODE(verify_h2_example(B, 1, 10), ErrorCode::OddTranslation);
  CHECK_ERROR_CODE(verify_h2_example(test::small_squares(), 2, 10),
                   ErrorCode::PreconditionViolated);
  CHECK_ERROR_CODE(verify_h2_example(B, 2, 2), ErrorCode::PreconditionViolated);
}

TEST_CASE("reason names") {
  CHECK(to_string(RejectReason::CreatesPoint) == "creates-point");
  CHECK(to_string(RejectReason::NotInjective) == "not-injective");
}

}  // TEST_SUITE
