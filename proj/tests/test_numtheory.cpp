#include "helpers.hpp"

#include <numeric>

using namespace bfree;
using bfree::test::kSeed;

TEST_SUITE("numtheory") {

TEST_CASE("validate_bspec accepts pairwise coprime lists") {
  auto B = validate_bspec({4, 9, 25, 49});
  CHECK(B.elements().size() == 4);
  CHECK(B.max_element() == 49);
  CHECK_FALSE(B.thin_declared());
  auto D = validate_bspec({2, 9, 25});
  CHECK(D.contains(2));
  CHECK_FALSE(D.contains(4));
}

TEST_CASE("validate_bspec rejects bad input") {
  CHECK_ERROR_CODE(validate_bspec({4, 6}), ErrorCode::NotCoprime);
  CHECK_ERROR_CODE(validate_bspec({1, 4}), ErrorCode::ContainsOne);
  CHECK_ERROR_CODE(validate_bspec({9, 4}), ErrorCode::RepeatedOrUnordered);
  CHECK_ERROR_CODE(validate_bspec({4, 4}), ErrorCode::RepeatedOrUnordered);
  CHECK_ERROR_CODE(validate_bspec({}), ErrorCode::EmptySpec);
  CHECK_ERROR_CODE(validate_bspec({0, 4}), ErrorCode::RepeatedOrUnordered);
  try {
    validate_bspec({4, 6});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("(4,6)") != std::string::npos);
  }
}

TEST_CASE("validate_bspec rejects any list with two even numbers") {
  CHECK_ERROR_CODE(validate_bspec({2, 9, 16}), ErrorCode::NotCoprime);
  CHECK_ERROR_CODE(validate_bspec({4, 25, 36}), ErrorCode::NotCoprime);
}

TEST_CASE("prime powers generator") {
  auto B = prime_powers(2, 100);
  std::vector<Int> expect;
  for (Int p : primes_up_to(100)) expect.push_back(p * p);
  CHECK(std::vector<Int>(B.elements().begin(), B.elements().end()) == expect);
  CHECK(B.elements().size() == 25);
  CHECK(B.generator().kind == GeneratorKind::PrimePowers);
  CHECK(B.thin_declared());
  Generator g{GeneratorKind::PrimePowers, 2, 10};
  CHECK_ERROR_CODE(validate_bspec({4, 9, 25}, g), ErrorCode::GeneratorMismatch);
  CHECK_NOTHROW(validate_bspec({4, 9, 25, 49}, g));
  CHECK(primes_up_to(10000).size() == 1229);
}

TEST_CASE("crt_solve examples") {
  std::vector<Congruence> a{{2, 3}, {3, 5}};
  auto s = crt_solve(a);
  CHECK(s.residue == 8);
  CHECK(s.modulus == 15);
  std::vector<Congruence> b{{0, 7}};
  CHECK(crt_solve(b).residue == 0);
  CHECK(crt_solve(b).modulus == 7);
  std::vector<Congruence> c{{1, 4}, {2, 9}, {3, 25}};
  CHECK(crt_solve(c).residue == 353);
  CHECK(crt_solve(c).modulus == 900);
  std::vector<Congruence> empty;
  CHECK(crt_solve(empty).residue == 0);
  CHECK(crt_solve(empty).modulus == 1);
}

TEST_CASE("crt_solve errors") {
  std::vector<Congruence> bad{{1, 4}, {0, 6}};
  CHECK_ERROR_CODE(crt_solve(bad), ErrorCode::ModuliNotCoprime);
  std::vector<Congruence> big{{0, 1000003}, {0, 1000033}, {0, 1000037}, {0, 1000039}};
  CHECK_ERROR_CODE(crt_solve(big), ErrorCode::Overflow);
  CHECK_ERROR_CODE(crt_solve(big, Int{1} << 40), ErrorCode::Overflow);
  std::vector<Congruence> fits{{5, 1000003}, {7, 1000033}};
  CHECK_NOTHROW(crt_solve(fits, Int{1} << 40));
}

TEST_CASE("crt_solve reduces negative and large residues") {
  std::vector<Congruence> sys{{-1, 4}, {20, 9}};
  auto s = crt_solve(sys);
  CHECK(s.residue % 4 == 3);
  CHECK(s.residue % 9 == 2);
}

TEST_CASE("crt_solve matches brute force on random systems") {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<Int> pick(2, 60);
  int checked = 0;
  while (checked < 1000) {
    std::vector<Congruence> sys;
    Int M = 1;
    const int len = static_cast<int>(rng() % 3) + 1;
    for (int i = 0; i < len; ++i) {
      Int m = pick(rng);
      if (std::gcd(m, M) != 1 || M * m > 10000) continue;
      sys.push_back({static_cast<Int>(rng() % 1000) - 500, m});
      M *= m;
    }
    if (sys.empty()) continue;
    auto s = crt_solve(sys);
    REQUIRE(s.modulus == M);
    Int brute = -1;
    for (Int x = 0; x < M; ++x) {
      bool ok = true;
      for (auto [r, m] : sys) ok = ok && bfree::mod(x - r, m) == 0;
      if (ok) {
        brute = x;
        break;
      }
    }
    REQUIRE(s.residue == brute);
    ++checked;
  }
}

TEST_CASE("crt_solve output satisfies every congruence on larger systems") {
  std::mt19937_64 rng(kSeed + 1);
  const auto primes = primes_up_to(200);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Congruence> sys;
    Int M = 1;
    for (Int p : primes) {
      if (rng() % 4 != 0) continue;
      if (M > (Int{1} << 50) / p) break;
      sys.push_back({static_cast<Int>(rng() % 100000), p});
      M *= p;
    }
    auto s = crt_solve(sys);
    CHECK(s.modulus == M);
    for (auto [r, m] : sys) REQUIRE(bfree::mod(s.residue - r, m) == 0);
  }
}

TEST_CASE("find_coprime_element") {
  auto B = test::small_squares();
  CHECK(find_coprime_element(B, 6) == 25);
  CHECK(find_coprime_element(B, 1) == 4);
  CHECK(find_coprime_element(B, 35) == 4);
  CHECK(find_coprime_element(B, 2, [](Int b) { return b > 10; }) == 25);
  CHECK_ERROR_CODE(find_coprime_element(B, 2 * 3 * 5 * 7), ErrorCode::NotFoundInTruncation);
  CHECK_ERROR_CODE(find_coprime_element(B, 1, [](Int b) { return b > 100; }),
                   ErrorCode::NotFoundInTruncation);
}

TEST_CASE("density product") {
  CHECK(static_cast<double>(validate_bspec({2, 9}).density_product()) ==
        doctest::Approx(4.0 / 9.0).epsilon(1e-12));
  CHECK(static_cast<double>(prime_powers(2, 10000).density_product()) ==
        doctest::Approx(6.0 / (M_PI * M_PI)).epsilon(1e-4));
}

}  // TEST_SUITE
