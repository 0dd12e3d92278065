#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ordrep/intset.hpp"
#include "oracles.hpp"

using namespace ordrep;

namespace {

IntegerSet parse_text(const std::string& text) {
  std::istringstream in(text);
  return set_from_stream(in);
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("from_file parses plain lists") {
  IntegerSet s = parse_text("0\n1\n3\n");
  CHECK(s.elements == std::vector<std::int64_t>{0, 1, 3});
  CHECK(s.limit == 3);
  CHECK(s.complete);
}

TEST_CASE("from_file skips comments") {
  IntegerSet s = parse_text("# c\n5\n");
  CHECK(s.elements == std::vector<std::int64_t>{5});
  CHECK(s.limit == 5);
}

TEST_CASE("from_file rejects bad input") {
  CHECK_THROWS_AS(parse_text("3\n1\n"), parse_error);
  CHECK_THROWS_AS(parse_text("1\n1\n"), parse_error);
  CHECK_THROWS_AS(parse_text("-2\n"), parse_error);
  CHECK_THROWS_AS(parse_text("abc\n"), parse_error);
  CHECK_THROWS_AS(from_file("/nonexistent/set.txt"), parse_error);
  try {
    parse_text("0\n2\n1\n");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("limit header marks a truncation") {
  IntegerSet s = parse_text("# limit: 10\n0\n1\n3\n");
  CHECK(s.limit == 10);
  CHECK_FALSE(s.complete);
  CHECK_THROWS_AS(parse_text("# limit: 2\n0\n3\n"), parse_error);
}

TEST_CASE("moser(2) truncation matches digit enumeration") {
  IntegerSet s = construct_family({.family = Family::moser, .limit = 21, .k = 2});
  CHECK(s.elements == std::vector<std::int64_t>{0, 1, 4, 5, 16, 17, 20, 21});
}

TEST_CASE("moser families satisfy the digit criterion exactly") {
  for (std::int64_t k : {2, 3, 4}) {
    IntegerSet s = construct_family({.family = Family::moser, .limit = 2000, .k = k});
    std::set<std::int64_t> members(s.elements.begin(), s.elements.end());
    for (std::int64_t n = 0; n <= 2000; ++n)
      CHECK(members.count(n) == static_cast<std::size_t>(oracle::moser_member(n, k)));
  }
}

TEST_CASE("mian_chowla matches the greedy oracle") {
  IntegerSet s = construct_family({.family = Family::mian_chowla, .limit = 25});
  CHECK(s.elements == oracle::greedy_sidon(25));
  // frozen from the oracle
  CHECK(s.elements == std::vector<std::int64_t>{1, 2, 4, 8, 13, 21});
  IntegerSet big = construct_family({.family = Family::mian_chowla, .limit = 2000});
  CHECK(big.elements == oracle::greedy_sidon(2000));
}

TEST_CASE("mian_chowla truncations are Sidon") {
  IntegerSet s = construct_family({.family = Family::mian_chowla, .limit = 5000});
  CHECK(oracle::is_sidon(s.elements));
}

TEST_CASE("powers and arithmetic families") {
  IntegerSet squares = construct_family({.family = Family::powers, .limit = 10, .p = 2});
  CHECK(squares.elements == std::vector<std::int64_t>{0, 1, 4, 9});
  IntegerSet odd = construct_family({.family = Family::arithmetic, .limit = 9, .a0 = 1, .d = 2});
  CHECK(odd.elements == std::vector<std::int64_t>{1, 3, 5, 7, 9});
  IntegerSet nat = construct_family({.family = Family::naturals, .limit = 4});
  CHECK(nat.elements == std::vector<std::int64_t>{0, 1, 2, 3, 4});
}

TEST_CASE("bernoulli families are reproducible and contain 0") {
  FamilySpec spec{.family = Family::bernoulli, .limit = 3000, .k = 2, .C = 2, .seed = 42};
  IntegerSet a = construct_family(spec);
  IntegerSet b = construct_family(spec);
  CHECK(a.elements == b.elements);
  REQUIRE_FALSE(a.elements.empty());
  CHECK(a.elements.front() == 0);
  spec.seed = 43;
  IntegerSet c = construct_family(spec);
  CHECK(a.elements != c.elements);
  CHECK(a.family_tag.find("mt19937_64/v1") != std::string::npos);
}

TEST_CASE("family parameter validation") {
  CHECK_THROWS_AS(construct_family({.family = Family::arithmetic, .limit = 5, .d = 0}),
                  precondition_error);
  CHECK_THROWS_AS(construct_family({.family = Family::powers, .limit = 5, .p = 0}),
                  precondition_error);
  CHECK_THROWS_AS(construct_family({.family = Family::moser, .limit = 5, .k = 1}),
                  precondition_error);
  CHECK_THROWS_AS(construct_family({.family = Family::bernoulli, .limit = 5, .k = 2, .C = 0}),
                  precondition_error);
  CHECK_THROWS_AS(construct_family({.family = Family::naturals, .limit = -1}),
                  precondition_error);
}

TEST_CASE("write/read round trip preserves elements for every family") {
  std::vector<FamilySpec> specs = {
      {.family = Family::naturals, .limit = 50},
      {.family = Family::arithmetic, .limit = 60, .a0 = 3, .d = 7},
      {.family = Family::powers, .limit = 100, .p = 3},
      {.family = Family::mian_chowla, .limit = 100},
      {.family = Family::moser, .limit = 300, .k = 3},
      {.family = Family::bernoulli, .limit = 500, .k = 2, .C = 1, .seed = 7},
  };
  for (const auto& spec : specs) {
    IntegerSet s = construct_family(spec);
    auto path = temp_file("ordrep_roundtrip.txt");
    write_set(s, path.string());
    IntegerSet back = from_file(path.string());
    CHECK(back.elements == s.elements);
    CHECK(back.limit == s.limit);
    CHECK(back.family_tag == s.family_tag);
    CHECK_FALSE(back.complete);
    std::filesystem::remove(path);
  }
}

TEST_CASE("indicator examples") {
  IntegerSet s = parse_text("0\n1\n3\n");
  CHECK(indicator(s, 4) == std::vector<std::uint8_t>{1, 1, 0, 1, 0});
  IntegerSet empty;
  empty.complete = true;
  CHECK(indicator(empty, 2) == std::vector<std::uint8_t>{0, 0, 0});
  IntegerSet m2 = construct_family({.family = Family::moser, .limit = 5, .k = 2});
  CHECK(indicator(m2, 5) == std::vector<std::uint8_t>{1, 1, 0, 0, 1, 1});
}

TEST_CASE("indicator refuses bounds beyond a truncation") {
  IntegerSet m2 = construct_family({.family = Family::moser, .limit = 5, .k = 2});
  CHECK_THROWS_AS(indicator(m2, 6), precondition_error);
}

TEST_CASE("growth ratios") {
  IntegerSet squares = construct_family({.family = Family::powers, .limit = 400, .p = 2});
  GrowthReport rep = growth_ratios(squares, 2);
  // a_s = (s-1)^2, ratio (s-1)^2/s^2 < 1
  for (std::size_t s = 1; s <= squares.size(); ++s)
    CHECK(rep.ratios[s - 1] == Rational(BigInt((s - 1) * (s - 1)), BigInt(s * s)));
  CHECK(rep.max_ratio < 1);

  IntegerSet pow2 = parse_text("1\n2\n4\n8\n16\n32\n64\n128\n");
  GrowthReport rep2 = growth_ratios(pow2, 2);
  CHECK(rep2.max_ratio == rep2.ratios.back());
  CHECK(rep2.max_ratio == Rational(128, 64));

  IntegerSet zero = parse_text("0\n");
  GrowthReport rep3 = growth_ratios(zero, 3);
  REQUIRE(rep3.ratios.size() == 1);
  CHECK(rep3.ratios[0] == 0);

  CHECK_THROWS_AS(growth_ratios(IntegerSet{}, 2), precondition_error);
}

TEST_CASE("digest changes with content and limit") {
  IntegerSet a = parse_text("0\n1\n3\n");
  IntegerSet b = parse_text("0\n1\n4\n");
  IntegerSet c = parse_text("# limit: 9\n0\n1\n3\n");
  CHECK(a.digest() != b.digest());
  CHECK(a.digest() != c.digest());
  CHECK(a.digest() == parse_text("0\n1\n3\n").digest());
}
