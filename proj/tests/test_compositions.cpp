#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "ordrep/compositions.hpp"

using namespace ordrep;

TEST_CASE("composition counts are 2^(k-1)") {
  for (int k = 1; k <= 12; ++k) {
    CHECK(enumerate_compositions(k).size() == (std::size_t{1} << (k - 1)));
    if (k >= 2) CHECK(enumerate_s0(k).size() == (std::size_t{1} << (k - 1)) - 1);
  }
  CHECK_THROWS_AS(enumerate_compositions(0), precondition_error);
  CHECK_THROWS_AS(enumerate_s0(1), precondition_error);
  CHECK_THROWS_AS(enumerate_compositions(max_enumerable_k + 1), precondition_error);
  CHECK_THROWS_AS(group_by_partition(max_partition_k + 1, Star::le), precondition_error);
}

TEST_CASE("k=1 and k=2 weights") {
  auto one = enumerate_compositions(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].parts == std::vector<int>{1});
  CHECK(one[0].weight_le == 1);
  CHECK(one[0].weight_lt == 1);

  auto two = enumerate_compositions(2);
  REQUIRE(two.size() == 2);
  std::map<std::vector<int>, std::pair<Rational, Rational>> expect = {
      {{2}, {Rational(1, 2), Rational(-1, 2)}},
      {{1, 1}, {Rational(1, 2), Rational(1, 2)}},
  };
  for (const auto& wc : two) {
    auto it = expect.find(wc.parts);
    REQUIRE(it != expect.end());
    CHECK(wc.weight_le == it->second.first);
    CHECK(wc.weight_lt == it->second.second);
  }
}

TEST_CASE("k=3 weights in lexicographic order") {
  auto cs = enumerate_compositions(3);
  REQUIRE(cs.size() == 4);
  CHECK(cs[0].parts == std::vector<int>{1, 1, 1});
  CHECK(cs[0].weight_le == Rational(1, 6));
  CHECK(cs[0].weight_lt == Rational(1, 6));
  CHECK(cs[1].parts == std::vector<int>{1, 2});
  CHECK(cs[1].weight_le == Rational(1, 4));
  CHECK(cs[1].weight_lt == Rational(-1, 4));
  CHECK(cs[2].parts == std::vector<int>{2, 1});
  CHECK(cs[2].weight_lt == Rational(-1, 4));
  CHECK(cs[3].parts == std::vector<int>{3});
  CHECK(cs[3].weight_le == Rational(1, 3));
  CHECK(cs[3].weight_lt == Rational(1, 3));
}

TEST_CASE("S0 contents") {
  auto s0_2 = enumerate_s0(2);
  REQUIRE(s0_2.size() == 1);
  CHECK(s0_2[0].parts == std::vector<int>{2});
  auto s0_3 = enumerate_s0(3);
  REQUIRE(s0_3.size() == 3);
  for (const auto& wc : s0_3) CHECK(wc.m() < 3);
  CHECK(enumerate_s0(4).size() == 7);
}

TEST_CASE("the all-ones tuple carries weight 1/k!") {
  for (int k = 1; k <= 10; ++k) {
    auto cs = enumerate_compositions(k);
    const auto& ones = cs.front();  // lexicographically first
    REQUIRE(ones.parts == std::vector<int>(static_cast<std::size_t>(k), 1));
    CHECK(ones.weight_le == Rational(1, factorial(k)));
    CHECK(ones.weight_lt == Rational(1, factorial(k)));
  }
}

TEST_CASE("weight sums collapse to the closed forms") {
  CHECK(weight_sum(1, Star::le) == 1);
  CHECK(weight_sum(1, Star::lt) == 1);
  for (int k = 2; k <= 12; ++k) {
    CHECK(weight_sum(k, Star::le) == 1);
    CHECK(weight_sum(k, Star::lt) == 0);
  }
}

TEST_CASE("grouped partitions match composition weight sums") {
  auto partition_counts = std::map<int, std::size_t>{
      {1, 1}, {2, 2}, {3, 3}, {4, 5}, {5, 7}, {6, 11}, {7, 15}};
  for (int k = 1; k <= 12; ++k) {
    for (Star star : {Star::le, Star::lt}) {
      auto grouped = group_by_partition(k, star);
      if (partition_counts.count(k)) CHECK(grouped.size() == partition_counts[k]);
      auto raw = enumerate_compositions(k);
      Rational grouped_total = 0;
      for (const auto& term : grouped) {
        // independent regrouping: sum the raw weights over all orderings
        Rational from_raw = 0;
        for (const auto& wc : raw) {
          std::vector<int> sorted = wc.parts;
          std::sort(sorted.begin(), sorted.end());
          if (sorted == term.partition) from_raw += wc.weight(star);
        }
        CHECK(term.combined_weight == from_raw);
        grouped_total += term.combined_weight;
      }
      CHECK(grouped_total == weight_sum(k, star));
    }
  }
}

TEST_CASE("grouped weights for the Newton e3 identity") {
  auto terms = group_by_partition(3, Star::lt);
  REQUIRE(terms.size() == 3);
  std::map<std::vector<int>, Rational> expect = {
      {{1, 1, 1}, Rational(1, 6)},
      {{1, 2}, Rational(-1, 2)},
      {{3}, Rational(1, 3)},
  };
  for (const auto& t : terms) {
    auto it = expect.find(t.partition);
    REQUIRE(it != expect.end());
    CHECK(t.combined_weight == it->second);
  }
}

TEST_CASE("grouped weights for k=2 multiset form") {
  auto terms = group_by_partition(2, Star::le);
  REQUIRE(terms.size() == 2);
  for (const auto& t : terms) CHECK(t.combined_weight == Rational(1, 2));
}
