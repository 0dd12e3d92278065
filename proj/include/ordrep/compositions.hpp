#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ordrep/numeric.hpp"

namespace ordrep {

// The two ordered counting regimes: non-decreasing tuples (multisets) and
// strictly increasing tuples (subsets).
enum class Star { le, lt };

inline const char* star_name(Star s) { return s == Star::le ? "le" : "lt"; }

// One ordered tuple (i_1, ..., i_m) with i_1 + ... + i_m = k, together with
// its rational weights:
//   weight_le = 1 / (i_1 ... i_m * m!)
//   weight_lt = (-1)^(m+k) * weight_le
struct WeightedComposition {
  std::vector<int> parts;
  Rational weight_le;
  Rational weight_lt;

  int m() const { return static_cast<int>(parts.size()); }
  Rational weight(Star star) const { return star == Star::le ? weight_le : weight_lt; }
};

// All orderings of one partition of k collapsed into a single term; the
// combined weight is the sum of the per-ordering weights, which closes to
// sign / (prod parts * prod mult_t!).
struct GroupedPartitionTerm {
  std::vector<int> partition;  // non-decreasing
  Rational combined_weight;
};

namespace detail {

inline Rational composition_weight_le(const std::vector<int>& parts) {
  BigInt prod = 1;
  for (int p : parts) prod *= p;
  prod *= factorial(static_cast<int>(parts.size()));
  return Rational(1, prod);
}

template <class Fn>
void for_each_composition(int k, Fn&& fn) {
  std::vector<int> parts;
  auto rec = [&](auto&& self, int rest) -> void {
    if (rest == 0) {
      fn(parts);
      return;
    }
    for (int first = 1; first <= rest; ++first) {
      parts.push_back(first);
      self(self, rest - first);
      parts.pop_back();
    }
  };
  rec(rec, k);
}

template <class Fn>
void for_each_partition(int k, Fn&& fn) {
  std::vector<int> parts;
  auto rec = [&](auto&& self, int rest, int min_part) -> void {
    if (rest == 0) {
      fn(parts);
      return;
    }
    for (int p = min_part; p <= rest; ++p) {
      parts.push_back(p);
      self(self, rest - p, p);
      parts.pop_back();
    }
  };
  rec(rec, k, 1);
}

}  // namespace detail

// S(k): every ordered tuple of positive integers summing to k, in
// lexicographic order. |S(k)| = 2^(k-1), so explicit enumeration is capped.
inline constexpr int max_enumerable_k = 20;

inline std::vector<WeightedComposition> enumerate_compositions(int k) {
  if (k < 1) throw precondition_error("compositions need k >= 1");
  if (k > max_enumerable_k)
    throw precondition_error("k too large for explicit enumeration (2^(k-1) tuples; max " +
                             std::to_string(max_enumerable_k) + ")");
  std::vector<WeightedComposition> out;
  detail::for_each_composition(k, [&](const std::vector<int>& parts) {
    WeightedComposition wc;
    wc.parts = parts;
    wc.weight_le = detail::composition_weight_le(parts);
    int m = static_cast<int>(parts.size());
    wc.weight_lt = ((m + k) % 2 == 0) ? wc.weight_le : -wc.weight_le;
    out.push_back(std::move(wc));
  });
  return out;
}

// S0(k): S(k) without the all-ones tuple, i.e. every tuple with m < k.
inline std::vector<WeightedComposition> enumerate_s0(int k) {
  if (k < 2) throw precondition_error("S0(k) needs k >= 2");
  std::vector<WeightedComposition> out = enumerate_compositions(k);
  std::erase_if(out, [&](const WeightedComposition& wc) { return wc.m() == k; });
  return out;
}

// One term per partition of k; p(k) terms in total. Downstream generating
// function evaluation uses this form since p(k) << 2^(k-1).
inline constexpr int max_partition_k = 48;  // p(48) = 147273 terms

inline std::vector<GroupedPartitionTerm> group_by_partition(int k, Star star) {
  if (k < 1) throw precondition_error("partitions need k >= 1");
  if (k > max_partition_k)
    throw precondition_error("k too large for partition enumeration (max " +
                             std::to_string(max_partition_k) + ")");
  std::vector<GroupedPartitionTerm> out;
  detail::for_each_partition(k, [&](const std::vector<int>& parts) {
    BigInt denom = 1;
    for (int p : parts) denom *= p;
    int run = 1;
    for (std::size_t i = 1; i <= parts.size(); ++i) {
      if (i < parts.size() && parts[i] == parts[i - 1]) {
        ++run;
      } else {
        denom *= factorial(run);
        run = 1;
      }
    }
    GroupedPartitionTerm term;
    term.partition = parts;
    term.combined_weight = Rational(1, denom);
    int m = static_cast<int>(parts.size());
    if (star == Star::lt && (m + k) % 2 != 0) term.combined_weight = -term.combined_weight;
    out.push_back(std::move(term));
  });
  return out;
}

// Sum of eps_star over S(k). Analytically 1 for le and [k == 1] for lt;
// computed here by direct enumeration so tests can pin the closed form
// independently.
inline Rational weight_sum(int k, Star star) {
  Rational total = 0;
  for (const auto& wc : enumerate_compositions(k)) total += wc.weight(star);
  return total;
}

inline std::string parts_to_string(const std::vector<int>& parts, char sep = '+') {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(parts[i]);
  }
  return s;
}

}  // namespace ordrep
