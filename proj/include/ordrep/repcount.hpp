#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "ordrep/compositions.hpp"
#include "ordrep/intset.hpp"
#include "ordrep/series.hpp"

namespace ordrep {

// What a table counts: multisets (le), subsets (lt), ordered tuples (full)
// or a weighted linear form k_1 a_1 + ... + k_l a_l.
struct TableKind {
  enum class Type { le, lt, full, linear } type = Type::le;
  std::vector<std::int64_t> coeffs;  // linear form only

  static TableKind of(Star s) { return {s == Star::le ? Type::le : Type::lt, {}}; }
  static TableKind full() { return {Type::full, {}}; }
  static TableKind linear(std::vector<std::int64_t> c) { return {Type::linear, std::move(c)}; }

  std::string to_string() const {
    switch (type) {
      case Type::le: return "le";
      case Type::lt: return "lt";
      case Type::full: return "full";
      case Type::linear: {
        std::string s = "linear_form(";
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
          if (i) s += ",";
          s += std::to_string(coeffs[i]);
        }
        return s + ")";
      }
    }
    return "?";
  }

  bool operator==(const TableKind& o) const = default;
};

enum class CountMethod { dp, gf };

inline const char* method_name(CountMethod m) { return m == CountMethod::dp ? "dp" : "gf"; }

struct RepTable {
  std::vector<BigInt> counts;  // r(0) ... r(N)
  int k = 0;
  TableKind kind;
  CountMethod method = CountMethod::dp;
  std::string set_digest;
  std::string family_tag;
  std::int64_t limit = 0;

  std::int64_t order() const { return static_cast<std::int64_t>(counts.size()) - 1; }
};

namespace repcount_detail {

struct overflow_signal {};

template <class T>
inline void checked_add(T& dst, const T& src) {
  if constexpr (std::is_same_v<T, std::int64_t>) {
    if (__builtin_add_overflow(dst, src, &dst)) throw overflow_signal{};
  } else {
    dst += src;
  }
}

// Multiset DP: processing one element with current-layer reads realizes
// unlimited repetition of that element.
template <class T>
std::vector<T> dp_le(const IntegerSet& a, int k, std::int64_t n_bound) {
  std::size_t len = static_cast<std::size_t>(n_bound) + 1;
  std::vector<std::vector<T>> dp(static_cast<std::size_t>(k) + 1, std::vector<T>(len, T(0)));
  dp[0][0] = T(1);
  for (auto e : a.elements) {
    if (e > n_bound) break;
    std::size_t off = static_cast<std::size_t>(e);
    for (int j = 1; j <= k; ++j) {
      auto& cur = dp[static_cast<std::size_t>(j)];
      auto& prev = dp[static_cast<std::size_t>(j) - 1];
      for (std::size_t s = off; s < len; ++s) checked_add(cur[s], prev[s - off]);
    }
  }
  return std::move(dp[static_cast<std::size_t>(k)]);
}

// Subset DP: previous-layer reads (descending part count) use each element
// at most once.
template <class T>
std::vector<T> dp_lt(const IntegerSet& a, int k, std::int64_t n_bound) {
  std::size_t len = static_cast<std::size_t>(n_bound) + 1;
  std::vector<std::vector<T>> dp(static_cast<std::size_t>(k) + 1, std::vector<T>(len, T(0)));
  dp[0][0] = T(1);
  for (auto e : a.elements) {
    if (e > n_bound) break;
    std::size_t off = static_cast<std::size_t>(e);
    for (int j = k; j >= 1; --j) {
      auto& cur = dp[static_cast<std::size_t>(j)];
      auto& prev = dp[static_cast<std::size_t>(j) - 1];
      for (std::size_t s = off; s < len; ++s) checked_add(cur[s], prev[s - off]);
    }
  }
  return std::move(dp[static_cast<std::size_t>(k)]);
}

// Layered tuple count: row_j = row_{j-1} convolved with the indicator,
// written as explicit loops (independent of the series kernels).
template <class T>
std::vector<T> dp_full(const IntegerSet& a, int k, std::int64_t n_bound) {
  std::size_t len = static_cast<std::size_t>(n_bound) + 1;
  std::vector<T> cur(len, T(0));
  for (auto e : a.elements) {
    if (e > n_bound) break;
    cur[static_cast<std::size_t>(e)] = T(1);
  }
  for (int j = 2; j <= k; ++j) {
    std::vector<T> next(len, T(0));
    for (auto e : a.elements) {
      if (e > n_bound) break;
      std::size_t off = static_cast<std::size_t>(e);
      for (std::size_t s = off; s < len; ++s) checked_add(next[s], cur[s - off]);
    }
    cur.swap(next);
  }
  return cur;
}

template <class Fn>
std::vector<BigInt> with_promotion(Fn&& run) {
  try {
    std::vector<std::int64_t> fast = run(std::int64_t{});
    std::vector<BigInt> out(fast.size());
    for (std::size_t i = 0; i < fast.size(); ++i) out[i] = fast[i];
    return out;
  } catch (const overflow_signal&) {
    return run(BigInt{});
  }
}

inline void check_bound(const IntegerSet& a, std::int64_t n_bound) {
  if (n_bound < 0) throw precondition_error("bound must be >= 0");
  if (!a.knows_membership_up_to(n_bound))
    throw precondition_error("bound " + std::to_string(n_bound) +
                             " exceeds set truncation limit " + std::to_string(a.limit));
}

}  // namespace repcount_detail

inline RepTable count_ordered_le(const IntegerSet& a, int k, std::int64_t n_bound) {
  if (k < 1) throw precondition_error("arity k must be >= 1");
  repcount_detail::check_bound(a, n_bound);
  RepTable t;
  t.counts = repcount_detail::with_promotion([&](auto tag) {
    return repcount_detail::dp_le<decltype(tag)>(a, k, n_bound);
  });
  t.k = k;
  t.kind = TableKind::of(Star::le);
  t.method = CountMethod::dp;
  t.set_digest = a.digest();
  t.family_tag = a.family_tag;
  t.limit = n_bound;
  return t;
}

inline RepTable count_ordered_lt(const IntegerSet& a, int k, std::int64_t n_bound) {
  if (k < 1) throw precondition_error("arity k must be >= 1");
  repcount_detail::check_bound(a, n_bound);
  RepTable t;
  t.counts = repcount_detail::with_promotion([&](auto tag) {
    return repcount_detail::dp_lt<decltype(tag)>(a, k, n_bound);
  });
  t.k = k;
  t.kind = TableKind::of(Star::lt);
  t.method = CountMethod::dp;
  t.set_digest = a.digest();
  t.family_tag = a.family_tag;
  t.limit = n_bound;
  return t;
}

// r_k via k-1 successive truncated multiplications of the generating
// function with itself.
inline RepTable count_full(const IntegerSet& a, int k, std::int64_t n_bound) {
  if (k < 1) throw precondition_error("arity k must be >= 1");
  repcount_detail::check_bound(a, n_bound);
  TruncatedSeries f = TruncatedSeries::from_indicator(indicator(a, n_bound), n_bound);
  TruncatedSeries p = f;
  for (int j = 2; j <= k; ++j) p = multiply(p, f, n_bound);
  RepTable t;
  t.counts = p.numerators();
  t.k = k;
  t.kind = TableKind::full();
  t.method = CountMethod::gf;
  t.set_digest = a.digest();
  t.family_tag = a.family_tag;
  t.limit = n_bound;
  return t;
}

// Loop-based route for r_k, used as the dp method for the full kind.
inline RepTable count_full_dp(const IntegerSet& a, int k, std::int64_t n_bound) {
  if (k < 1) throw precondition_error("arity k must be >= 1");
  repcount_detail::check_bound(a, n_bound);
  RepTable t;
  t.counts = repcount_detail::with_promotion([&](auto tag) {
    return repcount_detail::dp_full<decltype(tag)>(a, k, n_bound);
  });
  t.k = k;
  t.kind = TableKind::full();
  t.method = CountMethod::dp;
  t.set_digest = a.digest();
  t.family_tag = a.family_tag;
  t.limit = n_bound;
  return t;
}

// Evaluates sum of combined_weight * prod_i f_A(z^part_i) over the given
// grouped terms. Exposed so tests can feed deliberately corrupted weights.
inline TruncatedSeries gf_series_from_terms(const IntegerSet& a,
                                            const std::vector<GroupedPartitionTerm>& terms,
                                            std::int64_t n_bound) {
  repcount_detail::check_bound(a, n_bound);
  TruncatedSeries f = TruncatedSeries::from_indicator(indicator(a, n_bound), n_bound);
  std::map<int, TruncatedSeries> dilated;  // per distinct part, computed once
  dilated.emplace(1, f);
  TruncatedSeries acc = TruncatedSeries::zero(n_bound);
  for (const auto& term : terms) {
    bool have = false;
    TruncatedSeries prod;
    for (int part : term.partition) {
      auto it = dilated.find(part);
      if (it == dilated.end())
        it = dilated.emplace(part, dilate(f, part, n_bound)).first;
      prod = have ? multiply(prod, it->second, n_bound) : it->second;
      have = true;
    }
    acc = add_scaled(acc, term.combined_weight, prod, n_bound);
  }
  return acc;
}

// The encoding route: per-partition products of dilated generating
// functions with eps weights. The identity guarantees non-negative integer
// coefficients; anything else signals an implementation bug.
inline RepTable count_gf(const IntegerSet& a, int k, Star star, std::int64_t n_bound) {
  if (k < 1) throw precondition_error("arity k must be >= 1");
  TruncatedSeries acc = gf_series_from_terms(a, group_by_partition(k, star), n_bound);
  if (!acc.is_integral())
    throw std::logic_error("gf route produced non-integer coefficients (bug)");
  for (const auto& c : acc.numerators())
    if (c < 0) throw std::logic_error("gf route produced a negative coefficient (bug)");
  RepTable t;
  t.counts = acc.numerators();
  t.k = k;
  t.kind = TableKind::of(star);
  t.method = CountMethod::gf;
  t.set_digest = a.digest();
  t.family_tag = a.family_tag;
  t.limit = n_bound;
  return t;
}

// r_{k_1,...,k_l}: counts tuples with k_1 a_1 + ... + k_l a_l = n, computed
// as the truncated product of the dilated generating functions.
inline RepTable count_linear_form(const IntegerSet& a, const std::vector<std::int64_t>& coeffs,
                                  std::int64_t n_bound) {
  if (coeffs.empty()) throw precondition_error("linear form needs at least one coefficient");
  for (auto c : coeffs)
    if (c < 1) throw precondition_error("linear form coefficients must be >= 1");
  repcount_detail::check_bound(a, n_bound);
  TruncatedSeries f = TruncatedSeries::from_indicator(indicator(a, n_bound), n_bound);
  bool have = false;
  TruncatedSeries prod;
  for (auto c : coeffs) {
    TruncatedSeries d = dilate(f, c, n_bound);
    prod = have ? multiply(prod, d, n_bound) : d;
    have = true;
  }
  RepTable t;
  t.counts = prod.numerators();
  t.k = static_cast<int>(coeffs.size());
  t.kind = TableKind::linear(coeffs);
  t.method = CountMethod::gf;
  t.set_digest = a.digest();
  t.family_tag = a.family_tag;
  t.limit = n_bound;
  return t;
}

struct VerifyReport {
  bool ok = true;
  std::int64_t first_mismatch = -1;
  BigInt lhs_value;
  BigInt rhs_value;
};

inline VerifyReport compare_tables(const RepTable& x, const RepTable& y) {
  VerifyReport rep;
  std::size_t n = std::min(x.counts.size(), y.counts.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (x.counts[i] != y.counts[i]) {
      rep.ok = false;
      rep.first_mismatch = static_cast<std::int64_t>(i);
      rep.lhs_value = x.counts[i];
      rep.rhs_value = y.counts[i];
      return rep;
    }
  }
  if (x.counts.size() != y.counts.size()) {
    rep.ok = false;
    rep.first_mismatch = static_cast<std::int64_t>(n);
  }
  return rep;
}

// The central oracle: the direct DP and the encoding route must agree on
// every coefficient.
inline VerifyReport verify_identity(const IntegerSet& a, int k, Star star,
                                    std::int64_t n_bound) {
  RepTable dp = star == Star::le ? count_ordered_le(a, k, n_bound)
                                 : count_ordered_lt(a, k, n_bound);
  RepTable gf = count_gf(a, k, star, n_bound);
  return compare_tables(dp, gf);
}

inline constexpr int rep_table_schema_version = 1;

inline nlohmann::json rep_table_to_json(const RepTable& t) {
  nlohmann::json j;
  j["schema_version"] = rep_table_schema_version;
  j["set_digest"] = t.set_digest;
  j["family_tag"] = t.family_tag;
  j["k"] = t.k;
  j["star"] = t.kind.to_string();
  j["limit"] = t.limit;
  j["method"] = method_name(t.method);
  nlohmann::json counts = nlohmann::json::array();
  for (const auto& c : t.counts) counts.push_back(c.str());
  j["counts"] = std::move(counts);
  return j;
}

inline RepTable rep_table_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("schema_version") ||
      j.at("schema_version").get<int>() != rep_table_schema_version)
    throw parse_error("unsupported rep table schema");
  RepTable t;
  t.set_digest = j.at("set_digest").get<std::string>();
  t.family_tag = j.at("family_tag").get<std::string>();
  t.k = j.at("k").get<int>();
  t.limit = j.at("limit").get<std::int64_t>();
  std::string star = j.at("star").get<std::string>();
  if (star == "le") {
    t.kind = TableKind::of(Star::le);
  } else if (star == "lt") {
    t.kind = TableKind::of(Star::lt);
  } else if (star == "full") {
    t.kind = TableKind::full();
  } else if (star.rfind("linear_form(", 0) == 0 && star.back() == ')') {
    std::vector<std::int64_t> coeffs;
    std::string body = star.substr(12, star.size() - 13);
    std::size_t pos = 0;
    while (pos < body.size()) {
      std::size_t comma = body.find(',', pos);
      std::string tok = body.substr(pos, comma == std::string::npos ? comma : comma - pos);
      coeffs.push_back(std::stoll(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    t.kind = TableKind::linear(std::move(coeffs));
  } else {
    throw parse_error("unknown star kind: " + star);
  }
  std::string method = j.at("method").get<std::string>();
  if (method == "dp")
    t.method = CountMethod::dp;
  else if (method == "gf")
    t.method = CountMethod::gf;
  else
    throw parse_error("unknown method: " + method);
  for (const auto& c : j.at("counts")) t.counts.emplace_back(c.get<std::string>());
  return t;
}

inline void rep_table_to_csv(const RepTable& t, std::ostream& out) {
  out << "n,count\n";
  for (std::size_t n = 0; n < t.counts.size(); ++n) out << n << "," << t.counts[n] << "\n";
}

}  // namespace ordrep
