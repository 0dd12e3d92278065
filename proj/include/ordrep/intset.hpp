#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ordrep/common.hpp"
#include "ordrep/digest.hpp"
#include "ordrep/numeric.hpp"

namespace ordrep {

// A finite truncation of a (possibly infinite) set of non-negative integers.
// `limit` is the truncation bound: membership is fully known on [0, limit],
// so every downstream count takes an explicit N <= limit. A `complete` set
// is not a truncation at all (a bare list of integers is the whole set), so
// membership is known everywhere and bounds above `limit` are fine.
struct IntegerSet {
  std::vector<std::int64_t> elements;  // strictly increasing
  std::int64_t limit = 0;
  std::string family_tag;
  bool complete = false;

  bool knows_membership_up_to(std::int64_t n) const { return complete || n <= limit; }

  std::size_t size() const { return elements.size(); }
  bool empty() const { return elements.empty(); }

  // 1-based position indexing a_1 < a_2 < ... as used for growth ratios.
  std::int64_t nth(std::size_t s) const { return elements.at(s - 1); }

  std::string digest() const {
    std::string buf = "set/v1|" + std::to_string(limit) + "|";
    for (auto e : elements) {
      buf += std::to_string(e);
      buf += ',';
    }
    return hex64(fnv1a64(buf));
  }

  void validate() const {
    std::int64_t prev = -1;
    for (auto e : elements) {
      if (e < 0) throw precondition_error("negative element in set");
      if (e <= prev) throw precondition_error("elements must be strictly increasing");
      prev = e;
    }
    if (!elements.empty() && elements.back() > limit)
      throw precondition_error("element exceeds truncation limit");
    if (limit < 0) throw precondition_error("limit must be non-negative");
  }
};

enum class Family { naturals, arithmetic, powers, mian_chowla, moser, bernoulli };

struct FamilySpec {
  Family family = Family::naturals;
  std::int64_t limit = 0;
  // arithmetic
  std::int64_t a0 = 0, d = 1;
  // powers
  std::int64_t p = 1;
  // moser / bernoulli
  std::int64_t k = 2;
  // bernoulli
  Rational C = 1;
  std::uint64_t seed = 0;

  void validate() const {
    if (limit < 0) throw precondition_error("limit must be >= 0");
    switch (family) {
      case Family::naturals:
      case Family::mian_chowla:
        break;
      case Family::arithmetic:
        if (d < 1) throw precondition_error("arithmetic family needs d >= 1");
        if (a0 < 0) throw precondition_error("arithmetic family needs a0 >= 0");
        break;
      case Family::powers:
        if (p < 1) throw precondition_error("powers family needs p >= 1");
        break;
      case Family::moser:
        if (k < 2) throw precondition_error("moser family needs k >= 2");
        break;
      case Family::bernoulli:
        if (k < 2) throw precondition_error("bernoulli family needs k >= 2");
        if (C <= 0) throw precondition_error("bernoulli family needs C > 0");
        break;
    }
  }

  std::string tag() const {
    std::ostringstream os;
    switch (family) {
      case Family::naturals: os << "naturals"; break;
      case Family::arithmetic: os << "arithmetic(a0=" << a0 << ",d=" << d << ")"; break;
      case Family::powers: os << "powers(" << p << ")"; break;
      case Family::mian_chowla: os << "mian_chowla"; break;
      case Family::moser: os << "moser(" << k << ")"; break;
      case Family::bernoulli:
        os << "bernoulli(k=" << k << ",C=" << rational_to_string(C) << ",seed=" << seed
           << ",gen=mt19937_64/v1)";
        break;
    }
    return os.str();
  }
};

namespace detail {

inline std::vector<std::int64_t> gen_naturals(std::int64_t limit) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(limit) + 1);
  for (std::int64_t n = 0; n <= limit; ++n) v[static_cast<std::size_t>(n)] = n;
  return v;
}

inline std::vector<std::int64_t> gen_arithmetic(std::int64_t a0, std::int64_t d,
                                                std::int64_t limit) {
  std::vector<std::int64_t> v;
  for (std::int64_t x = a0; x <= limit; x += d) v.push_back(x);
  return v;
}

inline std::vector<std::int64_t> gen_powers(std::int64_t p, std::int64_t limit) {
  std::vector<std::int64_t> v;
  for (std::int64_t s = 0;; ++s) {
    BigInt x = 1;
    for (std::int64_t j = 0; j < p; ++j) x *= s;
    if (x > limit) break;
    v.push_back(x.convert_to<std::int64_t>());
  }
  return v;
}

// Greedy B2 sequence from 1: accept the next integer iff all pairwise sums
// a+b (a <= b) of the extended set stay distinct.
inline std::vector<std::int64_t> gen_mian_chowla(std::int64_t limit) {
  std::vector<std::int64_t> a;
  if (limit < 1) return a;
  std::vector<bool> sum_taken(static_cast<std::size_t>(2 * limit) + 1, false);
  for (std::int64_t n = 1; n <= limit; ++n) {
    bool ok = !sum_taken[static_cast<std::size_t>(2 * n)];
    if (ok) {
      for (auto x : a) {
        if (sum_taken[static_cast<std::size_t>(x + n)]) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    for (auto x : a) sum_taken[static_cast<std::size_t>(x + n)] = true;
    sum_taken[static_cast<std::size_t>(2 * n)] = true;
    a.push_back(n);
  }
  return a;
}

// Integers whose base-k^2 digits all lie in {0, ..., k-1}, enumerated by
// building the admissible digit strings place by place.
inline std::vector<std::int64_t> gen_moser(std::int64_t k, std::int64_t limit) {
  const std::int64_t base = k * k;
  std::vector<std::int64_t> v{0};
  std::int64_t place = 1;
  while (place <= limit) {
    std::size_t count = v.size();
    for (std::int64_t digit = 1; digit < k; ++digit) {
      // place * digit can overflow only past limit; guard via division
      if (digit > limit / place) break;
      std::int64_t offset = digit * place;
      for (std::size_t idx = 0; idx < count; ++idx) {
        std::int64_t x = v[idx] + offset;
        if (x <= limit) v.push_back(x);
      }
    }
    if (place > limit / base) break;
    place *= base;
  }
  std::sort(v.begin(), v.end());
  return v;
}

// 53-bit uniform in [0,1) from a fixed-algorithm generator; the standard
// distributions are not portable across library implementations, this is.
inline double uniform53(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline std::vector<std::int64_t> gen_bernoulli(std::int64_t k, const Rational& C,
                                               std::uint64_t seed, std::int64_t limit) {
  std::mt19937_64 rng(seed);
  double Cd = to_double(C);
  double expo = 1.0 / static_cast<double>(k) - 1.0;
  std::vector<std::int64_t> v{0};
  for (std::int64_t n = 1; n <= limit; ++n) {
    double p = std::min(1.0, Cd * std::pow(static_cast<double>(n), expo));
    if (uniform53(rng) < p) v.push_back(n);
  }
  return v;
}

}  // namespace detail

inline IntegerSet construct_family(const FamilySpec& spec) {
  spec.validate();
  IntegerSet s;
  s.limit = spec.limit;
  s.family_tag = spec.tag();
  switch (spec.family) {
    case Family::naturals: s.elements = detail::gen_naturals(spec.limit); break;
    case Family::arithmetic: s.elements = detail::gen_arithmetic(spec.a0, spec.d, spec.limit); break;
    case Family::powers: s.elements = detail::gen_powers(spec.p, spec.limit); break;
    case Family::mian_chowla: s.elements = detail::gen_mian_chowla(spec.limit); break;
    case Family::moser: s.elements = detail::gen_moser(spec.k, spec.limit); break;
    case Family::bernoulli:
      s.elements = detail::gen_bernoulli(spec.k, spec.C, spec.seed, spec.limit);
      break;
  }
  s.validate();
  return s;
}

// File format: one decimal integer per line, strictly increasing, '#'
// comment lines. The writer records the family tag and the truncation bound;
// a "# limit:" header lets a sparse family carry its true bound (otherwise
// the maximum element is used).
inline IntegerSet set_from_stream(std::istream& in) {
  IntegerSet s;
  std::optional<std::int64_t> header_limit;
  std::string line;
  long line_no = 0;
  std::int64_t prev = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t pos = line.find_first_not_of(" \t");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') {
      auto grab = [&](const char* key) -> std::optional<std::string> {
        auto at = line.find(key);
        if (at == std::string::npos) return std::nullopt;
        std::string v = line.substr(at + std::string(key).size());
        std::size_t b = v.find_first_not_of(" \t");
        if (b == std::string::npos) return std::string();
        std::size_t e = v.find_last_not_of(" \t");
        return v.substr(b, e - b + 1);
      };
      if (auto fam = grab("family:")) s.family_tag = *fam;
      if (auto lim = grab("limit:")) {
        try {
          header_limit = std::stoll(*lim);
        } catch (const std::exception&) {
          throw parse_error("bad limit header", line_no);
        }
      }
      continue;
    }
    std::string tok = line.substr(pos);
    std::size_t end = tok.find_last_not_of(" \t");
    tok = tok.substr(0, end + 1);
    if (tok[0] == '-') throw parse_error("negative value not allowed: '" + tok + "'", line_no);
    std::int64_t val = 0;
    try {
      std::size_t used = 0;
      val = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw parse_error("cannot parse integer: '" + tok + "'", line_no);
    }
    if (val == prev) throw parse_error("duplicate element " + std::to_string(val), line_no);
    if (val < prev) throw parse_error("elements out of order at " + std::to_string(val), line_no);
    s.elements.push_back(val);
    prev = val;
  }
  s.limit = s.elements.empty() ? 0 : s.elements.back();
  if (header_limit) {
    if (*header_limit < s.limit) throw parse_error("limit header below maximum element");
    s.limit = *header_limit;
  } else {
    s.complete = true;  // a bare list is the whole set, not a truncation
  }
  s.validate();
  return s;
}

inline IntegerSet from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open set file: " + path);
  return set_from_stream(in);
}

inline void write_set(const IntegerSet& s, std::ostream& out) {
  if (!s.family_tag.empty()) out << "# family: " << s.family_tag << "\n";
  out << "# limit: " << s.limit << "\n";
  for (auto e : s.elements) out << e << "\n";
}

inline void write_set(const IntegerSet& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw parse_error("cannot open file for writing: " + path);
  write_set(s, out);
}

// delta_j = [j in A] for 0 <= j <= N. Membership above the truncation bound
// is unknown, so N must not exceed it.
inline std::vector<std::uint8_t> indicator(const IntegerSet& a, std::int64_t n_bound) {
  if (n_bound < 0) throw precondition_error("indicator bound must be >= 0");
  if (!a.knows_membership_up_to(n_bound))
    throw precondition_error("bound " + std::to_string(n_bound) +
                             " exceeds set truncation limit " + std::to_string(a.limit));
  std::vector<std::uint8_t> delta(static_cast<std::size_t>(n_bound) + 1, 0);
  for (auto e : a.elements) {
    if (e > n_bound) break;
    delta[static_cast<std::size_t>(e)] = 1;
  }
  return delta;
}

struct GrowthReport {
  std::vector<Rational> ratios;  // a_s / s^k for s = 1, 2, ...
  Rational max_ratio = 0;
};

// Ratios a_s / s^k with the paper's 1-based enumeration a_1 < a_2 < ...
inline GrowthReport growth_ratios(const IntegerSet& a, int k) {
  if (a.empty()) throw precondition_error("growth ratios need a nonempty set");
  if (k < 1) throw precondition_error("exponent must be >= 1");
  GrowthReport rep;
  for (std::size_t s = 1; s <= a.size(); ++s) {
    BigInt sk = 1;
    for (int j = 0; j < k; ++j) sk *= s;
    Rational r(BigInt(a.nth(s)), sk);
    rep.ratios.push_back(r);
    if (r > rep.max_ratio) rep.max_ratio = r;
  }
  return rep;
}

}  // namespace ordrep
