#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "ordrep/repcount.hpp"

namespace ordrep {

struct TailStats {
  std::int64_t window_lo = 0;
  std::int64_t window_hi = 0;
  Rational min_value;
  Rational max_value;
};

// e_n, E_n and the normalized Erdos-Fuchs statistic for one table and one
// constant c. e and E are exact rationals; only ef_stat rounds (to nearest
// double, natural log). ef_stat is defined from n = 2 (log n > 0); the
// first two slots hold NaN.
struct ErrorProfile {
  Rational c;
  std::vector<Rational> e;        // e_0 ... e_N
  std::vector<Rational> E;        // E_1 ... E_N at indices 1..N (index 0 unused)
  std::vector<double> ef_stat;    // |e_n| sqrt(log n) / n^(1/4), n >= 2
  TailStats tail;                 // filled by mean_squared_error
  std::string source_digest;
};

inline ErrorProfile error_partial_sums(const RepTable& table, const Rational& c) {
  if (c < 0) throw precondition_error("constant c must be >= 0");
  ErrorProfile p;
  p.c = c;
  p.source_digest = table.set_digest;
  std::size_t len = table.counts.size();
  p.e.resize(len);
  p.ef_stat.assign(len, std::numeric_limits<double>::quiet_NaN());
  Rational acc = 0;
  for (std::size_t n = 0; n < len; ++n) {
    acc += Rational(table.counts[n]) - c;
    p.e[n] = acc;
    if (n >= 2) {
      double en = std::abs(to_double(acc));
      double nn = static_cast<double>(n);
      p.ef_stat[n] = en * std::sqrt(std::log(nn)) / std::pow(nn, 0.25);
    }
  }
  return p;
}

// E_n = (1/n) sum_{j<=n} (r(j) - c)^2, exact, for 1 <= n <= N, plus the
// min/max over the tail window [N/2, N] as limit proxies.
inline ErrorProfile mean_squared_error(const RepTable& table, const Rational& c) {
  if (c < 0) throw precondition_error("constant c must be >= 0");
  if (table.counts.size() < 2)
    throw precondition_error("mean squared error needs N >= 1");
  ErrorProfile p;
  p.c = c;
  p.source_digest = table.set_digest;
  std::size_t len = table.counts.size();
  p.E.resize(len);
  Rational sumsq = 0;
  {
    Rational d = Rational(table.counts[0]) - c;
    sumsq = d * d;
  }
  for (std::size_t n = 1; n < len; ++n) {
    Rational d = Rational(table.counts[n]) - c;
    sumsq += d * d;
    p.E[n] = sumsq / Rational(n);
  }
  std::int64_t n_max = static_cast<std::int64_t>(len) - 1;
  p.tail.window_lo = std::max<std::int64_t>(1, n_max / 2);
  p.tail.window_hi = n_max;
  p.tail.min_value = p.E[static_cast<std::size_t>(p.tail.window_lo)];
  p.tail.max_value = p.tail.min_value;
  for (std::int64_t n = p.tail.window_lo; n <= n_max; ++n) {
    const Rational& v = p.E[static_cast<std::size_t>(n)];
    if (v < p.tail.min_value) p.tail.min_value = v;
    if (v > p.tail.max_value) p.tail.max_value = v;
  }
  return p;
}

// The mean of r(0..n): the unique minimizer of c -> sum_{j<=n} (r(j)-c)^2.
inline Rational best_constant(const RepTable& table, std::int64_t n) {
  if (n < 0 || static_cast<std::size_t>(n) >= table.counts.size())
    throw precondition_error("window end out of range");
  BigInt sum = 0;
  for (std::int64_t j = 0; j <= n; ++j) sum += table.counts[static_cast<std::size_t>(j)];
  return Rational(sum, BigInt(n + 1));
}

// Left side of the truncated identity: (1 - z) * sum e_n z^n + c * sum z^n.
inline TruncatedSeries main_identity_lhs(const std::vector<Rational>& e, const Rational& c,
                                         std::int64_t n_bound) {
  TruncatedSeries e_series = TruncatedSeries::from_rationals(e, n_bound);
  std::vector<Rational> one_minus_z(static_cast<std::size_t>(n_bound) + 1, Rational(0));
  one_minus_z[0] = 1;
  if (n_bound >= 1) one_minus_z[1] = -1;
  TruncatedSeries lhs =
      multiply(TruncatedSeries::from_rationals(one_minus_z, n_bound), e_series, n_bound);
  std::vector<std::uint8_t> ones(static_cast<std::size_t>(n_bound) + 1, 1);
  TruncatedSeries geom = TruncatedSeries::from_indicator(ones, n_bound);
  return add_scaled(lhs, c, geom, n_bound);
}

struct IdentityReport {
  bool ok = true;
  std::int64_t first_mismatch = -1;
  Rational lhs_value;
  Rational rhs_value;
};

inline IdentityReport compare_series(const TruncatedSeries& lhs, const TruncatedSeries& rhs) {
  IdentityReport rep;
  std::int64_t n_max = std::min(lhs.order(), rhs.order());
  for (std::int64_t n = 0; n <= n_max; ++n) {
    if (lhs.coeff(n) != rhs.coeff(n)) {
      rep.ok = false;
      rep.first_mismatch = n;
      rep.lhs_value = lhs.coeff(n);
      rep.rhs_value = rhs.coeff(n);
      return rep;
    }
  }
  return rep;
}

// Verifies (1-z) sum e_n z^n + c/(1-z) = sum eps_star products, truncated at
// N, with the left side built from the error profile and the right side from
// the encoding route.
inline IdentityReport check_main_identity(const IntegerSet& a, int k, Star star,
                                          const Rational& c, std::int64_t n_bound) {
  RepTable table = star == Star::le ? count_ordered_le(a, k, n_bound)
                                    : count_ordered_lt(a, k, n_bound);
  ErrorProfile profile = error_partial_sums(table, c);
  TruncatedSeries lhs = main_identity_lhs(profile.e, c, n_bound);
  RepTable gf = count_gf(a, k, star, n_bound);
  TruncatedSeries rhs = TruncatedSeries::from_integers(gf.counts, n_bound);
  return compare_series(lhs, rhs);
}

struct FitResult {
  double alpha = 0.0;
  double r_squared = 0.0;
};

// Least-squares slope of log(seq_n) against log(n) over [from, to].
inline FitResult fit_exponent(const std::vector<double>& seq, std::int64_t from,
                              std::int64_t to) {
  if (from < 1 || to >= static_cast<std::int64_t>(seq.size()) || to - from < 1)
    throw precondition_error("fit window must contain at least two indices with n >= 1");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  std::int64_t m = 0;
  for (std::int64_t n = from; n <= to; ++n) {
    double v = seq[static_cast<std::size_t>(n)];
    if (!(v > 0)) throw precondition_error("fit window requires positive values");
    double x = std::log(static_cast<double>(n));
    double y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    ++m;
  }
  double dm = static_cast<double>(m);
  double cov = sxy - sx * sy / dm;
  double varx = sxx - sx * sx / dm;
  double vary = syy - sy * sy / dm;
  FitResult fit;
  fit.alpha = cov / varx;
  fit.r_squared = vary > 0 ? (cov * cov) / (varx * vary) : 1.0;
  return fit;
}

}  // namespace ordrep
