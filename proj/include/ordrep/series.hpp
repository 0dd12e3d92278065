#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <ostream>
#include <vector>

#include "ordrep/numeric.hpp"

namespace ordrep {

namespace series_detail {

// Size above which the divide-and-conquer multiplication kicks in for
// big-coefficient inputs. Mutable so tests can force either path.
inline std::atomic<std::size_t>& karatsuba_threshold_ref() {
  static std::atomic<std::size_t> t{512};
  return t;
}
inline std::size_t karatsuba_threshold() { return karatsuba_threshold_ref().load(); }
inline void set_karatsuba_threshold(std::size_t t) { karatsuba_threshold_ref().store(t ? t : 1); }

inline std::vector<BigInt> conv_naive_big(const std::vector<BigInt>& a,
                                          const std::vector<BigInt>& b,
                                          std::size_t out_len) {
  std::vector<BigInt> c(out_len, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    std::size_t jmax = std::min(b.size(), out_len - std::min(out_len, i));
    for (std::size_t j = 0; j < jmax && i + j < out_len; ++j) {
      if (!b[j].is_zero()) c[i + j] += a[i] * b[j];
    }
  }
  return c;
}

// Karatsuba over arbitrary-precision coefficients, full product (length
// |a|+|b|-1). Falls back to the naive kernel below the threshold.
inline std::vector<BigInt> conv_karatsuba_big(const std::vector<BigInt>& a,
                                              const std::vector<BigInt>& b) {
  if (a.empty() || b.empty()) return {};
  std::size_t full = a.size() + b.size() - 1;
  if (std::min(a.size(), b.size()) <= karatsuba_threshold())
    return conv_naive_big(a, b, full);

  std::size_t h = (std::max(a.size(), b.size()) + 1) / 2;
  auto lo = [&](const std::vector<BigInt>& v) {
    return std::vector<BigInt>(v.begin(), v.begin() + std::min(h, v.size()));
  };
  auto hi = [&](const std::vector<BigInt>& v) {
    return v.size() > h ? std::vector<BigInt>(v.begin() + h, v.end()) : std::vector<BigInt>{};
  };
  std::vector<BigInt> a0 = lo(a), a1 = hi(a), b0 = lo(b), b1 = hi(b);
  auto plus = [](const std::vector<BigInt>& x, const std::vector<BigInt>& y) {
    std::vector<BigInt> s(std::max(x.size(), y.size()), BigInt(0));
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i];
    for (std::size_t i = 0; i < y.size(); ++i) s[i] += y[i];
    return s;
  };
  std::vector<BigInt> z0 = conv_karatsuba_big(a0, b0);
  std::vector<BigInt> z2 =
      (a1.empty() || b1.empty()) ? std::vector<BigInt>{} : conv_karatsuba_big(a1, b1);
  std::vector<BigInt> z1 = conv_karatsuba_big(plus(a0, a1), plus(b0, b1));
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] -= z0[i];
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] -= z2[i];

  std::vector<BigInt> c(full, BigInt(0));
  for (std::size_t i = 0; i < z0.size(); ++i) c[i] += z0[i];
  for (std::size_t i = 0; i < z1.size(); ++i)
    if (h + i < full) c[h + i] += z1[i];
  for (std::size_t i = 0; i < z2.size(); ++i)
    if (2 * h + i < full) c[2 * h + i] += z2[i];
  return c;
}

struct Int64View {
  std::vector<std::int64_t> values;
  std::int64_t max_abs = 0;
  std::size_t nonzeros = 0;
  bool ok = false;
};

inline Int64View to_int64_view(const std::vector<BigInt>& v) {
  Int64View view;
  view.values.reserve(v.size());
  for (const auto& x : v) {
    if (!fits_int64(x)) return view;
    std::int64_t y = x.convert_to<std::int64_t>();
    view.values.push_back(y);
    std::int64_t ay = y < 0 ? -y : y;
    if (ay > view.max_abs) view.max_abs = ay;
    if (y != 0) ++view.nonzeros;
  }
  view.ok = true;
  return view;
}

inline std::vector<BigInt> conv_naive_i64(const std::vector<std::int64_t>& a,
                                          const std::vector<std::int64_t>& b,
                                          std::size_t out_len) {
  std::vector<std::int64_t> c(out_len, 0);
  for (std::size_t i = 0; i < a.size() && i < out_len; ++i) {
    std::int64_t ai = a[i];
    if (ai == 0) continue;
    std::size_t jmax = std::min(b.size(), out_len - i);
    const std::int64_t* bp = b.data();
    std::int64_t* cp = c.data() + i;
    for (std::size_t j = 0; j < jmax; ++j) cp[j] += ai * bp[j];
  }
  std::vector<BigInt> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = c[i];
  return out;
}

// Sparse accumulation: walk the nonzeros of the sparser operand.
inline std::vector<BigInt> conv_sparse_i64(const std::vector<std::int64_t>& sparse,
                                           const std::vector<std::int64_t>& dense,
                                           std::size_t out_len) {
  std::vector<std::int64_t> c(out_len, 0);
  for (std::size_t i = 0; i < sparse.size() && i < out_len; ++i) {
    std::int64_t si = sparse[i];
    if (si == 0) continue;
    std::size_t jmax = std::min(dense.size(), out_len - i);
    const std::int64_t* dp = dense.data();
    std::int64_t* cp = c.data() + i;
    if (si == 1) {
      for (std::size_t j = 0; j < jmax; ++j) cp[j] += dp[j];
    } else {
      for (std::size_t j = 0; j < jmax; ++j) cp[j] += si * dp[j];
    }
  }
  std::vector<BigInt> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = c[i];
  return out;
}

inline std::vector<BigInt> conv_sparse_big(const std::vector<BigInt>& a,
                                           const std::vector<BigInt>& b,
                                           std::size_t out_len) {
  std::size_t nnz_a = 0, nnz_b = 0;
  for (const auto& x : a) nnz_a += !x.is_zero();
  for (const auto& x : b) nnz_b += !x.is_zero();
  const auto& s = nnz_a <= nnz_b ? a : b;
  const auto& d = nnz_a <= nnz_b ? b : a;
  std::vector<BigInt> c(out_len, BigInt(0));
  for (std::size_t i = 0; i < s.size() && i < out_len; ++i) {
    if (s[i].is_zero()) continue;
    std::size_t jmax = std::min(d.size(), out_len - i);
    for (std::size_t j = 0; j < jmax; ++j)
      if (!d[j].is_zero()) c[i + j] += s[i] * d[j];
  }
  return c;
}

// Exact truncated convolution. Fast path: when every coefficient fits a
// machine word and |a|_inf * |b|_inf * min(len) cannot overflow, run plain
// int64 arithmetic (walking the sparser side when it pays off). Otherwise
// fall back to arbitrary precision, divide-and-conquer above the threshold.
inline std::vector<BigInt> convolve(const std::vector<BigInt>& a, const std::vector<BigInt>& b,
                                    std::size_t out_len) {
  if (a.empty() || b.empty() || out_len == 0) return std::vector<BigInt>(out_len, BigInt(0));

  Int64View va = to_int64_view(a);
  Int64View vb = to_int64_view(b);
  if (va.ok && vb.ok) {
    long double bound = static_cast<long double>(std::max<std::int64_t>(va.max_abs, 1)) *
                        static_cast<long double>(std::max<std::int64_t>(vb.max_abs, 1)) *
                        static_cast<long double>(std::min(a.size(), b.size()));
    if (bound < 0x1p62L) {
      std::size_t dense_cost = std::min(a.size(), out_len) * std::min(b.size(), out_len);
      std::size_t sparse_cost =
          std::min(va.nonzeros * b.size(), vb.nonzeros * a.size());
      if (sparse_cost * 4 < dense_cost) {
        return va.nonzeros * b.size() <= vb.nonzeros * a.size()
                   ? conv_sparse_i64(va.values, vb.values, out_len)
                   : conv_sparse_i64(vb.values, va.values, out_len);
      }
      return conv_naive_i64(va.values, vb.values, out_len);
    }
  }

  std::size_t nnz_a = 0, nnz_b = 0;
  for (const auto& x : a) nnz_a += !x.is_zero();
  for (const auto& x : b) nnz_b += !x.is_zero();
  std::size_t dense_cost = a.size() * b.size();
  if (std::min(nnz_a * b.size(), nnz_b * a.size()) * 4 < dense_cost)
    return conv_sparse_big(a, b, out_len);
  if (std::min(a.size(), b.size()) > karatsuba_threshold()) {
    std::vector<BigInt> full = conv_karatsuba_big(a, b);
    full.resize(out_len, BigInt(0));
    return full;
  }
  return conv_naive_big(a, b, out_len);
}

}  // namespace series_detail

// A formal power series modulo z^(N+1) with exact rational coefficients,
// stored as integer numerators over one common denominator. The
// representation is canonical: gcd(all numerators, denominator) = 1 and the
// denominator is positive (1 for the zero series).
class TruncatedSeries {
 public:
  TruncatedSeries() = default;

  static TruncatedSeries zero(std::int64_t order) {
    TruncatedSeries s;
    s.order_ = check_order(order);
    s.num_.assign(static_cast<std::size_t>(order) + 1, BigInt(0));
    s.den_ = 1;
    return s;
  }

  static TruncatedSeries from_indicator(const std::vector<std::uint8_t>& delta,
                                        std::int64_t order) {
    check_order(order);
    if (delta.size() < static_cast<std::size_t>(order) + 1)
      throw precondition_error("indicator shorter than requested order");
    TruncatedSeries s = zero(order);
    for (std::size_t n = 0; n <= static_cast<std::size_t>(order); ++n) s.num_[n] = delta[n];
    return s;
  }

  static TruncatedSeries from_integers(std::vector<BigInt> coeffs, std::int64_t order) {
    check_order(order);
    coeffs.resize(static_cast<std::size_t>(order) + 1, BigInt(0));
    TruncatedSeries s;
    s.order_ = order;
    s.num_ = std::move(coeffs);
    s.den_ = 1;
    return s;
  }

  static TruncatedSeries from_rationals(const std::vector<Rational>& coeffs,
                                        std::int64_t order) {
    check_order(order);
    if (coeffs.size() < static_cast<std::size_t>(order) + 1)
      throw precondition_error("coefficient list shorter than requested order");
    BigInt den = 1;
    for (std::size_t n = 0; n <= static_cast<std::size_t>(order); ++n)
      den = boost::multiprecision::lcm(den, rat_den(coeffs[n]));
    TruncatedSeries s = zero(order);
    s.den_ = den;
    for (std::size_t n = 0; n <= static_cast<std::size_t>(order); ++n)
      s.num_[n] = rat_num(coeffs[n]) * (den / rat_den(coeffs[n]));
    s.normalize();
    return s;
  }

  // Monomial helper: c * z^p truncated at `order`.
  static TruncatedSeries monomial(const Rational& c, std::int64_t p, std::int64_t order) {
    TruncatedSeries s = zero(order);
    if (p <= order) {
      s.num_[static_cast<std::size_t>(p)] = rat_num(c);
      s.den_ = rat_den(c);
    }
    s.normalize();
    return s;
  }

  std::int64_t order() const { return order_; }
  const std::vector<BigInt>& numerators() const { return num_; }
  const BigInt& denominator() const { return den_; }

  Rational coeff(std::int64_t n) const {
    if (n < 0 || n > order_) throw precondition_error("coefficient index out of range");
    return Rational(num_[static_cast<std::size_t>(n)], den_);
  }

  bool is_integral() const { return den_ == 1; }

  bool operator==(const TruncatedSeries& o) const {
    return order_ == o.order_ && den_ == o.den_ && num_ == o.num_;
  }

  void normalize() {
    if (den_ == 0) throw precondition_error("zero denominator");
    if (den_ < 0) {
      den_ = -den_;
      for (auto& x : num_) x = -x;
    }
    BigInt g = den_;
    for (const auto& x : num_) {
      if (g == 1) break;
      g = boost::multiprecision::gcd(g, x);
    }
    if (g > 1) {
      den_ /= g;
      for (auto& x : num_) x /= g;
    }
    bool all_zero = true;
    for (const auto& x : num_)
      if (!x.is_zero()) {
        all_zero = false;
        break;
      }
    if (all_zero) den_ = 1;
  }

  // CSV rows n,numerator,denominator with per-coefficient reduced fractions.
  void dump_csv(std::ostream& out) const {
    out << "n,numerator,denominator\n";
    for (std::int64_t n = 0; n <= order_; ++n) {
      BigInt g = boost::multiprecision::gcd(num_[static_cast<std::size_t>(n)], den_);
      if (g == 0) g = 1;
      out << n << "," << (num_[static_cast<std::size_t>(n)] / g) << "," << (den_ / g) << "\n";
    }
  }

 private:
  friend TruncatedSeries multiply(const TruncatedSeries&, const TruncatedSeries&, std::int64_t);
  friend TruncatedSeries dilate(const TruncatedSeries&, std::int64_t, std::int64_t);
  friend TruncatedSeries add_scaled(const TruncatedSeries&, const Rational&,
                                    const TruncatedSeries&, std::int64_t);

  static std::int64_t check_order(std::int64_t order) {
    if (order < 0) throw precondition_error("series order must be >= 0");
    return order;
  }

  std::int64_t order_ = 0;
  std::vector<BigInt> num_{BigInt(0)};
  BigInt den_ = 1;
};

// Exact Cauchy product truncated at N.
inline TruncatedSeries multiply(const TruncatedSeries& s, const TruncatedSeries& t,
                                std::int64_t n_trunc) {
  if (s.order() < n_trunc || t.order() < n_trunc)
    throw precondition_error("operand order too small for requested truncation");
  std::size_t len = static_cast<std::size_t>(n_trunc) + 1;
  std::vector<BigInt> a(s.num_.begin(), s.num_.begin() + len);
  std::vector<BigInt> b(t.num_.begin(), t.num_.begin() + len);
  TruncatedSeries r;
  r.order_ = n_trunc;
  r.num_ = series_detail::convolve(a, b, len);
  r.den_ = s.den_ * t.den_;
  r.normalize();
  return r;
}

// Substitution z -> z^i: coefficient of z^(i*n) becomes c_n.
inline TruncatedSeries dilate(const TruncatedSeries& s, std::int64_t i, std::int64_t n_trunc) {
  if (i < 1) throw precondition_error("dilation factor must be >= 1");
  if (s.order() < n_trunc / i)
    throw precondition_error("operand order too small for requested dilation");
  TruncatedSeries r = TruncatedSeries::zero(n_trunc);
  r.den_ = s.den_;
  for (std::int64_t n = 0; n * i <= n_trunc && n <= s.order(); ++n)
    r.num_[static_cast<std::size_t>(n * i)] = s.num_[static_cast<std::size_t>(n)];
  r.normalize();
  return r;
}

// Coefficientwise s + q * t, exact.
inline TruncatedSeries add_scaled(const TruncatedSeries& s, const Rational& q,
                                  const TruncatedSeries& t, std::int64_t n_trunc) {
  if (s.order() < n_trunc || t.order() < n_trunc)
    throw precondition_error("operand order too small for requested truncation");
  BigInt qn = rat_num(q), qd = rat_den(q);
  BigInt den = s.den_ * t.den_ * qd;
  BigInt scale_s = t.den_ * qd;
  BigInt scale_t = s.den_ * qn;
  TruncatedSeries r = TruncatedSeries::zero(n_trunc);
  r.den_ = den;
  for (std::size_t n = 0; n <= static_cast<std::size_t>(n_trunc); ++n)
    r.num_[n] = s.num_[n] * scale_s + t.num_[n] * scale_t;
  r.normalize();
  return r;
}

// Exact evaluation of the truncated polynomial at a rational point of (0,1).
inline Rational eval_real(const TruncatedSeries& s, const Rational& r) {
  if (!(r > 0 && r < 1)) throw precondition_error("evaluation point must lie in (0,1)");
  Rational acc = 0;
  for (std::int64_t n = s.order(); n >= 0; --n) acc = acc * r + s.coeff(n);
  return acc;
}

}  // namespace ordrep
