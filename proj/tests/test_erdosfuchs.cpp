#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ordrep/erdosfuchs.hpp"

using namespace ordrep;

namespace {

RepTable table_from(std::vector<BigInt> counts) {
  RepTable t;
  t.counts = std::move(counts);
  t.k = 2;
  t.kind = TableKind::of(Star::le);
  t.set_digest = "test";
  t.limit = static_cast<std::int64_t>(t.counts.size()) - 1;
  return t;
}

IntegerSet complete_set(std::vector<std::int64_t> elems) {
  IntegerSet s;
  s.elements = std::move(elems);
  s.limit = s.elements.empty() ? 0 : s.elements.back();
  s.complete = true;
  s.validate();
  return s;
}

}  // namespace

TEST_CASE("partial sums on the naturals telescope to floor(n^2/4)") {
  IntegerSet nat = construct_family({.family = Family::naturals, .limit = 400});
  RepTable t = count_ordered_le(nat, 2, 400);
  ErrorProfile p = error_partial_sums(t, 1);
  for (std::int64_t n = 0; n <= 400; ++n)
    CHECK(p.e[static_cast<std::size_t>(n)] == Rational(BigInt(n) * n / 4));
}

TEST_CASE("moser linear-form profile is identically zero") {
  IntegerSet m = construct_family({.family = Family::moser, .limit = 2000, .k = 2});
  RepTable t = count_linear_form(m, {1, 2}, 2000);
  ErrorProfile p = error_partial_sums(t, 1);
  for (const auto& e : p.e) CHECK(e == 0);
  for (std::size_t n = 2; n < p.ef_stat.size(); ++n) CHECK(p.ef_stat[n] == 0.0);
}

TEST_CASE("all-zero table gives e_n = -(n+1)") {
  RepTable t = table_from(std::vector<BigInt>(10, BigInt(0)));
  ErrorProfile p = error_partial_sums(t, 1);
  for (std::int64_t n = 0; n < 10; ++n)
    CHECK(p.e[static_cast<std::size_t>(n)] == Rational(-(n + 1)));
}

TEST_CASE("partial sum recurrence holds exactly") {
  std::mt19937_64 rng(7);
  std::vector<BigInt> counts(50);
  for (auto& c : counts) c = static_cast<std::int64_t>(rng() % 5);
  RepTable t = table_from(counts);
  Rational c(3, 2);
  ErrorProfile p = error_partial_sums(t, c);
  for (std::size_t n = 1; n < counts.size(); ++n)
    CHECK(p.e[n] - p.e[n - 1] == Rational(counts[n]) - c);
  CHECK(p.e[0] == Rational(counts[0]) - c);
}

TEST_CASE("ef_stat is frozen when the table is padded with c") {
  std::vector<BigInt> counts = {1, 2, 0, 1, 3, 1};
  RepTable t = table_from(counts);
  ErrorProfile p = error_partial_sums(t, 1);
  std::vector<BigInt> padded = counts;
  for (int i = 0; i < 5; ++i) padded.push_back(1);
  ErrorProfile q = error_partial_sums(table_from(padded), 1);
  for (std::size_t n = counts.size(); n < padded.size(); ++n)
    CHECK(q.e[n] == p.e[counts.size() - 1]);
}

TEST_CASE("mean squared error closed cases") {
  RepTable constant = table_from(std::vector<BigInt>(20, BigInt(3)));
  ErrorProfile p = mean_squared_error(constant, 3);
  for (std::size_t n = 1; n < 20; ++n) CHECK(p.E[n] == 0);

  std::vector<BigInt> alternating;
  for (int i = 0; i < 30; ++i) alternating.push_back(i % 2 == 0 ? 1 : 0);
  ErrorProfile q = mean_squared_error(table_from(alternating), Rational(1, 2));
  for (std::size_t n = 1; n < 30; ++n)
    CHECK(q.E[n] == Rational(n + 1, 4 * n));
}

TEST_CASE("non-integer c keeps E above the integrality gap") {
  std::mt19937_64 rng(13);
  std::vector<BigInt> counts(40);
  for (auto& c : counts) c = static_cast<std::int64_t>(rng() % 4);
  ErrorProfile p = mean_squared_error(table_from(counts), Rational(1, 2));
  for (std::size_t n = 1; n < 40; ++n)
    CHECK(p.E[n] >= Rational(n + 1, 4 * n));
}

TEST_CASE("tail window statistics") {
  std::vector<BigInt> counts(101, BigInt(1));
  counts[80] = 5;
  ErrorProfile p = mean_squared_error(table_from(counts), 1);
  CHECK(p.tail.window_lo == 50);
  CHECK(p.tail.window_hi == 100);
  CHECK(p.tail.min_value == 0);
  CHECK(p.tail.max_value == Rational(16, 80));
}

TEST_CASE("best constant is the mean and minimizes E") {
  CHECK(best_constant(table_from({1, 1, 1, 1}), 3) == 1);
  CHECK(best_constant(table_from({0, 2}), 1) == 1);
  CHECK(best_constant(table_from({1, 2, 3}), 2) == 2);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<BigInt> counts(25);
    for (auto& c : counts) c = static_cast<std::int64_t>(rng() % 9);
    RepTable t = table_from(counts);
    std::int64_t n = 24;
    Rational c_star = best_constant(t, n);
    auto e_at = [&](const Rational& c) {
      return mean_squared_error(t, c).E[static_cast<std::size_t>(n)];
    };
    CHECK(e_at(c_star) <= e_at(c_star + 1));
    if (c_star >= 1) CHECK(e_at(c_star) <= e_at(c_star - 1));
  }
}

TEST_CASE("main identity holds and catches corruption") {
  IntegerSet a = complete_set({0, 1, 3});
  IdentityReport rep = check_main_identity(a, 2, Star::le, 1, 6);
  CHECK(rep.ok);

  // degenerate c = 0: plain partial sums
  CHECK(check_main_identity(a, 2, Star::le, 0, 6).ok);
  CHECK(check_main_identity(a, 3, Star::lt, Rational(3, 2), 6).ok);

  // corrupt one partial sum: the mismatch must surface at that index
  RepTable t = count_ordered_le(a, 2, 6);
  ErrorProfile p = error_partial_sums(t, 1);
  p.e[4] += 1;
  TruncatedSeries lhs = main_identity_lhs(p.e, 1, 6);
  RepTable gf = count_gf(a, 2, Star::le, 6);
  IdentityReport bad = compare_series(lhs, TruncatedSeries::from_integers(gf.counts, 6));
  CHECK_FALSE(bad.ok);
  CHECK(bad.first_mismatch == 4);
}

TEST_CASE("main identity across a small matrix") {
  std::vector<IntegerSet> sets = {
      construct_family({.family = Family::mian_chowla, .limit = 200}),
      construct_family({.family = Family::powers, .limit = 200, .p = 2}),
      construct_family({.family = Family::bernoulli, .limit = 200, .k = 2, .C = 2, .seed = 5}),
  };
  for (const auto& a : sets)
    for (int k : {2, 3})
      for (Star star : {Star::le, Star::lt})
        for (Rational c : {Rational(1), Rational(3, 2)}) {
          INFO(a.family_tag << " k=" << k << " star=" << star_name(star));
          CHECK(check_main_identity(a, k, star, c, 200).ok);
        }
}

TEST_CASE("exponent fitting") {
  std::vector<double> quad(200), quarter(200), flat(200);
  for (std::size_t n = 1; n < 200; ++n) {
    double x = static_cast<double>(n);
    quad[n] = x * x;
    quarter[n] = 5.0 * std::pow(x, 0.25);
    flat[n] = 7.5;
  }
  FitResult f1 = fit_exponent(quad, 2, 150);
  CHECK(std::abs(f1.alpha - 2.0) < 1e-9);
  CHECK(f1.r_squared > 1.0 - 1e-12);
  FitResult f2 = fit_exponent(quarter, 2, 150);
  CHECK(std::abs(f2.alpha - 0.25) < 1e-9);
  FitResult f3 = fit_exponent(flat, 2, 150);
  CHECK(std::abs(f3.alpha) < 1e-9);

  std::vector<double> with_zero = quad;
  with_zero[50] = 0.0;
  CHECK_THROWS_AS(fit_exponent(with_zero, 2, 150), precondition_error);
  CHECK_THROWS_AS(fit_exponent(quad, 0, 10), precondition_error);
  CHECK_THROWS_AS(fit_exponent(quad, 10, 10), precondition_error);
}
