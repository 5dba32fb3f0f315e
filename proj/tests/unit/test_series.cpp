#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "powerdeform/series.hpp"
#include "powerdeform/series_io.hpp"

using namespace powerdeform;

namespace {

Series geometric(int order) { return Series(std::vector<Complex>(order + 1, 1.0)); }

Series koebe_series(int order) {
  std::vector<Complex> a(order + 1);
  for (int n = 0; n <= order; ++n) a[n] = static_cast<double>(n);
  return Series(std::move(a));
}

Series from(std::initializer_list<Complex> a) { return Series(std::vector<Complex>(a)); }

}  // namespace

TEST_CASE("construction rejects empty and non-finite input") {
  CHECK_THROWS_AS(Series(std::vector<Complex>{}), Error);
  CHECK_THROWS_AS(Series(std::vector<Complex>{1.0, std::nan("")}), Error);
  CHECK(Series::identity(3).order() == 3);
  CHECK(Series::identity(3)[1] == 1.0);
}

TEST_CASE("mul") {
  SUBCASE("difference of squares") {
    const Series a = from({1.0, 1.0, 0.0, 0.0, 0.0});
    const Series b = from({1.0, -1.0, 0.0, 0.0, 0.0});
    const Series p = mul(a, b);
    CHECK(p.order() == 4);
    CHECK(p[0] == 1.0);
    CHECK(p[1] == 0.0);
    CHECK(p[2] == -1.0);
    CHECK(p[3] == 0.0);
    CHECK(p[4] == 0.0);
  }
  SUBCASE("geometric series telescopes") {
    std::vector<Complex> one_minus_z(9);
    one_minus_z[0] = 1.0;
    one_minus_z[1] = -1.0;
    const Series p = mul(geometric(8), Series(one_minus_z));
    CHECK(p[0] == 1.0);
    for (int n = 1; n <= 8; ++n) CHECK(p[n] == 0.0);
  }
  SUBCASE("unit is exact") {
    std::mt19937_64 rng(1);
    const Series f = oracle::random_series(rng, 20, 1.0, 0.3);
    CHECK(max_coeff_distance(mul(f, Series::constant(1.0, 20)), f) == 0.0);
  }
  SUBCASE("truncates to the smaller order") {
    CHECK(mul(geometric(3), geometric(7)).order() == 3);
  }
}

TEST_CASE("derivative") {
  const Series d = derivative(from({0.0, 1.0, 1.0}));
  CHECK(d.order() == 1);
  CHECK(d[0] == 1.0);
  CHECK(d[1] == 2.0);
  CHECK(derivative(Series::constant(1.0, 3)).order() == 2);
  CHECK(derivative(Series::constant(1.0, 3))[0] == 0.0);
  CHECK_THROWS_AS(derivative(Series::constant(1.0, 0)), Error);
  const Series k = derivative(koebe_series(10));
  for (int n = 0; n < 10; ++n) CHECK(std::abs(k[n] - static_cast<double>((n + 1) * (n + 1))) < 1e-12);
}

TEST_CASE("log_unit") {
  const Series zero = log_unit(Series::constant(1.0, 5));
  for (int n = 0; n <= 5; ++n) CHECK(zero[n] == 0.0);

  // (1-z)^{-2} = 1 + 2z + 3z^2 + ...; its log is sum 2 z^n / n.
  std::vector<Complex> h(7);
  for (int n = 0; n <= 6; ++n) h[n] = n + 1.0;
  const Series l = log_unit(Series(h));
  CHECK(std::abs(l[0]) == 0.0);
  for (int n = 1; n <= 6; ++n) CHECK(std::abs(l[n] - 2.0 / n) < 1e-15);

  CHECK_THROWS_WITH_AS(log_unit(Series::constant(2.0, 3)), doctest::Contains("A0"), Error);
}

TEST_CASE("exp_series") {
  const Series one = exp_series(Series::zero(4));
  CHECK(one[0] == 1.0);
  for (int n = 1; n <= 4; ++n) CHECK(one[n] == 0.0);

  const Series e = exp_series(Series::identity(4));
  const double fact[] = {1, 1, 2, 6, 24};
  for (int n = 0; n <= 4; ++n) CHECK(std::abs(e[n] - 1.0 / fact[n]) < 1e-16);

  std::vector<Complex> u(7);
  for (int n = 1; n <= 6; ++n) u[n] = 2.0 / n;
  const Series h = exp_series(Series(u));
  for (int n = 0; n <= 6; ++n) CHECK(std::abs(h[n] - (n + 1.0)) < 1e-13);

  CHECK_THROWS_WITH_AS(exp_series(Series::constant(0.5, 3)), doctest::Contains("vanish"), Error);
}

TEST_CASE("exp/log roundtrip on random units") {
  // The roundtrip error is bounded by the first-order propagation of the
  // rounding of log h: |delta h_n| <= eps * sum_k |u_k| |h_{n-k}|. When h has
  // zeros inside the disk u_k grows geometrically and that bound, not the
  // algorithm, sets the error; the 1e-11 target applies where it is small.
  std::mt19937_64 rng(2);
  double worst_conditioned = 0.0;
  int well_conditioned = 0;
  for (int t = 0; t < 100; ++t) {
    // |h_n| <= 1 in modulus.
    const Series h = oracle::random_series(rng, 32, std::sqrt(0.5), 1.0);
    const Series u = log_unit(h);
    double propagation = 0.0;
    for (int n = 1; n <= 32; ++n) {
      double s = 0.0;
      for (int k = 1; k <= n; ++k) s += std::abs(u[k]) * std::abs(h[n - k]);
      propagation = std::max(propagation, s);
    }
    const double bound = 1.1e-16 * propagation;
    const double err = max_coeff_distance(exp_series(u), h);
    CHECK(err <= 64.0 * bound + 1e-15);
    if (bound < 1e-13) {
      ++well_conditioned;
      worst_conditioned = std::max(worst_conditioned, err);
    }
  }
  CHECK(well_conditioned >= 80);
  CHECK(worst_conditioned < 1e-11);
}

TEST_CASE("pow_c") {
  std::mt19937_64 rng(3);
  const Series h = oracle::random_series(rng, 32, 0.5, 1.0);
  const Series p0 = pow_c(h, 0.0);
  CHECK(p0[0] == 1.0);
  for (int n = 1; n <= 32; ++n) CHECK(p0[n] == 0.0);

  CHECK(max_coeff_distance(pow_c(pow_c(h, 2.0), 0.5), h) < 1e-11);

  // (1-z)^{-2} to the power c: coefficients of z and z^2 are 2c and c(1 + 2c).
  std::vector<Complex> k(9);
  for (int n = 0; n <= 8; ++n) k[n] = n + 1.0;
  for (Complex c : {Complex(0.3, 0.0), Complex(1.2, -0.7), Complex(-2.0, 0.5)}) {
    const Series p = pow_c(Series(k), c);
    CHECK(std::abs(p[1] - 2.0 * c) < 1e-14);
    CHECK(std::abs(p[2] - c * (1.0 + 2.0 * c)) < 1e-13);
    const auto ref = oracle::binomial_neg(2.0 * c, 8);
    for (int n = 0; n <= 8; ++n) CHECK(std::abs(p[n] - ref[n]) < 1e-12 * std::max(1.0, std::abs(ref[n])));
  }
}

TEST_CASE("integrate_from_zero") {
  const Series z = integrate_from_zero(Series::constant(1.0, 0));
  CHECK(z.order() == 1);
  CHECK(z[0] == 0.0);
  CHECK(z[1] == 1.0);

  const Series l = integrate_from_zero(2.0 * geometric(6));
  for (int n = 1; n <= 7; ++n) CHECK(std::abs(l[n] - 2.0 / n) < 1e-15);

  std::mt19937_64 rng(4);
  const Series u = oracle::random_series(rng, 20, 1.0, 0.7);
  CHECK(max_coeff_distance(derivative(integrate_from_zero(u)), u) < 1e-15);
}

TEST_CASE("reciprocal") {
  std::vector<Complex> one_minus_z(11);
  one_minus_z[0] = 1.0;
  one_minus_z[1] = -1.0;
  CHECK(max_coeff_distance(reciprocal(Series(one_minus_z)), geometric(10)) == 0.0);
  CHECK_THROWS_AS(reciprocal(Series::zero(3)), Error);
}

TEST_CASE("evaluate") {
  const Complex z(0.3, 0.1);
  CHECK(evaluate(Series::identity(5), z).value == z);

  const Evaluation k = evaluate(koebe_series(64), 0.5);
  CHECK(std::abs(k.value - 2.0) < 1e-12);
  CHECK(k.reliable);

  const Evaluation one = evaluate(Series::constant(1.0, 5), Complex(0.1, 0.9));
  CHECK(one.value == 1.0);
  CHECK(one.tail == 0.0);

  CHECK_THROWS_WITH_AS(evaluate(Series::identity(3), 0.97), doctest::Contains("radius"), Error);
  CHECK(evaluate(Series::identity(3), 0.97, 0.99).value == 0.97);

  // Geometric series at 0.9 truncated at 64: the tail 0.9^65/(1-0.9) is estimated.
  const Evaluation g = evaluate(geometric(64), 0.9);
  const double true_tail = std::pow(0.9, 65) / 0.1;
  CHECK(g.tail == doctest::Approx(true_tail).epsilon(0.05));

  const auto ext = evaluate_extended(koebe_series(64), {0.5L, 0.0L});
  CHECK(std::abs(ext - std::complex<long double>(2.0L, 0.0L)) < 1e-15L);
}

TEST_CASE("series files roundtrip") {
  std::mt19937_64 rng(5);
  const Series f = oracle::random_series(rng, 17, 3.0, 0.0);
  std::stringstream buf;
  write_series(buf, f);
  const Series g = read_series(buf);
  CHECK(g.order() == f.order());
  CHECK(max_coeff_distance(f, g) == 0.0);

  std::istringstream bad("# comment\n1 0\nfoo bar\n");
  CHECK_THROWS_AS(read_series(bad), Error);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(read_series(empty), Error);
  CHECK_THROWS_AS(read_series(std::filesystem::path("/nonexistent/series.txt")), Error);
}
