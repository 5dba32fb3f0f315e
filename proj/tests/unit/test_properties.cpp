#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "powerdeform/obstructions.hpp"
#include "powerdeform/series_io.hpp"

using namespace powerdeform;

// Each property runs on 100 generated instances from a fixed seed.
namespace {
constexpr int kTrials = 100;
constexpr int kOrder = 32;

double rel(const Series& a, const Series& b) {
  double scale = 1.0;
  for (Complex x : a.coeffs()) scale = std::max(scale, std::abs(x));
  return max_coeff_distance(a, b) / scale;
}
}  // namespace

TEST_CASE("ring laws of truncated multiplication") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < kTrials; ++t) {
    const Series a = oracle::random_series(rng, kOrder, 1.0, oracle::random_complex(rng, 1.0));
    const Series b = oracle::random_series(rng, kOrder, 1.0, oracle::random_complex(rng, 1.0));
    const Series c = oracle::random_series(rng, kOrder, 1.0, oracle::random_complex(rng, 1.0));
    CHECK(rel(mul(a, b), mul(b, a)) < 1e-15);
    CHECK(rel(mul(mul(a, b), c), mul(a, mul(b, c))) < 1e-13);
    CHECK(rel(mul(a, b + c), mul(a, b) + mul(a, c)) < 1e-13);
    // Product rule, truncated to the order both sides know.
    const Series lhs = derivative(mul(a, b));
    const Series rhs = mul(derivative(a), b.truncated(kOrder - 1)) + mul(a.truncated(kOrder - 1), derivative(b));
    CHECK(rel(lhs, rhs) < 1e-13);
  }
}

TEST_CASE("exp and log") {
  std::mt19937_64 rng(102);
  for (int t = 0; t < kTrials; ++t) {
    const Series u = oracle::random_series(rng, kOrder, 0.7, 0.0);
    const Series v = oracle::random_series(rng, kOrder, 0.7, 0.0);
    CHECK(rel(exp_series(u + v), mul(exp_series(u), exp_series(v))) < 1e-12);
    CHECK(max_coeff_distance(log_unit(exp_series(u)), u) < 1e-11);
    const Series h = oracle::random_series(rng, kOrder, 0.7, 1.0);
    CHECK(max_coeff_distance(exp_series(log_unit(h)), h) < 1e-11);
    const Series r = reciprocal(h);
    double size = 1.0;
    for (Complex x : r.coeffs()) size = std::max(size, std::abs(x));
    CHECK(max_coeff_distance(mul(h, r), Series::constant(1.0, kOrder)) < 1e-14 * size);
    const Complex a = oracle::random_complex(rng, 1.5);
    const Complex b = oracle::random_complex(rng, 1.5);
    CHECK(rel(pow_c(pow_c(h, a), b), pow_c(h, a * b)) < 1e-10);
  }
}

TEST_CASE("power deformation semigroup and log-derivative identity") {
  std::mt19937_64 rng(103);
  double semigroup = 0.0;
  double identity = 0.0;
  for (int t = 0; t < kTrials; ++t) {
    const DeformationFamily f = oracle::random_family(rng, kOrder);
    const Complex c = oracle::random_complex(rng, 2.0);
    const Complex c2 = oracle::random_complex(rng, 2.0);
    const DeformationFamily fc(power_deform(f, c), "fc");
    semigroup = std::max(semigroup, max_coeff_distance(power_deform(fc, c2), power_deform(f, c * c2)));
    const Series direct = mul(derivative(fc.base()), reciprocal(fc.base().divided_by_z()));
    const Series p = mul(derivative(f.base()), reciprocal(f.base().divided_by_z()));
    identity = std::max(identity, max_coeff_distance(direct, Series::constant(1.0 - c, p.order()) + c * p));
  }
  CHECK(semigroup < 1e-10);
  CHECK(identity < 1e-11);
}

TEST_CASE("Grunsky symmetry and scaling law") {
  std::mt19937_64 rng(104);
  double asym = 0.0;
  for (int t = 0; t < kTrials; ++t) {
    const DeformationFamily f = oracle::random_family(rng, kOrder);
    asym = std::max(asym, grunsky_coeffs(f.base(), 15).raw_asymmetry());
    const GrunskyMatrix g = grunsky_coeffs(f.base(), 15);
    for (int j = 1; j <= 15; ++j) {
      for (int k = 1; k <= 15; ++k) REQUIRE(g.b(j, k) == g.b(k, j));
    }
  }
  CHECK(asym < 1e-10);

  for (int t = 0; t < 20; ++t) {
    const DeformationFamily f = oracle::random_family(rng, 81);
    const Complex c = oracle::random_complex(rng, 2.0);
    const Complex c2 = oracle::random_complex(rng, 2.0);
    if (std::abs(c) < 0.1) continue;
    const DeformationFamily fc(power_deform(f, c), "fc");
    const Verdict a = grunsky_test(fc, c2, 40);
    const Verdict b = grunsky_test(f, c * c2, 40);
    CHECK(a.state == b.state);
    CHECK(a.witness->value == doctest::Approx(b.witness->value).epsilon(1e-8));
  }
}

TEST_CASE("Prawitz sums are monotone once the truncation is one-sided") {
  std::mt19937_64 rng(105);
  std::uniform_real_distribution<double> lam(0.05, 6.0);
  for (int t = 0; t < kTrials; ++t) {
    const DeformationFamily f = oracle::random_family(rng, kOrder);
    const Complex c = oracle::random_complex(rng, 3.0);
    const double lambda = lam(rng);
    const int first = std::max(2, static_cast<int>(std::ceil(lambda + 1.0)));
    double prev = prawitz_sum(f, lambda, first, c);
    for (int n = first + 1; n <= kOrder; ++n) {
      const double s = prawitz_sum(f, lambda, n, c);
      CHECK(s >= prev);
      prev = s;
    }
  }
}

TEST_CASE("text roundtrips") {
  std::mt19937_64 rng(106);
  for (int t = 0; t < kTrials; ++t) {
    const Complex z = oracle::random_complex(rng, std::pow(10.0, static_cast<int>(rng() % 20) - 10));
    CHECK(parse_complex(format_complex(z)) == z);
    CHECK(parse_double(format_double(z.real())) == z.real());
    const Series s = oracle::random_series(rng, 12, 5.0, z);
    std::stringstream buf;
    write_series(buf, s);
    CHECK(max_coeff_distance(read_series(buf), s) == 0.0);
  }
}
