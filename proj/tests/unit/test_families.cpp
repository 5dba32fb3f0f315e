#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "powerdeform/families.hpp"

using namespace powerdeform;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("builtin bases") {
  const Series k = koebe_family(6).base();
  CHECK(k.order() == 6);
  for (int n = 0; n <= 6; ++n) CHECK(k[n] == static_cast<double>(n));

  const Series e = expfam_family(3).base();
  CHECK(e[0] == 0.0);
  CHECK(e[1] == 1.0);
  CHECK(std::abs(e[2] - kPi / 2.0) < 1e-15);
  CHECK(std::abs(e[3] - kPi * kPi / 6.0) < 1e-15);

  CHECK(identity_family(8).is_identity());
  CHECK_FALSE(koebe_family().is_identity());
  CHECK(koebe_family().has_real_coefficients());
  CHECK_FALSE(powerlog_family(1.0).has_real_coefficients());
}

TEST_CASE("families require the A1 normalization") {
  CHECK_THROWS_AS(DeformationFamily(Series(std::vector<Complex>{0.0, 2.0, 1.0}), "bad"), Error);
  CHECK_THROWS_AS(DeformationFamily(Series(std::vector<Complex>{0.1, 1.0, 1.0}), "bad"), Error);
}

TEST_CASE("power_deform") {
  std::mt19937_64 rng(11);
  const DeformationFamily f = oracle::random_family(rng, 24);
  const Series id = power_deform(f, 0.0);
  CHECK(id[1] == 1.0);
  for (int n = 2; n <= id.order(); ++n) CHECK(id[n] == 0.0);

  // K_c[kappa] = z (1-z)^{-2c}.
  const DeformationFamily kappa = koebe_family(30);
  for (Complex c : {Complex(0.5, 0.0), Complex(1.2, 0.0), Complex(0.3, 0.8), Complex(-1.0, 0.0)}) {
    const Series s = power_deform(kappa, c);
    const auto ref = oracle::binomial_neg(2.0 * c, 29);
    for (int n = 1; n <= 30; ++n) {
      CHECK(std::abs(s[n] - ref[n - 1]) < 1e-11 * std::max(1.0, std::abs(ref[n - 1])));
    }
    CHECK(std::abs(s[2] - 2.0 * c) < 1e-14);
    CHECK(std::abs(s[3] - c * (1.0 + 2.0 * c)) < 1e-13);
  }
  const Series half = power_deform(kappa, 0.5);
  for (int n = 1; n <= 30; ++n) CHECK(std::abs(half[n] - 1.0) < 1e-13);
}

TEST_CASE("log_derivative") {
  const Series one = log_derivative(identity_family(10));
  CHECK(one[0] == 1.0);
  for (int n = 1; n <= one.order(); ++n) CHECK(one[n] == 0.0);

  const Series p = log_derivative(koebe_family(12));
  CHECK(std::abs(p[0] - 1.0) < 1e-15);
  for (int n = 1; n <= p.order(); ++n) CHECK(std::abs(p[n] - 2.0) < 1e-12);

  // p for expfam is x/(1 - e^{-x}) at x = pi z.
  const Series q = log_derivative(expfam_family(24));
  const auto b = oracle::bernoulli_plus(24);
  long double scale = 1.0L;
  for (int n = 0; n < q.order(); ++n) {
    const double ref = static_cast<double>(b[n] * scale);
    CHECK(std::abs(q[n] - ref) < 1e-12 * std::max(1.0, std::abs(ref)));
    scale = scale * static_cast<long double>(kPi) / (n + 1);
  }
}

TEST_CASE("from_log_derivative") {
  const DeformationFamily id = from_log_derivative(Series::constant(1.0, 8));
  CHECK(id.is_identity());

  std::vector<Complex> p(21, 2.0);
  p[0] = 1.0;
  CHECK(max_coeff_distance(from_log_derivative(Series(p)).base(), koebe_family(21).base()) < 1e-11);

  CHECK_THROWS_AS(from_log_derivative(Series::constant(2.0, 4)), Error);
}

TEST_CASE("power family coefficients") {
  for (Complex alpha : {Complex(1.0 / 6.0, 0.0), Complex(0.0, 1.0 / 12.0), Complex(0.0, 4.0 / kPi),
                        Complex(0.4, -0.3)}) {
    const DeformationFamily f = power_family(alpha, 32);
    CHECK(std::abs(f.base()[2] - 2.0 * alpha) < 1e-14);
    CHECK(std::abs(f.base()[3] - 3.0 * alpha * alpha) < 1e-13);
    // K_c display: z + 2 c alpha z^2 + c(1 + 2c) alpha^2 z^3.
    const Complex c(0.7, 0.2);
    const Series s = power_deform(f, c);
    CHECK(std::abs(s[2] - 2.0 * c * alpha) < 1e-14);
    CHECK(std::abs(s[3] - c * (1.0 + 2.0 * c) * alpha * alpha) < 1e-13);
    // p series against exp(2 alpha atanh z) at a few points inside |z| < 1/2.
    const Series p = log_derivative(f);
    for (Complex z : {Complex(0.3, 0.1), Complex(-0.2, 0.35), Complex(0.0, -0.4)}) {
      std::vector<Complex> coeffs(p.coeffs().begin(), p.coeffs().end());
      CHECK(std::abs(oracle::horner(coeffs, z) - std::exp(2.0 * alpha * std::atanh(z))) < 1e-9);
    }
  }
  CHECK(powerlog_family(2.0).power_exponent() == Complex(0.0, 2.0 / kPi));
  CHECK(covering_family(2.0).power_exponent() == Complex(0.0, 4.0 / kPi));
  CHECK(std::abs(powerlog_family(2.0).base()[2] - Complex(0.0, 4.0 / kPi)) < 1e-14);
  CHECK_THROWS_AS(powerlog_family(-1.0), Error);
}

TEST_CASE("closed forms") {
  const DeformationFamily kappa = koebe_family();
  CHECK(std::abs(closed_form_eval(kappa, 1.0, 0.5) - 2.0) < 1e-15);
  CHECK(std::abs(closed_form_eval(kappa, 0.5, 0.5) - 1.0) < 1e-15);

  const DeformationFamily e = expfam_family();
  CHECK(std::abs(closed_form_eval(e, 1.0, 0.3) - (std::exp(0.3 * kPi) - 1.0) / kPi) < 1e-15);

  // K_c[kappa] on the whole disk, including near z = 1 and across the negative axis.
  for (Complex z : {Complex(0.99, 0.05), Complex(-0.9, 0.01), Complex(-0.9, -0.01), Complex(0.1, -0.98)}) {
    const Complex c(1.3, -0.4);
    CHECK(std::abs(closed_form_eval(kappa, c, z) - z * std::pow(1.0 - z, -2.0 * c)) <
          1e-12 * std::abs(closed_form_eval(kappa, c, z)));
  }

  // Series and closed form agree inside the series' convergence region.
  for (const DeformationFamily& f : {kappa, e, power_family(1.0 / 6.0, 128), powerlog_family(kPi / 12.0, 128)}) {
    for (Complex c : {Complex(1.0, 0.0), Complex(0.4, 0.3), Complex(-0.8, 0.0)}) {
      const Series s = power_deform(f, c);
      for (Complex z : {Complex(0.5, 0.0), Complex(0.2, -0.6), Complex(-0.55, 0.1)}) {
        CHECK(std::abs(evaluate(s, z).value - closed_form_eval(f, c, z)) < 1e-10);
        const auto ext = closed_form_eval_extended(f, c, z);
        CHECK(std::abs(Complex(static_cast<double>(ext.real()), static_cast<double>(ext.imag())) -
                       closed_form_eval(f, c, z)) < 1e-13);
      }
    }
  }
  CHECK_THROWS_AS(closed_form_eval(kappa, 1.0, 1.0), Error);
  CHECK_THROWS_AS(closed_form_log_derivative(DeformationFamily(Series::identity(4), "poly"), 0.1), Error);

  const auto lv = closed_form_log_derivative(e, Complex(0.2, 0.1));
  const Complex x = kPi * Complex(0.2, 0.1);
  CHECK(std::abs(lv.p - x / (1.0 - std::exp(-x))) < 1e-14);
}

TEST_CASE("parse_family") {
  CHECK(parse_family("koebe", 10).closed_form() == ClosedForm::koebe);
  CHECK(parse_family("expfam").closed_form() == ClosedForm::expfam);
  CHECK(parse_family("identity").is_identity());
  CHECK(parse_family("powerlog:m=0.5").power_exponent() == Complex(0.0, 0.5 / kPi));
  CHECK(parse_family("covering:m=0.5").power_exponent() == Complex(0.0, 1.0 / kPi));
  CHECK(parse_family("power:alpha=0.25-0.5i").power_exponent() == Complex(0.25, -0.5));
  CHECK_THROWS_AS(parse_family("nope"), Error);
  CHECK_THROWS_AS(parse_family("powerlog:m=abc"), Error);
  CHECK_THROWS_AS(parse_family("power:beta=1"), Error);
  CHECK_THROWS_AS(parse_family("file:/nonexistent"), Error);
}

TEST_CASE("parse_complex") {
  CHECK(parse_complex("1") == Complex(1.0, 0.0));
  CHECK(parse_complex("-0.5+2i") == Complex(-0.5, 2.0));
  CHECK(parse_complex("1e-3-4.5i") == Complex(1e-3, -4.5));
  CHECK(parse_complex("2i") == Complex(0.0, 2.0));
  CHECK(parse_complex("-i") == Complex(0.0, -1.0));
  CHECK_THROWS_AS(parse_complex(""), Error);
  CHECK_THROWS_AS(parse_complex("1+"), Error);
  CHECK_THROWS_AS(parse_complex("x"), Error);
  CHECK_THROWS_AS(parse_complex("nan"), Error);
}
