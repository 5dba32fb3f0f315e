#include "oracles.hpp"

#include <cmath>
#include <numbers>

namespace oracle {

std::vector<Complex> binomial_neg(Complex a, int n) {
  std::vector<Complex> out(static_cast<std::size_t>(n) + 1);
  out[0] = 1.0;
  for (int k = 1; k <= n; ++k) out[k] = out[k - 1] * (a + static_cast<double>(k - 1)) / static_cast<double>(k);
  return out;
}

std::vector<long double> bernoulli_plus(int n) {
  // sum_{k=0}^{m} C(m+1, k) B_k = 0 for m >= 1 with B_1 = -1/2.
  std::vector<long double> b(static_cast<std::size_t>(n) + 1, 0.0L);
  b[0] = 1.0L;
  for (int m = 1; m <= n; ++m) {
    long double sum = 0.0L;
    long double binom = 1.0L;  // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      sum += binom * b[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[m] = -sum / (m + 1);
  }
  if (n >= 1) b[1] = 0.5L;
  return b;
}

std::vector<std::vector<Complex>> grunsky_by_cauchy(const std::function<Complex(Complex)>& f,
                                                    int size, double rho, int points) {
  const double pi = std::numbers::pi;
  std::vector<Complex> zs(points), ws(points), fz(points), fw(points);
  for (int k = 0; k < points; ++k) {
    zs[k] = std::polar(rho, 2.0 * pi * k / points);
    // Half-step offset keeps z != w on the torus.
    ws[k] = std::polar(rho, 2.0 * pi * (k + 0.5) / points);
    fz[k] = f(zs[k]);
    fw[k] = f(ws[k]);
  }
  std::vector<std::vector<Complex>> b(size + 1, std::vector<Complex>(size + 1));
  std::vector<std::vector<Complex>> q(points, std::vector<Complex>(points));
  for (int a = 0; a < points; ++a) {
    for (int c = 0; c < points; ++c) {
      const Complex num = 1.0 / fz[a] - 1.0 / fw[c];
      const Complex den = 1.0 / zs[a] - 1.0 / ws[c];
      q[a][c] = -std::log(num / den);
    }
  }
  for (int j = 1; j <= size; ++j) {
    for (int k = 1; k <= size; ++k) {
      Complex s{};
      for (int a = 0; a < points; ++a) {
        for (int c = 0; c < points; ++c) s += q[a][c] * std::pow(zs[a], -j) * std::pow(ws[c], -k);
      }
      b[j][k] = s / static_cast<double>(points * points);
    }
  }
  return b;
}

Complex koebe_critical_point(Complex c) {
  const Complex w = (c - 1.0) / c;
  return (w - 1.0) / (w + 1.0);
}

Complex horner(const std::vector<Complex>& a, Complex z) {
  Complex s{};
  for (auto it = a.rbegin(); it != a.rend(); ++it) s = s * z + *it;
  return s;
}

powerdeform::Series random_series(std::mt19937_64& rng, int order, double bound, Complex constant) {
  std::uniform_real_distribution<double> u(-bound, bound);
  std::vector<Complex> a(static_cast<std::size_t>(order) + 1);
  for (auto& x : a) x = Complex(u(rng), u(rng));
  a[0] = constant;
  return powerdeform::Series(std::move(a));
}

powerdeform::DeformationFamily random_family(std::mt19937_64& rng, int order) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> a(static_cast<std::size_t>(order) + 1);
  a[1] = 1.0;
  double scale = 0.4;
  for (int k = 2; k <= order; ++k) {
    scale *= 0.5;
    a[k] = scale * Complex(u(rng), u(rng));
  }
  return powerdeform::DeformationFamily(powerdeform::Series(std::move(a)), "random");
}

Complex random_complex(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  return {u(rng), u(rng)};
}

}  // namespace oracle
