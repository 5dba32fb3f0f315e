#include "powerdeform/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace powerdeform {

namespace {

void require_order(int order) {
  if (order < 0) {
    throw Error("series order must be nonnegative");
  }
}

}  // namespace

Series::Series(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw Error("a series needs at least one coefficient");
  }
  for (const Complex& c : coeffs_) {
    require_finite(c, "series coefficient");
  }
}

Series Series::zero(int order) {
  require_order(order);
  return Series(std::vector<Complex>(static_cast<std::size_t>(order) + 1));
}

Series Series::constant(Complex value, int order) {
  Series s = zero(order);
  require_finite(value, "constant");
  s.coeffs_[0] = value;
  return s;
}

Series Series::identity(int order) {
  if (order < 1) {
    throw Error("the identity series needs order >= 1");
  }
  Series s = zero(order);
  s.coeffs_[1] = 1.0;
  return s;
}

Series Series::truncated(int order) const {
  require_order(order);
  if (order > this->order()) {
    throw Error("cannot truncate a series of order " + std::to_string(this->order()) +
                " to the larger order " + std::to_string(order));
  }
  return Series(std::vector<Complex>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

Series Series::divided_by_z() const {
  if (order() < 1) {
    throw Error("cannot divide an order-0 series by z");
  }
  if (std::abs(coeffs_[0]) > kUnitTolerance) {
    throw Error("series does not vanish at 0");
  }
  return Series(std::vector<Complex>(coeffs_.begin() + 1, coeffs_.end()));
}

Series Series::times_z() const {
  std::vector<Complex> out(coeffs_.size() + 1);
  std::copy(coeffs_.begin(), coeffs_.end(), out.begin() + 1);
  return Series(std::move(out));
}

Series operator+(const Series& a, const Series& b) {
  const int n = std::min(a.order(), b.order());
  std::vector<Complex> out(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) out[k] = a[k] + b[k];
  return Series(std::move(out));
}

Series operator-(const Series& a, const Series& b) {
  const int n = std::min(a.order(), b.order());
  std::vector<Complex> out(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) out[k] = a[k] - b[k];
  return Series(std::move(out));
}

Series operator*(Complex s, const Series& a) {
  std::vector<Complex> out(a.coeffs().begin(), a.coeffs().end());
  for (Complex& v : out) v *= s;
  return Series(std::move(out));
}

Series operator*(const Series& a, const Series& b) { return mul(a, b); }

Series Series::operator-() const { return Complex(-1.0) * *this; }

Series mul(const Series& a, const Series& b) {
  const int n = std::min(a.order(), b.order());
  std::vector<Complex> out(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    Complex acc{};
    for (int i = 0; i <= k; ++i) acc += a[i] * b[k - i];
    out[k] = acc;
  }
  return Series(std::move(out));
}

Series derivative(const Series& f) {
  if (f.order() < 1) {
    throw Error("cannot differentiate a constant-order series");
  }
  std::vector<Complex> out(static_cast<std::size_t>(f.order()));
  for (int n = 0; n < f.order(); ++n) out[n] = static_cast<double>(n + 1) * f[n + 1];
  return Series(std::move(out));
}

namespace {

// The O(N^2) convolution recurrences below lose accuracy through cancellation
// when coefficients grow; they run in extended precision and round once.
struct Wide {
  long double re = 0.0L;
  long double im = 0.0L;

  Wide() = default;
  Wide(Complex z) : re(z.real()), im(z.imag()) {}
  Complex round() const { return {static_cast<double>(re), static_cast<double>(im)}; }
};

inline void fma_into(Wide& acc, long double s, const Wide& a, const Wide& b) {
  acc.re += s * (a.re * b.re - a.im * b.im);
  acc.im += s * (a.re * b.im + a.im * b.re);
}

inline Wide divide(const Wide& a, const Wide& b) {
  const long double d = b.re * b.re + b.im * b.im;
  Wide out;
  out.re = (a.re * b.re + a.im * b.im) / d;
  out.im = (a.im * b.re - a.re * b.im) / d;
  return out;
}

std::vector<Wide> widen(const Series& s) {
  std::vector<Wide> out;
  out.reserve(s.coeffs().size());
  for (Complex z : s.coeffs()) out.emplace_back(z);
  return out;
}

Series narrow(const std::vector<Wide>& w) {
  std::vector<Complex> out;
  out.reserve(w.size());
  for (const Wide& z : w) out.push_back(z.round());
  return Series(std::move(out));
}

}  // namespace

Series log_unit(const Series& h) {
  if (std::abs(h[0] - 1.0) > kUnitTolerance) {
    throw Error("not an A0 element: h(0) = " + format_complex(h[0]));
  }
  // n h_n = sum_{k=1}^n k u_k h_{n-k}, solved for u_n with h_0 = 1.
  const std::vector<Wide> hw = widen(h);
  const std::size_t n_max = hw.size() - 1;
  std::vector<Wide> u(n_max + 1);
  for (std::size_t n = 1; n <= n_max; ++n) {
    Wide acc;
    acc.re = static_cast<long double>(n) * hw[n].re;
    acc.im = static_cast<long double>(n) * hw[n].im;
    for (std::size_t k = 1; k < n; ++k) fma_into(acc, -static_cast<long double>(k), u[k], hw[n - k]);
    u[n] = divide(acc, hw[0]);
    u[n].re /= static_cast<long double>(n);
    u[n].im /= static_cast<long double>(n);
  }
  return narrow(u);
}

Series exp_series(const Series& u) {
  if (std::abs(u[0]) > kUnitTolerance) {
    throw Error("exponent series must vanish at 0");
  }
  const std::vector<Wide> uw = widen(u);
  const std::size_t n_max = uw.size() - 1;
  std::vector<Wide> g(n_max + 1);
  g[0].re = 1.0L;
  for (std::size_t n = 1; n <= n_max; ++n) {
    Wide acc;
    for (std::size_t k = 1; k <= n; ++k) fma_into(acc, static_cast<long double>(k), uw[k], g[n - k]);
    g[n].re = acc.re / static_cast<long double>(n);
    g[n].im = acc.im / static_cast<long double>(n);
  }
  return narrow(g);
}

Series pow_c(const Series& h, Complex c) {
  require_finite(c, "exponent");
  return exp_series(c * log_unit(h));
}

Series integrate_from_zero(const Series& u) {
  std::vector<Complex> out(static_cast<std::size_t>(u.order()) + 2);
  for (int n = 1; n <= u.order() + 1; ++n) out[n] = u[n - 1] / static_cast<double>(n);
  return Series(std::move(out));
}

Series reciprocal(const Series& h) {
  if (std::abs(h[0]) == 0.0) {
    throw Error("reciprocal of a series vanishing at 0");
  }
  const std::vector<Wide> hw = widen(h);
  const std::size_t n_max = hw.size() - 1;
  std::vector<Wide> g(n_max + 1);
  Wide one;
  one.re = 1.0L;
  g[0] = divide(one, hw[0]);
  for (std::size_t n = 1; n <= n_max; ++n) {
    Wide acc;
    for (std::size_t k = 1; k <= n; ++k) fma_into(acc, -1.0L, hw[k], g[n - k]);
    g[n] = divide(acc, hw[0]);
  }
  return narrow(g);
}

double max_coeff_distance(const Series& a, const Series& b) {
  const int n = std::min(a.order(), b.order());
  double worst = 0.0;
  for (int k = 0; k <= n; ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

Evaluation tail_estimate(const Series& f, double abs_z) {
  Evaluation e;
  const int n = f.order();
  if (abs_z == 0.0 || n < 1) return e;
  constexpr int kRatioWindow = 8;
  constexpr double kCapSlack = 1e-3;
  double max_ratio = -1.0;
  for (int k = std::max(0, n - kRatioWindow); k < n; ++k) {
    const double den = std::abs(f[k]);
    if (den == 0.0) continue;
    max_ratio = std::max(max_ratio, std::abs(f[k + 1]) / den);
  }
  if (max_ratio < 0.0) return e;
  const double raw_rho = abs_z * max_ratio;
  const double cap = 1.0 / abs_z - kCapSlack;
  const double rho = abs_z * std::min(max_ratio, cap);
  e.reliable = raw_rho < 1.0;
  e.tail = std::abs(f[n]) * std::pow(abs_z, n) * rho / (1.0 - rho);
  return e;
}

Evaluation evaluate(const Series& f, Complex z, double radius) {
  require_finite(z, "evaluation point");
  const double r = std::abs(z);
  if (r > radius) {
    throw Error("outside evaluation radius: |z| = " + format_double(r) + " > " +
                format_double(radius));
  }
  Evaluation e = tail_estimate(f, r);
  Complex acc{};
  for (int k = f.order(); k >= 0; --k) acc = acc * z + f[k];
  e.value = acc;
  return e;
}

std::complex<long double> evaluate_extended(const Series& f, std::complex<long double> z) {
  std::complex<long double> acc{};
  for (int k = f.order(); k >= 0; --k) {
    acc = acc * z + std::complex<long double>(f[k].real(), f[k].imag());
  }
  return acc;
}

}  // namespace powerdeform
