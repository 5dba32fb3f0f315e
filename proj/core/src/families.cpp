#include "powerdeform/families.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include "powerdeform/series_io.hpp"

namespace powerdeform {

namespace {

constexpr double kPi = std::numbers::pi;

template <typename T>
using C = std::complex<T>;

void require_builtin_order(int order) {
  if (order < 2) {
    throw Error("builtin families need order >= 2");
  }
}

void require_in_disk(Complex z) {
  require_finite(z, "evaluation point");
  if (std::abs(z) >= 1.0) {
    throw Error("closed forms are defined on the open unit disk only");
  }
}

// e^x - 1 without cancellation near 0.
template <typename T>
C<T> expm1c(C<T> x) {
  if (std::abs(x) < T(0.5)) {
    C<T> term = x;
    C<T> sum = x;
    for (int n = 2; n < 40; ++n) {
      term *= x / T(n);
      sum += term;
      if (std::abs(term) <= std::numeric_limits<T>::epsilon() * std::abs(sum)) break;
    }
    return sum;
  }
  return std::exp(x) - T(1);
}

// Log of K_c[f](z)/z for each closed form.
template <typename T>
C<T> koebe_logh(C<T> z) {
  return T(-2) * std::log(T(1) - z);
}

// h = (e^{pi z} - 1)/(pi z) = mean of e^{pi z s} over s in [0, 1]; for |Im z| < 1
// its argument stays inside (-pi, pi), so the principal log is the branch with
// Log h(0) = 0.
template <typename T>
C<T> expfam_logh(C<T> z) {
  const C<T> x = std::numbers::pi_v<T> * z;
  if (std::abs(x) < T(1e-8)) {
    return x / T(2) + x * x / T(24);
  }
  return std::log(expm1c(x) / x);
}

// Log h(z) = integral over s in [0, 1] of (p(sz) - 1)/s, on geometric panels
// refined towards s = 1 so each panel stays well away from the poles at s = +-1/z.
template <typename T>
C<T> power_logh(C<T> alpha, C<T> z) {
  using Rule = boost::math::quadrature::gauss<T, 30>;
  if (std::abs(z) == T(0)) return C<T>{};
  const T gap = std::max(T(1) - std::abs(z), T(1e-6));
  auto integrand = [&](T s) -> C<T> {
    if (s == T(0)) return alpha * T(2) * z;
    return (std::exp(alpha * T(2) * std::atanh(s * z)) - T(1)) / s;
  };
  C<T> total{};
  T a = 0;
  T width = T(0.5);
  while (T(1) - a > gap / T(2)) {
    const T b = a + width;
    total += Rule::integrate(integrand, a, b);
    a = b;
    width /= T(2);
  }
  total += Rule::integrate(integrand, a, T(1));
  return total;
}

template <typename T>
C<T> closed_form_impl(const DeformationFamily& family, Complex c_in, Complex z_in) {
  const C<T> c(c_in.real(), c_in.imag());
  const C<T> z(z_in.real(), z_in.imag());
  C<T> logh;
  switch (family.closed_form()) {
    case ClosedForm::koebe:
      logh = koebe_logh(z);
      break;
    case ClosedForm::expfam:
      logh = expfam_logh(z);
      break;
    case ClosedForm::power: {
      const Complex a = family.power_exponent();
      logh = power_logh(C<T>(a.real(), a.imag()), z);
      break;
    }
    case ClosedForm::none:
    default:
      throw Error("no closed form for family '" + family.name() + "'");
  }
  return z * std::exp(c * logh);
}

std::string_view strip_prefix(std::string_view spec, std::string_view prefix) {
  return spec.substr(prefix.size());
}

double parse_param(std::string_view spec, std::string_view key) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw Error("family '" + std::string(spec) + "' needs a parameter " + std::string(key) + "=<value>");
  }
  std::string_view rest = spec.substr(colon + 1);
  if (rest.substr(0, key.size()) != key || rest.size() <= key.size() || rest[key.size()] != '=') {
    throw Error("family '" + std::string(spec) + "': expected " + std::string(key) + "=<value>");
  }
  return parse_double(rest.substr(key.size() + 1));
}

}  // namespace

DeformationFamily::DeformationFamily(Series base, std::string name, ClosedForm closed_form,
                                     Complex power_exponent)
    : base_(std::move(base)),
      name_(std::move(name)),
      closed_form_(closed_form),
      power_exponent_(power_exponent) {
  if (base_.order() < 1) {
    throw Error("base function needs order >= 1");
  }
  if (std::abs(base_[0]) > kUnitTolerance || std::abs(base_[1] - 1.0) > kUnitTolerance) {
    throw Error("base function must satisfy f(0) = 0 and f'(0) = 1");
  }
  require_finite(power_exponent_, "power exponent");
  logh_ = log_unit(base_.divided_by_z());
}

bool DeformationFamily::has_real_coefficients() const {
  for (Complex c : base_.coeffs()) {
    if (std::abs(c.imag()) > kUnitTolerance * (1.0 + std::abs(c.real()))) return false;
  }
  return true;
}

bool DeformationFamily::is_identity(double tol) const {
  for (int n = 2; n <= base_.order(); ++n) {
    if (std::abs(base_[n]) >= tol) return false;
  }
  return true;
}

Series power_deform(const DeformationFamily& family, Complex c) {
  require_finite(c, "deformation parameter");
  return exp_series(c * family.logh()).times_z();
}

Series log_derivative(const DeformationFamily& family) {
  const Series& logh = family.logh();
  if (logh.order() < 1) {
    return Series::constant(1.0, 0);
  }
  return Series::constant(1.0, logh.order()) + derivative(logh).times_z();
}

DeformationFamily from_log_derivative(const Series& p, std::string name) {
  if (std::abs(p[0] - 1.0) > kUnitTolerance) {
    throw Error("log-derivative must equal 1 at the origin");
  }
  if (p.order() < 1) {
    return DeformationFamily(Series::identity(1), std::move(name));
  }
  const Series u = (p - Series::constant(1.0, p.order())).divided_by_z();
  return DeformationFamily(exp_series(integrate_from_zero(u)).times_z(), std::move(name));
}

DeformationFamily identity_family(int order) {
  require_builtin_order(order);
  return DeformationFamily(Series::identity(order), "identity");
}

DeformationFamily koebe_family(int order) {
  require_builtin_order(order);
  std::vector<Complex> c(static_cast<std::size_t>(order) + 1);
  for (int n = 1; n <= order; ++n) c[n] = static_cast<double>(n);
  return DeformationFamily(Series(std::move(c)), "koebe", ClosedForm::koebe, 1.0);
}

DeformationFamily expfam_family(int order) {
  require_builtin_order(order);
  // (e^{pi z} - 1)/pi = sum_{n>=1} pi^{n-1} z^n / n!
  std::vector<Complex> c(static_cast<std::size_t>(order) + 1);
  double term = 1.0;
  for (int n = 1; n <= order; ++n) {
    c[n] = term;
    term *= kPi / static_cast<double>(n + 1);
  }
  return DeformationFamily(Series(std::move(c)), "expfam", ClosedForm::expfam);
}

DeformationFamily power_family(Complex alpha, int order) {
  require_builtin_order(order);
  require_finite(alpha, "power exponent");
  // log((1+z)/(1-z)) = sum over odd k of 2 z^k / k
  std::vector<Complex> l(static_cast<std::size_t>(order));
  for (int k = 1; k < order; k += 2) l[k] = 2.0 / static_cast<double>(k);
  const Series p = exp_series(alpha * Series(std::move(l)));
  const DeformationFamily raw = from_log_derivative(p);
  return DeformationFamily(raw.base(), "power:alpha=" + format_complex(alpha), ClosedForm::power,
                           alpha);
}

DeformationFamily powerlog_family(double m, int order) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw Error("powerlog needs m > 0");
  }
  const DeformationFamily raw = power_family(Complex(0.0, m / kPi), order);
  return DeformationFamily(raw.base(), "powerlog:m=" + format_double(m), ClosedForm::power,
                           raw.power_exponent());
}

DeformationFamily covering_family(double m, int order) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw Error("covering needs m > 0");
  }
  const DeformationFamily raw = power_family(Complex(0.0, 2.0 * m / kPi), order);
  return DeformationFamily(raw.base(), "covering:m=" + format_double(m), ClosedForm::power,
                           raw.power_exponent());
}

DeformationFamily builtin(std::string_view name, Complex param, int order) {
  if (name == "koebe") return koebe_family(order);
  if (name == "expfam") return expfam_family(order);
  if (name == "identity") return identity_family(order);
  if (name == "power") return power_family(param, order);
  if (name == "powerlog" || name == "covering") {
    if (param.imag() != 0.0) {
      throw Error(std::string(name) + " needs a real m");
    }
    return name == "powerlog" ? powerlog_family(param.real(), order)
                              : covering_family(param.real(), order);
  }
  throw Error("unknown family '" + std::string(name) + "'");
}

DeformationFamily parse_family(std::string_view spec, int order) {
  if (spec.starts_with("file:")) {
    const std::string path(strip_prefix(spec, "file:"));
    Series base = read_series(std::filesystem::path(path));
    if (order < base.order()) base = base.truncated(std::max(order, 1));
    return DeformationFamily(std::move(base), std::string(spec));
  }
  if (spec.starts_with("powerlog")) return powerlog_family(parse_param(spec, "m"), order);
  if (spec.starts_with("covering")) return covering_family(parse_param(spec, "m"), order);
  if (spec.starts_with("power:")) {
    const std::string_view rest = strip_prefix(spec, "power:");
    if (!rest.starts_with("alpha=")) {
      throw Error("family '" + std::string(spec) + "': expected alpha=<complex>");
    }
    return power_family(parse_complex(rest.substr(6)), order);
  }
  if (spec == "koebe" || spec == "expfam" || spec == "identity") return builtin(spec, 0.0, order);
  throw Error("unknown family '" + std::string(spec) + "'");
}

Complex closed_form_eval(const DeformationFamily& family, Complex c, Complex z) {
  require_in_disk(z);
  require_finite(c, "deformation parameter");
  return closed_form_impl<double>(family, c, z);
}

std::complex<long double> closed_form_eval_extended(const DeformationFamily& family, Complex c,
                                                    Complex z) {
  require_in_disk(z);
  require_finite(c, "deformation parameter");
  return closed_form_impl<long double>(family, c, z);
}

LogDerivativeValue closed_form_log_derivative(const DeformationFamily& family, Complex z) {
  require_in_disk(z);
  switch (family.closed_form()) {
    case ClosedForm::koebe: {
      const Complex w = 1.0 - z;
      return {(1.0 + z) / w, 2.0 / (w * w)};
    }
    case ClosedForm::expfam: {
      // p = x/(1 - e^{-x}) with x = pi z
      const Complex x = kPi * z;
      if (std::abs(x) < 1e-4) {
        return {1.0 + x / 2.0 + x * x / 12.0, kPi * (0.5 + x / 6.0)};
      }
      const Complex one_minus_e = -expm1c(-x);
      const Complex e = 1.0 - one_minus_e;
      const Complex p = x / one_minus_e;
      const Complex dpdx = 1.0 / one_minus_e - x * e / (one_minus_e * one_minus_e);
      return {p, kPi * dpdx};
    }
    case ClosedForm::power: {
      const Complex alpha = family.power_exponent();
      const Complex p = std::exp(alpha * 2.0 * std::atanh(z));
      return {p, p * 2.0 * alpha / (1.0 - z * z)};
    }
    case ClosedForm::none:
    default:
      throw Error("no closed form for family '" + family.name() + "'");
  }
}

}  // namespace powerdeform
