#pragma once

#include <string>
#include <string_view>

#include "powerdeform/series.hpp"

namespace powerdeform {

/// Exact evaluators available for a family.
enum class ClosedForm {
  none,
  /// kappa(z) = z/(1-z)^2.
  koebe,
  /// (e^{pi z} - 1)/pi.
  expfam,
  /// z f'/f = ((1+z)/(1-z))^alpha; f itself by quadrature of the log-derivative.
  power,
};

/// A normalized base function f (f(0) = 0, f'(0) = 1) together with the
/// cached Log(f/z) that drives c -> K_c[f].
class DeformationFamily {
 public:
  /// Validates the A_1 normalization of `base` and caches Log(base/z).
  DeformationFamily(Series base, std::string name, ClosedForm closed_form = ClosedForm::none,
                    Complex power_exponent = {});

  const Series& base() const { return base_; }
  const Series& logh() const { return logh_; }
  const std::string& name() const { return name_; }
  ClosedForm closed_form() const { return closed_form_; }
  /// Exponent alpha of z f'/f = ((1+z)/(1-z))^alpha; meaningful for ClosedForm::power.
  Complex power_exponent() const { return power_exponent_; }
  int order() const { return base_.order(); }

  /// True when every Taylor coefficient is real, so conj(f(conj z)) = f(z).
  bool has_real_coefficients() const;
  /// True when f is the identity to within `tol` in every coefficient.
  bool is_identity(double tol = 1e-13) const;

 private:
  Series base_;
  Series logh_;
  std::string name_;
  ClosedForm closed_form_;
  Complex power_exponent_;
};

/// Series of K_c[f](z) = z (f(z)/z)^c.
Series power_deform(const DeformationFamily& family, Complex c);

/// p = z f'/f = 1 + z (Log h)'.
Series log_derivative(const DeformationFamily& family);

/// The family f with z f'/f = p, i.e. f = z exp(integral of (p-1)/z).
DeformationFamily from_log_derivative(const Series& p, std::string name = "custom");

DeformationFamily identity_family(int order = kDefaultOrder);
DeformationFamily koebe_family(int order = kDefaultOrder);
DeformationFamily expfam_family(int order = kDefaultOrder);
/// z f'/f = ((1+z)/(1-z))^alpha.
DeformationFamily power_family(Complex alpha, int order = kDefaultOrder);
/// Annulus half-width parametrization: alpha = i m / pi, so that z f'/f
/// covers e^{-m/2} < |w| < e^{m/2}.
DeformationFamily powerlog_family(double m, int order = kDefaultOrder);
/// Full-width parametrization: alpha = 2 i m / pi, covering e^{-m} < |w| < e^{m}.
DeformationFamily covering_family(double m, int order = kDefaultOrder);

/// Named constructor: "koebe", "expfam", "identity" (param ignored),
/// "powerlog" and "covering" (real param m > 0), "power" (param alpha).
DeformationFamily builtin(std::string_view name, Complex param, int order);

/// CLI family string: "koebe", "expfam", "identity", "powerlog:m=<x>",
/// "covering:m=<x>", "power:alpha=<complex>", "file:<path>".
DeformationFamily parse_family(std::string_view spec, int order = kDefaultOrder);

/// Exact K_c[f](z) for |z| < 1 using principal logarithms.
Complex closed_form_eval(const DeformationFamily& family, Complex c, Complex z);
/// Same in extended precision; used to re-validate numerical witnesses.
std::complex<long double> closed_form_eval_extended(const DeformationFamily& family, Complex c,
                                                    Complex z);

/// Value and z-derivative of p = z f'/f at a point.
struct LogDerivativeValue {
  Complex p;
  Complex dp;
};

/// Closed-form p and p' at |z| < 1; throws for ClosedForm::none.
LogDerivativeValue closed_form_log_derivative(const DeformationFamily& family, Complex z);

/// p = ((1+z)/(1-z))^alpha written in the strip coordinate L = log((1+z)/(1-z)).
inline Complex power_log_derivative_in_strip(Complex alpha, Complex strip_point) {
  return std::exp(alpha * strip_point);
}

}  // namespace powerdeform
