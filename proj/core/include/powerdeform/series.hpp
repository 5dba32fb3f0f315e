#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "powerdeform/complex.hpp"

namespace powerdeform {

inline constexpr int kDefaultOrder = 64;
inline constexpr double kUnitTolerance = 1e-14;
inline constexpr double kDefaultEvalRadius = 0.95;

/// Truncated Taylor polynomial c_0 + c_1 z + ... + c_N z^N.
///
/// The order N is part of the value: binary operations truncate to the
/// smaller order instead of padding the shorter operand with zeros.
class Series {
 public:
  Series() : coeffs_(1, Complex{}) {}
  explicit Series(std::vector<Complex> coeffs);

  static Series zero(int order);
  static Series constant(Complex value, int order);
  /// The series z (order >= 1).
  static Series identity(int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  Complex operator[](std::size_t n) const { return coeffs_[n]; }

  Series truncated(int order) const;
  /// f(z)/z for f with f(0) = 0; order drops by one.
  Series divided_by_z() const;
  /// z f(z); order grows by one.
  Series times_z() const;

  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator*(Complex s, const Series& a);
  friend Series operator*(const Series& a, const Series& b);
  Series operator-() const;

 private:
  std::vector<Complex> coeffs_;
};

/// Cauchy product truncated to min(order a, order b).
Series mul(const Series& a, const Series& b);

/// Termwise derivative; order drops by one.
Series derivative(const Series& f);

/// Branch of log h with value 0 at the origin, for h(0) = 1.
Series log_unit(const Series& h);

/// exp(u) for u(0) = 0.
Series exp_series(const Series& u);

/// h^c = exp(c log_unit(h)).
Series pow_c(const Series& h, Complex c);

/// Antiderivative vanishing at 0; order grows by one.
Series integrate_from_zero(const Series& u);

/// 1/h for h(0) != 0.
Series reciprocal(const Series& h);

/// Largest coefficient distance over the common order.
double max_coeff_distance(const Series& a, const Series& b);

/// Horner value plus a geometric estimate of the discarded tail.
struct Evaluation {
  Complex value;
  double tail = 0.0;
  /// False when the coefficient ratios suggest the tail does not converge at |z|.
  bool reliable = true;
};

/// Evaluates f at z with |z| <= radius; throws outside the evaluation radius.
Evaluation evaluate(const Series& f, Complex z, double radius = kDefaultEvalRadius);

/// Tail estimate alone (shared by samplers that need it once per circle).
Evaluation tail_estimate(const Series& f, double abs_z);

/// Horner sum in extended precision; no radius check.
std::complex<long double> evaluate_extended(const Series& f, std::complex<long double> z);

}  // namespace powerdeform
