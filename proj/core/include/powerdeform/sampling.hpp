#pragma once

#include <span>
#include <string>
#include <vector>

#include "powerdeform/families.hpp"

namespace powerdeform {

/// Discretization of suprema and infima over the disk.
struct SampleScheme {
  std::vector<double> radii{0.9, 0.99, 0.999};
  int angles = 4096;
  double margin = 1e-3;

  /// Radii strictly increasing in (0, 1), angles >= 64, margin > 0.
  void validate() const;
};

enum class LoopKind {
  circle,
  /// Boundary of |Re L| <= half_length, |Im L| <= pi/2 - inset in the
  /// coordinate L = log((1+z)/(1-z)) = 2 atanh(z). Reaches the boundary
  /// layers near z = +-1 that circles of radius < 1 - 1e-16 cannot.
  strip_rectangle,
};

struct LoopSpec {
  LoopKind kind = LoopKind::circle;
  double radius = 0.0;
  double half_length = 0.0;
  double inset = 0.0;
};

/// Evaluates p = z f'/f for a family: exactly when a closed form exists,
/// otherwise from the truncated series.
class LogDerivativeField {
 public:
  explicit LogDerivativeField(DeformationFamily family);

  /// p and p'; series route does no radius check (callers guard via tail()).
  LogDerivativeValue at(Complex z) const;
  /// p at a strip coordinate; only for ClosedForm::power.
  Complex at_strip(Complex strip_point) const;

  bool exact() const { return family_.closed_form() != ClosedForm::none; }
  /// Tail estimate of the p series on |z| = r (0 when exact()).
  double tail(double r) const;

  const DeformationFamily& family() const { return family_; }
  const Series& p_series() const { return p_; }

 private:
  DeformationFamily family_;
  Series p_;
  Series dp_;
};

/// Contours used for a family: the circles whose tail estimate is below
/// `tail_limit` (others are dropped with a warning), followed by one strip
/// rectangle for power families whose exponent has an imaginary part.
std::vector<LoopSpec> plan_loops(const LogDerivativeField& field, std::span<const double> radii,
                                 double tail_limit, std::vector<std::string>& warnings);

/// Closed contour sampled at `points` equally spaced parameter values,
/// counterclockwise.
struct SampledLoop {
  LoopSpec spec;
  std::vector<Complex> z;
  std::vector<Complex> p;
  /// p'(z); empty on strip rectangles, whose points may sit within rounding of |z| = 1.
  std::vector<Complex> dp;
};

SampledLoop sample_loop(const LogDerivativeField& field, const LoopSpec& spec, int points);

struct BoundarySamples {
  std::vector<SampledLoop> loops;
  std::vector<std::string> warnings;

  /// All p values over all loops.
  std::vector<Complex> values() const;
  std::size_t size() const;
};

/// Samples the family on the loops planned for `scheme` (tail limit margin/10).
/// Throws when every radius had to be dropped.
BoundarySamples sample_boundary(const LogDerivativeField& field, const SampleScheme& scheme);
BoundarySamples sample_boundary(const DeformationFamily& family, const SampleScheme& scheme);

}  // namespace powerdeform
