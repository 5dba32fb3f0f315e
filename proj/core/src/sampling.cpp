#include "powerdeform/sampling.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace powerdeform {

namespace {

constexpr double kPi = std::numbers::pi;
// Both long sides of the strip rectangle sweep arg p through at least two full turns.
constexpr double kStripTurns = 2.0;
constexpr double kStripMaxGrowth = 40.0;
constexpr double kStripMaxHalfLength = 1e6;

double strip_coordinate_of_radius(double r) { return std::log((1.0 + r) / (1.0 - r)); }

Complex strip_point(const LoopSpec& spec, double t) {
  const double x_half = spec.half_length;
  const double h = kPi / 2.0 - spec.inset;
  if (t < 2.0 * x_half) return {-x_half + t, -h};
  t -= 2.0 * x_half;
  if (t < 2.0 * h) return {x_half, -h + t};
  t -= 2.0 * h;
  if (t < 2.0 * x_half) return {x_half - t, h};
  t -= 2.0 * x_half;
  return {-x_half, h - t};
}

}  // namespace

void SampleScheme::validate() const {
  if (radii.empty()) {
    throw Error("sample scheme needs at least one radius");
  }
  double prev = 0.0;
  for (double r : radii) {
    if (!(r > prev) || !(r < 1.0)) {
      throw Error("sample radii must be strictly increasing in (0, 1)");
    }
    prev = r;
  }
  if (angles < 64) {
    throw Error("sample scheme needs at least 64 angles per circle");
  }
  if (!(margin > 0.0) || !std::isfinite(margin)) {
    throw Error("sample margin must be positive");
  }
}

LogDerivativeField::LogDerivativeField(DeformationFamily family)
    : family_(std::move(family)),
      p_(log_derivative(family_)),
      dp_(p_.order() >= 1 ? derivative(p_) : Series::zero(0)) {}

LogDerivativeValue LogDerivativeField::at(Complex z) const {
  if (exact()) {
    return closed_form_log_derivative(family_, z);
  }
  Complex p{};
  for (int k = p_.order(); k >= 0; --k) p = p * z + p_[k];
  Complex dp{};
  for (int k = dp_.order(); k >= 0; --k) dp = dp * z + dp_[k];
  return {p, dp};
}

Complex LogDerivativeField::at_strip(Complex strip) const {
  if (family_.closed_form() != ClosedForm::power) {
    throw Error("strip coordinates need a power family");
  }
  return power_log_derivative_in_strip(family_.power_exponent(), strip);
}

double LogDerivativeField::tail(double r) const {
  if (exact()) return 0.0;
  const Evaluation e = tail_estimate(p_, r);
  return e.reliable ? e.tail : std::numeric_limits<double>::infinity();
}

std::vector<LoopSpec> plan_loops(const LogDerivativeField& field, std::span<const double> radii,
                                 double tail_limit, std::vector<std::string>& warnings) {
  std::vector<LoopSpec> loops;
  double r_max = 0.0;
  for (double r : radii) {
    r_max = std::max(r_max, r);
    const double tail = field.tail(r);
    if (tail < tail_limit) {
      loops.push_back({LoopKind::circle, r, 0.0, 0.0});
    } else {
      warnings.push_back("radius " + format_double(r) + " dropped: tail estimate " +
                         format_double(tail) + " exceeds " + format_double(tail_limit));
    }
  }
  const DeformationFamily& family = field.family();
  if (family.closed_form() == ClosedForm::power && family.power_exponent().imag() != 0.0 &&
      r_max > 0.0) {
    const Complex alpha = family.power_exponent();
    double half_length = std::max(strip_coordinate_of_radius(r_max),
                                  kStripTurns * kPi / std::abs(alpha.imag()));
    if (alpha.real() != 0.0) {
      half_length = std::min(half_length, kStripMaxGrowth / std::abs(alpha.real()));
    }
    half_length = std::min(half_length, kStripMaxHalfLength);
    // Inset matching the circle of radius r_max on the imaginary axis: Im L = 2 atan(r).
    const double inset = kPi / 2.0 - 2.0 * std::atan(r_max);
    loops.push_back({LoopKind::strip_rectangle, r_max, half_length, inset});
  }
  return loops;
}

SampledLoop sample_loop(const LogDerivativeField& field, const LoopSpec& spec, int points) {
  if (points < 8) {
    throw Error("a sampled loop needs at least 8 points");
  }
  SampledLoop loop;
  loop.spec = spec;
  const auto n = static_cast<std::size_t>(points);
  loop.z.resize(n);
  loop.p.resize(n);
  if (spec.kind == LoopKind::circle) {
    loop.dp.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double t = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
      const Complex z = std::polar(spec.radius, t);
      const LogDerivativeValue v = field.at(z);
      loop.z[k] = z;
      loop.p[k] = v.p;
      loop.dp[k] = v.dp;
    }
    return loop;
  }
  const double perimeter = 4.0 * spec.half_length + 2.0 * (kPi - 2.0 * spec.inset);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = perimeter * static_cast<double>(k) / static_cast<double>(n);
    const Complex strip = strip_point(spec, t);
    loop.z[k] = std::tanh(strip / 2.0);
    loop.p[k] = field.at_strip(strip);
  }
  return loop;
}

std::vector<Complex> BoundarySamples::values() const {
  std::vector<Complex> out;
  out.reserve(size());
  for (const SampledLoop& loop : loops) out.insert(out.end(), loop.p.begin(), loop.p.end());
  return out;
}

std::size_t BoundarySamples::size() const {
  std::size_t n = 0;
  for (const SampledLoop& loop : loops) n += loop.p.size();
  return n;
}

BoundarySamples sample_boundary(const LogDerivativeField& field, const SampleScheme& scheme) {
  scheme.validate();
  BoundarySamples out;
  const std::vector<LoopSpec> specs =
      plan_loops(field, scheme.radii, scheme.margin / 10.0, out.warnings);
  if (specs.empty()) {
    throw Error("series order insufficient for sampling radius");
  }
  for (const LoopSpec& spec : specs) out.loops.push_back(sample_loop(field, spec, scheme.angles));
  return out;
}

BoundarySamples sample_boundary(const DeformationFamily& family, const SampleScheme& scheme) {
  return sample_boundary(LogDerivativeField(family), scheme);
}

}  // namespace powerdeform
