#include "powerdeform/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace powerdeform {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

Complex deformed(Complex p, Complex c) { return 1.0 - c + c * p; }

Witness make_witness(double value, double margin, std::string note) {
  Witness w;
  w.value = value;
  w.margin = margin;
  w.note = std::move(note);
  return w;
}

// Circles of the scheme on which the series' tail estimate is below the guard.
std::vector<double> usable_radii(const Series& guard, const SampleScheme& scheme,
                                 std::vector<std::string>& warnings) {
  std::vector<double> radii;
  for (double r : scheme.radii) {
    const Evaluation e = tail_estimate(guard, r);
    if (e.reliable && e.tail < scheme.margin / 10.0) {
      radii.push_back(r);
    } else {
      warnings.push_back("radius " + format_double(r) + " dropped: tail estimate " +
                         format_double(e.reliable ? e.tail : kInf));
    }
  }
  if (radii.empty()) {
    throw Error("series order insufficient for sampling radius");
  }
  return radii;
}

Complex horner(const Series& f, Complex z) {
  Complex acc{};
  for (int k = f.order(); k >= 0; --k) acc = acc * z + f[k];
  return acc;
}

double min_rotated(std::span<const Complex> values, Complex c, double theta) {
  const Complex rot = std::polar(1.0, theta);
  double worst = kInf;
  for (Complex p : values) worst = std::min(worst, (rot * deformed(p, c)).real());
  return worst;
}

}  // namespace

std::vector<double> spiral_theta_grid() {
  std::vector<double> theta(kThetaGridSize);
  const double step = kPi / kThetaGridSize;
  for (int k = 0; k < kThetaGridSize; ++k) theta[k] = -kPi / 2.0 + (k + 0.5) * step;
  return theta;
}

BoundaryExtrema boundary_extrema(std::span<const Complex> values) {
  if (values.empty()) {
    throw Error("boundary extrema of an empty sample");
  }
  BoundaryExtrema out;
  out.samples = values.size();
  out.min_mod = kInf;
  out.max_mod = 0.0;
  for (Complex p : values) {
    const double a = std::abs(p);
    out.min_mod = std::min(out.min_mod, a);
    out.max_mod = std::max(out.max_mod, a);
  }
  out.theta = spiral_theta_grid();
  out.min_re_rotated.reserve(out.theta.size());
  for (double t : out.theta) out.min_re_rotated.push_back(min_rotated(values, 1.0, t));
  return out;
}

BoundaryExtrema boundary_extrema(const Series& p, const SampleScheme& scheme) {
  scheme.validate();
  std::vector<std::string> warnings;
  const std::vector<double> radii = usable_radii(p, scheme, warnings);
  std::vector<Complex> values;
  values.reserve(radii.size() * static_cast<std::size_t>(scheme.angles));
  for (double r : radii) {
    for (int k = 0; k < scheme.angles; ++k) {
      values.push_back(horner(p, std::polar(r, 2.0 * kPi * k / scheme.angles)));
    }
  }
  BoundaryExtrema out = boundary_extrema(values);
  out.warnings = std::move(warnings);
  return out;
}

BoundaryExtrema boundary_extrema(const DeformationFamily& family, const SampleScheme& scheme) {
  const BoundarySamples samples = sample_boundary(family, scheme);
  BoundaryExtrema out = boundary_extrema(samples.values());
  out.warnings = samples.warnings;
  return out;
}

Verdict starlike_test(std::span<const Complex> p_values, Complex c, double margin) {
  double worst = kInf;
  for (Complex p : p_values) worst = std::min(worst, deformed(p, c).real());
  if (worst > margin) {
    return Verdict::univalent("starlike", make_witness(worst, margin, "min Re z f_c'/f_c"));
  }
  return Verdict::unknown("starlike");
}

Verdict starlike_test(const DeformationFamily& family, Complex c, const SampleScheme& scheme) {
  return starlike_test(sample_boundary(family, scheme).values(), c, scheme.margin);
}

Verdict spirallike_test(std::span<const Complex> p_values, Complex c, double margin) {
  // Re(e^{i theta}(q - margin)) > 0 for every sample q = 1 - c + c p. Each sample
  // confines theta to an open interval of length pi around -arg(q - margin);
  // intersecting those with (-pi/2, pi/2) gives the exact feasible set.
  double lo = -kPi / 2.0;
  double hi = kPi / 2.0;
  for (Complex p : p_values) {
    const Complex shifted = deformed(p, c) - margin;
    if (shifted == 0.0) return Verdict::unknown("spirallike");
    const double center = -std::arg(shifted);
    lo = std::max(lo, center - kPi / 2.0);
    hi = std::min(hi, center + kPi / 2.0);
    if (!(lo < hi)) return Verdict::unknown("spirallike");
  }
  // Prefer a grid angle inside the feasible interval.
  double theta = 0.5 * (lo + hi);
  std::string note = "interval";
  double best_gap = -1.0;
  for (double t : spiral_theta_grid()) {
    const double gap = std::min(t - lo, hi - t);
    if (gap > best_gap && gap > 0.0) {
      best_gap = gap;
      theta = t;
      note = "grid";
    }
  }
  auto check = [&](double t) {
    const double value = min_rotated(p_values, c, t);
    return std::pair{value > margin * std::cos(t), value};
  };
  auto [ok, value] = check(theta);
  if (!ok && note == "grid") {
    theta = 0.5 * (lo + hi);
    note = "interval";
    std::tie(ok, value) = check(theta);
  }
  if (!ok) return Verdict::unknown("spirallike");
  Witness w = make_witness(value, margin, note + " theta=" + format_double(theta));
  w.points.push_back(std::polar(1.0, theta));
  return Verdict::univalent("spirallike", std::move(w));
}

Verdict spirallike_test(const DeformationFamily& family, Complex c, const SampleScheme& scheme) {
  return spirallike_test(sample_boundary(family, scheme).values(), c, scheme.margin);
}

Verdict annulus_test(std::span<const Complex> p_values, Complex c, double margin, double m) {
  if (!(m > 0.0) || m > kAnnulusMaxM * (1.0 + 1e-12)) {
    throw Error("annulus criterion only valid for m <= pi/12");
  }
  const double lower = std::exp(-m) + margin;
  const double upper = std::exp(m) - margin;
  double min_mod = kInf;
  double max_mod = 0.0;
  for (Complex p : p_values) {
    const double a = std::abs(deformed(p, c));
    min_mod = std::min(min_mod, a);
    max_mod = std::max(max_mod, a);
    if (!(a > lower && a < upper)) return Verdict::unknown("annulus");
  }
  return Verdict::univalent(
      "annulus", make_witness(std::min(min_mod - lower, upper - max_mod), margin,
                              "modulus range [" + format_double(min_mod) + ", " +
                                  format_double(max_mod) + "]"));
}

Verdict annulus_test(const DeformationFamily& family, Complex c, const SampleScheme& scheme,
                     double m) {
  return annulus_test(sample_boundary(family, scheme).values(), c, scheme.margin, m);
}

double becker_sup(const Series& fc, const SampleScheme& scheme) {
  scheme.validate();
  if (fc.order() < 2) return 0.0;
  const Series d1 = derivative(fc);
  const Series d2 = derivative(d1);
  std::vector<std::string> warnings;
  const std::vector<double> radii = usable_radii(d2, scheme, warnings);
  double sup = 0.0;
  for (double r : radii) {
    for (int k = 0; k < scheme.angles; ++k) {
      const Complex z = std::polar(r, 2.0 * kPi * k / scheme.angles);
      const Complex f1 = horner(d1, z);
      if (f1 == 0.0) return kInf;
      sup = std::max(sup, (1.0 - r * r) * std::abs(horner(d2, z) / f1));
    }
  }
  return sup;
}

Verdict becker_test(const Series& fc, const SampleScheme& scheme) {
  const double sup = becker_sup(fc, scheme);
  if (sup <= 1.0 - scheme.margin) {
    return Verdict::univalent("becker", make_witness(sup, scheme.margin, "sup (1-|z|^2)|f''/f'|"));
  }
  return Verdict::unknown("becker");
}

double becker_sup(const BoundarySamples& samples, Complex c) {
  if (c == 0.0) return 0.0;
  double sup = 0.0;
  for (const SampledLoop& loop : samples.loops) {
    if (loop.dp.empty()) continue;
    for (std::size_t k = 0; k < loop.z.size(); ++k) {
      const Complex z = loop.z[k];
      const Complex q = deformed(loop.p[k], c);
      if (q == 0.0) return kInf;
      const Complex ratio = c * (loop.p[k] - 1.0) / z + c * loop.dp[k] / q;
      sup = std::max(sup, (1.0 - std::norm(z)) * std::abs(ratio));
    }
  }
  return sup;
}

double becker_sup(const DeformationFamily& family, Complex c, const SampleScheme& scheme) {
  return becker_sup(sample_boundary(family, scheme), c);
}

Verdict becker_test(const BoundarySamples& samples, Complex c, double margin) {
  const double sup = becker_sup(samples, c);
  if (sup <= 1.0 - margin) {
    return Verdict::univalent("becker", make_witness(sup, margin, "sup (1-|z|^2)|f''/f'|"));
  }
  return Verdict::unknown("becker");
}

Verdict becker_test(const DeformationFamily& family, Complex c, const SampleScheme& scheme) {
  return becker_test(sample_boundary(family, scheme), c, scheme.margin);
}

}  // namespace powerdeform
