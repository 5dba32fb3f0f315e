#pragma once

#include <numbers>
#include <span>
#include <vector>

#include "powerdeform/sampling.hpp"
#include "powerdeform/verdict.hpp"

namespace powerdeform {

/// Largest annulus half-width for which the annulus criterion is proved.
inline constexpr double kAnnulusMaxM = std::numbers::pi / 12.0;
inline constexpr int kThetaGridSize = 128;

/// 128 rotation angles on (-pi/2, pi/2), endpoints excluded by a half step.
std::vector<double> spiral_theta_grid();

struct BoundaryExtrema {
  double min_mod = 0.0;
  double max_mod = 0.0;
  std::vector<double> theta;
  /// min over samples of Re(e^{i theta} p) for each theta.
  std::vector<double> min_re_rotated;
  std::size_t samples = 0;
  std::vector<std::string> warnings;
};

BoundaryExtrema boundary_extrema(std::span<const Complex> values);
/// Circles of the scheme with the series tail guard.
BoundaryExtrema boundary_extrema(const Series& p, const SampleScheme& scheme);
BoundaryExtrema boundary_extrema(const DeformationFamily& family, const SampleScheme& scheme);

// Each test reads the deformed log-derivative through 1 - c + c p, so the
// samples of p are computed once per family and reused for every c.

Verdict starlike_test(std::span<const Complex> p_values, Complex c, double margin);
Verdict starlike_test(const DeformationFamily& family, Complex c, const SampleScheme& scheme);

/// Certifies when some theta in (-pi/2, pi/2) has
/// min Re(e^{i theta}(1 - c + c p)) > margin cos(theta). The 128-point grid
/// is tried first; failing that the feasible theta interval is computed exactly
/// for the sampled set.
Verdict spirallike_test(std::span<const Complex> p_values, Complex c, double margin);
Verdict spirallike_test(const DeformationFamily& family, Complex c, const SampleScheme& scheme);

/// e^{-m} + margin < |1 - c + c p| < e^{m} - margin at every sample; m in (0, pi/12].
Verdict annulus_test(std::span<const Complex> p_values, Complex c, double margin, double m);
Verdict annulus_test(const DeformationFamily& family, Complex c, const SampleScheme& scheme,
                     double m);

/// max (1-|z|^2)|f''/f'| over the scheme's circles; +infinity where f' vanishes.
double becker_sup(const Series& fc, const SampleScheme& scheme);
Verdict becker_test(const Series& fc, const SampleScheme& scheme);

/// Same quantity for K_c[f] from samples of p and p':
/// f_c''/f_c' = c (p - 1)/z + c p'/(1 - c + c p).
double becker_sup(const BoundarySamples& samples, Complex c);
double becker_sup(const DeformationFamily& family, Complex c, const SampleScheme& scheme);
Verdict becker_test(const BoundarySamples& samples, Complex c, double margin);
Verdict becker_test(const DeformationFamily& family, Complex c, const SampleScheme& scheme);

}  // namespace powerdeform
