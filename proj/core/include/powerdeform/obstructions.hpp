#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "powerdeform/sampling.hpp"
#include "powerdeform/verdict.hpp"

namespace powerdeform {

inline constexpr double kGrunskyTolerance = 1e-6;
inline constexpr double kPrawitzTolerance = 1e-6;

/// Grunsky coefficients b_jk, 1 <= j, k <= size, of
///   log[(1/f(z) - 1/f(w)) / (1/z - 1/w)] = -sum b_jk z^j w^k.
class GrunskyMatrix {
 public:
  GrunskyMatrix(int size, std::vector<Complex> b, double raw_asymmetry);

  int size() const { return size_; }
  /// 1-indexed b_jk.
  Complex b(int j, int k) const { return b_[index(j, k)]; }
  /// 1-indexed sqrt(jk) b_jk.
  Complex weighted(int j, int k) const { return weighted_[index(j, k)]; }
  std::span<const Complex> b_data() const { return b_; }
  std::span<const Complex> weighted_data() const { return weighted_; }
  /// max |b_jk - b_kj| of the recurrence output before symmetrization.
  double raw_asymmetry() const { return raw_asymmetry_; }

 private:
  std::size_t index(int j, int k) const {
    return static_cast<std::size_t>(j - 1) * static_cast<std::size_t>(size_) +
           static_cast<std::size_t>(k - 1);
  }
  int size_;
  std::vector<Complex> b_;
  std::vector<Complex> weighted_;
  double raw_asymmetry_;
};

/// Requires f in A_1 with order >= 2N + 1: b_jk with j + k = n reads the
/// coefficient of z^n in z/f.
GrunskyMatrix grunsky_coeffs(const Series& f, int size);

/// Largest singular value of the weighted matrix, which equals
/// sup over unit y of |y^T W y| for complex symmetric W.
double grunsky_norm(const GrunskyMatrix& matrix);

Verdict grunsky_test(const DeformationFamily& family, Complex c, int size,
                     double tol = kGrunskyTolerance);

/// S_N = sum_{n=2}^N (n - 1 - lambda)|a_n|^2 with a_n the coefficients of
/// K_{-lambda}[K_c[f]] = K_{-lambda c}[f]. Requires N >= lambda + 1 so the
/// omitted terms are nonnegative.
double prawitz_sum(const DeformationFamily& family, double lambda, int terms, Complex c = 1.0);
Verdict prawitz_test(const DeformationFamily& family, Complex c, double lambda, int terms,
                     double tol = kPrawitzTolerance);

/// Sampled image of the disk under p: every loop point of the scheme,
/// including interior radii.
struct RegionSample {
  std::vector<Complex> points;
  SampleScheme scheme;
};

RegionSample v_region_sample(const DeformationFamily& family, const SampleScheme& scheme);

/// T(w) = 1/(1 - w); throws at w = 1 (image is the point at infinity).
Complex mobius_T(Complex w);
/// T^{-1}(c) = (c - 1)/c; throws at c = 0.
Complex mobius_T_inv(Complex c);

struct LuOptions {
  std::vector<double> radii{0.9, 0.99, 0.999};
  int points = 8192;
  int max_doublings = 6;
  /// Circles whose p-series tail estimate exceeds this are skipped.
  double tail_limit = 1e-6;
  /// Closest admissible approach of the image curve to the target value.
  double min_clearance = 1e-9;
};

struct LuResult {
  bool locally_univalent = true;
  /// Zeros of p - (c-1)/c found inside the contour that detected them.
  int zeros = 0;
  LoopSpec contour;
  Verdict verdict;
};

/// Contours of a family sampled once, reusable for every c.
class LuContours {
 public:
  LuContours(const DeformationFamily& family, LuOptions options = {});

  const LuOptions& options() const { return options_; }
  const std::vector<SampledLoop>& loops() const { return loops_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const LogDerivativeField& field() const { return field_; }

  /// Zeros of p - target inside loop `index`, by the argument principle with
  /// adaptive doubling until consecutive arguments differ by less than pi/2.
  int count_zeros(std::size_t index, Complex target) const;

 private:
  LogDerivativeField field_;
  LuOptions options_;
  std::vector<SampledLoop> loops_;
  std::vector<std::string> warnings_;
};

LuResult in_lu(const LuContours& contours, Complex c);
LuResult in_lu(const DeformationFamily& family, Complex c, const LuOptions& options = {});

struct CollisionOptions {
  int density = 160;
  double probe_radius = 0.95;
  double refine_tol = 1e-8;
  double min_separation = 0.05;
  std::uint64_t seed = 0;
  int max_candidates = 256;
};

struct CollisionWitness {
  Complex z1;
  Complex z2;
  Complex f1;
  Complex f2;
  double residual = 0.0;
  /// |f(z1) - f(z2)| recomputed in extended precision.
  double validated_residual = 0.0;
  bool conjugate_pair = false;
};

/// Brute-force search for f_c(z1) = f_c(z2) with z1 != z2 in |z| <= probe_radius.
std::optional<CollisionWitness> collision_search(const DeformationFamily& family, Complex c,
                                                 const CollisionOptions& options = {});
Verdict collision_test(const DeformationFamily& family, Complex c,
                       const CollisionOptions& options = {});

}  // namespace powerdeform
