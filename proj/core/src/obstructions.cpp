#include "powerdeform/obstructions.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <tuple>

namespace powerdeform {

namespace {

constexpr double kPi = std::numbers::pi;

using WSeries = std::vector<Complex>;

// a += s * (b * c) truncated to the common length.
void add_scaled_product(WSeries& acc, Complex s, const WSeries& b, const WSeries& c) {
  const std::size_t n = acc.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (b[i] == 0.0) continue;
    const Complex bi = s * b[i];
    for (std::size_t j = 0; i + j < n; ++j) acc[i + j] += bi * c[j];
  }
}

}  // namespace

GrunskyMatrix::GrunskyMatrix(int size, std::vector<Complex> b, double raw_asymmetry)
    : size_(size), b_(std::move(b)), weighted_(b_.size()), raw_asymmetry_(raw_asymmetry) {
  if (size_ < 1 || b_.size() != static_cast<std::size_t>(size_) * static_cast<std::size_t>(size_)) {
    throw Error("Grunsky matrix dimensions do not match its size");
  }
  for (int j = 1; j <= size_; ++j) {
    for (int k = 1; k <= size_; ++k) {
      weighted_[index(j, k)] = std::sqrt(static_cast<double>(j) * k) * b_[index(j, k)];
    }
  }
}

GrunskyMatrix grunsky_coeffs(const Series& f, int size) {
  if (size < 1) {
    throw Error("Grunsky size must be >= 1");
  }
  const int needed = 2 * size + 1;
  if (f.order() < needed) {
    throw Error("series order " + std::to_string(f.order()) + " too small for Grunsky size " +
                std::to_string(size) + " (need " + std::to_string(needed) + ")");
  }
  if (std::abs(f[0]) > kUnitTolerance || std::abs(f[1] - 1.0) > kUnitTolerance) {
    throw Error("Grunsky coefficients need f(0) = 0, f'(0) = 1");
  }
  // With g = z/f, (1/f(z) - 1/f(w))/(1/z - 1/w) = 1 - sum_{n>=2} g_n sum_{i+j=n, i,j>=1} z^i w^j.
  const Series g = reciprocal(f.truncated(needed).divided_by_z());
  const auto n = static_cast<std::size_t>(size);
  std::vector<WSeries> r(n + 1, WSeries(n + 1));
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) r[i][j] = -g[i + j];
  }
  // log R as a series in z with w-series coefficients: z d/dz R = R z d/dz log R,
  // and R_0 = 1, so L_m = R_m - (1/m) sum_{k<m} k L_k R_{m-k}.
  std::vector<WSeries> l(n + 1, WSeries(n + 1));
  for (std::size_t m = 1; m <= n; ++m) {
    WSeries acc = r[m];
    for (std::size_t k = 1; k < m; ++k) {
      add_scaled_product(acc, -static_cast<double>(k) / static_cast<double>(m), l[k], r[m - k]);
    }
    l[m] = std::move(acc);
  }
  std::vector<Complex> b(n * n);
  double asym = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t k = 1; k <= n; ++k) {
      asym = std::max(asym, std::abs(l[j][k] - l[k][j]));
      b[(j - 1) * n + (k - 1)] = -0.5 * (l[j][k] + l[k][j]);
    }
  }
  return GrunskyMatrix(size, std::move(b), asym);
}

double grunsky_norm(const GrunskyMatrix& matrix) {
  const int n = matrix.size();
  Eigen::MatrixXcd w(n, n);
  for (int j = 1; j <= n; ++j) {
    for (int k = 1; k <= n; ++k) w(j - 1, k - 1) = matrix.weighted(j, k);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(w);
  return svd.singularValues()(0);
}

Verdict grunsky_test(const DeformationFamily& family, Complex c, int size, double tol) {
  const double norm = grunsky_norm(grunsky_coeffs(power_deform(family, c), size));
  Witness w;
  w.value = norm;
  w.margin = tol;
  w.note = "Grunsky norm at N=" + std::to_string(size);
  if (norm > 1.0 + tol) return Verdict::nonunivalent("grunsky", std::move(w));
  Verdict v = Verdict::unknown("grunsky");
  v.witness = std::move(w);
  return v;
}

double prawitz_sum(const DeformationFamily& family, double lambda, int terms, Complex c) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error("Prawitz lambda must be positive");
  }
  if (terms < 2) {
    throw Error("Prawitz sum needs N >= 2");
  }
  if (terms < lambda + 1.0) {
    throw Error("truncation not one-sided: need N >= lambda + 1");
  }
  const Series a = power_deform(family, -lambda * c);
  if (terms > a.order()) {
    throw Error("Prawitz sum to N=" + std::to_string(terms) + " exceeds series order " +
                std::to_string(a.order()));
  }
  double sum = 0.0;
  for (int n = 2; n <= terms; ++n) sum += (n - 1.0 - lambda) * std::norm(a[n]);
  return sum;
}

Verdict prawitz_test(const DeformationFamily& family, Complex c, double lambda, int terms,
                     double tol) {
  const double sum = prawitz_sum(family, lambda, terms, c);
  Witness w;
  w.value = sum;
  w.margin = tol;
  w.note = "Prawitz sum at lambda=" + format_double(lambda) + ", N=" + std::to_string(terms);
  if (sum > lambda + tol) return Verdict::nonunivalent("prawitz", std::move(w));
  Verdict v = Verdict::unknown("prawitz");
  v.witness = std::move(w);
  return v;
}

RegionSample v_region_sample(const DeformationFamily& family, const SampleScheme& scheme) {
  RegionSample out;
  out.points = sample_boundary(family, scheme).values();
  out.scheme = scheme;
  return out;
}

Complex mobius_T(Complex w) {
  require_finite(w, "Mobius argument");
  if (w == 1.0) {
    throw Error("T(1) is the point at infinity");
  }
  return 1.0 / (1.0 - w);
}

Complex mobius_T_inv(Complex c) {
  require_finite(c, "Mobius argument");
  if (c == 0.0) {
    throw Error("T^-1(0) is the point at infinity");
  }
  return (c - 1.0) / c;
}

LuContours::LuContours(const DeformationFamily& family, LuOptions options)
    : field_(family), options_(std::move(options)) {
  SampleScheme check;
  check.radii = options_.radii;
  check.angles = options_.points;
  check.validate();
  const std::vector<LoopSpec> specs =
      plan_loops(field_, options_.radii, options_.tail_limit, warnings_);
  if (specs.empty()) {
    throw Error("series order insufficient for any local-univalence contour");
  }
  for (const LoopSpec& spec : specs) loops_.push_back(sample_loop(field_, spec, options_.points));
}

int LuContours::count_zeros(std::size_t index, Complex target) const {
  const SampledLoop& base = loops_.at(index);
  for (int level = 0; level <= options_.max_doublings; ++level) {
    SampledLoop refined;
    const SampledLoop* loop = &base;
    if (level > 0) {
      refined = sample_loop(field_, base.spec, options_.points << level);
      loop = &refined;
    }
    const std::vector<Complex>& p = loop->p;
    double total = 0.0;
    bool coarse = false;
    Complex prev = p.back() - target;
    for (Complex value : p) {
      const Complex d = value - target;
      if (std::abs(d) < options_.min_clearance) {
        throw Error("contour too close to zero set; perturb r");
      }
      const Complex ratio = d * std::conj(prev);
      const double step = std::atan2(ratio.imag(), ratio.real());
      if (std::abs(step) >= kPi / 2.0) {
        coarse = true;
        break;
      }
      total += step;
      prev = d;
    }
    if (coarse) continue;
    const long zeros = std::lround(total / (2.0 * kPi));
    if (zeros < 0) {
      throw Error("negative winding number for an analytic function");
    }
    return static_cast<int>(zeros);
  }
  throw Error("winding refinement did not converge");
}

LuResult in_lu(const LuContours& contours, Complex c) {
  LuResult out;
  out.verdict = Verdict::unknown("in_lu");
  if (c == 0.0) return out;
  const Complex target = mobius_T_inv(c);
  for (std::size_t k = 0; k < contours.loops().size(); ++k) {
    const int zeros = contours.count_zeros(k, target);
    if (zeros > 0) {
      out.locally_univalent = false;
      out.zeros = zeros;
      out.contour = contours.loops()[k].spec;
      Witness w;
      w.value = zeros;
      w.points.push_back(target);
      w.note = "not locally univalent";
      out.verdict = Verdict::nonunivalent("in_lu", std::move(w));
      return out;
    }
  }
  return out;
}

LuResult in_lu(const DeformationFamily& family, Complex c, const LuOptions& options) {
  if (c == 0.0) {
    LuResult out;
    out.verdict = Verdict::unknown("in_lu");
    return out;
  }
  return in_lu(LuContours(family, options), c);
}

namespace {

// f_c and f_c' at a point, from the closed form or from the deformed series.
class DeformedMap {
 public:
  DeformedMap(const DeformationFamily& family, Complex c, const CollisionOptions& options)
      : family_(family), c_(c), exact_(family.closed_form() != ClosedForm::none) {
    if (!exact_) {
      series_ = power_deform(family, c);
      const Evaluation tail = tail_estimate(series_, options.probe_radius);
      if (series_.order() < 128 || !tail.reliable || !(tail.tail < options.refine_tol)) {
        throw Error("series too short for a collision search at radius " +
                    format_double(options.probe_radius));
      }
      d_series_ = derivative(series_);
    }
  }

  std::pair<Complex, Complex> value_and_derivative(Complex z) const {
    if (!exact_) {
      Complex f{};
      for (int k = series_.order(); k >= 0; --k) f = f * z + series_[k];
      Complex df{};
      for (int k = d_series_.order(); k >= 0; --k) df = df * z + d_series_[k];
      return {f, df};
    }
    const Complex f = closed_form_eval(family_, c_, z);
    if (z == 0.0) return {f, 1.0};
    const Complex p = closed_form_log_derivative(family_, z).p;
    return {f, f * (1.0 - c_ + c_ * p) / z};
  }

  std::complex<long double> extended(Complex z) const {
    if (exact_) return closed_form_eval_extended(family_, c_, z);
    return evaluate_extended(series_, std::complex<long double>(z.real(), z.imag()));
  }

 private:
  const DeformationFamily& family_;
  Complex c_;
  bool exact_;
  Series series_;
  Series d_series_;
};

struct Candidate {
  double key;
  std::size_t i;
  std::size_t j;
  bool symmetric;
};

// Newton iteration for f(z) = target starting at z0, confined to |z| <= radius.
std::optional<Complex> solve_value(const DeformedMap& map, Complex z0, Complex target,
                                   double radius) {
  Complex z = z0;
  for (int it = 0; it < 80; ++it) {
    const auto [f, df] = map.value_and_derivative(z);
    const Complex resid = f - target;
    if (std::abs(resid) <= 1e-14 * std::max(1.0, std::abs(target))) return z;
    if (df == 0.0) return std::nullopt;
    Complex step = resid / df;
    const double len = std::abs(step);
    if (len > 0.05) step *= 0.05 / len;
    z -= step;
    if (!(std::abs(z) <= radius)) return std::nullopt;
  }
  const auto [f, df] = map.value_and_derivative(z);
  if (std::abs(f - target) <= 1e-11 * std::max(1.0, std::abs(target))) return z;
  return std::nullopt;
}

}  // namespace

std::optional<CollisionWitness> collision_search(const DeformationFamily& family, Complex c,
                                                 const CollisionOptions& options) {
  require_finite(c, "deformation parameter");
  if (options.density < 4) {
    throw Error("collision grid density must be >= 4");
  }
  if (!(options.probe_radius > 0.0 && options.probe_radius < 1.0)) {
    throw Error("collision probe radius must be in (0, 1)");
  }
  if (c == 0.0 || family.is_identity()) return std::nullopt;
  const DeformedMap map(family, c, options);
  const double r = options.probe_radius;
  const double spacing = 2.0 * r / options.density;

  std::vector<Complex> z;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> jitter(-0.25 * spacing, 0.25 * spacing);
  for (int j = 0; j < options.density; ++j) {
    for (int i = 0; i < options.density; ++i) {
      Complex point(-r + (i + 0.5) * spacing, -r + (j + 0.5) * spacing);
      if (options.seed != 0) point += Complex(jitter(rng), jitter(rng));
      if (std::abs(point) <= r) z.push_back(point);
    }
  }
  std::vector<Complex> w(z.size());
  std::vector<double> scale(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    const auto [f, df] = map.value_and_derivative(z[k]);
    w[k] = f;
    scale[k] = spacing * std::abs(df);
  }

  std::vector<Candidate> candidates;
  const bool symmetric = family.has_real_coefficients() && c.imag() == 0.0;
  if (symmetric) {
    // conj(f_c(conj z)) = f_c(z): a real value at z pairs z with conj(z).
    for (std::size_t k = 0; k < z.size(); ++k) {
      if (z[k].imag() <= options.min_separation / 2.0 || scale[k] == 0.0) continue;
      const double key = std::abs(w[k].imag()) / scale[k];
      if (key < 1.0) candidates.push_back({key, k, k, true});
    }
  }

  std::vector<double> sorted_scale = scale;
  std::nth_element(sorted_scale.begin(), sorted_scale.begin() + sorted_scale.size() / 2,
                   sorted_scale.end());
  const double bucket = std::max(2.0 * sorted_scale[sorted_scale.size() / 2], 1e-300);
  std::map<std::pair<long long, long long>, std::vector<std::size_t>> buckets;
  auto key_of = [&](Complex v) {
    return std::pair{static_cast<long long>(std::floor(v.real() / bucket)),
                     static_cast<long long>(std::floor(v.imag() / bucket))};
  };
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (is_finite(w[k])) buckets[key_of(w[k])].push_back(k);
  }
  for (std::size_t a = 0; a < z.size(); ++a) {
    if (!is_finite(w[a])) continue;
    const auto [bx, by] = key_of(w[a]);
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        const auto it = buckets.find({bx + dx, by + dy});
        if (it == buckets.end()) continue;
        for (std::size_t b : it->second) {
          if (b <= a || std::abs(z[a] - z[b]) <= options.min_separation) continue;
          const double local = std::min(scale[a] + scale[b], bucket);
          if (local == 0.0) continue;
          const double key = std::abs(w[a] - w[b]) / local;
          if (key < 1.0) candidates.push_back({key, a, b, false});
        }
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    return std::tie(y.symmetric, x.key, x.i, x.j) < std::tie(x.symmetric, y.key, y.i, y.j);
  });
  if (candidates.size() > static_cast<std::size_t>(options.max_candidates)) {
    candidates.resize(static_cast<std::size_t>(options.max_candidates));
  }

  for (const Candidate& cand : candidates) {
    CollisionWitness out;
    if (cand.symmetric) {
      const auto root = solve_value(map, z[cand.i], w[cand.i].real(), r);
      if (!root || root->imag() <= options.min_separation / 2.0) continue;
      out.z1 = *root;
      out.z2 = std::conj(*root);
      out.conjugate_pair = true;
    } else {
      const auto root = solve_value(map, z[cand.i], w[cand.j], r);
      if (!root || std::abs(*root - z[cand.j]) <= options.min_separation) continue;
      out.z1 = *root;
      out.z2 = z[cand.j];
    }
    out.f1 = map.value_and_derivative(out.z1).first;
    out.f2 = map.value_and_derivative(out.z2).first;
    out.residual = std::abs(out.f1 - out.f2);
    out.validated_residual = static_cast<double>(std::abs(map.extended(out.z1) - map.extended(out.z2)));
    if (out.residual < options.refine_tol && out.validated_residual < options.refine_tol) {
      return out;
    }
  }
  return std::nullopt;
}

Verdict collision_test(const DeformationFamily& family, Complex c, const CollisionOptions& options) {
  const auto witness = collision_search(family, c, options);
  if (!witness) return Verdict::unknown("collision");
  Witness w;
  w.points = {witness->z1, witness->z2};
  w.value = witness->validated_residual;
  w.margin = options.refine_tol;
  w.note = witness->conjugate_pair ? "conjugate pair" : "equal values";
  return Verdict::nonunivalent("collision", std::move(w));
}

}  // namespace powerdeform
