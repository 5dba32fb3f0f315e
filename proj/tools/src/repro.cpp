#include "powerdeform_tools/repro.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "powerdeform/criteria.hpp"
#include "powerdeform/families.hpp"
#include "powerdeform/obstructions.hpp"
#include "powerdeform/scanner.hpp"

namespace powerdeform::tools {

bool ScenarioResult::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double x) { return format_double(x); }

void log_line(const ReproOptions& options, const std::string& text) {
  if (options.log) *options.log << text << std::endl;
}

struct Counter {
  int hits = 0;
  int total = 0;
  double fraction() const { return total == 0 ? 1.0 : static_cast<double>(hits) / total; }
  std::string text() const {
    return std::to_string(hits) + "/" + std::to_string(total) + " = " + num(fraction());
  }
};

bool test_in(const Cell& cell, std::initializer_list<std::string_view> ids) {
  return std::find(ids.begin(), ids.end(), cell.verdict.test_id) != ids.end();
}

// Koebe disk U = {|c - 1/2| <= 1/2} recovered by a scan.
ScenarioResult koebe_disk(const ReproOptions& options) {
  ScenarioResult r{"koebe", {}, 0.0};
  const auto start = Clock::now();
  ScanConfig config;
  config.grunsky_n = 40;
  config.threads = options.threads;
  const DeformationFamily f = koebe_family(required_order(config));
  const RegionGrid grid = scan(f, {-1.0, 2.0, -1.5, 1.5}, 0.02, config);
  const double elapsed = seconds_since(start);
  log_line(options, "koebe scan: " + std::to_string(grid.width()) + "x" +
                        std::to_string(grid.height()) + " cells in " + num(elapsed) + " s");

  double worst_in = 0.0;
  double worst_out = kPi;
  Counter spiral;
  Counter flagged;
  for (int j = 0; j < grid.height(); ++j) {
    for (int i = 0; i < grid.width(); ++i) {
      const double d = std::abs(grid.center(i, j) - 0.5);
      const Cell& cell = grid.cell(i, j);
      if (cell.cls() == CellClass::in) worst_in = std::max(worst_in, d);
      if (cell.cls() == CellClass::out) worst_out = std::min(worst_out, d);
      if (d <= 0.40) {
        ++spiral.total;
        if (test_in(cell, {"starlike", "spirallike", "origin"})) ++spiral.hits;
      }
      if (d >= 0.55 && d <= 1.0) {
        ++flagged.total;
        if (test_in(cell, {"grunsky", "in_lu"})) ++flagged.hits;
      }
    }
  }
  r.checks.push_back({"IN cells within |c-1/2| <= 0.52", worst_in <= 0.52,
                      "max |c-1/2| over IN = " + num(worst_in)});
  r.checks.push_back({"OUT cells within |c-1/2| >= 0.48", worst_out >= 0.48,
                      "min |c-1/2| over OUT = " + num(worst_out)});
  r.checks.push_back({"spirallike certifies >= 90% of |c-1/2| <= 0.40", spiral.fraction() >= 0.9,
                      spiral.text()});
  r.checks.push_back({"Grunsky or in_lu flags >= 90% of 0.55 <= |c-1/2| <= 1", flagged.fraction() >= 0.9,
                      flagged.text()});
  r.checks.push_back({"runtime <= 300 s", elapsed <= 300.0, num(elapsed) + " s"});
  r.seconds = seconds_since(start);
  return r;
}

// LU_kappa is the open disk |c - 1/2| < 1/2.
ScenarioResult koebe_lu(const ReproOptions&) {
  ScenarioResult r{"koebe-lu", {}, 0.0};
  const auto start = Clock::now();
  const LuContours contours(koebe_family());
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> re(-1.0, 2.0);
  std::uniform_real_distribution<double> im(-1.5, 1.5);
  int tested = 0;
  int mismatches = 0;
  std::string first;
  while (tested < 1000) {
    const Complex c(re(rng), im(rng));
    const double d = std::abs(c - 0.5);
    if (std::abs(d - 0.5) < 0.02) continue;
    ++tested;
    const bool lu = in_lu(contours, c).locally_univalent;
    if (lu != (d < 0.5)) {
      if (mismatches++ == 0) first = format_complex(c);
    }
  }
  r.checks.push_back({"in_lu(koebe, c) == (|c-1/2| < 1/2) on 1000 random c", mismatches == 0,
                      std::to_string(mismatches) + " mismatches" +
                          (first.empty() ? "" : ", first at " + first)});
  r.seconds = seconds_since(start);
  return r;
}

// Two IN components for powerlog(pi/12), separated by the LU-failure band.
ScenarioResult two_components(const ReproOptions& options) {
  ScenarioResult r{"twocomp", {}, 0.0};
  const auto start = Clock::now();
  const double m = kPi / 12.0;
  ScanConfig config;
  config.threads = options.threads;
  const DeformationFamily f = powerlog_family(m, required_order(config));
  const RegionGrid grid = scan(f, {-0.4, 1.4, -0.6, 0.6}, 0.01, config);
  const double elapsed = seconds_since(start);
  log_line(options, "powerlog scan: " + std::to_string(grid.width()) + "x" +
                        std::to_string(grid.height()) + " cells in " + num(elapsed) + " s");

  const Labeling lab = components(grid, CellClass::in);
  const auto zero = grid.locate(0.0);
  const auto one = grid.locate(1.0);
  const int l0 = zero ? lab.at(zero->first, zero->second) : -1;
  const int l1 = one ? lab.at(one->first, one->second) : -1;
  r.checks.push_back({"IN component count >= 2", lab.count >= 2, std::to_string(lab.count) + " components"});
  r.checks.push_back({"c = 0 and c = 1 in different IN components", l0 >= 0 && l1 >= 0 && l0 != l1,
                      "labels " + std::to_string(l0) + ", " + std::to_string(l1)});

  const BandCheck band = lu_band_check(m);
  r.checks.push_back({"lu_band_check(pi/12) verified", band.verified(),
                      "interval (" + num(band.lo) + ", " + num(band.hi) + "), " +
                          std::to_string(band.inside_checked + band.outside_checked) + " samples, " +
                          std::to_string(band.mismatches) + " mismatches"});
  const LuContours contours(f);
  int band_lu = 0;
  const int samples = 56;
  for (int k = 0; k < samples; ++k) {
    const double c = 0.4723 + (0.5277 - 0.4723) * (k + 0.5) / samples;
    if (in_lu(contours, c).locally_univalent) ++band_lu;
  }
  r.checks.push_back({"in_lu false on real c in (0.4723, 0.5277)", band_lu == 0,
                      std::to_string(samples - band_lu) + "/" + std::to_string(samples) + " not LU"});
  const bool connected = complement_connected(grid);
  r.checks.push_back({"complement_connected", connected, connected ? "true" : "false"});
  r.checks.push_back({"runtime <= 600 s", elapsed <= 600.0, num(elapsed) + " s"});
  r.seconds = seconds_since(start);
  return r;
}

// Prawitz at lambda = 1/2 against the doubly periodic covering family.
ScenarioResult prawitz_bound(const ReproOptions&) {
  ScenarioResult r{"prawitz-bound", {}, 0.0};
  const auto start = Clock::now();
  const double lambda = 0.5;
  const double tol = 1e-3;
  const DeformationFamily f2 = covering_family(2.0, 64);
  const Verdict v = prawitz_test(f2, 1.0, lambda, 64);
  const double s = v.witness ? v.witness->value : 0.0;
  r.checks.push_back({"prawitz_test(m=2, lambda=0.5, N=64) nonunivalent", v.is_nonunivalent(),
                      "S_64 = " + num(s)});
  r.checks.push_back({"S_64 >= 0.81", s >= 0.81 - tol, "S_64 = " + num(s)});
  const double term2 = (1.0 - lambda) * std::norm(power_deform(f2, -lambda)[2]);
  r.checks.push_back({"n = 2 term = 8/pi^2", std::abs(term2 - 8.0 / (kPi * kPi)) <= tol,
                      num(term2) + " vs " + num(8.0 / (kPi * kPi))});
  const DeformationFamily f1 = covering_family(1.0, 64);
  const double term1 = (1.0 - lambda) * std::norm(power_deform(f1, -lambda)[2]);
  r.checks.push_back({"m = 1: n = 2 term <= lambda", term1 <= lambda + tol, num(term1)});
  r.seconds = seconds_since(start);
  return r;
}

// Closed-form Grunsky coefficients and the K_{1.2}[kappa] obstruction.
ScenarioResult grunsky_closed(const ReproOptions&) {
  ScenarioResult r{"grunsky-closed", {}, 0.0};
  const auto start = Clock::now();
  const GrunskyMatrix id = grunsky_coeffs(identity_family(41).base(), 20);
  bool zero = true;
  for (Complex b : id.b_data()) zero = zero && b == 0.0;
  r.checks.push_back({"identity: b_jk = 0 exactly", zero, zero ? "all zero" : "nonzero entry"});

  const GrunskyMatrix k = grunsky_coeffs(koebe_family(41).base(), 20);
  double err = 0.0;
  for (int j = 1; j <= 20; ++j) {
    for (int l = 1; l <= 20; ++l) err = std::max(err, std::abs(k.b(j, l) - (j == l ? 1.0 / j : 0.0)));
  }
  r.checks.push_back({"koebe: b_jk = delta_jk/j within 1e-10", err < 1e-10, "max error " + num(err)});
  const double kn = grunsky_norm(k);
  r.checks.push_back({"koebe: norm = 1 within 1e-8", std::abs(kn - 1.0) < 1e-8, "norm " + num(kn)});

  const DeformationFamily kappa = koebe_family(81);
  const double n12 = grunsky_norm(grunsky_coeffs(power_deform(kappa, 1.2), 40));
  r.checks.push_back({"K_1.2[koebe]: norm(N=40) > 1 + 1e-6", n12 > 1.0 + 1e-6, "norm " + num(n12)});
  const auto w = collision_search(kappa, 1.2);
  r.checks.push_back({"collision_search(koebe, 1.2) residual < 1e-8",
                      w && w->validated_residual < 1e-8 && std::abs(w->z1 - w->z2) > 0.05,
                      w ? "z1 = " + format_complex(w->z1) + ", z2 = " + format_complex(w->z2) +
                              ", residual " + num(w->validated_residual)
                        : "no witness"});
  r.seconds = seconds_since(start);
  return r;
}

// Exponential family: univalent at c = 1, conjugate collisions for c > 1.
ScenarioResult expfam(const ReproOptions& options) {
  ScenarioResult r{"expfam", {}, 0.0};
  const auto start = Clock::now();
  const DeformationFamily f = expfam_family(81);
  const auto w = collision_search(f, 1.5);
  const double sym = w ? std::abs(w->z1 - std::conj(w->z2)) : kPi;
  r.checks.push_back({"collision_search(expfam, 1.5) conjugate-symmetric within 1e-4",
                      w && sym < 1e-4 && w->validated_residual < 1e-8,
                      w ? "z1 = " + format_complex(w->z1) + ", |z1 - conj z2| = " + num(sym) +
                              ", f = " + format_complex(w->f1)
                        : "no witness"});
  const Verdict g = grunsky_test(f, 1.0, 40);
  r.checks.push_back({"grunsky_test(expfam, 1, 40) unknown", g.is_unknown(),
                      "norm " + num(g.witness ? g.witness->value : 0.0)});
  ScanConfig config;
  config.threads = options.threads;
  const RegionGrid grid = scan(f, {-0.05, 0.05, -0.05, 0.05}, 0.01, config);
  Counter in;
  for (int j = 0; j < grid.height(); ++j) {
    for (int i = 0; i < grid.width(); ++i) {
      if (std::abs(grid.center(i, j)) > 0.05 + 1e-12) continue;
      ++in.total;
      if (grid.cls(i, j) == CellClass::in) ++in.hits;
    }
  }
  r.checks.push_back({"scan certifies IN for all |c| <= 0.05", in.hits == in.total && in.total > 0,
                      in.text()});
  r.seconds = seconds_since(start);
  return r;
}

// Becker bound for zF'/F = ((1+z)/(1-z))^{1/6} and the annulus criterion near c = 1.
ScenarioResult lemma_chain(const ReproOptions&) {
  ScenarioResult r{"lemma-chain", {}, 0.0};
  const auto start = Clock::now();
  SampleScheme scheme;
  scheme.radii = {0.9, 0.99, 0.999};
  const double sup = becker_sup(power_family(1.0 / 6.0), 1.0, scheme);
  r.checks.push_back({"becker_sup <= 1.02", sup <= 1.02, "sup " + num(sup)});
  const DeformationFamily f = powerlog_family(kPi / 12.0);
  const Complex points[] = {{1.0, 0.0}, {1.02, 0.0}, {0.98, 0.0}, {1.0, 0.02}, {1.0, -0.02}};
  int certified = 0;
  std::string detail;
  for (Complex c : points) {
    const bool ok = annulus_test(f, c, scheme, kPi / 12.0).is_univalent();
    certified += ok;
    if (!ok) detail += " " + format_complex(c);
  }
  r.checks.push_back({"annulus_test certifies c in {1, 1+-0.02, 1+-0.02i}", certified == 5,
                      std::to_string(certified) + "/5" + (detail.empty() ? "" : ", failed:" + detail)});
  r.seconds = seconds_since(start);
  return r;
}

Series random_series(std::mt19937_64& rng, int order, double decay, bool unit) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> a(static_cast<std::size_t>(order) + 1);
  double scale = 1.0;
  for (int k = 1; k <= order; ++k) {
    scale *= decay;
    a[static_cast<std::size_t>(k)] = scale * Complex(u(rng), u(rng));
  }
  a[0] = unit ? 1.0 : 0.0;
  return Series(std::move(a));
}

// f/z = 1 + sum a_k z^k with sum |a_k| < 0.6, so Log(f/z) is analytic past the
// closed disk and the absolute tolerances below are meaningful.
DeformationFamily random_family(std::mt19937_64& rng, int order) {
  Series s = random_series(rng, order - 1, 0.5, false);
  std::vector<Complex> a(s.coeffs().begin(), s.coeffs().end());
  for (Complex& x : a) x *= 0.4;
  a[0] = 1.0;
  return DeformationFamily(Series(std::move(a)).times_z(), "random");
}

Complex random_c(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  return {u(rng), u(rng)};
}

// Algebraic identities on random inputs and scan determinism.
ScenarioResult algebra(const ReproOptions&) {
  ScenarioResult r{"algebra", {}, 0.0};
  const auto start = Clock::now();
  constexpr int kOrder = 32;
  constexpr int kTrials = 100;
  std::mt19937_64 rng(7);

  double roundtrip = 0.0;
  double semigroup = 0.0;
  double logderiv = 0.0;
  double asym = 0.0;
  int nonmonotone = 0;
  for (int t = 0; t < kTrials; ++t) {
    const Series s = random_series(rng, kOrder, 0.8, false);
    roundtrip = std::max(roundtrip, max_coeff_distance(log_unit(exp_series(s)), s));
    const Series u = random_series(rng, kOrder, 0.5, true);
    roundtrip = std::max(roundtrip, max_coeff_distance(exp_series(log_unit(u)), u));

    const DeformationFamily f = random_family(rng, kOrder);
    const Complex c = random_c(rng, 2.0);
    const Complex c2 = random_c(rng, 2.0);
    const DeformationFamily fc(power_deform(f, c), "deformed");
    semigroup = std::max(semigroup, max_coeff_distance(power_deform(fc, c2), power_deform(f, c * c2)));

    // z f_c'/f_c = f_c' / (f_c/z), by series division rather than through Log.
    const Series lhs = mul(derivative(fc.base()), reciprocal(fc.base().divided_by_z()));
    const Series rhs = Series::constant(1.0 - c, lhs.order()) + c * log_derivative(f).truncated(lhs.order());
    logderiv = std::max(logderiv, max_coeff_distance(lhs, rhs));

    asym = std::max(asym, grunsky_coeffs(f.base(), (kOrder - 1) / 2).raw_asymmetry());

    std::uniform_real_distribution<double> lam(0.05, 4.0);
    const double lambda = lam(rng);
    double prev = -std::numeric_limits<double>::infinity();
    for (int n = static_cast<int>(std::ceil(lambda + 1.0)); n <= kOrder; ++n) {
      const double sn = prawitz_sum(f, lambda, std::max(n, 2), c);
      if (sn < prev) ++nonmonotone;
      prev = sn;
    }
  }
  r.checks.push_back({"exp/log roundtrip < 1e-11", roundtrip < 1e-11, "max " + num(roundtrip)});
  r.checks.push_back({"K_c' o K_c = K_cc' < 1e-10", semigroup < 1e-10, "max " + num(semigroup)});
  r.checks.push_back({"z f_c'/f_c = 1 - c + c z f'/f < 1e-11", logderiv < 1e-11, "max " + num(logderiv)});
  r.checks.push_back({"Grunsky symmetry < 1e-10", asym < 1e-10, "max " + num(asym)});
  r.checks.push_back({"Prawitz S_N monotone in N", nonmonotone == 0,
                      std::to_string(nonmonotone) + " decreases"});

  ScanConfig config;
  const DeformationFamily kappa = koebe_family(required_order(config));
  auto csv = [&](int threads) {
    config.threads = threads;
    std::ostringstream out;
    export_csv(scan(kappa, {-1.0, 2.0, -1.5, 1.5}, 0.15, config), out);
    return out.str();
  };
  const std::string one = csv(1);
  const std::string eight = csv(8);
  r.checks.push_back({"scan CSV identical for 1 and 8 workers", one == eight,
                      std::to_string(one.size()) + " bytes"});
  r.seconds = seconds_since(start);
  return r;
}

struct Entry {
  std::string_view name;
  std::string_view title;
  ScenarioResult (*run)(const ReproOptions&);
};

const Entry kScenarios[] = {
    {"koebe", "Koebe disk reproduction", koebe_disk},
    {"koebe-lu", "LU of the Koebe function", koebe_lu},
    {"twocomp", "two components for powerlog(pi/12)", two_components},
    {"prawitz-bound", "Prawitz bound for the covering family", prawitz_bound},
    {"grunsky-closed", "Grunsky closed forms", grunsky_closed},
    {"expfam", "exponential family", expfam},
    {"lemma-chain", "Becker and annulus chain", lemma_chain},
    {"algebra", "algebraic property suite", algebra},
};

const Entry& find(std::string_view name) {
  for (const Entry& e : kScenarios) {
    if (e.name == name) return e;
  }
  throw Error("unknown scenario '" + std::string(name) + "'");
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const Entry& e : kScenarios) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

std::string_view scenario_title(std::string_view name) { return find(name).title; }

ScenarioResult run_scenario(std::string_view name, const ReproOptions& options) {
  return find(name).run(options);
}

void print_result(const ScenarioResult& result, std::ostream& out) {
  for (const Check& c : result.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << result.id << ": " << c.name;
    if (!c.detail.empty()) out << " (" << c.detail << ')';
    out << '\n';
  }
  out << (result.passed() ? "PASS " : "FAIL ") << result.id << " [" << format_double(result.seconds)
      << " s]\n";
}

}  // namespace powerdeform::tools
