#include "powerdeform_tools/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "powerdeform/criteria.hpp"
#include "powerdeform/families.hpp"
#include "powerdeform/obstructions.hpp"
#include "powerdeform/scanner.hpp"
#include "powerdeform/series_io.hpp"
#include "powerdeform_tools/repro.hpp"

namespace powerdeform::tools {

namespace {

// Coefficients are printed at 15 significant digits so that values produced
// through log/exp round trips (1 +- 1 ulp) read as the exact numbers.
std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  std::string s = buf;
  return s == "-0" ? "0" : s;
}

std::string coefficient_text(Complex a) {
  const double scale = std::max(1.0, std::abs(a));
  const double re = std::abs(a.real()) < 1e-15 * scale ? 0.0 : a.real();
  const double im = std::abs(a.imag()) < 1e-15 * scale ? 0.0 : a.imag();
  if (im == 0.0) return short_number(re);
  std::string s = re == 0.0 ? "" : short_number(re);
  if (im > 0.0 && !s.empty()) s += '+';
  return s + short_number(im) + 'i';
}

Window parse_window(const std::string& text) {
  std::vector<double> v;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find(':', start);
    v.push_back(parse_double(text.substr(start, end - start)));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  if (v.size() != 4) {
    throw Error("window must be re_min:re_max:im_min:im_max");
  }
  return {v[0], v[1], v[2], v[3]};
}

const char* verdict_word(const Verdict& v) {
  if (v.is_nonunivalent()) return "certified-nonunivalent";
  if (v.is_univalent()) return "certified-univalent";
  return "unknown";
}

int verdict_exit(const Verdict& v) { return v.is_nonunivalent() ? kExitNonunivalent : kExitOk; }

struct Common {
  std::string family = "koebe";
  std::string c = "1";
  std::vector<double> radii{0.9, 0.99, 0.999};
  int angles = 4096;
  double margin = 1e-3;

  Complex param() const { return parse_complex(c); }
  SampleScheme scheme() const {
    SampleScheme s;
    s.radii = radii;
    s.angles = angles;
    s.margin = margin;
    s.validate();
    return s;
  }
};

void add_family(CLI::App* sub, Common& common, bool with_c = true) {
  sub->add_option("--family", common.family,
                  "koebe | expfam | identity | powerlog:m=<x> | covering:m=<x> | "
                  "power:alpha=<z> | file:<path>")
      ->capture_default_str();
  if (with_c) sub->add_option("--c", common.c, "deformation parameter a, a+bi or a-bi")->capture_default_str();
}

void add_sampling(CLI::App* sub, Common& common) {
  sub->add_option("--radii", common.radii, "sampling circle radii")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  sub->add_option("--angles", common.angles, "samples per circle")->check(CLI::Range(64, 1 << 22));
  sub->add_option("--margin", common.margin, "safety margin of the sufficient tests")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Power deformations K_c[f](z) = z (f(z)/z)^c and their univalence sets"};
  app.require_subcommand(1);
  app.fallthrough(false);

  Common common;
  std::function<int()> action;

  // deform
  int order = kDefaultOrder;
  bool print_coeffs = false;
  std::string series_out;
  auto* deform = app.add_subcommand("deform", "print the coefficients of K_c[f]");
  add_family(deform, common);
  deform->add_option("--order", order, "truncation order")->check(CLI::Range(1, 100000));
  deform->add_flag("--print-coeffs", print_coeffs, "comma-separated coefficients (default output)");
  deform->add_option("--out", series_out, "also write the series file");
  deform->callback([&] {
    action = [&] {
      const Complex c = common.param();
      const Series s = power_deform(parse_family(common.family, order), c);
      std::string line;
      for (int k = 0; k <= s.order(); ++k) {
        if (k > 0) line += ',';
        line += coefficient_text(s[k]);
      }
      out << line << '\n';
      if (!series_out.empty()) write_series(std::filesystem::path(series_out), s);
      return kExitOk;
    };
  });

  // grunsky
  int size = 40;
  double tol = kGrunskyTolerance;
  auto* grunsky = app.add_subcommand("grunsky", "Grunsky norm of K_c[f]");
  add_family(grunsky, common);
  grunsky->add_option("--size", size, "matrix size N")->check(CLI::Range(1, 400));
  grunsky->add_option("--tol", tol, "firing tolerance")->check(CLI::NonNegativeNumber);
  grunsky->callback([&] {
    action = [&] {
      const Complex c = common.param();
      const DeformationFamily f = parse_family(common.family, std::max(kDefaultOrder, 2 * size + 1));
      const Verdict v = grunsky_test(f, c, size, tol);
      out << "norm " << format_double(v.witness->value) << '\n';
      out << "verdict " << verdict_word(v) << ' ' << v.test_id << '\n';
      return verdict_exit(v);
    };
  });

  // prawitz
  double lambda = 0.5;
  int terms = 64;
  double prawitz_tol = kPrawitzTolerance;
  auto* prawitz = app.add_subcommand("prawitz", "Prawitz area sum of K_c[f]");
  add_family(prawitz, common);
  prawitz->add_option("--lambda", lambda, "lambda > 0")->check(CLI::PositiveNumber);
  prawitz->add_option("--order", terms, "truncation N")->check(CLI::Range(2, 100000));
  prawitz->add_option("--tol", prawitz_tol, "firing tolerance")->check(CLI::NonNegativeNumber);
  prawitz->callback([&] {
    action = [&] {
      const Complex c = common.param();
      const DeformationFamily f = parse_family(common.family, std::max(kDefaultOrder, terms));
      const Verdict v = prawitz_test(f, c, lambda, terms, prawitz_tol);
      out << "sum " << format_double(v.witness->value) << '\n';
      out << "lambda " << format_double(lambda) << '\n';
      out << "verdict " << verdict_word(v) << ' ' << v.test_id << '\n';
      return verdict_exit(v);
    };
  });

  // lu
  int lu_points = 8192;
  auto* lu = app.add_subcommand("lu", "local univalence of K_c[f] by the argument principle");
  add_family(lu, common);
  lu->add_option("--radii", common.radii, "contour radii")->delimiter(',')->check(CLI::Range(0.0, 1.0));
  lu->add_option("--points", lu_points, "base samples per contour")->check(CLI::Range(64, 1 << 20));
  lu->callback([&] {
    action = [&] {
      const Complex c = common.param();
      LuOptions options;
      options.radii = common.radii;
      options.points = lu_points;
      const LuResult r = in_lu(parse_family(common.family, kDefaultOrder), c, options);
      out << "locally_univalent " << (r.locally_univalent ? "true" : "false") << '\n';
      if (!r.locally_univalent) out << "zeros " << r.zeros << '\n';
      out << "verdict " << verdict_word(r.verdict) << ' ' << r.verdict.test_id << '\n';
      return verdict_exit(r.verdict);
    };
  });

  // collide
  CollisionOptions collision;
  auto* collide = app.add_subcommand("collide", "search for z1 != z2 with K_c[f](z1) = K_c[f](z2)");
  add_family(collide, common);
  collide->add_option("--density", collision.density, "grid points per axis")->check(CLI::Range(4, 4000));
  collide->add_option("--radius", collision.probe_radius, "probe radius")->check(CLI::Range(0.01, 0.999));
  collide->add_option("--seed", collision.seed, "grid jitter seed (0 = none)");
  collide->add_option("--tol", collision.refine_tol, "residual tolerance")->check(CLI::PositiveNumber);
  collide->callback([&] {
    action = [&] {
      const Complex c = common.param();
      const DeformationFamily f = parse_family(common.family, 256);
      const auto w = collision_search(f, c, collision);
      if (!w) {
        out << "verdict unknown collision\n";
        return kExitOk;
      }
      out << "z1 " << format_complex(w->z1) << '\n' << "z2 " << format_complex(w->z2) << '\n';
      out << "f1 " << format_complex(w->f1) << '\n' << "f2 " << format_complex(w->f2) << '\n';
      out << "residual " << format_double(w->validated_residual) << '\n';
      out << "conjugate_pair " << (w->conjugate_pair ? "true" : "false") << '\n';
      out << "verdict certified-nonunivalent collision\n";
      return kExitNonunivalent;
    };
  });

  // scan
  ScanConfig config;
  std::string window_text = "-1:2:-1.5:1.5";
  double step = 0.02;
  std::string pgm_out;
  std::string csv_out;
  std::vector<double> lambdas{0.5, 1.0};
  double annulus_m = kAnnulusMaxM;
  auto* scan_cmd = app.add_subcommand("scan", "classify a c-plane grid into in/out/unknown");
  add_family(scan_cmd, common, false);
  add_sampling(scan_cmd, common);
  scan_cmd->add_option("--window", window_text, "re_min:re_max:im_min:im_max")->capture_default_str();
  scan_cmd->add_option("--step", step, "grid step")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--out", pgm_out, "PGM output path");
  scan_cmd->add_option("--csv", csv_out, "CSV output path");
  scan_cmd->add_option("--grunsky-n", config.grunsky_n, "Grunsky size")->check(CLI::Range(1, 400));
  scan_cmd->add_option("--prawitz", lambdas, "Prawitz lambda list")->delimiter(',')->check(CLI::PositiveNumber);
  scan_cmd->add_option("--prawitz-n", config.prawitz_n, "Prawitz truncation")->check(CLI::Range(2, 100000));
  scan_cmd->add_flag("--collide", config.collide, "run the collision search on undecided cells");
  scan_cmd->add_flag("--becker", config.becker, "run the Becker criterion");
  scan_cmd->add_option("--annulus-m", annulus_m, "annulus criterion m (0 disables, max pi/12)")
      ->check(CLI::Range(0.0, kAnnulusMaxM * (1.0 + 1e-12)));
  scan_cmd->add_flag("--cross-check", config.cross_check, "run necessary tests on IN cells too");
  scan_cmd->add_option("--threads", config.threads, "worker threads")->check(CLI::Range(1, 1024));
  scan_cmd->add_option("--seed", config.collision.seed, "collision grid jitter seed (0 = none)");
  scan_cmd->callback([&] {
    action = [&] {
      const Window window = parse_window(window_text);
      config.scheme = common.scheme();
      config.prawitz_lambdas = lambdas;
      config.annulus_m = annulus_m > 0.0 ? std::optional<double>(annulus_m) : std::nullopt;
      const DeformationFamily f = parse_family(common.family, required_order(config));
      const RegionGrid grid = scan(f, window, step, config);
      if (!pgm_out.empty()) export_pgm(grid, std::filesystem::path(pgm_out));
      if (!csv_out.empty()) export_csv(grid, std::filesystem::path(csv_out));
      int counts[3] = {0, 0, 0};
      for (int j = 0; j < grid.height(); ++j) {
        for (int i = 0; i < grid.width(); ++i) ++counts[static_cast<int>(grid.cls(i, j))];
      }
      out << "grid " << grid.width() << 'x' << grid.height() << '\n';
      out << "in " << counts[2] << "\nout " << counts[0] << "\nunknown " << counts[1] << '\n';
      if (pgm_out.empty() && csv_out.empty()) export_csv(grid, out);
      return kExitOk;
    };
  });

  // components
  std::string csv_in;
  std::string class_text = "in";
  auto* comps = app.add_subcommand("components", "count connected components of one class");
  comps->add_option("--csv", csv_in, "grid CSV")->required();
  comps->add_option("--class", class_text, "in | out | unknown")->capture_default_str();
  comps->callback([&] {
    action = [&] {
      const CellClass which = parse_cell_class(class_text);
      const Labeling lab = components(import_csv(std::filesystem::path(csv_in)), which);
      out << "components " << lab.count << '\n';
      return kExitOk;
    };
  });

  // convexity
  auto* convex = app.add_subcommand("convexity", "grid-level complement connectivity of the IN set");
  convex->add_option("--csv", csv_in, "grid CSV")->required();
  convex->callback([&] {
    action = [&] {
      out << "complement_connected "
          << (complement_connected(import_csv(std::filesystem::path(csv_in))) ? "true" : "false") << '\n';
      return kExitOk;
    };
  });

  // repro
  std::string scenario;
  int repro_threads = 1;
  std::string names = "all";
  for (const std::string& n : scenario_names()) names += " | " + n;
  auto* repro = app.add_subcommand("repro", "run a reproduction scenario");
  repro->add_option("scenario", scenario, names)->required();
  repro->add_option("--threads", repro_threads, "worker threads for scans")->check(CLI::Range(1, 1024));
  repro->callback([&] {
    action = [&] {
      std::vector<std::string> run;
      if (scenario == "all") {
        run = scenario_names();
      } else {
        scenario_title(scenario);
        run.push_back(scenario);
      }
      ReproOptions options;
      options.threads = repro_threads;
      options.log = &err;
      bool ok = true;
      for (const std::string& name : run) {
        const ScenarioResult r = run_scenario(name, options);
        print_result(r, out);
        ok = ok && r.passed();
      }
      return ok ? kExitOk : kExitReproFailure;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }
  try {
    return action ? action() : kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace powerdeform::tools
