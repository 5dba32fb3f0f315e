#include "powerdeform/scanner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace powerdeform {

std::string_view to_string(CellClass cls) {
  switch (cls) {
    case CellClass::in:
      return "in";
    case CellClass::out:
      return "out";
    case CellClass::unknown:
    default:
      return "unknown";
  }
}

CellClass parse_cell_class(std::string_view text) {
  if (text == "in") return CellClass::in;
  if (text == "out") return CellClass::out;
  if (text == "unknown") return CellClass::unknown;
  throw Error("unknown cell class '" + std::string(text) + "' (expected in, out or unknown)");
}

CellClass classify(const Verdict& verdict) {
  if (verdict.is_univalent()) return CellClass::in;
  if (verdict.is_nonunivalent()) return CellClass::out;
  return CellClass::unknown;
}

namespace {

int axis_cells(double lo, double hi, double step, const char* axis) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
    throw Error(std::string("window ") + axis + " range is invalid");
  }
  const double n = std::round((hi - lo) / step) + 1.0;
  if (n > 1e6) {
    throw Error(std::string("window ") + axis + " range has too many cells for the step");
  }
  return static_cast<int>(n);
}

}  // namespace

RegionGrid::RegionGrid(Window window, double step) : window_(window), step_(step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw Error("grid step must be positive");
  }
  nx_ = axis_cells(window.re_min, window.re_max, step, "real");
  ny_ = axis_cells(window.im_min, window.im_max, step, "imaginary");
  if (static_cast<double>(nx_) * ny_ > 5e7) {
    throw Error("grid has too many cells");
  }
  cells_.resize(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_));
  for (Cell& cell : cells_) cell.verdict = Verdict::unknown("none");
}

Complex RegionGrid::center(int i, int j) const {
  return {window_.re_min + i * step_, window_.im_min + j * step_};
}

std::optional<std::pair<int, int>> RegionGrid::locate(Complex c) const {
  const double fi = std::round((c.real() - window_.re_min) / step_);
  const double fj = std::round((c.imag() - window_.im_min) / step_);
  if (!(fi >= 0.0 && fi < nx_ && fj >= 0.0 && fj < ny_)) return std::nullopt;
  return std::pair{static_cast<int>(fi), static_cast<int>(fj)};
}

int required_order(const ScanConfig& config) {
  int order = kDefaultOrder;
  order = std::max(order, 2 * config.grunsky_n + 1);
  order = std::max(order, config.prawitz_n);
  return order;
}

CellClassifier::CellClassifier(const DeformationFamily& family, const ScanConfig& config)
    : family_(family),
      config_(config),
      samples_(sample_boundary(family_, config_.scheme)),
      p_values_(samples_.values()),
      contours_(family_, config_.lu) {
  if (config_.grunsky_n < 1) {
    throw Error("Grunsky size must be >= 1");
  }
  if (family_.order() < required_order(config_)) {
    throw Error("family order " + std::to_string(family_.order()) + " below the " +
                std::to_string(required_order(config_)) + " this configuration needs");
  }
  double dist = 0.0;
  for (Complex p : p_values_) dist = std::max(dist, std::abs(p - 1.0));
  if (dist < 1e-13) {
    throw Error("U_f is the whole plane");
  }
}

Verdict CellClassifier::sufficient(Complex c) const {
  const double margin = config_.scheme.margin;
  if (Verdict v = starlike_test(p_values_, c, margin); v.is_univalent()) return v;
  if (Verdict v = spirallike_test(p_values_, c, margin); v.is_univalent()) return v;
  if (config_.annulus_m) {
    if (Verdict v = annulus_test(p_values_, c, margin, *config_.annulus_m); v.is_univalent()) {
      return v;
    }
  }
  if (config_.becker) {
    if (Verdict v = becker_test(samples_, c, margin); v.is_univalent()) return v;
  }
  return Verdict::unknown("none");
}

Verdict CellClassifier::necessary(Complex c) const {
  if (Verdict v = grunsky_test(family_, c, config_.grunsky_n, config_.grunsky_tol);
      v.is_nonunivalent()) {
    return v;
  }
  for (double lambda : config_.prawitz_lambdas) {
    if (Verdict v = prawitz_test(family_, c, lambda, config_.prawitz_n, config_.prawitz_tol);
        v.is_nonunivalent()) {
      return v;
    }
  }
  if (config_.collide) {
    if (Verdict v = collision_test(family_, c, config_.collision); v.is_nonunivalent()) return v;
  }
  return Verdict::unknown("none");
}

Verdict CellClassifier::classify(Complex c) const {
  require_finite(c, "deformation parameter");
  if (c == 0.0) {
    Witness w;
    w.note = "K_0[f] is the identity";
    return Verdict::univalent("origin", std::move(w));
  }
  LuResult lu = in_lu(contours_, c);
  if (!lu.locally_univalent) return std::move(lu.verdict);
  Verdict v = sufficient(c);
  if (v.is_univalent()) {
    if (config_.cross_check) return merge(v, necessary(c));
    return v;
  }
  return necessary(c);
}

RegionGrid scan(const DeformationFamily& family, const Window& window, double step,
                const ScanConfig& config) {
  if (!(window.re_max > window.re_min) || !(window.im_max > window.im_min)) {
    throw Error("scan window is degenerate");
  }
  if (config.threads < 1) {
    throw Error("thread count must be >= 1");
  }
  RegionGrid grid(window, step);
  const CellClassifier classifier(family, config);
  const int total = grid.width() * grid.height();
  const int workers = std::min(config.threads, std::max(total, 1));

  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(workers));
  auto work = [&](int worker) {
    try {
      for (int k = worker; k < total; k += workers) {
        const int i = k % grid.width();
        const int j = k / grid.width();
        Cell& cell = grid.cell(i, j);
        try {
          cell.verdict = classifier.classify(grid.center(i, j));
        } catch (const ConflictError&) {
          throw;
        } catch (const Error& e) {
          cell.verdict = Verdict::unknown("error");
          cell.note = e.what();
        }
      }
    } catch (...) {
      failures[static_cast<std::size_t>(worker)] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(work, t);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : failures) {
    if (e) std::rethrow_exception(e);
  }
  return grid;
}

namespace {

Labeling label(const RegionGrid& grid, const std::vector<char>& member, bool eight) {
  Labeling out;
  out.width = grid.width();
  out.height = grid.height();
  out.labels.assign(member.size(), -1);
  std::vector<std::pair<int, int>> stack;
  for (int j = 0; j < out.height; ++j) {
    for (int i = 0; i < out.width; ++i) {
      const std::size_t start = static_cast<std::size_t>(j) * out.width + i;
      if (!member[start] || out.labels[start] >= 0) continue;
      const int id = out.count++;
      out.labels[start] = id;
      stack.emplace_back(i, j);
      while (!stack.empty()) {
        const auto [x, y] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if ((dx == 0 && dy == 0) || (!eight && dx != 0 && dy != 0)) continue;
            const int nx = x + dx;
            const int ny = y + dy;
            if (nx < 0 || ny < 0 || nx >= out.width || ny >= out.height) continue;
            const std::size_t n = static_cast<std::size_t>(ny) * out.width + nx;
            if (!member[n] || out.labels[n] >= 0) continue;
            out.labels[n] = id;
            stack.emplace_back(nx, ny);
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

Labeling components(const RegionGrid& grid, CellClass which) {
  std::vector<char> member(static_cast<std::size_t>(grid.width()) * grid.height());
  for (int j = 0; j < grid.height(); ++j) {
    for (int i = 0; i < grid.width(); ++i) {
      member[static_cast<std::size_t>(j) * grid.width() + i] = grid.cls(i, j) == which;
    }
  }
  return label(grid, member, which != CellClass::in);
}

bool complement_connected(const RegionGrid& grid) {
  std::vector<char> member(static_cast<std::size_t>(grid.width()) * grid.height());
  for (int j = 0; j < grid.height(); ++j) {
    for (int i = 0; i < grid.width(); ++i) {
      member[static_cast<std::size_t>(j) * grid.width() + i] = grid.cls(i, j) != CellClass::in;
    }
  }
  const Labeling lab = label(grid, member, true);
  std::vector<char> touches(static_cast<std::size_t>(lab.count), 0);
  for (int j = 0; j < lab.height; ++j) {
    for (int i = 0; i < lab.width; ++i) {
      const bool border = i == 0 || j == 0 || i == lab.width - 1 || j == lab.height - 1;
      if (border && lab.at(i, j) >= 0) touches[static_cast<std::size_t>(lab.at(i, j))] = 1;
    }
  }
  return std::all_of(touches.begin(), touches.end(), [](char t) { return t != 0; });
}

BandCheck lu_band_interval(double m) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw Error("band check needs m > 0");
  }
  BandCheck out;
  out.lo = 1.0 / (1.0 + std::exp(m / 2.0));
  out.hi = 1.0 / (1.0 + std::exp(-m / 2.0));
  return out;
}

BandCheck lu_band_check(double m, const LuOptions& options, int samples, double clearance) {
  BandCheck out = lu_band_interval(m);
  if (samples < 2) {
    throw Error("band check needs at least 2 samples");
  }
  const LuContours contours(powerlog_family(m), options);
  auto check = [&](double a, double b, bool expect_lu, int& counter) {
    if (!(b >= a)) return;
    for (int k = 0; k < samples; ++k) {
      const double c = a + (b - a) * k / (samples - 1);
      ++counter;
      if (in_lu(contours, c).locally_univalent != expect_lu) ++out.mismatches;
    }
  };
  check(out.lo + clearance, out.hi - clearance, false, out.inside_checked);
  check(clearance, out.lo - clearance, true, out.outside_checked);
  check(out.hi + clearance, 1.0 - clearance, true, out.outside_checked);
  return out;
}

void export_pgm(const RegionGrid& grid, std::ostream& out) {
  out << "P2\n" << grid.width() << ' ' << grid.height() << "\n2\n";
  for (int j = grid.height() - 1; j >= 0; --j) {
    for (int i = 0; i < grid.width(); ++i) {
      if (i > 0) out << ' ';
      out << static_cast<int>(grid.cls(i, j));
    }
    out << '\n';
  }
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open '" + path.string() + "' for writing");
  }
  return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) {
    throw Error("write to '" + path.string() + "' failed");
  }
}

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void export_pgm(const RegionGrid& grid, const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  export_pgm(grid, out);
  finish_output(out, path);
}

void export_csv(const RegionGrid& grid, std::ostream& out) {
  out << "re,im,class,test_id\n";
  for (int j = 0; j < grid.height(); ++j) {
    for (int i = 0; i < grid.width(); ++i) {
      const Complex c = grid.center(i, j);
      const Cell& cell = grid.cell(i, j);
      out << g17(c.real()) << ',' << g17(c.imag()) << ',' << to_string(cell.cls()) << ','
          << cell.verdict.test_id << '\n';
    }
  }
}

void export_csv(const RegionGrid& grid, const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  export_csv(grid, out);
  finish_output(out, path);
}

RegionGrid import_csv(std::istream& in) {
  struct Row {
    double re;
    double im;
    CellClass cls;
    std::string test_id;
  };
  std::string line;
  if (!std::getline(in, line) || line != "re,im,class,test_id") {
    throw Error("grid CSV must start with the header 're,im,class,test_id'");
  }
  std::vector<Row> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 4) {
      throw Error("grid CSV line " + std::to_string(line_no) + ": expected 4 fields");
    }
    try {
      rows.push_back({parse_double(fields[0]), parse_double(fields[1]),
                      parse_cell_class(fields[2]), fields[3]});
    } catch (const Error& e) {
      throw Error("grid CSV line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (rows.empty()) {
    throw Error("grid CSV has no cells");
  }
  std::vector<double> re;
  std::vector<double> im;
  for (const Row& r : rows) {
    re.push_back(r.re);
    im.push_back(r.im);
  }
  auto distinct = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  re = distinct(std::move(re));
  im = distinct(std::move(im));
  double step = 1.0;
  if (re.size() > 1) {
    step = (re.back() - re.front()) / static_cast<double>(re.size() - 1);
  } else if (im.size() > 1) {
    step = (im.back() - im.front()) / static_cast<double>(im.size() - 1);
  }
  RegionGrid grid({re.front(), re.back(), im.front(), im.back()}, step);
  if (static_cast<std::size_t>(grid.width()) * grid.height() != rows.size()) {
    throw Error("grid CSV rows do not form a complete lattice");
  }
  for (const Row& r : rows) {
    const auto at = grid.locate({r.re, r.im});
    if (!at) {
      throw Error("grid CSV cell (" + g17(r.re) + ", " + g17(r.im) + ") is off the lattice");
    }
    Verdict& v = grid.cell(at->first, at->second).verdict;
    switch (r.cls) {
      case CellClass::in:
        v = Verdict::univalent(r.test_id, Witness{});
        break;
      case CellClass::out:
        v = Verdict::nonunivalent(r.test_id, Witness{});
        break;
      case CellClass::unknown:
        v = Verdict::unknown(r.test_id);
        break;
    }
  }
  return grid;
}

RegionGrid import_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open '" + path.string() + "' for reading");
  }
  try {
    return import_csv(in);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

}  // namespace powerdeform
