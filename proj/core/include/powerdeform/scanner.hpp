#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "powerdeform/criteria.hpp"
#include "powerdeform/obstructions.hpp"

namespace powerdeform {

struct Window {
  double re_min = 0.0;
  double re_max = 0.0;
  double im_min = 0.0;
  double im_max = 0.0;
};

/// Pixel values of the PGM export.
enum class CellClass : int { out = 0, unknown = 1, in = 2 };

std::string_view to_string(CellClass cls);
CellClass parse_cell_class(std::string_view text);
CellClass classify(const Verdict& verdict);

struct Cell {
  Verdict verdict;
  /// Error text for cells whose tests threw; empty otherwise.
  std::string note;
  CellClass cls() const { return classify(verdict); }
};

/// Lattice of c values re_min + i*step, im_min + j*step.
class RegionGrid {
 public:
  RegionGrid(Window window, double step);

  const Window& window() const { return window_; }
  double step() const { return step_; }
  int width() const { return nx_; }
  int height() const { return ny_; }

  /// Computed by index multiplication; no accumulated drift.
  Complex center(int i, int j) const;
  Cell& cell(int i, int j) { return cells_[index(i, j)]; }
  const Cell& cell(int i, int j) const { return cells_[index(i, j)]; }
  CellClass cls(int i, int j) const { return cell(i, j).cls(); }

  /// Nearest lattice cell to c, if inside the window.
  std::optional<std::pair<int, int>> locate(Complex c) const;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(i);
  }
  Window window_;
  double step_;
  int nx_;
  int ny_;
  std::vector<Cell> cells_;
};

struct ScanConfig {
  SampleScheme scheme;
  LuOptions lu;
  /// Set to enable the annulus criterion (m <= pi/12).
  std::optional<double> annulus_m = kAnnulusMaxM;
  bool becker = false;
  int grunsky_n = 40;
  double grunsky_tol = kGrunskyTolerance;
  std::vector<double> prawitz_lambdas{0.5, 1.0};
  int prawitz_n = 64;
  double prawitz_tol = kPrawitzTolerance;
  bool collide = false;
  CollisionOptions collision;
  /// Run the necessary tests on certified-univalent cells too and raise
  /// ConflictError on disagreement.
  bool cross_check = false;
  int threads = 1;
};

/// Family-level precomputation shared by all cells of a scan.
class CellClassifier {
 public:
  CellClassifier(const DeformationFamily& family, const ScanConfig& config);

  /// Verdict for one parameter; a function of (family, c, config) only.
  Verdict classify(Complex c) const;

  const DeformationFamily& family() const { return family_; }
  const std::vector<Complex>& p_values() const { return p_values_; }
  const LuContours& contours() const { return contours_; }

 private:
  Verdict sufficient(Complex c) const;
  Verdict necessary(Complex c) const;

  DeformationFamily family_;
  ScanConfig config_;
  BoundarySamples samples_;
  std::vector<Complex> p_values_;
  LuContours contours_;
};

/// Family order needed so every configured series test has enough coefficients.
int required_order(const ScanConfig& config);

/// Classifies every lattice point; cell errors become UNKNOWN with a note,
/// while ConflictError aborts the scan.
RegionGrid scan(const DeformationFamily& family, const Window& window, double step,
                const ScanConfig& config);

struct Labeling {
  /// -1 for cells outside the selected class, else 0..count-1.
  std::vector<int> labels;
  int count = 0;
  int width = 0;
  int height = 0;
  int at(int i, int j) const { return labels[static_cast<std::size_t>(j) * width + i]; }
};

/// 4-connectivity for IN, 8-connectivity for OUT and UNKNOWN.
Labeling components(const RegionGrid& grid, CellClass which);

/// True when every 8-connected component of non-IN cells touches the border.
bool complement_connected(const RegionGrid& grid);

struct BandCheck {
  double lo = 0.0;
  double hi = 0.0;
  int inside_checked = 0;
  int outside_checked = 0;
  int mismatches = 0;
  bool verified() const { return mismatches == 0; }
};

/// Real c in (1/(1+e^{m/2}), 1/(1+e^{-m/2})) are exactly those in (0, 1)
/// with (c-1)/c in the annulus covered by powerlog(m). Checks in_lu on
/// `samples` points inside and outside, `clearance` away from the endpoints.
BandCheck lu_band_check(double m, const LuOptions& options = {}, int samples = 21,
                        double clearance = 0.005);
BandCheck lu_band_interval(double m);

void export_pgm(const RegionGrid& grid, const std::filesystem::path& path);
void export_pgm(const RegionGrid& grid, std::ostream& out);
void export_csv(const RegionGrid& grid, const std::filesystem::path& path);
void export_csv(const RegionGrid& grid, std::ostream& out);
/// Rebuilds a grid from export_csv output; verdicts carry only class and test id.
RegionGrid import_csv(const std::filesystem::path& path);
RegionGrid import_csv(std::istream& in);

}  // namespace powerdeform
