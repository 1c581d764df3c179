#pragma once

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bingham/space.hpp"
#include "bingham/uzawa.hpp"

namespace bingham {

enum class Geometry { Circle, Square };
enum class RefineMode { Uniform, Adaptive };

struct ExperimentConfig {
  Geometry geometry = Geometry::Circle;
  FamilyTag method = FamilyTag::P2P0;
  RefineMode mode = RefineMode::Uniform;
  int steps = 4;
  double mu = 1.0;
  double g = 0.1;
  double f = 0.5;
  double rho = 10.0;
  double tol = 1e-7;
  double theta = 0.5;
  bool robust_estimator = false;
  bool warm_start = true;
  std::string output_dir;  // empty: no files
  unsigned seed = 1;

  double radius = 1.0;
  /// Uniform refinements of the coarse disk before step 0.
  int circle_levels = 0;
  /// Cells per side of the initial square mesh.
  int square_cells = 4;
  int smoothing_passes = 1;
  int max_uzawa_iter = 100000;
  /// Side of the sampling grid for solution snapshots; 0 disables them.
  int sample_grid = 256;
  bool write_snapshots = true;
  /// Isoparametric boundary elements on the circle, or the inscribed polygon.
  bool curved_boundary = true;
  InnerSolver inner_solver = InnerSolver::Cholesky;

  void validate() const;
};

/// Applies key=value pairs (CLI spellings, e.g. "geometry", "no-warm-start").
/// Unknown keys or malformed values throw InvalidArgument.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);
void apply_config_text(ExperimentConfig& cfg, const std::string& text);

struct StepRecord {
  int step = 0;
  double h_max = 0;
  int ndof_velocity = 0;
  int ndof_multiplier = 0;
  int n_total = 0;
  int uzawa_iters = 0;
  std::optional<double> h1_semi_err, h1_full_err, mult_err;
  double eta_T_total = 0, eta_E_total = 0, eta_con_total = 0, eta_global = 0, osc_total = 0;
  std::optional<double> effectivity;
  int triangles = 0;
  double grad_norm = 0;  // ||grad u_h||_0
  int marked = 0;
  /// Marked elements whose centroid multiplier satisfies 0.9 <= |Lambda_h| <= 1 + 1e-6.
  int marked_near_interface = 0;
};

const std::vector<std::string>& csv_columns();
void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const StepRecord& r);

struct ExperimentResult {
  std::vector<StepRecord> rows;
  bool converged = true;
  std::string message;
};

/// Runs the refinement study; writes results.csv, mesh snapshots, sampled
/// solutions and convergence.svg into output_dir when it is set. Solver
/// non-convergence ends the run early with converged = false.
ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream* log = nullptr);

enum class RateAxis { H, SqrtN };

/// Least-squares slope of log(y) against log(x), skipping the first sample.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);
/// Convergence rate: the slope against h, or minus the slope against sqrt(N).
double fit_rate(const std::vector<double>& x, const std::vector<double>& y, RateAxis axis);

/// Column-wise numeric table read from a results CSV (empty cells become NaN).
std::map<std::string, std::vector<double>> read_csv_columns(std::istream& is);

}  // namespace bingham
