#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "bingham/common.hpp"
#include "bingham/experiment.hpp"

using namespace bingham;

namespace {

constexpr int kInvalidConfig = 2;
constexpr int kNonConvergence = 3;

struct RunOptions {
  std::string config;
  std::vector<std::pair<std::string, std::string>> given;
};

// Physics defaults that depend on the domain when not set explicitly.
void apply_geometry_defaults(ExperimentConfig& cfg, const std::set<std::string>& explicit_keys) {
  const bool circle = cfg.geometry == Geometry::Circle;
  if (!explicit_keys.count("f")) cfg.f = circle ? 0.5 : 3.6;
  if (!explicit_keys.count("g")) cfg.g = circle ? 0.1 : 1.25;
  if (!explicit_keys.count("rho")) cfg.rho = circle ? 10.0 : 1.5;
}

std::set<std::string> config_keys(const std::string& text) {
  std::set<std::string> keys;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string k = line.substr(0, eq);
    k.erase(0, k.find_first_not_of(" \t"));
    k.erase(k.find_last_not_of(" \t") + 1);
    keys.insert(k);
  }
  return keys;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed finite element solver for Bingham flow in a pipe cross-section"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a refinement study and write CSV/SVG output");
  std::string config_file;
  run->add_option("--config", config_file, "File of key=value lines; command-line flags take precedence");
  const std::vector<std::string> value_keys{"geometry", "method", "mode",         "steps",       "mu",
                                            "g",        "f",      "rho",          "tol",         "theta",
                                            "out",      "seed",   "circle-levels", "square-cells", "smoothing",
                                            "max-uzawa-iter", "sample-grid", "inner-solver"};
  std::map<std::string, std::string> values;
  for (const auto& k : value_keys) run->add_option("--" + k, values[k]);
  run->get_option("--geometry")->check(CLI::IsMember({"circle", "square"}, CLI::ignore_case))
      ->description("circle | square");
  run->get_option("--method")->check(CLI::IsMember({"p2p0", "p3p1", "mini"}, CLI::ignore_case))
      ->description("p2p0 | p3p1 | mini");
  run->get_option("--mode")->check(CLI::IsMember({"uniform", "adaptive"}, CLI::ignore_case))
      ->description("uniform | adaptive");
  run->get_option("--inner-solver")->check(CLI::IsMember({"cholesky", "cg"}, CLI::ignore_case))
      ->description("cholesky | cg");
  run->get_option("--steps")->description("number of refinement steps");
  run->get_option("--out")->description("output directory");
  bool robust = false, no_warm = false, no_snapshots = false;
  auto* robust_flag = run->add_flag("--robust-estimator", robust, "use the projected multiplier in eta_con");
  auto* warm_flag = run->add_flag("--no-warm-start", no_warm, "start every step from zero");
  run->add_flag("--no-snapshots", no_snapshots, "skip mesh and solution snapshots");
  bool polygonal = false;
  run->add_flag("--polygonal", polygonal, "circle: straight-sided boundary elements");

  auto* rates = app.add_subcommand("rates", "Fit a convergence rate from a results CSV");
  std::string csv_path, x_axis = "h", y_col;
  rates->add_option("--csv", csv_path, "results.csv")->required();
  rates->add_option("--x", x_axis, "h | sqrtN")->check(CLI::IsMember({"h", "sqrtN"}));
  rates->add_option("--y", y_col, "column name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidConfig;
  }

  if (*rates) {
    try {
      std::ifstream is(csv_path);
      if (!is) throw InvalidArgument("cannot open '" + csv_path + "'");
      const auto cols = read_csv_columns(is);
      const auto yi = cols.find(y_col);
      if (yi == cols.end()) throw InvalidArgument("no column '" + y_col + "'");
      std::vector<double> x;
      if (x_axis == "h") {
        x = cols.at("h_max");
      } else {
        for (double n : cols.at("N_total")) x.push_back(std::sqrt(n));
      }
      const double r = fit_rate(x, yi->second, x_axis == "h" ? RateAxis::H : RateAxis::SqrtN);
      std::cout << y_col << " rate vs " << x_axis << ": " << r << "\n";
      return 0;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kInvalidConfig;
    }
  }

  ExperimentConfig cfg;
  try {
    std::set<std::string> explicit_keys;
    if (!config_file.empty()) {
      std::ifstream is(config_file);
      if (!is) throw InvalidArgument("cannot open config '" + config_file + "'");
      std::stringstream ss;
      ss << is.rdbuf();
      apply_config_text(cfg, ss.str());
      explicit_keys = config_keys(ss.str());
    }
    for (const auto& k : value_keys) {
      if (run->get_option("--" + k)->count() == 0) continue;
      apply_setting(cfg, k, values[k]);
      explicit_keys.insert(k);
    }
    if (robust_flag->count()) cfg.robust_estimator = true;
    if (warm_flag->count()) cfg.warm_start = false;
    if (no_snapshots) cfg.write_snapshots = false;
    if (polygonal) cfg.curved_boundary = false;
    apply_geometry_defaults(cfg, explicit_keys);
    if (cfg.output_dir.empty()) throw InvalidArgument("--out is required");
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kInvalidConfig;
  }

  try {
    const ExperimentResult res = run_experiment(cfg, &std::cout);
    if (!res.converged) {
      std::cerr << "solver did not converge: " << res.message << "\n";
      return kNonConvergence;
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
