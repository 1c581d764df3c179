#include "bingham/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "bingham/error_norms.hpp"
#include "bingham/estimator.hpp"
#include "bingham/exact.hpp"
#include "bingham/svg_plot.hpp"
#include "bingham/transfer.hpp"
#include "bingham/uzawa.hpp"

namespace bingham {

namespace fs = std::filesystem;

void ExperimentConfig::validate() const {
  if (steps < 0) throw InvalidArgument("steps must be non-negative");
  if (!(mu > 0.0)) throw InvalidArgument("mu must be positive");
  if (!(g >= 0.0)) throw InvalidArgument("g must be non-negative");
  if (!std::isfinite(f)) throw InvalidArgument("f must be finite");
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  if (!(theta > 0.0 && theta <= 1.0)) throw InvalidArgument("theta must lie in (0, 1]");
  if (!(radius > 0.0)) throw InvalidArgument("radius must be positive");
  if (circle_levels < 0) throw InvalidArgument("circle-levels must be non-negative");
  if (square_cells < 1) throw InvalidArgument("square-cells must be at least 1");
  if (smoothing_passes < 0) throw InvalidArgument("smoothing must be non-negative");
  if (max_uzawa_iter < 1) throw InvalidArgument("max-uzawa-iter must be at least 1");
  if (sample_grid < 0 || sample_grid == 1) throw InvalidArgument("sample-grid must be 0 or at least 2");
}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw InvalidArgument("invalid number for " + key + ": '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long d = std::stol(v, &pos);
    if (pos != v.size() || d < std::numeric_limits<int>::min() || d > std::numeric_limits<int>::max())
      throw std::invalid_argument("range");
    return static_cast<int>(d);
  } catch (const std::exception&) {
    throw InvalidArgument("invalid integer for " + key + ": '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  const std::string s = lower(v);
  if (s == "1" || s == "true" || s == "yes" || s == "on" || s.empty()) return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw InvalidArgument("invalid boolean for " + key + ": '" + v + "'");
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

void apply_setting(ExperimentConfig& cfg, const std::string& key_in, const std::string& value_in) {
  const std::string key = lower(trim(key_in));
  const std::string v = trim(value_in);
  if (key == "geometry") {
    const std::string s = lower(v);
    if (s == "circle") cfg.geometry = Geometry::Circle;
    else if (s == "square") cfg.geometry = Geometry::Square;
    else throw InvalidArgument("unknown geometry '" + v + "'");
  } else if (key == "method") {
    cfg.method = ElementFamily::parse(v).tag;
  } else if (key == "mode") {
    const std::string s = lower(v);
    if (s == "uniform") cfg.mode = RefineMode::Uniform;
    else if (s == "adaptive") cfg.mode = RefineMode::Adaptive;
    else throw InvalidArgument("unknown mode '" + v + "'");
  } else if (key == "steps") {
    cfg.steps = parse_int(key, v);
  } else if (key == "mu") {
    cfg.mu = parse_double(key, v);
  } else if (key == "g") {
    cfg.g = parse_double(key, v);
  } else if (key == "f") {
    cfg.f = parse_double(key, v);
  } else if (key == "rho") {
    cfg.rho = parse_double(key, v);
  } else if (key == "tol") {
    cfg.tol = parse_double(key, v);
  } else if (key == "theta") {
    cfg.theta = parse_double(key, v);
  } else if (key == "robust-estimator") {
    cfg.robust_estimator = parse_bool(key, v);
  } else if (key == "no-warm-start") {
    cfg.warm_start = !parse_bool(key, v);
  } else if (key == "warm-start") {
    cfg.warm_start = parse_bool(key, v);
  } else if (key == "out") {
    cfg.output_dir = v;
  } else if (key == "seed") {
    cfg.seed = static_cast<unsigned>(parse_int(key, v));
  } else if (key == "radius") {
    cfg.radius = parse_double(key, v);
  } else if (key == "circle-levels") {
    cfg.circle_levels = parse_int(key, v);
  } else if (key == "square-cells") {
    cfg.square_cells = parse_int(key, v);
  } else if (key == "smoothing") {
    cfg.smoothing_passes = parse_int(key, v);
  } else if (key == "max-uzawa-iter") {
    cfg.max_uzawa_iter = parse_int(key, v);
  } else if (key == "sample-grid") {
    cfg.sample_grid = parse_int(key, v);
  } else if (key == "snapshots") {
    cfg.write_snapshots = parse_bool(key, v);
  } else if (key == "polygonal") {
    cfg.curved_boundary = !parse_bool(key, v);
  } else if (key == "inner-solver") {
    const std::string s = lower(v);
    if (s == "cholesky") cfg.inner_solver = InnerSolver::Cholesky;
    else if (s == "cg") cfg.inner_solver = InnerSolver::Cg;
    else throw InvalidArgument("unknown inner solver '" + v + "'");
  } else {
    throw InvalidArgument("unknown setting '" + key_in + "'");
  }
}

void apply_config_text(ExperimentConfig& cfg, const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key=value");
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "step",        "h_max",       "ndof_velocity", "ndof_multiplier", "N_total",
      "uzawa_iters", "h1_semi_err", "h1_full_err",   "mult_err",        "eta_T_total",
      "eta_E_total", "eta_con_total", "eta_global",  "effectivity",     "osc_total"};
  return cols;
}

void write_csv_header(std::ostream& os) {
  const auto& c = csv_columns();
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << "\n";
}

void write_csv_row(std::ostream& os, const StepRecord& r) {
  auto opt = [&os](const std::optional<double>& v) {
    if (v) os << *v;
  };
  os << std::setprecision(12);
  os << r.step << "," << r.h_max << "," << r.ndof_velocity << "," << r.ndof_multiplier << "," << r.n_total << ","
     << r.uzawa_iters << ",";
  opt(r.h1_semi_err);
  os << ",";
  opt(r.h1_full_err);
  os << ",";
  opt(r.mult_err);
  os << "," << r.eta_T_total << "," << r.eta_E_total << "," << r.eta_con_total << "," << r.eta_global << ",";
  opt(r.effectivity);
  os << "," << r.osc_total << "\n";
}

namespace {

Mesh initial_mesh(const ExperimentConfig& cfg) {
  if (cfg.geometry == Geometry::Circle) return generate_circle(cfg.circle_levels, cfg.radius, cfg.curved_boundary);
  return generate_square(cfg.square_cells);
}

void write_samples(const fs::path& path, const ExperimentConfig& cfg, const ScalarField& u, const VectorField& lam) {
  const Mesh& mesh = u.space->mesh();
  const PointLocator loc(mesh);
  const int n = cfg.sample_grid;
  const bool circle = cfg.geometry == Geometry::Circle;
  const double lo = circle ? -cfg.radius : 0.0, hi = circle ? cfg.radius : 1.0;
  std::ofstream os(path);
  os << "x,y,u,lambda_norm\n" << std::setprecision(10);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Point x{lo + (hi - lo) * i / (n - 1), lo + (hi - lo) * j / (n - 1)};
      if (circle && norm(x) > cfg.radius) continue;
      const Location l = loc.locate(x);
      const double uv = eval_field(u, l.tri, l.ref).value;
      double ln = norm(eval_multiplier(lam, l.tri, l.ref));
      if (ln > 1.0 - 1e-6) ln = 1.0;
      os << x.x << "," << x.y << "," << uv << "," << ln << "\n";
    }
  }
}

void write_plot(const fs::path& path, const ExperimentConfig& cfg, const std::vector<StepRecord>& rows) {
  const bool adaptive = cfg.mode == RefineMode::Adaptive;
  std::vector<double> x;
  for (const auto& r : rows) x.push_back(adaptive ? std::sqrt(static_cast<double>(r.n_total)) : r.h_max);
  auto column = [&](auto get) {
    std::vector<double> y;
    for (const auto& r : rows) y.push_back(get(r));
    return y;
  };
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<PlotSeries> series;
  if (cfg.geometry == Geometry::Circle) {
    series.push_back({"H1 semi error", x, column([&](const StepRecord& r) { return r.h1_semi_err.value_or(nan); })});
    series.push_back({"multiplier error", x, column([&](const StepRecord& r) { return r.mult_err.value_or(nan); })});
  }
  series.push_back({"eta", x, column([](const StepRecord& r) { return r.eta_global; })});
  series.push_back({"eta_T", x, column([](const StepRecord& r) { return r.eta_T_total; })});
  series.push_back({"eta_E", x, column([](const StepRecord& r) { return r.eta_E_total; })});
  series.push_back({"eta_con", x, column([](const StepRecord& r) { return r.eta_con_total; })});
  const ElementFamily fam = ElementFamily::from_tag(cfg.method);
  const std::string title = std::string(cfg.geometry == Geometry::Circle ? "circle" : "square") + ", " + fam.name() +
                            ", " + (adaptive ? "adaptive" : "uniform");
  std::ofstream os(path);
  write_loglog_svg(os, title, adaptive ? "sqrt(N)" : "h", series, adaptive ? -2.0 : 1.0);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream* log) {
  cfg.validate();
  const ElementFamily family = ElementFamily::from_tag(cfg.method);
  BinghamParams p;
  p.mu = cfg.mu;
  p.g = cfg.g;
  const double fval = cfg.f;
  p.f = [fval](Point) { return fval; };
  p.rho = cfg.rho;
  p.tol = cfg.tol;
  p.inner_solver = cfg.inner_solver;
  p.max_uzawa_iter = cfg.max_uzawa_iter;
  p.validate();

  std::optional<CircleExact> exact;
  if (cfg.geometry == Geometry::Circle) {
    exact = CircleExact{cfg.radius, cfg.f, cfg.g, cfg.mu};
    exact->validate();
  }

  const bool files = !cfg.output_dir.empty();
  std::ofstream csv;
  if (files) {
    fs::create_directories(cfg.output_dir);
    csv.open(fs::path(cfg.output_dir) / "results.csv");
    if (!csv) throw InvalidArgument("cannot write into output directory '" + cfg.output_dir + "'");
    write_csv_header(csv);
    csv.flush();
  }

  ExperimentResult out;
  auto mesh = std::make_shared<const Mesh>(initial_mesh(cfg));
  std::optional<UzawaResult> prev;
  for (int step = 0; step <= cfg.steps; ++step) {
    std::optional<UzawaInit> init;
    if (cfg.warm_start && prev) {
      const auto vs = build_space(mesh, family, Role::Velocity);
      const auto qs = build_space(mesh, family, Role::Multiplier);
      init = UzawaInit{transfer_velocity(prev->u, *vs), transfer_multiplier(prev->lambda, *qs)};
    }
    UzawaResult sol;
    try {
      sol = uzawa_solve(mesh, family, p, init);
    } catch (const NonConvergenceError& e) {
      out.converged = false;
      out.message = "step " + std::to_string(step) + ": " + e.what();
      break;
    }

    StepRecord r;
    r.step = step;
    r.h_max = mesh->h_max();
    r.ndof_velocity = sol.u.space->ndof();
    r.ndof_multiplier = sol.lambda.space->ndof();
    r.n_total = r.ndof_velocity + r.ndof_multiplier;
    r.uzawa_iters = sol.iterations;
    r.triangles = mesh->num_triangles();
    r.grad_norm = h1_error(sol.u, [](Point) { return 0.0; }, [](Point) { return Point{}; }).semi;

    const EstimatorReport rep = estimate(sol.u, sol.lambda, p, cfg.robust_estimator);
    r.eta_T_total = rep.eta_T_total();
    r.eta_E_total = rep.eta_E_total();
    r.eta_con_total = rep.eta_con_total();
    r.eta_global = rep.eta_global();
    r.osc_total = rep.osc_total();
    if (exact) {
      const H1Error e = h1_error(sol.u, *exact);
      const double m = multiplier_error(sol.lambda, *exact).value();
      r.h1_semi_err = e.semi;
      r.h1_full_err = e.full;
      r.mult_err = m;
      if (e.full + m > 0.0) r.effectivity = r.eta_global / (e.full + m);
    }

    std::set<int> marked;
    if (cfg.mode == RefineMode::Adaptive) {
      marked = mark(rep, *mesh, cfg.theta);
      r.marked = static_cast<int>(marked.size());
      for (int t : marked) {
        const double ln = norm(eval_multiplier(sol.lambda, t, {1.0 / 3.0, 1.0 / 3.0}));
        if (ln >= 0.9 && ln <= 1.0 + 1e-6) ++r.marked_near_interface;
      }
    }

    out.rows.push_back(r);
    if (files) {
      write_csv_row(csv, r);
      csv.flush();
      if (cfg.write_snapshots) {
        std::ofstream ms(fs::path(cfg.output_dir) / ("mesh_step_" + std::to_string(step) + ".txt"));
        write_mesh(ms, *mesh);
        if (cfg.sample_grid > 0)
          write_samples(fs::path(cfg.output_dir) / ("solution_step_" + std::to_string(step) + ".csv"), cfg, sol.u,
                        sol.lambda);
      }
    }
    if (log) {
      *log << "step " << step << ": triangles " << r.triangles << ", N " << r.n_total << ", uzawa " << r.uzawa_iters
           << ", eta " << std::setprecision(6) << r.eta_global;
      if (r.h1_semi_err) *log << ", H1 err " << *r.h1_semi_err << ", mult err " << *r.mult_err;
      *log << std::endl;
    }

    if (step == cfg.steps) break;
    prev = std::move(sol);
    if (cfg.mode == RefineMode::Uniform) {
      mesh = std::make_shared<const Mesh>(uniform_refine(*mesh));
    } else {
      mesh = std::make_shared<const Mesh>(laplacian_smooth(rgb_refine(*mesh, marked), cfg.smoothing_passes));
    }
  }
  if (files && !out.rows.empty()) write_plot(fs::path(cfg.output_dir) / "convergence.svg", cfg, out.rows);
  return out;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidArgument("fit_slope: x and y differ in length");
  if (x.size() < 3) throw InvalidArgument("fit_slope: at least 3 rows are required");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i]))
      throw InvalidArgument("fit_slope: values must be positive and finite");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  const double den = n * sxx - sx * sx;
  if (!(std::abs(den) > 1e-300)) throw InvalidArgument("fit_slope: x values are all equal");
  return (n * sxy - sx * sy) / den;
}

double fit_rate(const std::vector<double>& x, const std::vector<double>& y, RateAxis axis) {
  const double s = fit_slope(x, y);
  return axis == RateAxis::H ? s : -s;
}

std::map<std::string, std::vector<double>> read_csv_columns(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidArgument("read_csv_columns: missing header");
  std::vector<std::string> names;
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) names.push_back(trim(cell));
  }
  std::map<std::string, std::vector<double>> cols;
  for (const auto& n : names) cols[n];
  while (std::getline(is, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(trim(line.substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (cells.size() != names.size()) throw InvalidArgument("read_csv_columns: ragged row");
    for (std::size_t i = 0; i < names.size(); ++i)
      cols[names[i]].push_back(cells[i].empty() ? std::numeric_limits<double>::quiet_NaN()
                                                : parse_double(names[i], cells[i]));
  }
  return cols;
}

}  // namespace bingham
