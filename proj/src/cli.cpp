#include "hullsolve/cli.hpp"

#include "hullsolve/analysis_bounds.hpp"
#include "hullsolve/hull_core.hpp"
#include "hullsolve/incremental.hpp"
#include "hullsolve/io.hpp"
#include "hullsolve/oracle.hpp"
#include "hullsolve/report.hpp"
#include "hullsolve/two_phase.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

namespace hullsolve::cli {

namespace {

using io::RunReport;
using io::TraceRow;

constexpr int kExitOk = 0;
constexpr int kExitNotConverged = 1;
constexpr int kExitInput = 2;

// Input errors that should map to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string trace_path;
  std::string report_path;
  std::uint64_t seed = 1;
  std::size_t max_iters = 0;  // 0: solver default
};

struct Run {
  RunReport report;
  bool want_trace = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--trace", c.trace_path, "write per-iteration CSV trace");
  sub->add_option("--report", c.report_path, "write JSON report");
  sub->add_option("--seed", c.seed, "seed for generated instances");
  sub->add_option("--max-iters", c.max_iters, "iteration cap (0 keeps the default)");
}

std::vector<double> to_std(const Vector<double>& v) { return {v.data(), v.data() + v.size()}; }

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + io::format_double(v[i]);
  return s;
}

PivotRule parse_pivot_rule(const std::string& s) {
  if (s == "most" || s == "most-violated") return PivotRule::MostViolated;
  if (s == "first" || s == "first-found") return PivotRule::FirstFound;
  throw UsageError("unknown pivot rule '" + s + "'");
}

InitRule<double> parse_init(const std::string& s) {
  if (s == "nearest" || s == "nearest-vertex") return InitRule<double>::nearest_vertex();
  if (s == "centroid") return InitRule<double>::centroid();
  throw UsageError("unknown init rule '" + s + "'");
}

IncrementPolicy<double> parse_increment(const std::string& s) {
  if (s == "double") return IncrementPolicy<double>::double_plus_one();
  if (s == "raw") return IncrementPolicy<double>::raw();
  if (s == "quantized") return IncrementPolicy<double>::quantized(1.0);
  const std::string prefix = "quantized:";
  if (s.rfind(prefix, 0) == 0) {
    double n0 = 0.0;
    try {
      std::size_t used = 0;
      n0 = std::stod(s.substr(prefix.size()), &used);
      if (used != s.size() - prefix.size()) n0 = 0.0;
    } catch (const std::exception&) {
    }
    if (!(n0 > 0.0)) throw UsageError("increment quantum must be a positive number: '" + s + "'");
    return IncrementPolicy<double>::quantized(n0);
  }
  throw UsageError("unknown increment '" + s + "' (quantized:N, double or raw)");
}

std::vector<TraceRow> hull_trace(const HullOutcome<double>& out) {
  std::vector<TraceRow> rows;
  rows.reserve(out.trace.size() + 1);
  for (const auto& r : out.trace) rows.push_back({r.iteration, 0.0, r.gap, std::nullopt, long(r.pivot), false});
  rows.push_back({out.iterations, 0.0, out.iterate.gap, std::nullopt, -1, out.status == HullStatus::NotInHull});
  return rows;
}

std::vector<TraceRow> solve_trace(const SolveOutcome<double>& out) {
  std::vector<TraceRow> rows;
  rows.reserve(out.trace.size());
  for (const auto& r : out.trace) rows.push_back({r.iteration, r.t, r.value, r.alpha_b, long(r.pivot), r.witness});
  return rows;
}

// ---- hull ----

struct HullArgs {
  std::string points, target;
  double epsilon = 1e-6;
  std::string pivot_rule = "most";
  std::string init = "nearest";
};

Run run_hull_cmd(const HullArgs& a, const Common& c) {
  const Matrix<double> pts = io::load_matrix(a.points);
  const Vector<double> p = io::load_vector(a.target);
  const HullInstance<double> inst(pts, p);

  HullConfig<double> cfg;
  cfg.epsilon = a.epsilon;
  cfg.pivot_rule = parse_pivot_rule(a.pivot_rule);
  cfg.init = parse_init(a.init);
  if (c.max_iters) cfg.max_iterations = c.max_iters;
  cfg.record_trace = !c.trace_path.empty();
  const HullOutcome<double> out = run_hull(inst, cfg);

  Run run;
  RunReport& r = run.report;
  r.config = {{"points", a.points}, {"target", a.target}, {"epsilon", io::format_double(a.epsilon)},
              {"pivot_rule", a.pivot_rule}, {"init", a.init}};
  r.status = to_string(out.status);
  r.x = to_std(out.iterate.coeffs);
  r.diagnostics = {{"gap", out.iterate.gap},
                   {"residual_norm", out.iterate.gap},
                   {"initial_gap", out.initial_gap},
                   {"radius", inst.radius()},
                   {"epsilon", a.epsilon},
                   {"iterations", double(out.iterations)},
                   {"iteration_cap", double(out.iteration_cap)}};
  if (out.witness) {
    r.witness_margins = to_std(out.witness->margins);
    r.diagnostics["distance_low"] = out.witness->distance_low;
    r.diagnostics["distance_high"] = out.witness->distance_high;
  }
  r.exit_code = out.status == HullStatus::InHullApprox ? kExitOk : kExitNotConverged;
  run.want_trace = cfg.record_trace;
  if (run.want_trace) r.trace = hull_trace(out);
  return run;
}

// ---- solve ----

struct SolveArgs {
  std::string matrix, rhs;
  double epsilon0 = 1e-6;
  std::string mode = "incremental";
  std::string increment = "quantized:1";
  std::string init = "nearest";
  std::string pivot_rule = "most";
  double delta0 = 0.0;
};

Run run_solve_cmd(const SolveArgs& a, const Common& c) {
  const LinearSystem<double> system(io::load_matrix(a.matrix), io::load_vector(a.rhs));

  SolveConfig<double> cfg;
  cfg.epsilon0 = a.epsilon0;
  cfg.hull.init = parse_init(a.init);
  cfg.hull.pivot_rule = parse_pivot_rule(a.pivot_rule);
  if (a.delta0 > 0.0) {
    cfg.delta0_policy = Delta0Policy::UserSupplied;
    cfg.delta0_value = a.delta0;
  }
  if (c.max_iters) cfg.max_iterations = c.max_iters;
  cfg.record_trace = !c.trace_path.empty();

  SolveOutcome<double> out;
  if (a.mode == "nonneg") {
    out = solve_nonneg(system, cfg);
  } else if (a.mode == "incremental") {
    IncrementalOptions<double> opt;
    opt.increment = parse_increment(a.increment);
    out = solve_incremental(system, cfg, opt);
  } else {
    throw UsageError("unknown mode '" + a.mode + "' (incremental or nonneg)");
  }

  Run run;
  RunReport& r = run.report;
  r.config = {{"matrix", a.matrix},           {"rhs", a.rhs},   {"epsilon0", io::format_double(a.epsilon0)},
              {"mode", a.mode},               {"init", a.init}, {"pivot_rule", a.pivot_rule},
              {"max_iters", std::to_string(c.max_iters)}};
  if (a.mode == "incremental") r.config["increment"] = a.increment;
  if (a.delta0 > 0.0) r.config["delta0"] = io::format_double(a.delta0);
  r.status = to_string(out.status);
  r.message = out.diagnostic;
  r.x = to_std(out.x);
  auto& d = r.diagnostics;
  d = {{"residual_norm", out.residual_norm},
       {"relative_residual", out.relative_residual},
       {"rho", system.rho()},
       {"b_norm", system.b_norm()},
       {"epsilon0", a.epsilon0},
       {"shift_t", out.shift_t},
       {"hull_gap", out.hull_gap},
       {"iterations", double(out.iterations)},
       {"phase1_iterations", double(out.phase1_iterations)},
       {"iteration_cap", double(out.iteration_cap)},
       {"escalations", double(out.escalations)},
       {"reseeds", double(out.reseeds)}};
  if (out.delta0_prime) d["delta0_prime"] = *out.delta0_prime;
  if (out.inner_epsilon) d["inner_epsilon"] = *out.inner_epsilon;
  if (out.epsilon_prime) d["epsilon_prime"] = *out.epsilon_prime;
  if (a.mode == "incremental") {
    const TauBounds<double> tau = tau_star_bounds(system);
    if (std::isfinite(tau.log_tau_star_prime)) d["log_tau_star_prime"] = tau.log_tau_star_prime;
    if (std::isfinite(tau.log_tau_star)) d["log_tau_star"] = tau.log_tau_star;
  }
  if (out.witness) r.witness_margins = to_std(out.witness->margins);
  r.exit_code = out.status == SolveStatus::Converged ? kExitOk : kExitNotConverged;
  run.want_trace = cfg.record_trace;
  if (run.want_trace) r.trace = solve_trace(out);
  return run;
}

// ---- analyze ----

Run run_analyze_cmd(const std::string& matrix, const std::string& rhs) {
  const LinearSystem<double> system(io::load_matrix(matrix), io::load_vector(rhs));
  const SystemAnalysis<double> s = analyze_system(system);
  Run run;
  RunReport& r = run.report;
  r.config = {{"matrix", matrix}, {"rhs", rhs}};
  r.status = s.near_singular ? "NearSingular" : "Ok";
  auto& d = r.diagnostics;
  d = {{"n", double(system.size())},
       {"rho", system.rho()},
       {"b_norm", system.b_norm()},
       {"lambda_min", s.lambda_min},
       {"lambda_max", s.lambda_max},
       {"q_min", s.q_min},
       {"w_norm", s.w_norm},
       {"delta0_lower", s.delta0_lower},
       {"delta0_lower_eigenvalue_form", s.delta0_lower_eigenvalue_form},
       {"delta0_lower_rayleigh_form", s.delta0_lower_rayleigh_form},
       {"near_singular", s.near_singular ? 1.0 : 0.0}};
  auto put = [&](const char* key, double v) {
    if (std::isfinite(v)) d[key] = v;
  };
  put("log_det_q", s.log_det_q);
  put("log_tau_star_prime", s.tau.log_tau_star_prime);
  put("log_tau_star", s.tau.log_tau_star);
  if (s.tau.tau_star_prime) put("tau_star_prime", *s.tau.tau_star_prime);
  if (s.tau.tau_star) put("tau_star", *s.tau.tau_star);
  r.exit_code = kExitOk;
  return run;
}

// ---- oracle ----

struct OracleArgs {
  std::string matrix, rhs, points, target;
};

Run run_oracle_cmd(const OracleArgs& a) {
  Run run;
  RunReport& r = run.report;
  if (!a.matrix.empty() || !a.rhs.empty()) {
    if (a.matrix.empty() || a.rhs.empty()) throw UsageError("oracle needs both --matrix and --rhs");
    const Matrix<double> m = io::load_matrix(a.matrix);
    const Vector<double> b = io::load_vector(a.rhs);
    const oracle::OracleResult o = oracle::linear_oracle(m, b);
    r.config = {{"matrix", a.matrix}, {"rhs", a.rhs}};
    r.status = "Solved";
    r.x = to_std(o.x_star);
    r.diagnostics = {{"t_star", o.t_star}, {"residual_norm", (m * o.x_star - b).norm()}};
  } else if (!a.points.empty() && !a.target.empty()) {
    const Matrix<double> pts = io::load_matrix(a.points);
    const Vector<double> p = io::load_vector(a.target);
    if (p.size() != pts.rows()) throw UsageError("target dimension differs from point dimension");
    r.config = {{"points", a.points}, {"target", a.target}};
    double delta = 0.0;
    if (pts.rows() == 2) {
      delta = oracle::hull_membership_2d(pts, p).delta;
    } else {
      if (pts.cols() > 12) throw UsageError("brute-force distance oracle supports at most 12 points");
      delta = oracle::delta_brute(pts, p, 40);
    }
    r.status = delta == 0.0 ? "Inside" : "Outside";
    r.diagnostics = {{"delta", delta}};
  } else {
    throw UsageError("oracle needs --matrix/--rhs or --points/--target");
  }
  r.exit_code = kExitOk;
  return run;
}

// ---- bench ----

struct BenchArgs {
  std::string suite = "nonneg";
  std::vector<int> sizes{10, 50};
  int instances = 3;
  double epsilon = 0.0;  // 0: suite default
};

std::size_t thread_count() {
  if (const char* env = std::getenv("HULLSOLVE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
  }
  return 1;
}

Matrix<double> gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix<double> m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = g(rng);
  return m;
}

std::map<std::string, double> bench_instance(const BenchArgs& a, int n, int index, std::uint64_t seed,
                                             std::size_t max_iters) {
  std::seed_seq seq{seed, std::uint64_t(n), std::uint64_t(index)};
  std::mt19937_64 rng(seq);
  std::map<std::string, double> row{{"n", double(n)}, {"index", double(index)}};
  const auto start = std::chrono::steady_clock::now();

  if (a.suite == "membership") {
    const double eps = a.epsilon > 0.0 ? a.epsilon : 0.1;
    const Matrix<double> pts = gaussian(n, n, rng);
    std::uniform_real_distribution<double> w(0.5, 1.5);
    Vector<double> c(n);
    for (Index i = 0; i < n; ++i) c[i] = w(rng);
    const Vector<double> p = pts * (c / c.sum());
    HullConfig<double> cfg;
    cfg.epsilon = eps;
    if (max_iters) cfg.max_iterations = max_iters;
    const HullOutcome<double> out = run_hull(HullInstance<double>(pts, p), cfg);
    row["iterations"] = double(out.iterations);
    row["iteration_bound"] = double(iteration_cap_from_bound(eps));
    row["converged"] = out.status == HullStatus::InHullApprox ? 1.0 : 0.0;
    row["gap"] = out.iterate.gap;
  } else {
    Matrix<double> m = gaussian(n, n, rng);
    m.colwise().normalize();
    Vector<double> x_star(n);
    if (a.suite == "nonneg") {
      std::uniform_real_distribution<double> u(0.5, 1.5);
      for (Index i = 0; i < n; ++i) x_star[i] = u(rng);
    } else {
      std::normal_distribution<double> g;
      for (Index i = 0; i < n; ++i) x_star[i] = g(rng);
    }
    const LinearSystem<double> system(m, m * x_star);
    SolveConfig<double> cfg;
    if (max_iters) cfg.max_iterations = max_iters;
    SolveOutcome<double> out;
    if (a.suite == "nonneg") {
      cfg.epsilon0 = a.epsilon > 0.0 ? a.epsilon : 0.05;
      out = solve_nonneg(system, cfg);
    } else {
      cfg.epsilon0 = a.epsilon > 0.0 ? a.epsilon : 0.01;
      if (!max_iters) cfg.max_iterations = 2'000'000;
      out = solve_incremental(system, cfg, IncrementalOptions<double>{});
      row["escalations"] = double(out.escalations);
      row["shift_t"] = out.shift_t;
    }
    row["iterations"] = double(out.iterations);
    row["iteration_cap"] = double(out.iteration_cap);
    row["converged"] = out.status == SolveStatus::Converged ? 1.0 : 0.0;
    row["relative_residual"] = out.relative_residual;
    if (out.x.size() == n) row["solution_error"] = (out.x - x_star).norm() / x_star.norm();
  }
  row["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

Run run_bench_cmd(const BenchArgs& a, const Common& c) {
  if (a.suite != "nonneg" && a.suite != "incremental" && a.suite != "membership")
    throw UsageError("unknown suite '" + a.suite + "' (nonneg, incremental or membership)");
  if (a.instances < 1) throw UsageError("--instances must be positive");
  for (int n : a.sizes)
    if (n < 1) throw UsageError("sizes must be positive");

  struct Job {
    int n, index;
  };
  std::vector<Job> jobs;
  for (int n : a.sizes)
    for (int i = 0; i < a.instances; ++i) jobs.push_back({n, i});

  // Each worker runs whole instances; results land in their job slot, so
  // the report order never depends on scheduling.
  std::vector<std::map<std::string, double>> rows(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) {
      try {
        rows[j] = bench_instance(a, jobs[j].n, jobs[j].index, c.seed, c.max_iters);
      } catch (const std::exception& e) {
        errors[j] = e.what();
        rows[j] = {{"n", double(jobs[j].n)}, {"index", double(jobs[j].index)}, {"converged", 0.0}};
      }
      rows[j]["id"] = double(j);
    }
  };
  const std::size_t threads = std::min(thread_count(), jobs.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Run run;
  RunReport& r = run.report;
  std::string sizes;
  for (int n : a.sizes) sizes += (sizes.empty() ? "" : ",") + std::to_string(n);
  r.config = {{"suite", a.suite},
              {"sizes", sizes},
              {"instances", std::to_string(a.instances)},
              {"seed", std::to_string(c.seed)},
              {"epsilon", io::format_double(a.epsilon)}};
  double converged = 0.0;
  for (const auto& row : rows) converged += row.at("converged");
  for (std::size_t j = 0; j < errors.size(); ++j)
    if (!errors[j].empty()) r.message += "instance " + std::to_string(j) + ": " + errors[j] + "\n";
  r.instances = std::move(rows);
  r.diagnostics = {{"instances", double(jobs.size())}, {"converged", converged}};
  r.status = converged == double(jobs.size()) ? "AllConverged" : "SomeNotConverged";
  r.exit_code = converged == double(jobs.size()) ? kExitOk : kExitNotConverged;
  return run;
}

void print_summary(const RunReport& r) {
  std::cout << "status: " << r.status << '\n';
  if (!r.x.empty()) std::cout << "x: " << join(r.x) << '\n';
  for (const auto& [k, v] : r.diagnostics) std::cout << k << ": " << io::format_double(v) << '\n';
  if (!r.witness_margins.empty()) std::cout << "witness_margins: " << join(r.witness_margins) << '\n';
  for (const auto& row : r.instances) {
    std::string line;
    for (const auto& [k, v] : row) line += (line.empty() ? "" : " ") + k + "=" + io::format_double(v);
    std::cout << line << '\n';
  }
  if (!r.message.empty()) std::cout << "message: " << r.message << '\n';
}

void write_outputs(const Run& run, const Common& c) {
  if (!c.trace_path.empty()) {
    std::ofstream out(c.trace_path);
    if (!out) throw UsageError("cannot write " + c.trace_path);
    io::write_trace_csv(out, run.report.trace);
  }
  if (!c.report_path.empty()) {
    std::ofstream out(c.report_path);
    if (!out) throw UsageError("cannot write " + c.report_path);
    out << io::serialize_report(run.report);
  }
}

bool is_input_error(ErrorCode code) {
  return code == ErrorCode::InvalidInput || code == ErrorCode::SingularMatrix ||
         code == ErrorCode::ZeroInColumnHull || code == ErrorCode::NearSingular;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Linear systems and convex hull membership via the Triangle Algorithm", "hullsolve"};
  app.require_subcommand(1);

  Common common;

  HullArgs hull;
  CLI::App* hull_cmd = app.add_subcommand("hull", "decide whether a point lies in the convex hull of the columns");
  hull_cmd->add_option("--points", hull.points, "matrix whose columns are the points")->required();
  hull_cmd->add_option("--target", hull.target, "query point")->required();
  hull_cmd->add_option("--epsilon", hull.epsilon, "relative approximation tolerance");
  hull_cmd->add_option("--pivot-rule", hull.pivot_rule, "most | first");
  hull_cmd->add_option("--init", hull.init, "nearest | centroid");
  add_common(hull_cmd, common);

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve a square system Ax = b");
  solve_cmd->add_option("--matrix", solve.matrix, "matrix A")->required();
  solve_cmd->add_option("--rhs", solve.rhs, "right-hand side b")->required();
  solve_cmd->add_option("--epsilon0", solve.epsilon0, "target relative residual");
  solve_cmd->add_option("--mode", solve.mode, "incremental | nonneg");
  solve_cmd->add_option("--increment", solve.increment, "quantized:N | double | raw");
  solve_cmd->add_option("--init", solve.init, "nearest | centroid");
  solve_cmd->add_option("--pivot-rule", solve.pivot_rule, "most | first");
  solve_cmd->add_option("--delta0", solve.delta0, "known lower bound on the distance from 0 to conv(A)");
  add_common(solve_cmd, common);

  std::string an_matrix, an_rhs;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "a-priori bounds for a system");
  analyze_cmd->add_option("--matrix", an_matrix, "matrix A")->required();
  analyze_cmd->add_option("--rhs", an_rhs, "right-hand side b")->required();
  add_common(analyze_cmd, common);

  OracleArgs orc;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "reference answers by direct methods");
  oracle_cmd->add_option("--matrix", orc.matrix, "matrix A");
  oracle_cmd->add_option("--rhs", orc.rhs, "right-hand side b");
  oracle_cmd->add_option("--points", orc.points, "matrix whose columns are the points");
  oracle_cmd->add_option("--target", orc.target, "query point");
  add_common(oracle_cmd, common);

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "run a generated benchmark suite");
  bench_cmd->add_option("--suite", bench.suite, "nonneg | incremental | membership");
  bench_cmd->add_option("--sizes", bench.sizes, "comma-separated sizes")->delimiter(',');
  bench_cmd->add_option("--instances", bench.instances, "instances per size");
  bench_cmd->add_option("--epsilon", bench.epsilon, "tolerance (0 keeps the suite default)");
  add_common(bench_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  const auto start = std::chrono::steady_clock::now();
  Run run;
  int code = kExitOk;
  try {
    if (hull_cmd->parsed())
      run = run_hull_cmd(hull, common);
    else if (solve_cmd->parsed())
      run = run_solve_cmd(solve, common);
    else if (analyze_cmd->parsed())
      run = run_analyze_cmd(an_matrix, an_rhs);
    else if (oracle_cmd->parsed())
      run = run_oracle_cmd(orc);
    else
      run = run_bench_cmd(bench, common);
    code = run.report.exit_code;
  } catch (const SolveError& e) {
    code = is_input_error(e.code()) ? kExitInput : kExitNotConverged;
    run.report.status = "Error";
    run.report.message = e.what();
  } catch (const std::exception& e) {
    // Parse errors, unreadable files, bad option values.
    code = kExitInput;
    run.report.status = "Error";
    run.report.message = e.what();
  }

  RunReport& r = run.report;
  r.exit_code = code;
  r.subcommand = app.get_subcommands().front()->get_name();
  r.command.assign(argv, argv + argc);
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.status == "Error") std::cerr << "hullsolve: " << r.message << '\n';
  print_summary(r);
  try {
    write_outputs(run, common);
  } catch (const std::exception& e) {
    std::cerr << "hullsolve: " << e.what() << '\n';
    return kExitInput;
  }
  return code;
}

int cli_main(const std::vector<std::string>& args) {
  std::vector<std::string> copy = args;
  if (copy.empty()) copy.emplace_back("hullsolve");
  std::vector<char*> argv;
  for (std::string& s : copy) argv.push_back(s.data());
  argv.push_back(nullptr);
  return cli_main(static_cast<int>(copy.size()), argv.data());
}

}  // namespace hullsolve::cli
