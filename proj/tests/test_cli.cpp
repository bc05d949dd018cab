#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hullsolve/cli.hpp"
#include "hullsolve/io.hpp"
#include "hullsolve/report.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace fs = std::filesystem;
using hullsolve::cli::cli_main;
using namespace hullsolve::io;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("hullsolve_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string file(const std::string& name, const std::string& body) const {
    const fs::path p = dir / name;
    std::ofstream(p) << body;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunReport report_at(const std::string& path) { return parse_report(slurp(path)); }

// Timing and the argv echo are the only fields allowed to differ.
RunReport strip_volatile(RunReport r) {
  r.command.clear();
  r.wall_time_s = 0;
  r.config.erase("report");
  for (auto& row : r.instances) row.erase("wall_time_s");
  return r;
}

}  // namespace

TEST_CASE("solve the first worked system") {
  Scratch s;
  const auto a = s.file("a.txt", "2 2\n3 -2\n2 1\n");
  const auto b = s.file("b.txt", "2 1\n-1\n4\n");
  const auto rep = s.path("r.json");
  const int code = cli_main({"hullsolve", "solve", "--matrix", a, "--rhs", b, "--mode", "nonneg", "--epsilon0",
                             "1e-10", "--report", rep});
  CHECK(code == 0);
  const RunReport r = report_at(rep);
  CHECK(r.status == "Converged");
  CHECK(r.subcommand == "solve");
  REQUIRE(r.x.size() == 2);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.x[1] == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(r.diagnostics.at("relative_residual") <= 1e-10);
}

TEST_CASE("solve the second worked system with shifts") {
  Scratch s;
  const auto a = s.file("a.mtx", "%%MatrixMarket matrix array real general\n2 2\n2\n1\n-1\n1\n");
  const auto b = s.file("b.txt", "1 2\n0 -3\n");
  const auto rep = s.path("r.json");
  const auto trace = s.path("t.csv");
  CHECK(cli_main({"hullsolve", "solve", "--matrix", a, "--rhs", b, "--report", rep, "--trace", trace}) == 0);
  const RunReport r = report_at(rep);
  REQUIRE(r.x.size() == 2);
  CHECK(r.x[0] == doctest::Approx(-1.0).epsilon(1e-5));
  CHECK(r.x[1] == doctest::Approx(-2.0).epsilon(1e-5));
  CHECK(r.diagnostics.at("shift_t") >= 2.0);
  std::ifstream in(trace);
  const auto rows = read_trace_csv(in);
  CHECK_FALSE(rows.empty());
  CHECK(rows == r.trace);
}

TEST_CASE("nonnegative mode reports infeasibility") {
  Scratch s;
  const auto a = s.file("a.txt", "2 2\n2 -1\n1 1\n");
  const auto b = s.file("b.txt", "2 1\n0\n-3\n");
  const auto rep = s.path("r.json");
  CHECK(cli_main({"hullsolve", "solve", "--matrix", a, "--rhs", b, "--mode", "nonneg", "--report", rep}) == 1);
  CHECK(report_at(rep).status == "InfeasibleNonneg");
}

TEST_CASE("hull membership and witnesses") {
  Scratch s;
  const auto pts = s.file("p.txt", "2 3\n0 4 0\n0 0 4\n");
  const auto inside = s.file("in.txt", "2 1\n1\n1\n");
  const auto outside = s.file("out.txt", "2 1\n5\n5\n");
  const auto rep = s.path("r.json");
  const auto trace = s.path("t.csv");

  CHECK(cli_main({"hullsolve", "hull", "--points", pts, "--target", inside, "--epsilon", "1e-3", "--report", rep,
                  "--trace", trace}) == 0);
  RunReport r = report_at(rep);
  std::ifstream in(trace);
  const auto rows = read_trace_csv(in);
  REQUIRE_FALSE(rows.empty());
  // last gap in the trace is exactly the reported residual
  CHECK(rows.back().gap_or_e == r.diagnostics.at("residual_norm"));

  CHECK(cli_main({"hullsolve", "hull", "--points", pts, "--target", outside, "--report", rep}) == 1);
  r = report_at(rep);
  CHECK(r.witness_margins.size() == 3);
  for (double m : r.witness_margins) CHECK(m < 0);
  CHECK(r.diagnostics.at("distance_low") <= std::sqrt(18.0));
  CHECK(r.diagnostics.at("distance_high") >= std::sqrt(18.0) - 1e-12);
}

TEST_CASE("input errors exit with 2") {
  Scratch s;
  const auto a = s.file("a.txt", "2 2\n1 2\n3\n");
  const auto b = s.file("b.txt", "2 1\n1\n1\n");
  const auto singular = s.file("s.txt", "2 2\n1 2\n2 4\n");
  CHECK(cli_main({"hullsolve"}) == 2);
  CHECK(cli_main({"hullsolve", "solve", "--rhs", b}) == 2);
  CHECK(cli_main({"hullsolve", "solve", "--matrix", a, "--rhs", b}) == 2);
  CHECK(cli_main({"hullsolve", "solve", "--matrix", s.path("missing"), "--rhs", b}) == 2);
  CHECK(cli_main({"hullsolve", "solve", "--matrix", singular, "--rhs", b, "--mode", "nowhere"}) == 2);
  CHECK(cli_main({"hullsolve", "solve", "--matrix", b, "--rhs", b, "--increment", "quantized:-1"}) == 2);
  CHECK(cli_main({"hullsolve", "oracle", "--matrix", singular, "--rhs", b}) == 2);
}

TEST_CASE("reports are deterministic") {
  Scratch s;
  const auto a = s.file("a.txt", "3 3\n2 -1 0.5\n1 1 -2\n0 3 1\n");
  const auto b = s.file("b.txt", "3 1\n-1\n2\n-4\n");
  const auto r1 = s.path("r1.json");
  const auto r2 = s.path("r2.json");
  for (const auto& rep : {r1, r2})
    CHECK(cli_main({"hullsolve", "solve", "--matrix", a, "--rhs", b, "--epsilon0", "1e-4", "--report", rep}) == 0);
  CHECK(strip_volatile(report_at(r1)) == strip_volatile(report_at(r2)));
}

TEST_CASE("bench is independent of the worker count") {
  Scratch s;
  const auto r1 = s.path("r1.json");
  const auto r4 = s.path("r4.json");
  const std::vector<std::string> base = {"hullsolve", "bench", "--suite", "incremental", "--sizes", "3,6",
                                         "--instances", "3", "--seed", "9", "--epsilon", "1e-2"};
  auto run = [&](const char* threads, const std::string& rep) {
    setenv("HULLSOLVE_THREADS", threads, 1);
    auto args = base;
    args.insert(args.end(), {"--report", rep});
    return cli_main(args);
  };
  CHECK(run("1", r1) == 0);
  CHECK(run("4", r4) == 0);
  unsetenv("HULLSOLVE_THREADS");
  const RunReport one = report_at(r1);
  const RunReport four = report_at(r4);
  REQUIRE(one.instances.size() == 6);
  for (std::size_t i = 0; i < one.instances.size(); ++i) CHECK(four.instances[i].at("id") == double(i));
  CHECK(strip_volatile(one) == strip_volatile(four));
}

TEST_CASE("analyze and oracle subcommands") {
  Scratch s;
  const auto a = s.file("a.txt", "2 2\n2 -1\n1 1\n");
  const auto b = s.file("b.txt", "2 1\n0\n-3\n");
  const auto rep = s.path("r.json");
  CHECK(cli_main({"hullsolve", "analyze", "--matrix", a, "--rhs", b, "--report", rep}) == 0);
  RunReport r = report_at(rep);
  CHECK(r.diagnostics.at("tau_star_prime") >= 2.0);
  CHECK(r.diagnostics.at("log_det_q") == doctest::Approx(std::log(9.0)));

  CHECK(cli_main({"hullsolve", "oracle", "--matrix", a, "--rhs", b, "--report", rep}) == 0);
  r = report_at(rep);
  CHECK(r.diagnostics.at("t_star") == doctest::Approx(2.0));
  REQUIRE(r.x.size() == 2);
  CHECK(r.x[0] == doctest::Approx(-1.0));

  const auto pts = s.file("p.txt", "2 4\n0 1 0 1\n0 0 1 1\n");
  const auto far = s.file("q.txt", "2 1\n10\n10\n");
  CHECK(cli_main({"hullsolve", "oracle", "--points", pts, "--target", far, "--report", rep}) == 0);
  r = report_at(rep);
  CHECK(r.status == "Outside");
  CHECK(r.diagnostics.at("delta") == doctest::Approx(9 * std::sqrt(2.0)));
}
