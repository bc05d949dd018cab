#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hullsolve/io.hpp"
#include "hullsolve/report.hpp"
#include "support.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

using namespace hullsolve;
using namespace hullsolve::io;
using namespace testing;

namespace {

Mat parse(const std::string& text, MatrixFormat f = MatrixFormat::Auto) {
  std::istringstream in(text);
  return parse_matrix(in, f);
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

bool is_dimension_error(const std::string& text) {
  try {
    parse(text);
  } catch (const DimensionMismatch&) {
    return true;
  } catch (...) {
  }
  return false;
}

}  // namespace

TEST_CASE("dense text") {
  const Mat a = parse("2 2\n3 -2\n2 1\n");
  CHECK(a == rows({{3, -2}, {2, 1}}));
  // comments and blank lines are skipped
  CHECK(parse("% first system\n\n2 1\n-1\n\n4\n") == vec({-1, 4}));
}

TEST_CASE("matrix market array is column major") {
  const Mat a = parse("%%MatrixMarket matrix array real general\n% comment\n2 2\n2\n1\n-1\n1\n");
  CHECK(a == rows({{2, -1}, {1, 1}}));
}

TEST_CASE("matrix market variants") {
  CHECK(parse("%%MatrixMarket matrix coordinate real general\n2 2 3\n1 1 3\n2 1 2\n1 2 -2\n") ==
        rows({{3, -2}, {2, 0}}));
  CHECK(parse("%%MatrixMarket matrix coordinate integer symmetric\n2 2 2\n1 1 4\n2 1 7\n") ==
        rows({{4, 7}, {7, 0}}));
  CHECK(parse("%%MatrixMarket matrix coordinate real skew-symmetric\n2 2 1\n2 1 5\n") ==
        rows({{0, -5}, {5, 0}}));
  CHECK(parse("%%MatrixMarket matrix coordinate pattern general\n2 2 2\n1 2\n2 1\n") ==
        rows({{0, 1}, {1, 0}}));
  CHECK(parse("%%MatrixMarket matrix array real symmetric\n2 2\n1\n2\n3\n") == rows({{1, 2}, {2, 3}}));
  // duplicate coordinate entries accumulate
  CHECK(parse("%%MatrixMarket matrix coordinate real general\n1 1 2\n1 1 1.5\n1 1 2\n") == rows({{3.5}}));
}

TEST_CASE("explicit format") {
  CHECK(parse("1 2\n5 6\n", MatrixFormat::DenseText) == rows({{5, 6}}));
  CHECK_THROWS_AS(parse("1 2\n5 6\n", MatrixFormat::MatrixMarket), ParseError);
}

TEST_CASE("parse errors carry the line") {
  CHECK(error_line("") == 1);
  CHECK(error_line("% only a comment\n") >= 1);
  CHECK(error_line("2 2\n1 x\n3 4\n") == 2);
  CHECK(error_line("%%MatrixMarket matrix array complex general\n1 1\n1\n") == 1);
}

TEST_CASE("dimension mismatches") {
  CHECK(is_dimension_error("2 2\n1 2 3\n4 5\n"));
  CHECK(is_dimension_error("2 2\n1 2\n"));
  CHECK(is_dimension_error("1 2\n1 2\n3 4\n"));
  CHECK(is_dimension_error("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n"));
  CHECK(is_dimension_error("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n"));
  CHECK_FALSE(is_dimension_error("2 2\n1 2\n3 4\n"));
  CHECK(error_line("2 2\n1 2 3\n4 5\n") == 2);
}

TEST_CASE("writers round trip") {
  std::mt19937_64 rng(51);
  const Mat m = gaussian(4, 3, rng) * 1e3;
  std::ostringstream dense, mm;
  write_dense_text(dense, m);
  write_matrix_market_array(mm, m);
  CHECK(parse(dense.str()) == m);
  CHECK(parse(mm.str()) == m);
}

TEST_CASE("loading files") {
  const std::string path = "test_io_vector.mtx";
  {
    std::ofstream f(path);
    f << "1 3\n1 2 3\n";
  }
  CHECK(load_vector(path) == vec({1, 2, 3}));
  {
    std::ofstream f(path);
    f << "2 2\n1 2\n3 4\n";
  }
  CHECK_THROWS_AS(load_vector(path), DimensionMismatch);
  std::remove(path.c_str());
  try {
    load_matrix("does/not/exist.mtx");
    FAIL("expected an error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("does/not/exist.mtx") != std::string::npos);
  }
}

TEST_CASE("shortest round-trip formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
  std::mt19937_64 rng(52);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int i = 0; i < 2000; ++i) {
    std::uint64_t u = bits(rng);
    double d;
    std::memcpy(&d, &u, sizeof d);
    if (!std::isfinite(d)) continue;
    CHECK(std::strtod(format_double(d).c_str(), nullptr) == d);
  }
}

TEST_CASE("trace csv") {
  const std::vector<TraceRow> rows_in = {
      {0, 0.0, 0.5, std::nullopt, -1, false},
      {1, 0.25, 0.1234567890123, 0.75, 2, false},
      {2, 2.0, 1e-300, 1.0 / 3.0, 0, true},
  };
  std::ostringstream out;
  write_trace_csv(out, rows_in);
  const std::string text = out.str();
  CHECK(text.substr(0, text.find('\n')) == "iter,t,gap_or_E,alpha_b,pivot,witness");
  CHECK(text.find("0,0,0.5,,-1,0") != std::string::npos);
  std::istringstream in(text);
  CHECK(read_trace_csv(in) == rows_in);
}

TEST_CASE("report round trip") {
  RunReport r;
  r.command = {"hullsolve", "solve", "--matrix", "a.mtx"};
  r.subcommand = "solve";
  r.config = {{"epsilon0", "1e-06"}, {"mode", "incremental"}};
  r.status = "converged";
  r.exit_code = 0;
  r.message = "ok \"quoted\"";
  r.x = {-1, -2};
  r.diagnostics = {{"residual_norm", 3e-7},
                   {"tau_star", std::numeric_limits<double>::infinity()},
                   {"nothing", -std::numeric_limits<double>::infinity()}};
  r.witness_margins = {-0.375, -3.375};
  r.trace = {{0, 0, 1, 0.5, 1, false}};
  r.instances = {{{"id", 0}, {"iterations", 12}}};
  r.wall_time_s = 0.01;

  const std::string text = serialize_report(r);
  CHECK(serialize_report(r) == text);
  CHECK(text.find("\"hullsolve-report/1\"") != std::string::npos);
  CHECK(parse_report(text) == r);

  RunReport n;
  n.diagnostics = {{"gap", std::numeric_limits<double>::quiet_NaN()}};
  const RunReport back = parse_report(serialize_report(n));
  CHECK(std::isnan(back.diagnostics.at("gap")));
  CHECK_THROWS(parse_report("{not json"));
}
