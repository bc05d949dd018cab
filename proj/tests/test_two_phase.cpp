#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hullsolve/oracle.hpp"
#include "hullsolve/two_phase.hpp"
#include "support.hpp"

using namespace hullsolve;
using namespace testing;

namespace {

LinearSystem<double> first_system() { return {rows({{3, -2}, {2, 1}}), vec({-1, 4})}; }
LinearSystem<double> second_system() { return {rows({{2, -1}, {1, 1}}), vec({0, -3})}; }

// Unit-norm columns, x* with entries in [lo, hi], b = A x*.
std::pair<LinearSystem<double>, Vec> nonneg_system(Index n, std::mt19937_64& rng, double lo = 0.1, double hi = 1.0) {
  Mat a = gaussian(n, n, rng);
  a.colwise().normalize();
  const Vec x = uniform(n, lo, hi, rng);
  return {LinearSystem<double>(a, a * x), x};
}

}  // namespace

TEST_CASE("linear system derived quantities") {
  const auto s = second_system();
  CHECK(s.u() == vec({1, 2}));
  CHECK(s.b_norm() == 3.0);
  CHECK(s.rho() == 3.0);
  CHECK(s.rho_of_t(0.0) == s.rho());
  CHECK(s.shifted_rhs(2.0) == vec({2, 1}));
  CHECK(s.rho_of_t(2.0) == doctest::Approx(std::sqrt(5.0)));
  CHECK(s.residual_norm(vec({-1, -2})) == 0.0);
}

TEST_CASE("linear system rejects bad input") {
  CHECK_THROWS_AS(LinearSystem<double>(Mat::Ones(2, 3), Vec::Ones(2)), SolveError);
  CHECK_THROWS_AS(LinearSystem<double>(Mat::Ones(2, 2), Vec::Ones(3)), SolveError);
  CHECK_THROWS_AS(LinearSystem<double>(rows({{1, 0}, {2, 0}}), Vec::Ones(2)), SolveError);
  CHECK_THROWS_AS(LinearSystem<double>(Mat(0, 0), Vec(0)), SolveError);
}

TEST_CASE("solve config validation") {
  SolveConfig<double> c;
  c.epsilon0 = 1.0;
  CHECK_THROWS_AS(c.validate(), SolveError);
  c.epsilon0 = 0.1;
  c.delta0_policy = Delta0Policy::UserSupplied;
  c.delta0_value = 0.0;
  CHECK_THROWS_AS(c.validate(), SolveError);
  c.delta0_value = 1.0;
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("phase 1 on the second worked system's columns") {
  const auto s = second_system();
  const auto r = phase1_witness(s, SolveConfig<double>{});
  const Vec& pp = r.witness.iterate.point;
  const double half = 0.5 * pp.squaredNorm();
  CHECK(pp.dot(s.column(0)) > half);
  CHECK(pp.dot(s.column(1)) > half);
  CHECK(r.delta0_prime == doctest::Approx(0.5 * pp.norm()));
}

TEST_CASE("phase 1 on a segment") {
  const LinearSystem<double> s(Mat::Identity(2, 2), vec({1, 1}));
  const auto r = phase1_witness(s, SolveConfig<double>{});
  CHECK(r.delta0_prime > 0.0);
  CHECK(r.delta0_prime <= 1.0 / std::sqrt(2.0) + 1e-15);
}

TEST_CASE("phase 1 detects the origin in the column hull") {
  const LinearSystem<double> s(rows({{1, -1}, {0, 0}}), vec({1, 1}));
  try {
    phase1_witness(s, SolveConfig<double>{});
    FAIL("expected ZeroInColumnHull");
  } catch (const SolveError& e) {
    CHECK(e.code() == ErrorCode::ZeroInColumnHull);
  }
  CHECK_THROWS_AS(solve_nonneg(s, SolveConfig<double>{}), SolveError);
}

TEST_CASE("inner epsilon") {
  // Delta0' = rho = ||b|| = 1, eps0 = 1.
  const LinearSystem<double> unit(Mat::Identity(2, 2), vec({1, 0}));
  CHECK(select_inner_epsilon(1.0, 1.0, unit) == doctest::Approx(0.25).epsilon(1e-15));
  // Delta0' = 1, rho = ||b|| = 2, eps0 = 0.1.
  const LinearSystem<double> twice(2.0 * Mat::Identity(2, 2), vec({2, 0}));
  CHECK(select_inner_epsilon(0.1, 1.0, twice) == doctest::Approx(1.0 / 60).epsilon(1e-15));
  CHECK_THROWS_AS(select_inner_epsilon(0.1, 0.0, twice), SolveError);

  std::mt19937_64 rng(7);
  for (int k = 0; k < 100; ++k) {
    auto [s, x] = nonneg_system(4, rng);
    const double d = uniform(1, 0.01, 2.0, rng)[0];
    const double e0 = uniform(1, 1e-6, 0.9, rng)[0];
    const double eps = select_inner_epsilon(e0, d, s);
    CHECK(eps <= d / (2 * s.rho()) * (1 + 1e-15));
    CHECK(eps > 0.0);
  }
}

TEST_CASE("sensitivity epsilon prime") {
  CHECK(sensitivity_epsilon_prime(0.01, 1.0, 1.0) == doctest::Approx(0.04).epsilon(1e-15));
  CHECK(sensitivity_epsilon_prime(0.01, 2.5, 2.5) == doctest::Approx(0.04).epsilon(1e-15));
  CHECK(sensitivity_epsilon_prime(1e-300, 1.0, 1.0) < 1e-299);
}

TEST_CASE("nonneg iteration cap") {
  CHECK(nonneg_iteration_cap(0.1, 2.0, 1.0) == 19200);
  CHECK(nonneg_iteration_cap(1e-200, 1.0, 1.0) == std::numeric_limits<std::size_t>::max() / 2);
}

TEST_CASE("solution recovery") {
  const auto s1 = first_system();
  const auto inst1 = shifted_instance(s1, 0.0);
  const auto x = recover_solution(make_iterate(inst1, vec({0.25, 0.5, 0.25}), false), 1e-12);
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-15));
  const Vec third = Vec::Constant(3, 1.0 / 3);
  const auto x1 = recover_solution(make_iterate(inst1, third, false), 1e-12);
  CHECK(x1.isApprox(vec({1, 1})));

  const auto inst2 = shifted_instance(second_system(), 2.0);
  const auto x2 = recover_solution(make_iterate(inst2, vec({19.0 / 52, 11.0 / 26, 11.0 / 52}), false), 1e-12);
  CHECK(x2[0] == doctest::Approx(19.0 / 11).epsilon(1e-14));
  CHECK(x2[1] == doctest::Approx(2.0).epsilon(1e-14));

  try {
    recover_solution(make_iterate(inst1, vec({0.5, 0.5, 0.0}), false), 1e-12);
    FAIL("expected AlphaBVanishes");
  } catch (const SolveError& e) {
    CHECK(e.code() == ErrorCode::AlphaBVanishes);
  }
}

TEST_CASE("first worked system solves in one step from the centroid") {
  SolveConfig<double> cfg;
  cfg.epsilon0 = 1e-10;
  cfg.delta0_policy = Delta0Policy::SkipPhase1;
  cfg.hull.init = InitRule<double>::centroid();
  const auto out = solve_nonneg(first_system(), cfg);
  CHECK(out.status == SolveStatus::Converged);
  CHECK(out.iterations == 1);
  CHECK(std::abs(out.x[0] - 1) <= 1e-12);
  CHECK(std::abs(out.x[1] - 2) <= 1e-12);
  CHECK(out.residual_norm <= 1e-12);
  CHECK(out.shift_t == 0.0);
}

TEST_CASE("first worked system through both phases") {
  SolveConfig<double> cfg;
  cfg.epsilon0 = 1e-10;
  cfg.record_trace = true;
  const auto out = solve_nonneg(first_system(), cfg);
  REQUIRE(out.status == SolveStatus::Converged);
  CHECK((out.x - vec({1, 2})).norm() <= 1e-9);
  REQUIRE(out.delta0_prime);
  // Delta_0 is the distance from 0 to the segment [a1, a2].
  const double d0 = oracle::delta_brute(first_system().a(), Vec::Zero(2), 2000);
  CHECK(*out.delta0_prime <= d0 + 1e-9);
  CHECK(d0 <= 2 * *out.delta0_prime + 1e-9);
  REQUIRE_FALSE(out.trace.empty());
  CHECK(out.trace.back().value == out.residual_norm);
}

TEST_CASE("negative solution gives an infeasibility witness") {
  SolveConfig<double> cfg;
  cfg.epsilon0 = 1e-6;
  const auto s = second_system();
  const auto out = solve_nonneg(s, cfg);
  REQUIRE(out.status == SolveStatus::InfeasibleNonneg);
  REQUIRE(out.witness);
  CHECK((out.witness->margins.array() < 0).all());
  const auto inst = shifted_instance(s, 0.0);
  const Vec& pp = out.witness->iterate.point;
  for (Index i = 0; i < 3; ++i) CHECK((pp - inst.point(i)).norm() < inst.point(i).norm());
}

TEST_CASE("user supplied and skipped phase 1") {
  std::mt19937_64 rng(8);
  auto [s, x] = nonneg_system(6, rng);
  SolveConfig<double> cfg;
  cfg.epsilon0 = 1e-4;
  cfg.delta0_policy = Delta0Policy::UserSupplied;
  cfg.delta0_value = 0.05;
  auto out = solve_nonneg(s, cfg);
  CHECK(out.status == SolveStatus::Converged);
  CHECK(out.phase1_iterations == 0);
  CHECK(out.iteration_cap == nonneg_iteration_cap(1e-4, s.rho(), 0.05));

  cfg.delta0_policy = Delta0Policy::SkipPhase1;
  out = solve_nonneg(s, cfg);
  CHECK(out.status == SolveStatus::Converged);
  CHECK(out.relative_residual <= 1e-4);
}

TEST_CASE("iteration cap is honoured") {
  std::mt19937_64 rng(9);
  auto [s, x] = nonneg_system(10, rng);
  SolveConfig<double> cfg;
  cfg.epsilon0 = 1e-9;
  cfg.max_iterations = 5;
  const auto out = solve_nonneg(s, cfg);
  CHECK(out.status == SolveStatus::CapExceeded);
  CHECK(out.iterations == 5);
}

TEST_CASE("random nonnegative systems converge within the bound") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    auto [s, x] = nonneg_system(20, rng, 0.5, 1.5);
    SolveConfig<double> cfg;
    cfg.epsilon0 = 1e-3;
    const auto out = solve_nonneg(s, cfg);
    REQUIRE(out.status == SolveStatus::Converged);
    CHECK(out.relative_residual <= cfg.epsilon0);
    CHECK(out.iterations <= out.iteration_cap);
    // Independent recomputation of the residual.
    CHECK((s.a() * out.x - s.b()).norm() <= cfg.epsilon0 * s.rho());
    CHECK((out.x.array() >= -1e-12).all());
    CHECK(out.phase1_iterations <= out.iteration_cap);
  }
}

TEST_CASE("property: hull residual target implies the sensitivity guarantee") {
  std::mt19937_64 rng(12);
  int reached = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto [s, x] = nonneg_system(5, rng, 0.2, 1.0);
    SolveConfig<double> cfg;
    cfg.epsilon0 = 0.05;
    cfg.residual_check = false;
    const auto out = solve_nonneg(s, cfg);
    if (out.status != SolveStatus::Converged) continue;
    REQUIRE(out.inner_epsilon);
    if (out.hull_gap > *out.inner_epsilon * s.rho()) continue;
    ++reached;
    CHECK(s.residual_norm(out.x) <= *out.epsilon_prime * s.rho() * (1 + 1e-12));
    CHECK(*out.epsilon_prime <= cfg.epsilon0 * (1 + 1e-12));
    CHECK(out.iterations <= out.iteration_cap);
  }
  CHECK(reached > 20);
}

TEST_CASE("property: phase 1 bracket against the brute-force distance") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 2 + Index(trial % 3);
    Mat a = gaussian(n, n, rng);
    // Keep the origin away from conv(columns) half of the time.
    if (trial % 2) a.colwise() += Vec::Constant(n, 1.5);
    const LinearSystem<double> s(a, Vec::Ones(n));
    const double d0 = oracle::delta_brute(a, Vec::Zero(n), 200);
    SolveConfig<double> cfg;
    try {
      const auto r = phase1_witness(s, cfg);
      CHECK(r.delta0_prime <= d0 * (1 + 1e-6) + 1e-12);
      CHECK(d0 <= 2 * r.delta0_prime * (1 + 1e-6) + 1e-12);
    } catch (const SolveError& e) {
      CHECK(e.code() == ErrorCode::ZeroInColumnHull);
      CHECK(d0 < 1e-3);
    }
  }
}
