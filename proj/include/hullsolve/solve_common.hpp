#ifndef HULLSOLVE_SOLVE_COMMON_HPP
#define HULLSOLVE_SOLVE_COMMON_HPP

#include "hullsolve/hull_core.hpp"
#include "hullsolve/linear_system.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hullsolve {

enum class Delta0Policy { FromPhase1Witness, UserSupplied, SkipPhase1 };

template <typename Scalar>
struct SolveConfig {
  Scalar epsilon0 = Scalar(1e-6);
  Delta0Policy delta0_policy = Delta0Policy::FromPhase1Witness;
  Scalar delta0_value{};  // used with Delta0Policy::UserSupplied
  HullConfig<Scalar> hull;  // pivot/init/caching; hull.max_iterations caps Phase 1
  Scalar alpha_floor = Scalar(1e-12);
  // Check ||Ax0 - b|| <= eps0 * rho after every step instead of waiting for
  // ||p'|| <= eps * rho.
  bool residual_check = true;
  std::optional<std::size_t> residual_stride;  // default 1 for n <= 512, ceil(n/512) above
  std::optional<std::size_t> max_iterations;   // overrides the bound-derived cap
  bool record_trace = false;

  void validate() const {
    if (!(epsilon0 > Scalar(0) && epsilon0 < Scalar(1)))
      throw SolveError(ErrorCode::InvalidInput, "epsilon0 must lie in (0,1)");
    if (delta0_policy == Delta0Policy::UserSupplied && !(delta0_value > Scalar(0)))
      throw SolveError(ErrorCode::InvalidInput, "user-supplied Delta0' must be positive");
    if (!(alpha_floor >= Scalar(0)))
      throw SolveError(ErrorCode::InvalidInput, "alpha_floor must be nonnegative");
    if (max_iterations && *max_iterations < 1)
      throw SolveError(ErrorCode::InvalidInput, "max_iterations must be >= 1");
    hull.validate();
  }
};

enum class SolveStatus { Converged, InfeasibleNonneg, CapExceeded };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::InfeasibleNonneg: return "InfeasibleNonneg";
    case SolveStatus::CapExceeded: return "CapExceeded";
  }
  return "Unknown";
}

/// One row of a solver trace. `value` is the residual of the recovered
/// solution (E(t) for shifted solves); pivot is -1 on witness rows.
template <typename Scalar>
struct SolveTraceRecord {
  std::size_t iteration;
  Scalar t;
  Scalar value;
  Scalar alpha_b;
  Index pivot;
  bool witness;
};

template <typename Scalar>
struct SolveOutcome {
  SolveStatus status = SolveStatus::CapExceeded;
  std::optional<Witness<Scalar>> witness;
  Vector<Scalar> x;       // recovered solution (may be empty when none exists)
  Vector<Scalar> coeffs;  // final convex-combination coefficients, last entry on -b(t)
  Scalar residual_norm{};
  Scalar relative_residual{};
  Scalar shift_t{};
  std::optional<Scalar> delta0_prime;
  std::optional<Scalar> inner_epsilon;
  std::optional<Scalar> epsilon_prime;
  Scalar hull_gap{};  // ||p'|| at exit
  std::size_t iterations = 0;
  std::size_t phase1_iterations = 0;
  std::size_t iteration_cap = 0;
  std::size_t escalations = 0;
  std::size_t reseeds = 0;
  std::vector<Scalar> shift_history;
  std::vector<SolveTraceRecord<Scalar>> trace;
  std::string diagnostic;
};

/// Hull instance for conv{a_1, ..., a_n, -(b + t u)} with target 0.
template <typename Scalar>
HullInstance<Scalar> shifted_instance(const LinearSystem<Scalar>& system, Scalar t) {
  const Index n = system.size();
  Matrix<Scalar> pts(n, n + 1);
  pts.leftCols(n) = system.a();
  pts.col(n) = -system.shifted_rhs(t);
  return HullInstance<Scalar>(std::move(pts), Vector<Scalar>::Zero(n));
}

/// x0 = (alpha_1, ..., alpha_n) / alpha_{n+1}.
template <typename Scalar>
Vector<Scalar> recover_solution(const Iterate<Scalar>& it, Scalar alpha_floor) {
  const Index n = it.coeffs.size() - 1;
  const Scalar alpha_b = it.coeffs[n];
  if (!(alpha_b >= alpha_floor) || alpha_b <= Scalar(0))
    throw SolveError(ErrorCode::AlphaBVanishes, "coefficient of -b is below the floor");
  return it.coeffs.head(n) / alpha_b;
}

template <typename Scalar>
std::size_t default_residual_stride(Index n) {
  return n <= 512 ? 1 : static_cast<std::size_t>((n + 511) / 512);
}

}  // namespace hullsolve

#endif  // HULLSOLVE_SOLVE_COMMON_HPP
