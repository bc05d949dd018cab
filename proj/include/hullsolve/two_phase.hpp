#ifndef HULLSOLVE_TWO_PHASE_HPP
#define HULLSOLVE_TWO_PHASE_HPP

// Ax = b with a nonnegative solution, solved as the membership question
// 0 in conv{a_1, ..., a_n, -b}. Phase 1 finds a witness that 0 is outside
// conv{a_1..a_n}, which lower-bounds Delta_0 and fixes the inner tolerance;
// Phase 2 pulls an iterate toward 0 and reads x0 = alpha / alpha_{n+1}.

#include "hullsolve/analysis_bounds.hpp"
#include "hullsolve/solve_common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hullsolve {

inline constexpr std::size_t kPhase1DefaultCap = 1'000'000;
inline constexpr std::size_t kUnboundedDefaultCap = 10'000'000;

template <typename Scalar>
struct Phase1Result {
  Witness<Scalar> witness;
  Scalar delta0_prime{};  // ||p'|| / 2 <= Delta_0
  std::size_t iterations = 0;
};

template <typename Scalar>
Phase1Result<Scalar> phase1_witness(const LinearSystem<Scalar>& system, const SolveConfig<Scalar>& config) {
  HullInstance<Scalar> inst(system.a(), Vector<Scalar>::Zero(system.size()));
  HullConfig<Scalar> hc = config.hull;
  hc.max_iterations = config.hull.max_iterations.value_or(kPhase1DefaultCap);
  hc.record_trace = false;
  HullOutcome<Scalar> out = run_hull(inst, hc);
  switch (out.status) {
    case HullStatus::NotInHull: {
      Phase1Result<Scalar> r;
      r.delta0_prime = Scalar(0.5) * out.witness->iterate.gap;
      r.witness = std::move(*out.witness);
      r.iterations = out.iterations;
      return r;
    }
    case HullStatus::InHullApprox:
      throw SolveError(ErrorCode::ZeroInColumnHull, "origin approximated by the columns of A; A is singular");
    case HullStatus::CapExceeded:
      break;
  }
  throw SolveError(ErrorCode::CapExceeded, "phase 1 found no witness within " + std::to_string(out.iteration_cap) +
                                               " iterations");
}

/// Inner hull tolerance guaranteeing an eps0-approximate solution:
/// eps = (Delta0'/2) min{1/rho, eps0/(Delta0' + ||b||)}.
template <typename Scalar>
Scalar select_inner_epsilon(Scalar epsilon0, Scalar delta0_prime, const LinearSystem<Scalar>& system) {
  if (!(delta0_prime > Scalar(0))) throw SolveError(ErrorCode::InvalidInput, "Delta0' must be positive");
  return Scalar(0.5) * delta0_prime *
         std::min(Scalar(1) / system.rho(), epsilon0 / (delta0_prime + system.b_norm()));
}

/// Relative residual guaranteed for x0 once ||p'|| <= eps * rho.
template <typename Scalar>
Scalar sensitivity_epsilon_prime(Scalar epsilon, Scalar delta0_prime, Scalar b_norm) {
  return Scalar(2) * (Scalar(1) + b_norm / delta0_prime) * epsilon;
}

/// ceil((48 / eps0^2) (rho / Delta0')^2), saturating.
template <typename Scalar>
std::size_t nonneg_iteration_cap(Scalar epsilon0, Scalar rho, Scalar delta0_prime) {
  using std::ceil;
  const Scalar ratio = rho / delta0_prime;
  const Scalar raw = Scalar(48) / (epsilon0 * epsilon0) * ratio * ratio;
  constexpr auto kMax = std::numeric_limits<std::size_t>::max() / 2;
  if (!(raw < Scalar(kMax))) return kMax;
  return static_cast<std::size_t>(ceil(raw));
}

template <typename Scalar>
SolveOutcome<Scalar> solve_nonneg(const LinearSystem<Scalar>& system, const SolveConfig<Scalar>& config) {
  config.validate();
  const Index n = system.size();
  const Scalar rho = system.rho();
  const Scalar target = config.epsilon0 * rho;
  SolveOutcome<Scalar> out;

  std::optional<Phase1Result<Scalar>> phase1;
  switch (config.delta0_policy) {
    case Delta0Policy::FromPhase1Witness:
      try {
        phase1 = phase1_witness(system, config);
      } catch (const SolveError& e) {
        if (e.code() != ErrorCode::CapExceeded) throw;
        out.status = SolveStatus::CapExceeded;
        out.diagnostic = e.what();
        return out;
      }
      out.delta0_prime = phase1->delta0_prime;
      out.phase1_iterations = phase1->iterations;
      break;
    case Delta0Policy::UserSupplied:
      out.delta0_prime = config.delta0_value;
      break;
    case Delta0Policy::SkipPhase1: {
      const Delta0Bound<Scalar> bound = delta0_lower_bound(system);
      if (!bound.near_singular) out.delta0_prime = bound.value;
      break;
    }
  }
  if (out.delta0_prime) {
    out.inner_epsilon = select_inner_epsilon(config.epsilon0, *out.delta0_prime, system);
    out.epsilon_prime = sensitivity_epsilon_prime(*out.inner_epsilon, *out.delta0_prime, system.b_norm());
  } else {
    out.diagnostic = "no Delta0' available; only the direct residual check certifies the result";
  }
  out.iteration_cap = config.max_iterations.value_or(
      out.delta0_prime ? nonneg_iteration_cap(config.epsilon0, rho, *out.delta0_prime) : kUnboundedDefaultCap);
  const std::size_t stride = config.residual_stride.value_or(default_residual_stride<Scalar>(n));

  const HullInstance<Scalar> inst = shifted_instance(system, Scalar(0));
  const bool cache = config.hull.cache_dots;
  Iterate<Scalar> it;
  if (phase1) {
    Vector<Scalar> c = Vector<Scalar>::Zero(n + 1);
    c.head(n) = phase1->witness.iterate.coeffs;
    it = make_iterate(inst, std::move(c), cache);
  } else {
    it = initial_iterate(inst, config.hull.init, cache);
  }
  GramColumnCache<Scalar> gram;

  auto finish = [&](SolveStatus status, std::size_t k) {
    out.status = status;
    out.iterations = k;
    out.coeffs = it.coeffs;
    out.hull_gap = it.gap;
    const Scalar alpha_b = it.coeffs[n];
    if (alpha_b >= config.alpha_floor && alpha_b > Scalar(0)) {
      out.x = recover_solution(it, config.alpha_floor);
      out.residual_norm = system.residual_norm(out.x);
    } else {
      out.residual_norm = system.b_norm();
    }
    out.relative_residual = out.residual_norm / rho;
    if (config.record_trace)
      out.trace.push_back({k, Scalar(0), out.residual_norm, alpha_b, Index(-1), status == SolveStatus::InfeasibleNonneg});
    return out;
  };

  for (std::size_t k = 0;; ++k) {
    const Scalar alpha_b = it.coeffs[n];
    const bool recoverable = alpha_b >= config.alpha_floor && alpha_b > Scalar(0);
    if (recoverable && config.residual_check) {
      // Ax0 - b = p' / alpha_b, so the proxy is exact up to roundoff.
      const Scalar proxy = it.gap / alpha_b;
      if (k % stride == 0 || proxy <= target) {
        if (system.residual_norm(recover_solution(it, config.alpha_floor)) <= target)
          return finish(SolveStatus::Converged, k);
      }
    }
    if (out.inner_epsilon && it.gap <= *out.inner_epsilon * rho) {
      if (!recoverable) {
        out.diagnostic = "AlphaBVanishes: hull target reached with no weight on -b";
        return finish(SolveStatus::CapExceeded, k);
      }
      const Vector<Scalar> x0 = recover_solution(it, config.alpha_floor);
      if (system.residual_norm(x0) <= target) return finish(SolveStatus::Converged, k);
      out.diagnostic = "hull target reached but residual exceeds eps0*rho (Delta0' invalid?)";
    }

    const std::optional<Index> pivot = find_pivot(inst, it, config.hull.pivot_rule);
    if (!pivot) {
      out.witness = check_witness(inst, it);
      return finish(SolveStatus::InfeasibleNonneg, k);
    }
    if (k >= out.iteration_cap) return finish(SolveStatus::CapExceeded, k);

    const Scalar alpha = step_size(inst, it, *pivot);
    it = apply_step(inst, it, *pivot, alpha, cache ? &gram : nullptr);
    if ((k + 1) % kRefreshInterval == 0) refresh(inst, it);
    if (config.record_trace) {
      const Scalar ab = it.coeffs[n];
      out.trace.push_back({k + 1, Scalar(0), ab > Scalar(0) ? it.gap / ab : std::numeric_limits<Scalar>::infinity(), ab,
                           *pivot, false});
    }
  }
}

}  // namespace hullsolve

#endif  // HULLSOLVE_TWO_PHASE_HPP
