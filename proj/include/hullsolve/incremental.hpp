#ifndef HULLSOLVE_INCREMENTAL_HPP
#define HULLSOLVE_INCREMENTAL_HPP

// General Ax = b with no sign information. The system is shifted to
// A x = b + t u (u = Ae), which has a nonnegative solution for t >= t_*, and
// t is raised from 0. Whenever the iterate is a witness that 0 is outside
// conv{a_1..a_n, -b(t)}, the quadratics g_i(t) tell how far t must move
// before some a_i becomes a pivot again.

#include "hullsolve/analysis_bounds.hpp"
#include "hullsolve/solve_common.hpp"
#include "hullsolve/two_phase.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace hullsolve {

enum class IncrementKind { Raw, Quantized, DoublePlusOne };

template <typename Scalar>
struct IncrementPolicy {
  IncrementKind kind = IncrementKind::Quantized;
  Scalar quantum = Scalar(1);  // n0 for Quantized

  static IncrementPolicy raw() { return {IncrementKind::Raw, Scalar(0)}; }
  static IncrementPolicy quantized(Scalar n0) { return {IncrementKind::Quantized, n0}; }
  static IncrementPolicy double_plus_one() { return {IncrementKind::DoublePlusOne, Scalar(0)}; }
};

template <typename Scalar>
struct IncrementalOptions {
  IncrementPolicy<Scalar> increment;
  std::optional<std::size_t> max_escalations;  // default derived from tau'_*
  // Slide t0 to the residual-minimising shift in Step 1. When off, t only
  // moves on witnesses.
  bool optimize_shift = true;
  // Applied to every tau0 before it replaces t0 (testing hook; e.g. floor).
  std::function<Scalar(Scalar)> tau0_transform;
};

/// Iterate over conv{a_1..a_n, -b(t0)} together with its t-independent part
/// p' = sum alpha_i a_i - alpha_b b, so that p'(t) = p' - t alpha_b u.
template <typename Scalar>
struct ShiftState {
  Scalar t0{};
  Iterate<Scalar> iterate;
  Vector<Scalar> p_prime_base;

  Scalar alpha_b() const { return iterate.coeffs[iterate.coeffs.size() - 1]; }
  Vector<Scalar> point_at(Scalar t, const Vector<Scalar>& u) const { return p_prime_base - t * alpha_b() * u; }
};

template <typename Scalar>
ShiftState<Scalar> make_shift_state(const LinearSystem<Scalar>& system, Scalar t0, Vector<Scalar> coeffs,
                                    bool cache_dots = true) {
  const HullInstance<Scalar> inst = shifted_instance(system, t0);
  ShiftState<Scalar> s;
  s.t0 = t0;
  s.iterate = make_iterate(inst, std::move(coeffs), cache_dots);
  s.p_prime_base = s.iterate.point + t0 * s.alpha_b() * system.u();
  return s;
}

/// g(t) = c2 t^2 + c1 t + c0
template <typename Scalar>
struct ShiftQuadratic {
  Index index{};
  Scalar c2{};
  Scalar c1{};
  Scalar c0{};

  Scalar operator()(Scalar t) const { return (c2 * t + c1) * t + c0; }
};

template <typename Scalar>
struct ShiftOptimum {
  Scalar tau0{};
  Scalar error{};  // E(tau0) = ||A x0 - (b + tau0 u)||
};

/// Minimises ||r - t u|| over t >= t_floor where r = A x0 - b.
template <typename Scalar>
ShiftOptimum<Scalar> optimize_shift_from_residual(const Vector<Scalar>& r, const Vector<Scalar>& u, Scalar t_floor) {
  const Scalar t_hat = u.dot(r) / u.squaredNorm();
  ShiftOptimum<Scalar> o;
  o.tau0 = std::max(t_floor, t_hat);
  o.error = (r - o.tau0 * u).norm();
  return o;
}

template <typename Scalar>
ShiftOptimum<Scalar> optimize_shift_tau0(const LinearSystem<Scalar>& system, const Vector<Scalar>& x0,
                                         Scalar t_floor) {
  const Vector<Scalar> r = system.a() * x0 - system.b();
  return optimize_shift_from_residual(r, system.u(), t_floor);
}

/// The n+1 quadratics g_i(t) of a witness state: for i <= n,
/// g_i(t) = ||p'(t)||^2 - 2 p'(t)^T a_i, and the last one is
/// g_{n+1}(t) = ||p'(t)||^2 + 2 p'(t)^T b(t).
template <typename Scalar>
std::vector<ShiftQuadratic<Scalar>> build_quadratics(const ShiftState<Scalar>& state,
                                                     const LinearSystem<Scalar>& system,
                                                     Scalar alpha_floor = Scalar(1e-12)) {
  const Scalar ab = state.alpha_b();
  if (!(ab >= alpha_floor) || ab <= Scalar(0))
    throw SolveError(ErrorCode::AlphaBVanishes, "witness carries no weight on -b(t)");
  const Index n = system.size();
  const Vector<Scalar>& p = state.p_prime_base;
  const Vector<Scalar>& u = system.u();
  const Scalar uu = system.u_squared_norm();
  const Scalar pp = p.squaredNorm();
  const Scalar pu = p.dot(u);

  std::vector<ShiftQuadratic<Scalar>> qs;
  qs.reserve(static_cast<std::size_t>(n) + 1);
  const Vector<Scalar> pa = system.a().transpose() * p;
  const Vector<Scalar> au = system.a().transpose() * u;
  for (Index i = 0; i < n; ++i) {
    // (p' - a_i)^T u = p'^T u - a_i^T u
    qs.push_back({i, ab * ab * uu, Scalar(-2) * ab * (pu - au[i]), pp - Scalar(2) * pa[i]});
  }
  const Scalar bu = system.b().dot(u);
  qs.push_back({n, ab * (ab - Scalar(2)) * uu, Scalar(2) * (Scalar(1) - ab) * pu - Scalar(2) * ab * bu,
                pp + Scalar(2) * p.dot(system.b())});
  return qs;
}

/// Larger real root of an upward-opening quadratic. Uses the cancellation-free
/// form; falls back to the Cauchy bound when the discriminant is ~0.
template <typename Scalar>
Scalar larger_root(const ShiftQuadratic<Scalar>& q) {
  using std::abs;
  using std::sqrt;
  const Scalar disc = q.c1 * q.c1 - Scalar(4) * q.c2 * q.c0;
  const Scalar scale = q.c1 * q.c1 + abs(Scalar(4) * q.c2 * q.c0);
  if (disc <= Scalar(1e-12) * scale) return Scalar(1) + std::max(abs(q.c1), abs(q.c0)) / q.c2;
  const Scalar root = sqrt(disc);
  const Scalar w = q.c1 >= Scalar(0) ? Scalar(-0.5) * (q.c1 + root) : Scalar(-0.5) * (q.c1 - root);
  const Scalar r1 = w / q.c2;
  if (w == Scalar(0)) return r1;
  return std::max(r1, q.c0 / w);
}

/// Next shift after a witness at t0: the smallest t > t0 where some g_i
/// (i <= n) reaches zero. With a quantum n0 the increase is rounded up to a
/// positive multiple of n0. g_{n+1} is ignored: it is concave and negative at
/// t0 but may turn positive before any g_i does.
template <typename Scalar>
Scalar next_shift(const std::vector<ShiftQuadratic<Scalar>>& quadratics, Scalar t0,
                  std::optional<Scalar> quantum = std::nullopt) {
  if (quadratics.size() < 2) throw SolveError(ErrorCode::InvalidInput, "need n+1 quadratics");
  Scalar raw = std::numeric_limits<Scalar>::infinity();
  bool any = false;
  for (std::size_t i = 0; i + 1 < quadratics.size(); ++i) {
    const auto& q = quadratics[i];
    if (!(q.c2 > Scalar(0))) continue;
    any = true;
    raw = std::min(raw, larger_root(q));
  }
  if (!any) throw SolveError(ErrorCode::NoPositiveQuadratic, "no quadratic opens upward (alpha_b = 0)");
  using std::abs;
  using std::ceil;
  const Scalar tiny = Scalar(1e-12) * std::max(Scalar(1), abs(t0));
  const Scalar step = std::max(raw - t0, tiny);
  if (!quantum) return t0 + step;
  return t0 + *quantum * ceil(step / *quantum);
}

/// Infeasibility certificate for A x = b + t0 u, x >= 0.
template <typename Scalar>
struct ShiftCertificate {
  Scalar t0{};
  Witness<Scalar> witness;
  // ||p'(t0)||^2 - 2 p'(t0)^T a_i for i <= n, then ||p'(t0)||^2 + 2 p'(t0)^T b(t0).
  Vector<Scalar> expanded_margins;
};

template <typename Scalar>
ShiftCertificate<Scalar> shift_solvability_certificate(const ShiftState<Scalar>& state,
                                                       const LinearSystem<Scalar>& system) {
  const HullInstance<Scalar> inst = shifted_instance(system, state.t0);
  std::optional<Witness<Scalar>> w = check_witness(inst, state.iterate);
  if (!w) throw SolveError(ErrorCode::InvalidInput, "state is not a witness at its shift");
  const Index n = system.size();
  const Vector<Scalar>& pt = state.iterate.point;
  const Scalar pp = pt.squaredNorm();
  ShiftCertificate<Scalar> c;
  c.t0 = state.t0;
  c.expanded_margins.resize(n + 1);
  c.expanded_margins.head(n) = (pp - Scalar(2) * (system.a().transpose() * pt).array()).matrix();
  c.expanded_margins[n] = pp + Scalar(2) * pt.dot(system.shifted_rhs(state.t0));
  c.witness = std::move(*w);
  return c;
}

inline constexpr std::size_t kDefaultMaxEscalations = 1'000'000;

/// Escalation cap 10 (tau'_* + 1) when the bound is finite and modest.
template <typename Scalar>
std::size_t default_escalation_cap(const LinearSystem<Scalar>& system) {
  const TauBounds<Scalar> tau = tau_star_bounds(system);
  if (tau.near_singular || !tau.tau_star_prime || !(*tau.tau_star_prime < Scalar(1e5))) return kDefaultMaxEscalations;
  using std::ceil;
  return static_cast<std::size_t>(Scalar(10) * (ceil(*tau.tau_star_prime) + Scalar(1)));
}

template <typename Scalar>
SolveOutcome<Scalar> solve_incremental(const LinearSystem<Scalar>& system, const SolveConfig<Scalar>& config,
                                       const IncrementalOptions<Scalar>& options = {}) {
  config.validate();
  const Index n = system.size();
  const Scalar rho = system.rho();
  const Scalar target = config.epsilon0 * rho;
  const Vector<Scalar>& u = system.u();
  const bool cache = config.hull.cache_dots;
  const IncrementPolicy<Scalar>& policy = options.increment;
  if (policy.kind == IncrementKind::Quantized && !(policy.quantum > Scalar(0)))
    throw SolveError(ErrorCode::InvalidInput, "increment quantum must be positive");

  SolveOutcome<Scalar> out;
  if (config.delta0_policy == Delta0Policy::UserSupplied) out.delta0_prime = config.delta0_value;
  out.iteration_cap = config.max_iterations.value_or(kUnboundedDefaultCap);
  const std::size_t escalation_cap = options.max_escalations.value_or(default_escalation_cap(system));

  Scalar t0 = Scalar(0);
  HullInstance<Scalar> inst = shifted_instance(system, t0);
  Iterate<Scalar> it = initial_iterate(inst, config.hull.init, cache);
  GramColumnCache<Scalar> gram;
  auto alpha_b = [&]() { return it.coeffs[n]; };
  Vector<Scalar> base = it.point;  // t0 = 0

  auto set_shift = [&](Scalar t) {
    t0 = t;
    inst = shifted_instance(system, t0);
    gram.clear();
    it.point = base - t0 * alpha_b() * u;
    if (cache) it.dots = inst.points().transpose() * it.point;
    it.gap = it.point.norm();
    out.shift_history.push_back(t0);
  };
  auto escalate_by_policy = [&](std::optional<Scalar> from_quadratics) {
    Scalar next;
    if (policy.kind == IncrementKind::DoublePlusOne)
      next = Scalar(2) * t0 + Scalar(1);
    else if (from_quadratics)
      next = *from_quadratics;
    else
      next = t0 + (policy.kind == IncrementKind::Quantized ? policy.quantum : Scalar(1));
    ++out.escalations;
    set_shift(next);
  };

  auto finish = [&](SolveStatus status, std::size_t k) {
    out.status = status;
    out.iterations = k;
    out.shift_t = t0;
    out.coeffs = it.coeffs;
    out.hull_gap = it.gap;
    if (alpha_b() >= config.alpha_floor && alpha_b() > Scalar(0)) {
      out.x = ((it.coeffs.head(n) / alpha_b()).array() - t0).matrix();
      out.residual_norm = system.residual_norm(out.x);
    } else {
      out.residual_norm = system.b_norm();
    }
    out.relative_residual = out.residual_norm / rho;
    if (config.record_trace)
      out.trace.push_back({k, t0, out.residual_norm, alpha_b(), Index(-1), status == SolveStatus::InfeasibleNonneg});
    return out;
  };

  std::size_t k = 0;
  std::size_t steps_at_shift = 0;
  bool reseeded_at_shift = false;
  Scalar last_error = std::numeric_limits<Scalar>::infinity();
  bool run_step1 = true;

  for (;;) {
    // Step 1: recover x0, slide t0 to the best shift not below it, test.
    if (run_step1 && alpha_b() >= config.alpha_floor && alpha_b() > Scalar(0)) {
      const Vector<Scalar> r = base / alpha_b();  // A x0 - b
      auto done_at_shift = [&] {
        last_error = (r - t0 * u).norm();
        if (last_error > target) return false;
        const Vector<Scalar> x = ((it.coeffs.head(n) / alpha_b()).array() - t0).matrix();
        return system.residual_norm(x) <= target;
      };
      // Already good enough where we stand: no reason to slide.
      if (done_at_shift()) return finish(SolveStatus::Converged, k);
      if (options.optimize_shift) {
        Scalar tau = optimize_shift_from_residual(r, u, t0).tau0;
        if (options.tau0_transform) tau = std::max(t0, options.tau0_transform(tau));
        if (tau != t0) {
          set_shift(tau);
          if (done_at_shift()) return finish(SolveStatus::Converged, k);
        }
      }
    }
    run_step1 = true;

    // Step 2: witness test, otherwise one Triangle step.
    const std::optional<Index> pivot = find_pivot(inst, it, config.hull.pivot_rule);
    if (pivot) {
      if (k >= out.iteration_cap) return finish(SolveStatus::CapExceeded, k);
      if (out.delta0_prime) {
        const std::size_t per_shift = nonneg_iteration_cap(config.epsilon0, system.rho_of_t(t0), *out.delta0_prime);
        if (steps_at_shift >= per_shift) {
          out.diagnostic = "per-shift iteration bound exceeded";
          return finish(SolveStatus::CapExceeded, k);
        }
      }
      const Scalar alpha = step_size(inst, it, *pivot);
      it = apply_step(inst, it, *pivot, alpha, cache ? &gram : nullptr);
      ++k;
      ++steps_at_shift;
      if (k % kRefreshInterval == 0) refresh(inst, it);
      base = it.point + t0 * alpha_b() * u;
      if (config.record_trace) out.trace.push_back({k, t0, last_error, alpha_b(), *pivot, false});
      continue;
    }

    // Step 3: the iterate certifies infeasibility at t0; raise t0.
    if (config.record_trace) out.trace.push_back({k, t0, last_error, alpha_b(), Index(-1), true});
    if (out.escalations >= escalation_cap) {
      out.witness = check_witness(inst, it);
      out.diagnostic = "shift escalation cap reached";
      return finish(SolveStatus::CapExceeded, k);
    }
    if (!(alpha_b() >= config.alpha_floor) || alpha_b() <= Scalar(0)) {
      if (reseeded_at_shift) {
        // A second weightless witness at the same shift: move t instead.
        escalate_by_policy(std::nullopt);
        reseeded_at_shift = false;
        steps_at_shift = 0;
      } else {
        Vector<Scalar> c = Scalar(0.5) * it.coeffs;
        c[n] += Scalar(0.5);
        it = make_iterate(inst, std::move(c), cache);
        base = it.point + t0 * alpha_b() * u;
        ++out.reseeds;
        reseeded_at_shift = true;
      }
      run_step1 = false;
      continue;
    }
    std::optional<Scalar> proposed;
    if (policy.kind != IncrementKind::DoublePlusOne) {
      ShiftState<Scalar> state{t0, it, base};
      const auto qs = build_quadratics(state, system, config.alpha_floor);
      proposed = next_shift(qs, t0,
                            policy.kind == IncrementKind::Quantized ? std::optional<Scalar>(policy.quantum)
                                                                    : std::nullopt);
    }
    escalate_by_policy(proposed);
    reseeded_at_shift = false;
    steps_at_shift = 0;
    run_step1 = false;  // re-enter at Step 2 with p'(t0') as warm start
  }
}

}  // namespace hullsolve

#endif  // HULLSOLVE_INCREMENTAL_HPP
