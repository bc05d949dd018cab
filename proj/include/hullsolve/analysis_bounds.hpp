#ifndef HULLSOLVE_ANALYSIS_BOUNDS_HPP
#define HULLSOLVE_ANALYSIS_BOUNDS_HPP

// A-priori quantities for Ax = b: a lower bound on the distance from the
// origin to conv{a_1..a_n} via the smallest eigenvalue of A^T A, and the
// Hadamard/Cramer upper bounds on the shift that makes the solution
// nonnegative. Products over n column norms overflow quickly, so the shift
// bounds are carried as natural logarithms.

#include "hullsolve/linear_system.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <optional>

namespace hullsolve {

template <typename Scalar>
struct EigenEstimate {
  Scalar value{};
  std::size_t iterations = 0;
  bool converged = false;
  bool used_fallback = false;  // inverse iteration locked onto a larger eigenvalue
};

namespace detail {

// Number of eigenvalues of symmetric q below sigma (Sylvester inertia).
template <typename Scalar>
Index eigenvalues_below(const Matrix<Scalar>& q, Scalar sigma) {
  const Matrix<Scalar> shifted = q - sigma * Matrix<Scalar>::Identity(q.rows(), q.cols());
  Eigen::LDLT<Matrix<Scalar>> ldlt(shifted);
  return (ldlt.vectorD().array() < Scalar(0)).count();
}

}  // namespace detail

/// Smallest eigenvalue of a symmetric positive definite matrix by inverse
/// power iteration (Rayleigh quotient tolerance 1e-10 relative, at most 10n
/// iterations). The result is checked with an inertia count; if a smaller
/// eigenvalue exists the dense symmetric eigensolver is used instead.
template <typename Scalar>
std::optional<EigenEstimate<Scalar>> smallest_eigenvalue(const Matrix<Scalar>& q) {
  const Index n = q.rows();
  Eigen::LLT<Matrix<Scalar>> llt(q);
  if (llt.info() != Eigen::Success) return std::nullopt;

  EigenEstimate<Scalar> est;
  Vector<Scalar> x = Vector<Scalar>::Ones(n) / std::sqrt(Scalar(n));
  Scalar theta = x.dot(q * x);
  const std::size_t cap = static_cast<std::size_t>(10 * n);
  for (std::size_t k = 1; k <= cap; ++k) {
    Vector<Scalar> y = llt.solve(x);
    const Scalar norm = y.norm();
    using std::isfinite;
    if (!(norm > Scalar(0)) || !isfinite(norm)) return std::nullopt;
    x = y / norm;
    const Scalar next = x.dot(q * x);
    est.iterations = k;
    using std::abs;
    if (abs(next - theta) <= Scalar(1e-10) * abs(next)) {
      theta = next;
      est.converged = true;
      break;
    }
    theta = next;
  }
  est.value = theta;

  const bool smaller_exists = detail::eigenvalues_below(q, theta * (Scalar(1) - Scalar(1e-6))) > 0;
  if (!est.converged || smaller_exists) {
    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> eig(q, Eigen::EigenvaluesOnly);
    est.value = eig.eigenvalues().minCoeff();
    est.used_fallback = true;
  }
  return est;
}

/// Largest eigenvalue by power iteration; used only for conditioning flags.
template <typename Scalar>
Scalar largest_eigenvalue(const Matrix<Scalar>& q) {
  const Index n = q.rows();
  Vector<Scalar> x = Vector<Scalar>::Ones(n) / std::sqrt(Scalar(n));
  Scalar theta = x.dot(q * x);
  for (Index k = 0; k < 10 * n + 50; ++k) {
    Vector<Scalar> y = q * x;
    const Scalar norm = y.norm();
    if (!(norm > Scalar(0))) break;
    x = y / norm;
    const Scalar next = x.dot(q * x);
    using std::abs;
    if (abs(next - theta) <= Scalar(1e-10) * abs(next)) return next;
    theta = next;
  }
  return theta;
}

inline constexpr double kNearSingularRatio = 1e-14;

template <typename Scalar>
struct Delta0Bound {
  Scalar value{};            // min of the two forms below; 0 when near singular
  Scalar eigenvalue_form{};  // lambda_min / sqrt(n)
  Scalar rayleigh_form{};    // sqrt(lambda_min) / sqrt(n)
  Scalar lambda_min{};
  Scalar lambda_max{};
  bool near_singular = false;
};

/// Lower bound on Delta_0 = min{||Ax|| : x in the unit simplex}.
template <typename Scalar>
Delta0Bound<Scalar> delta0_lower_bound(const LinearSystem<Scalar>& system) {
  const Matrix<Scalar> q = system.a().transpose() * system.a();
  Delta0Bound<Scalar> out;
  out.lambda_max = largest_eigenvalue(q);
  const auto est = smallest_eigenvalue(q);
  if (!est || !(est->value >= Scalar(kNearSingularRatio) * out.lambda_max)) {
    out.near_singular = true;
    out.lambda_min = est ? est->value : Scalar(0);
    return out;
  }
  using std::sqrt;
  const Scalar root_n = sqrt(Scalar(system.size()));
  out.lambda_min = est->value;
  out.eigenvalue_form = out.lambda_min / root_n;
  out.rayleigh_form = sqrt(out.lambda_min) / root_n;
  out.value = std::min(out.eigenvalue_form, out.rayleigh_form);
  return out;
}

inline constexpr double kLinearLogLimit = 700.0;

template <typename Scalar>
struct TauBounds {
  Scalar log_tau_star_prime{};  // via det(Q)
  Scalar log_tau_star{};        // via lambda_min^n
  std::optional<Scalar> tau_star_prime;  // present when the log is below 700
  std::optional<Scalar> tau_star;
  bool near_singular = false;
};

template <typename Scalar>
struct SystemAnalysis {
  Scalar lambda_min{};
  Scalar lambda_max{};
  Scalar log_det_q{};
  Vector<Scalar> q_norms;
  Scalar q_min{};
  Scalar w_norm{};
  Scalar delta0_lower{};
  Scalar delta0_lower_eigenvalue_form{};
  Scalar delta0_lower_rayleigh_form{};
  TauBounds<Scalar> tau;
  bool near_singular = false;
};

/// Full a-priori report for a system.
template <typename Scalar>
SystemAnalysis<Scalar> analyze_system(const LinearSystem<Scalar>& system) {
  using std::log;
  const Index n = system.size();
  const Matrix<Scalar> q = system.a().transpose() * system.a();
  const Vector<Scalar> w = system.a().transpose() * system.b();

  SystemAnalysis<Scalar> out;
  const Delta0Bound<Scalar> d0 = delta0_lower_bound(system);
  out.lambda_min = d0.lambda_min;
  out.lambda_max = d0.lambda_max;
  out.delta0_lower = d0.value;
  out.delta0_lower_eigenvalue_form = d0.eigenvalue_form;
  out.delta0_lower_rayleigh_form = d0.rayleigh_form;
  out.near_singular = d0.near_singular;

  out.q_norms = q.colwise().norm().transpose();
  out.q_min = out.q_norms.minCoeff();
  out.w_norm = w.norm();

  Eigen::LLT<Matrix<Scalar>> llt(q);
  if (llt.info() != Eigen::Success) {
    out.near_singular = true;
    out.log_det_q = -std::numeric_limits<Scalar>::infinity();
  } else {
    out.log_det_q = Scalar(2) * llt.matrixLLT().diagonal().array().log().sum();
  }

  TauBounds<Scalar>& tau = out.tau;
  tau.near_singular = out.near_singular;
  if (!out.near_singular) {
    const Scalar log_w = out.w_norm > Scalar(0) ? log(out.w_norm) : -std::numeric_limits<Scalar>::infinity();
    const Scalar numerator = out.q_norms.array().log().sum() + log_w - log(out.q_min);
    tau.log_tau_star_prime = numerator - out.log_det_q;
    tau.log_tau_star = numerator - Scalar(n) * log(out.lambda_min);
    using std::exp;
    if (tau.log_tau_star_prime < Scalar(kLinearLogLimit)) tau.tau_star_prime = exp(tau.log_tau_star_prime);
    if (tau.log_tau_star < Scalar(kLinearLogLimit)) tau.tau_star = exp(tau.log_tau_star);
  } else {
    tau.log_tau_star_prime = std::numeric_limits<Scalar>::infinity();
    tau.log_tau_star = std::numeric_limits<Scalar>::infinity();
  }
  return out;
}

/// Upper bounds tau_* >= tau'_* >= t_* on the least nonnegativity shift.
template <typename Scalar>
TauBounds<Scalar> tau_star_bounds(const LinearSystem<Scalar>& system) {
  return analyze_system(system).tau;
}

}  // namespace hullsolve

#endif  // HULLSOLVE_ANALYSIS_BOUNDS_HPP
