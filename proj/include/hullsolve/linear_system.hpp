#ifndef HULLSOLVE_LINEAR_SYSTEM_HPP
#define HULLSOLVE_LINEAR_SYSTEM_HPP

#include "hullsolve/types.hpp"

#include <algorithm>
#include <utility>

namespace hullsolve {

/// Square system Ax = b with the derived quantities the solvers share:
/// u = Ae and rho = max{||a_1||, ..., ||a_n||, ||b||}.
template <typename Scalar>
class LinearSystem {
 public:
  using VectorType = Vector<Scalar>;
  using MatrixType = Matrix<Scalar>;

  LinearSystem(MatrixType a, VectorType b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.rows() != a_.cols() || a_.rows() < 1)
      throw SolveError(ErrorCode::InvalidInput, "matrix must be square and non-empty");
    if (b_.size() != a_.rows())
      throw SolveError(ErrorCode::InvalidInput, "right-hand side length differs from matrix order");
    if (!a_.allFinite() || !b_.allFinite())
      throw SolveError(ErrorCode::InvalidInput, "non-finite entries");
    column_norms_ = a_.colwise().norm().transpose();
    if ((column_norms_.array() <= Scalar(0)).any())
      throw SolveError(ErrorCode::InvalidInput, "zero column: matrix is singular");
    b_norm_ = b_.norm();
    max_column_norm_ = column_norms_.maxCoeff();
    rho_ = std::max(max_column_norm_, b_norm_);
    u_ = a_.rowwise().sum();
    u_sq_norm_ = u_.squaredNorm();
  }

  Index size() const { return a_.rows(); }
  const MatrixType& a() const { return a_; }
  auto column(Index i) const { return a_.col(i); }
  const VectorType& b() const { return b_; }
  const VectorType& u() const { return u_; }
  const VectorType& column_norms() const { return column_norms_; }
  Scalar b_norm() const { return b_norm_; }
  Scalar u_squared_norm() const { return u_sq_norm_; }
  Scalar rho() const { return rho_; }

  /// b(t) = b + t u
  VectorType shifted_rhs(Scalar t) const { return b_ + t * u_; }

  /// rho(t) = max{||a_1||, ..., ||a_n||, ||b + t u||}
  Scalar rho_of_t(Scalar t) const { return std::max(max_column_norm_, shifted_rhs(t).norm()); }

  Scalar residual_norm(const VectorType& x) const { return (a_ * x - b_).norm(); }

 private:
  MatrixType a_;
  VectorType b_;
  VectorType u_;
  VectorType column_norms_;
  Scalar b_norm_{};
  Scalar max_column_norm_{};
  Scalar rho_{};
  Scalar u_sq_norm_{};
};

}  // namespace hullsolve

#endif  // HULLSOLVE_LINEAR_SYSTEM_HPP
