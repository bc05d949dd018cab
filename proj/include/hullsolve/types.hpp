#ifndef HULLSOLVE_TYPES_HPP
#define HULLSOLVE_TYPES_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace hullsolve {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

enum class ErrorCode {
  InvalidInput,
  DegeneratePivot,
  ZeroInColumnHull,
  AlphaBVanishes,
  CapExceeded,
  NoPositiveQuadratic,
  NearSingular,
  SingularMatrix,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DegeneratePivot: return "DegeneratePivot";
    case ErrorCode::ZeroInColumnHull: return "ZeroInColumnHull";
    case ErrorCode::AlphaBVanishes: return "AlphaBVanishes";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NoPositiveQuadratic: return "NoPositiveQuadratic";
    case ErrorCode::NearSingular: return "NearSingular";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
  }
  return "Unknown";
}

/// Error raised by the solvers; `code()` identifies the failure class.
class SolveError : public std::runtime_error {
 public:
  SolveError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hullsolve

#endif  // HULLSOLVE_TYPES_HPP
