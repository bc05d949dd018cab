#ifndef HULLSOLVE_HULL_CORE_HPP
#define HULLSOLVE_HULL_CORE_HPP

// Triangle Algorithm for the convex hull decision problem: given points
// v_1..v_n (columns of a matrix) and a target p, either approximate p by a
// convex combination of the points or produce a witness p' in conv(S) that
// is strictly closer to every v_i than p is.

#include "hullsolve/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hullsolve {

enum class PivotRule { FirstFound, MostViolated };

enum class InitKind { NearestVertex, Centroid, Given };

template <typename Scalar>
struct InitRule {
  InitKind kind = InitKind::NearestVertex;
  Vector<Scalar> coeffs;  // used only by InitKind::Given

  static InitRule nearest_vertex() { return {InitKind::NearestVertex, {}}; }
  static InitRule centroid() { return {InitKind::Centroid, {}}; }
  static InitRule given(Vector<Scalar> c) { return {InitKind::Given, std::move(c)}; }
};

template <typename Scalar>
struct HullConfig {
  Scalar epsilon = Scalar(1e-6);
  std::optional<std::size_t> max_iterations;  // default: iteration_cap_from_bound(epsilon)
  PivotRule pivot_rule = PivotRule::MostViolated;
  InitRule<Scalar> init = InitRule<Scalar>::nearest_vertex();
  bool cache_dots = true;
  bool record_trace = false;

  void validate() const {
    if (!(epsilon > Scalar(0) && epsilon < Scalar(1)))
      throw SolveError(ErrorCode::InvalidInput, "epsilon must lie in (0,1)");
    if (max_iterations && *max_iterations < 1)
      throw SolveError(ErrorCode::InvalidInput, "max_iterations must be >= 1");
  }
};

/// Point set S (as matrix columns) together with the query point p.
template <typename Scalar>
class HullInstance {
 public:
  using VectorType = Vector<Scalar>;
  using MatrixType = Matrix<Scalar>;

  HullInstance(MatrixType points, VectorType target)
      : points_(std::move(points)), target_(std::move(target)) {
    if (points_.cols() < 1 || points_.rows() < 1)
      throw SolveError(ErrorCode::InvalidInput, "hull instance needs n >= 1 points of dimension m >= 1");
    if (target_.size() != points_.rows())
      throw SolveError(ErrorCode::InvalidInput, "target dimension differs from point dimension");
    if (!points_.allFinite() || !target_.allFinite())
      throw SolveError(ErrorCode::InvalidInput, "non-finite coordinates");
    squared_norms_ = points_.colwise().squaredNorm().transpose();
    target_dots_ = points_.transpose() * target_;
    target_sq_norm_ = target_.squaredNorm();
    radius_ = (points_.colwise() - target_).colwise().norm().maxCoeff();
  }

  Index size() const { return points_.cols(); }
  Index dim() const { return points_.rows(); }
  const MatrixType& points() const { return points_; }
  auto point(Index i) const { return points_.col(i); }
  const VectorType& target() const { return target_; }

  /// R = max_i ||p - v_i||.
  Scalar radius() const { return radius_; }
  const VectorType& squared_norms() const { return squared_norms_; }
  /// p^T v_i for every i.
  const VectorType& target_dots() const { return target_dots_; }
  Scalar target_squared_norm() const { return target_sq_norm_; }
  Scalar distance_to(Index i) const { return (points_.col(i) - target_).norm(); }

  VectorType gram_column(Index j) const { return points_.transpose() * points_.col(j); }

 private:
  MatrixType points_;
  VectorType target_;
  VectorType squared_norms_;
  VectorType target_dots_;
  Scalar target_sq_norm_{};
  Scalar radius_{};
};

/// A point of conv(S) carried with its convex-combination coefficients.
template <typename Scalar>
struct Iterate {
  Vector<Scalar> coeffs;
  Vector<Scalar> point;
  std::optional<Vector<Scalar>> dots;  // point^T v_i
  Scalar gap{};                         // ||p - point||
};

/// Certificate that the target lies outside conv(S).
template <typename Scalar>
struct Witness {
  Iterate<Scalar> iterate;
  // (p - p')^T v_i - (||p||^2 - ||p'||^2)/2, all strictly negative.
  Vector<Scalar> margins;
  Scalar distance_low{};   // ||p - p'|| / 2
  Scalar distance_high{};  // ||p - p'||
};

enum class HullStatus { InHullApprox, NotInHull, CapExceeded };

inline const char* to_string(HullStatus s) {
  switch (s) {
    case HullStatus::InHullApprox: return "InHullApprox";
    case HullStatus::NotInHull: return "NotInHull";
    case HullStatus::CapExceeded: return "CapExceeded";
  }
  return "Unknown";
}

template <typename Scalar>
struct HullTraceRecord {
  std::size_t iteration;
  Scalar gap;
  Index pivot;
  Scalar step;
};

template <typename Scalar>
struct HullOutcome {
  HullStatus status = HullStatus::CapExceeded;
  Iterate<Scalar> iterate;
  std::optional<Witness<Scalar>> witness;
  std::size_t iterations = 0;
  std::size_t iteration_cap = 0;
  Scalar initial_gap{};  // delta_0
  std::optional<Index> last_pivot;
  std::vector<HullTraceRecord<Scalar>> trace;
};

namespace detail {

template <typename Scalar>
constexpr Scalar coeff_dust() { return Scalar(1e-15); }

// Zero out dust and renormalise to a probability vector.
template <typename Scalar>
void clean_coefficients(Vector<Scalar>& c) {
  for (Index i = 0; i < c.size(); ++i)
    if (c[i] < coeff_dust<Scalar>()) c[i] = Scalar(0);
  const Scalar total = c.sum();
  if (total > Scalar(0)) c /= total;
}

}  // namespace detail

/// Builds an iterate from explicit coefficients; point and caches are derived.
template <typename Scalar>
Iterate<Scalar> make_iterate(const HullInstance<Scalar>& inst, Vector<Scalar> coeffs, bool cache_dots) {
  if (coeffs.size() != inst.size())
    throw SolveError(ErrorCode::InvalidInput, "coefficient vector has wrong length");
  if ((coeffs.array() < -detail::coeff_dust<Scalar>()).any())
    throw SolveError(ErrorCode::InvalidInput, "coefficients must be nonnegative");
  using std::abs;
  if (abs(coeffs.sum() - Scalar(1)) > Scalar(1e-9))
    throw SolveError(ErrorCode::InvalidInput, "coefficients must sum to one");
  detail::clean_coefficients(coeffs);
  Iterate<Scalar> it;
  it.point = inst.points() * coeffs;
  it.coeffs = std::move(coeffs);
  if (cache_dots) it.dots = inst.points().transpose() * it.point;
  it.gap = (inst.target() - it.point).norm();
  return it;
}

template <typename Scalar>
Iterate<Scalar> vertex_iterate(const HullInstance<Scalar>& inst, Index j, bool cache_dots) {
  Iterate<Scalar> it;
  it.coeffs = Vector<Scalar>::Zero(inst.size());
  it.coeffs[j] = Scalar(1);
  it.point = inst.point(j);
  if (cache_dots) it.dots = inst.gram_column(j);
  it.gap = inst.distance_to(j);
  return it;
}

template <typename Scalar>
Iterate<Scalar> initial_iterate(const HullInstance<Scalar>& inst, const InitRule<Scalar>& rule, bool cache_dots) {
  switch (rule.kind) {
    case InitKind::NearestVertex: {
      Index best = 0;
      (inst.points().colwise() - inst.target()).colwise().squaredNorm().minCoeff(&best);
      return vertex_iterate(inst, best, cache_dots);
    }
    case InitKind::Centroid:
      return make_iterate(inst, Vector<Scalar>(Vector<Scalar>::Constant(inst.size(), Scalar(1) / Scalar(inst.size()))), cache_dots);
    case InitKind::Given:
      return make_iterate(inst, rule.coeffs, cache_dots);
  }
  throw SolveError(ErrorCode::InvalidInput, "unknown init rule");
}

/// Margin of every point: (p - p')^T v_i - (||p||^2 - ||p'||^2)/2.
/// v_i is a pivot iff its margin is >= 0; p' is a witness iff all are < 0.
template <typename Scalar>
Vector<Scalar> pivot_margins(const HullInstance<Scalar>& inst, const Iterate<Scalar>& it) {
  const Scalar half_diff = Scalar(0.5) * (inst.target_squared_norm() - it.point.squaredNorm());
  if (it.dots) return (inst.target_dots() - *it.dots).array() - half_diff;
  const Vector<Scalar> diff = inst.target() - it.point;
  Vector<Scalar> margins(inst.size());
  for (Index i = 0; i < inst.size(); ++i) margins[i] = diff.dot(inst.point(i)) - half_diff;
  return margins;
}

template <typename Scalar>
std::optional<Index> find_pivot(const HullInstance<Scalar>& inst, const Iterate<Scalar>& it, PivotRule rule) {
  const Scalar half_diff = Scalar(0.5) * (inst.target_squared_norm() - it.point.squaredNorm());
  if (rule == PivotRule::FirstFound) {
    const Vector<Scalar> diff = inst.target() - it.point;
    for (Index i = 0; i < inst.size(); ++i) {
      const Scalar m = it.dots ? inst.target_dots()[i] - (*it.dots)[i] - half_diff
                               : diff.dot(inst.point(i)) - half_diff;
      if (m >= Scalar(0)) return i;
    }
    return std::nullopt;
  }
  const Vector<Scalar> margins = pivot_margins(inst, it);
  Index best = 0;
  const Scalar top = margins.maxCoeff(&best);  // first maximal index
  if (top >= Scalar(0)) return best;
  return std::nullopt;
}

template <typename Scalar>
std::optional<Witness<Scalar>> check_witness(const HullInstance<Scalar>& inst, const Iterate<Scalar>& it) {
  Vector<Scalar> margins = pivot_margins(inst, it);
  if ((margins.array() >= Scalar(0)).any()) return std::nullopt;
  Witness<Scalar> w;
  w.iterate = it;
  w.margins = std::move(margins);
  w.distance_high = it.gap;
  w.distance_low = Scalar(0.5) * it.gap;
  return w;
}

/// Step toward the pivot: the closest point to p on the line through p' and
/// the pivot, restricted to the segment. Accepts any Eigen vector expressions.
template <typename DerivedP, typename DerivedQ, typename DerivedV>
typename DerivedP::Scalar step_size(const Eigen::MatrixBase<DerivedP>& p, const Eigen::MatrixBase<DerivedQ>& current,
                                    const Eigen::MatrixBase<DerivedV>& pivot) {
  using Scalar = typename DerivedP::Scalar;
  const auto toward = (pivot - current).eval();
  const Scalar denom = toward.squaredNorm();
  if (denom < Scalar(1e-30))
    throw SolveError(ErrorCode::DegeneratePivot, "pivot coincides with the current iterate");
  const Scalar alpha = (p - current).dot(toward) / denom;
  return std::clamp(alpha, Scalar(0), Scalar(1));
}

template <typename Scalar>
Scalar step_size(const HullInstance<Scalar>& inst, const Iterate<Scalar>& it, Index j) {
  return step_size(inst.target(), it.point, inst.point(j));
}

/// Memoises Gram columns V^T v_j of pivots already visited.
template <typename Scalar>
class GramColumnCache {
 public:
  explicit GramColumnCache(std::size_t capacity = 4096) : capacity_(capacity) {}

  const Vector<Scalar>& column(const HullInstance<Scalar>& inst, Index j) {
    auto found = columns_.find(j);
    if (found != columns_.end()) return found->second;
    if (columns_.size() >= capacity_) columns_.clear();
    return columns_.emplace(j, inst.gram_column(j)).first->second;
  }

  void clear() { columns_.clear(); }

 private:
  std::size_t capacity_;
  std::unordered_map<Index, Vector<Scalar>> columns_;
};

/// p'' = (1 - alpha) p' + alpha v_j, with coefficients and dot cache updated in O(n).
template <typename Scalar>
Iterate<Scalar> apply_step(const HullInstance<Scalar>& inst, const Iterate<Scalar>& it, Index j, Scalar alpha,
                           GramColumnCache<Scalar>* gram = nullptr) {
  if (!(alpha >= Scalar(0) && alpha <= Scalar(1)))
    throw SolveError(ErrorCode::InvalidInput, "step size outside [0,1]");
  if (alpha == Scalar(1)) return vertex_iterate(inst, j, it.dots.has_value());

  Iterate<Scalar> next;
  const Scalar keep = Scalar(1) - alpha;
  next.coeffs = keep * it.coeffs;
  next.coeffs[j] += alpha;
  detail::clean_coefficients(next.coeffs);
  next.point = keep * it.point + alpha * inst.point(j);
  if (it.dots) {
    if (gram)
      next.dots = keep * *it.dots + alpha * gram->column(inst, j);
    else
      next.dots = keep * *it.dots + alpha * inst.gram_column(j);
  }
  next.gap = (inst.target() - next.point).norm();
  return next;
}

/// Recompute point and dot cache from the coefficients, discarding drift.
template <typename Scalar>
void refresh(const HullInstance<Scalar>& inst, Iterate<Scalar>& it) {
  it.point = inst.points() * it.coeffs;
  if (it.dots) it.dots = inst.points().transpose() * it.point;
  it.gap = (inst.target() - it.point).norm();
}

/// ceil(48 / eps^2), the iteration bound for reaching an eps-approximation.
template <typename Scalar>
std::size_t iteration_cap_from_bound(Scalar epsilon) {
  if (!(epsilon > Scalar(0) && epsilon < Scalar(1)))
    throw SolveError(ErrorCode::InvalidInput, "epsilon must lie in (0,1)");
  using std::ceil;
  using std::round;
  using std::abs;
  const Scalar raw = Scalar(48) / (epsilon * epsilon);
  if (raw >= Scalar(std::numeric_limits<std::size_t>::max() / 2))
    return std::numeric_limits<std::size_t>::max() / 2;
  // Absorb rounding in eps^2 so exact integers are not bumped up by one.
  const Scalar nearest = round(raw);
  if (abs(raw - nearest) <= Scalar(64) * std::numeric_limits<Scalar>::epsilon() * raw)
    return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(ceil(raw));
}

inline constexpr std::size_t kRefreshInterval = 1024;

/// Gap below which the margin signs are decided by rounding error.
template <typename Scalar>
Scalar rounding_gap(const HullInstance<Scalar>& inst) {
  using std::sqrt;
  return Scalar(64) * std::numeric_limits<Scalar>::epsilon() * (inst.radius() + sqrt(inst.target_squared_norm()));
}

template <typename Scalar>
HullOutcome<Scalar> run_hull(const HullInstance<Scalar>& inst, const HullConfig<Scalar>& config) {
  config.validate();
  HullOutcome<Scalar> out;
  out.iteration_cap = config.max_iterations.value_or(iteration_cap_from_bound(config.epsilon));
  GramColumnCache<Scalar> gram;
  Iterate<Scalar> it = initial_iterate(inst, config.init, config.cache_dots);
  out.initial_gap = it.gap;

  for (std::size_t k = 0;; ++k) {
    const std::optional<Index> pivot = find_pivot(inst, it, config.pivot_rule);
    if (!pivot && it.gap <= rounding_gap(inst)) {
      // p' equals p to working precision; the margins are noise, not a certificate.
      out.status = HullStatus::InHullApprox;
      out.iterations = k;
      out.iterate = std::move(it);
      return out;
    }
    if (!pivot) {
      out.status = HullStatus::NotInHull;
      out.witness = check_witness(inst, it);
      out.iterations = k;
      out.iterate = std::move(it);
      return out;
    }
    out.last_pivot = pivot;
    if (it.gap <= config.epsilon * inst.distance_to(*pivot)) {
      out.status = HullStatus::InHullApprox;
      out.iterations = k;
      out.iterate = std::move(it);
      return out;
    }
    if (k >= out.iteration_cap) {
      out.status = HullStatus::CapExceeded;
      out.iterations = k;
      out.iterate = std::move(it);
      return out;
    }
    const Scalar alpha = step_size(inst, it, *pivot);
    it = apply_step(inst, it, *pivot, alpha, config.cache_dots ? &gram : nullptr);
    if ((k + 1) % kRefreshInterval == 0) refresh(inst, it);
    if (config.record_trace) out.trace.push_back({k + 1, it.gap, *pivot, alpha});
  }
}

}  // namespace hullsolve

#endif  // HULLSOLVE_HULL_CORE_HPP
