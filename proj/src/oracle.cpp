#include "hullsolve/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace hullsolve::oracle {

VectorXd solve_exact(const MatrixXd& a, const VectorXd& b) {
  const Index n = a.rows();
  if (a.cols() != n || b.size() != n)
    throw SolveError(ErrorCode::InvalidInput, "solve_exact needs a square matrix and matching rhs");
  MatrixXd m = a;
  VectorXd rhs = b;

  double reference = 0.0;
  for (Index i = 0; i < n; ++i) reference = std::max(reference, std::abs(m(i, 0)));
  const double tol = 1e-13 * reference;

  for (Index k = 0; k < n; ++k) {
    Index piv = k;
    for (Index i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (!(std::abs(m(piv, k)) > tol)) throw SolveError(ErrorCode::SingularMatrix, "pivot below tolerance");
    if (piv != k) {
      m.row(k).swap(m.row(piv));
      std::swap(rhs[k], rhs[piv]);
    }
    for (Index i = k + 1; i < n; ++i) {
      const double f = m(i, k) / m(k, k);
      if (f == 0.0) continue;
      for (Index j = k; j < n; ++j) m(i, j) -= f * m(k, j);
      rhs[i] -= f * rhs[k];
    }
  }

  VectorXd x(n);
  for (Index i = n - 1; i >= 0; --i) {
    double s = rhs[i];
    for (Index j = i + 1; j < n; ++j) s -= m(i, j) * x[j];
    x[i] = s / m(i, i);
  }
  return x;
}

double least_shift(const VectorXd& x) { return std::max(0.0, -x.minCoeff()); }

OracleResult linear_oracle(const MatrixXd& a, const VectorXd& b) {
  OracleResult r;
  r.x_star = solve_exact(a, b);
  r.t_star = least_shift(r.x_star);
  return r;
}

namespace {

double cross(Point2 o, Point2 a, Point2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

double dist(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

std::vector<Point2> convex_hull_2d(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point2& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return dist(p, a);
  const double s = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  return dist(p, Point2{a.x + s * dx, a.y + s * dy});
}

Membership2d hull_membership_2d(const MatrixXd& points, const VectorXd& p) {
  if (points.rows() != 2 || p.size() != 2) throw SolveError(ErrorCode::InvalidInput, "planar oracle needs m = 2");
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(points.cols()));
  for (Index i = 0; i < points.cols(); ++i) pts.push_back({points(0, i), points(1, i)});
  const std::vector<Point2> hull = convex_hull_2d(std::move(pts));
  const Point2 q{p[0], p[1]};

  Membership2d out;
  if (hull.size() == 1) {
    out.delta = dist(q, hull[0]);
  } else if (hull.size() == 2) {
    out.delta = point_segment_distance(q, hull[0], hull[1]);
  } else {
    bool inside = true;
    for (std::size_t i = 0; i < hull.size(); ++i)
      if (cross(hull[i], hull[(i + 1) % hull.size()], q) < 0) inside = false;
    if (inside) {
      out.inside = true;
      out.delta = 0.0;
      return out;
    }
    out.delta = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < hull.size(); ++i)
      out.delta = std::min(out.delta, point_segment_distance(q, hull[i], hull[(i + 1) % hull.size()]));
  }
  out.inside = out.delta == 0.0;
  return out;
}

namespace {

// Number of grid points of the simplex of dimension n-1 at resolution k,
// saturating at `limit`.
double grid_size(int n, int k, double limit) {
  double c = 1.0;
  for (int i = 1; i < n; ++i) {
    c = c * (k + i) / i;
    if (c > limit) return limit + 1;
  }
  return c;
}

void enumerate_grid(int n, int k, std::vector<int>& counts, int pos, int left, const MatrixXd& pts, const VectorXd& p,
                    double& best, VectorXd& best_alpha) {
  if (pos == n - 1) {
    counts[static_cast<std::size_t>(pos)] = left;
    VectorXd x = VectorXd::Zero(p.size());
    for (int i = 0; i < n; ++i) x += (double(counts[static_cast<std::size_t>(i)]) / k) * pts.col(i);
    const double d = (x - p).norm();
    if (d < best) {
      best = d;
      for (int i = 0; i < n; ++i) best_alpha[i] = double(counts[static_cast<std::size_t>(i)]) / k;
    }
    return;
  }
  for (int c = 0; c <= left; ++c) {
    counts[static_cast<std::size_t>(pos)] = c;
    enumerate_grid(n, k, counts, pos + 1, left - c, pts, p, best, best_alpha);
  }
}

}  // namespace

double delta_brute(const MatrixXd& points, const VectorXd& p, int grid_k) {
  const int n = static_cast<int>(points.cols());
  if (n < 1 || points.rows() != p.size()) throw SolveError(ErrorCode::InvalidInput, "bad oracle instance");
  if (n == 1) return (points.col(0) - p).norm();

  constexpr double kMaxGrid = 2e5;
  int k = std::max(1, grid_k);
  while (k > 1 && grid_size(n, k, kMaxGrid) > kMaxGrid) k /= 2;

  std::vector<int> counts(static_cast<std::size_t>(n), 0);
  double best = std::numeric_limits<double>::infinity();
  VectorXd alpha = VectorXd::Zero(n);
  enumerate_grid(n, k, counts, 0, k, points, p, best, alpha);

  // Exact line search moving mass between pairs of coordinates.
  VectorXd x = points * alpha;
  for (int sweep = 0; sweep < 20000; ++sweep) {
    double improvement = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j || alpha[j] <= 0.0) continue;
        const VectorXd d = points.col(i) - points.col(j);
        const double dd = d.squaredNorm();
        if (dd == 0.0) continue;
        const double delta = std::clamp(-(x - p).dot(d) / dd, -alpha[i], alpha[j]);
        if (delta <= 0.0) continue;
        const double before = (x - p).squaredNorm();
        const VectorXd moved = x + delta * d;
        const double after = (moved - p).squaredNorm();
        if (after < before) {
          alpha[i] += delta;
          alpha[j] -= delta;
          x = moved;
          improvement += before - after;
        }
      }
    }
    if (improvement <= 1e-30) break;
  }
  return std::min(best, (x - p).norm());
}

}  // namespace hullsolve::oracle
