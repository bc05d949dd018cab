#ifndef HULLSOLVE_ORACLE_HPP
#define HULLSOLVE_ORACLE_HPP

// Ground truth used to check the solvers: elimination with partial pivoting,
// exact planar hull membership and distance, and a brute-force simplex
// minimiser for small point sets. None of it shares code with the Triangle
// Algorithm.

#include "hullsolve/types.hpp"

#include <vector>

namespace hullsolve::oracle {

using VectorXd = Vector<double>;
using MatrixXd = Matrix<double>;

struct OracleResult {
  VectorXd x_star;
  double t_star = 0.0;          // max(0, -min_i x*_i)
  bool membership = false;      // planar instances only
  double delta_exact = 0.0;     // distance from target to the hull
};

/// Gaussian elimination with partial pivoting. Throws SolveError
/// (SingularMatrix) when a pivot falls below 1e-13 times the largest
/// entry of the first pivot column.
VectorXd solve_exact(const MatrixXd& a, const VectorXd& b);

/// t_* = max(0, -min_i x_i).
double least_shift(const VectorXd& x);

struct Point2 {
  double x;
  double y;
};

/// Convex hull in counter-clockwise order (Andrew's monotone chain);
/// collinear points are dropped.
std::vector<Point2> convex_hull_2d(std::vector<Point2> points);

struct Membership2d {
  bool inside = false;
  double delta = 0.0;
};

/// Closed-hull membership and Euclidean distance from p to conv(points).
/// `points` holds the planar points as columns (2 x n).
Membership2d hull_membership_2d(const MatrixXd& points, const VectorXd& p);

double point_segment_distance(Point2 p, Point2 a, Point2 b);

/// Distance from p to conv(points) for small n: best point of the simplex
/// grid of resolution 1/grid_k (coarsened when the grid is too large),
/// polished by exact pairwise mass transfers.
double delta_brute(const MatrixXd& points, const VectorXd& p, int grid_k);

/// Linear-system oracle: x* and t_*.
OracleResult linear_oracle(const MatrixXd& a, const VectorXd& b);

}  // namespace hullsolve::oracle

#endif  // HULLSOLVE_ORACLE_HPP
