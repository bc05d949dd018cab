#ifndef HULLSOLVE_TESTS_SUPPORT_HPP
#define HULLSOLVE_TESTS_SUPPORT_HPP

#include "hullsolve/types.hpp"

#include <cmath>
#include <initializer_list>
#include <random>

namespace testing {

using hullsolve::Index;
using Vec = hullsolve::Vector<double>;
using Mat = hullsolve::Matrix<double>;

inline Mat rows(std::initializer_list<std::initializer_list<double>> r) {
  Mat m(Index(r.size()), Index(r.begin()->size()));
  Index i = 0;
  for (const auto& row : r) {
    Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline Vec vec(std::initializer_list<double> v) {
  Vec out(Index(v.size()));
  Index i = 0;
  for (double d : v) out[i++] = d;
  return out;
}

// Columns are the points.
inline Mat cols(std::initializer_list<std::initializer_list<double>> c) { return rows(c).transpose(); }

inline Mat gaussian(Index r, Index c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat m(r, c);
  for (Index j = 0; j < c; ++j)
    for (Index i = 0; i < r; ++i) m(i, j) = g(rng);
  return m;
}

inline Vec uniform(Index n, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

// Uniform point of the probability simplex.
inline Vec simplex_point(Index n, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = e(rng);
  return v / v.sum();
}

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline double rel_diff(double a, double b) {
  const double s = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / s;
}

}  // namespace testing

#endif  // HULLSOLVE_TESTS_SUPPORT_HPP
