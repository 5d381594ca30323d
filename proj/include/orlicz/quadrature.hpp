#ifndef ORLICZ_QUADRATURE_HPP
#define ORLICZ_QUADRATURE_HPP

#include <cmath>
#include <string>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/grid.hpp"
#include "orlicz/kernel.hpp"
#include "orlicz/threads.hpp"

namespace orlicz {

/// Pairwise (tree) sum: fixed reduction order, independent of thread count.
inline double pairwise_sum(const double* v, std::size_t n)
{
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v)
{
  return pairwise_sum(v.data(), v.size());
}

/// Discrete double integral over Omega x Omega:
///   sum_{i,j} integrand(i,j) * a(x_i - x_j) * w_i * w_j
/// with a per-row pairwise reduction followed by a pairwise reduction over
/// rows. Rows are distributed over threads; the result is bitwise identical
/// for any thread count. The integrand receives node indices.
template <class PairFn>
double quadrature_double(const Grid& grid, const Kernel& kernel, PairFn&& integrand)
{
  const std::size_t n = grid.size();
  std::vector<double> rows(n, 0.0);
  std::vector<std::size_t> bad(n, static_cast<std::size_t>(-1));

  parallel_for(n, [&](std::size_t i) {
    std::vector<double> terms(n);
    const Point& xi = grid.nodes[i];
    for (std::size_t j = 0; j < n; ++j) {
      const Point& xj = grid.nodes[j];
      const Point diff{xi[0] - xj[0], xi[1] - xj[1]};
      const double aij = kernel(diff);
      const double t = aij == 0.0 ? 0.0 : integrand(i, j) * aij * grid.weights[j];
      if (!std::isfinite(t)) { bad[i] = j; return; }
      terms[j] = t;
    }
    rows[i] = pairwise_sum(terms) * grid.weights[i];
  });

  for (std::size_t i = 0; i < n; ++i)
    if (bad[i] != static_cast<std::size_t>(-1))
      throw NonFiniteIntegrand("non-finite integrand at node pair (" + std::to_string(i) +
                               ", " + std::to_string(bad[i]) + ")");
  return pairwise_sum(rows);
}

/// Discrete single integral: sum_i f(i) * w_i with pairwise reduction.
template <class NodeFn>
double quadrature_single(const Grid& grid, NodeFn&& f)
{
  const std::size_t n = grid.size();
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) terms[i] = f(i) * grid.weights[i];
  return pairwise_sum(terms);
}

}  // namespace orlicz

#endif
