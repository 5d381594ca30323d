#include "orlicz/approximate.hpp"

#include <algorithm>
#include <cmath>

#include "orlicz/errors.hpp"
#include "orlicz/threads.hpp"

namespace orlicz {

GridFunction value_truncate(const GridFunction& u, double n)
{
  GridFunction v = u;
  for (double& x : v.values) x = std::clamp(x, -n, n);
  return v;
}

GridFunction small_cutoff(const GridFunction& u, double eps)
{
  GridFunction v = u;
  for (double& x : v.values)
    if (x != 0.0 && std::fabs(x) < eps) x = 0.0;
  return v;
}

GridFunction support_truncate(const GridFunction& u, const Point& center, double radius)
{
  const Grid& g = *u.grid;
  GridFunction v = u;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double r2 = 0.0;
    for (int d = 0; d < g.dim; ++d) {
      const double dx = g.nodes[i][d] - center[d];
      r2 += dx * dx;
    }
    if (r2 > radius * radius) v[i] = 0.0;
  }
  return v;
}

GridFunction support_truncate(const GridFunction& u, double radius)
{
  return support_truncate(u, u.grid->centroid(), radius);
}

namespace {

// Smooth bump profile exp(-1 / (1 - r^2)) on r < 1, zero outside.
double bump(double r)
{
  const double r2 = r * r;
  if (r2 >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - r2));
}

}  // namespace

GridFunction mollify(const GridFunction& u, double eps)
{
  const Grid& g = *u.grid;
  if (!(eps > 0.0)) throw ConfigError("mollifier width must be positive");
  if (eps > 0.5 * g.min_extent())
    throw MollifierTooWide("mollifier width " + std::to_string(eps) +
                           " exceeds half the smallest component extent " +
                           std::to_string(0.5 * g.min_extent()));

  GridFunction v(g);
  const std::size_t n = g.size();
  parallel_for(n, [&](std::size_t i) {
    double acc = 0.0, wsum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double r2 = 0.0;
      for (int d = 0; d < g.dim; ++d) {
        const double dx = g.nodes[i][d] - g.nodes[j][d];
        r2 += dx * dx;
      }
      if (r2 >= eps * eps) continue;
      const double w = bump(std::sqrt(r2) / eps) * g.weights[j];
      acc += w * u[j];
      wsum += w;
    }
    v[i] = acc / wsum;  // wsum > 0: the node itself is in the stencil
  });
  return v;
}

}  // namespace orlicz
