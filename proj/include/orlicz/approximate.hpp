#ifndef ORLICZ_APPROXIMATE_HPP
#define ORLICZ_APPROXIMATE_HPP

#include "orlicz/grid.hpp"

namespace orlicz {

/// Clamps values to [-n, n].
GridFunction value_truncate(const GridFunction& u, double n);

/// Zeroes values with 0 < |u| < eps.
GridFunction small_cutoff(const GridFunction& u, double eps);

/// Zeroes values outside the ball of the given radius around center.
GridFunction support_truncate(const GridFunction& u, const Point& center, double radius);

/// Same, centered at the grid centroid.
GridFunction support_truncate(const GridFunction& u, double radius);

/// Convolution with the compactly supported smooth bump of width eps,
/// sampled at the nodes with weights renormalized to sum 1 per node.
/// Preserves constants exactly. Throws MollifierTooWide when eps exceeds
/// half the smallest component extent.
GridFunction mollify(const GridFunction& u, double eps);

}  // namespace orlicz

#endif
