#ifndef ORLICZ_GRID_HPP
#define ORLICZ_GRID_HPP

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "orlicz/expr.hpp"

#include "json.hpp"

namespace orlicz {

struct BoxSpec {
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{1.0, 1.0};
  std::array<int, 2> cells{2, 1};
};

struct DomainSpec {
  int dimension = 1;
  std::vector<BoxSpec> boxes;

  static DomainSpec from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

/// Uniform cell-centered grid over one or more axis-aligned boxes. Nodes
/// are cell midpoints, weights are cell volumes.
class Grid {
 public:
  int dim = 1;
  std::vector<BoxSpec> boxes;
  std::vector<Point> nodes;
  std::vector<double> weights;
  std::vector<int> component;  // box index per node
  double total_measure = 0.0;

  std::size_t size() const { return nodes.size(); }
  std::size_t pair_count() const { return nodes.size() * nodes.size(); }

  /// Smallest per-axis box extent over all components.
  double min_extent() const;

  /// Weighted centroid of the whole grid.
  Point centroid() const;
};

/// Hard cap on node pairs: keeps the O(N^2) double sums at desk scale.
inline constexpr std::size_t kMaxPairCount = std::size_t{1} << 24;

/// Builds the grid. When kernel_r0 is given, multi-component domains are
/// checked for the gap condition dist(comp_i, comp_{i+1}) < 2*r0.
Grid build_grid(const DomainSpec& spec, std::optional<double> kernel_r0 = std::nullopt);

struct GridFunction {
  const Grid* grid = nullptr;
  std::vector<double> values;

  GridFunction() = default;
  GridFunction(const Grid& g, double fill = 0.0)
      : grid(&g), values(g.size(), fill) {}

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

/// Evaluates a closed-form expression of x0..x{d-1} at every node.
GridFunction grid_function_from_expr(const Grid& g, const std::string& expr);
GridFunction grid_function_from_expr(const Grid& g, const ScalarExpr& expr);

/// CSV exchange format: one row per node, columns x0[,x1],value.
void write_grid_function_csv(std::ostream& os, const GridFunction& u);
GridFunction read_grid_function_csv(std::istream& is, const Grid& g);

}  // namespace orlicz

#endif
