#include "orlicz/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "orlicz/errors.hpp"

namespace orlicz {

DomainSpec DomainSpec::from_json(const nlohmann::json& j)
{
  DomainSpec spec;
  spec.dimension = j.value("dimension", 1);
  if (spec.dimension < 1 || spec.dimension > 2)
    throw ConfigError("domain dimension must be 1 or 2");
  if (!j.contains("boxes") || !j["boxes"].is_array() || j["boxes"].empty())
    throw ConfigError("domain spec needs a non-empty 'boxes' array");
  for (const auto& b : j["boxes"]) {
    BoxSpec box;
    const auto& lo = b.at("min");
    const auto& hi = b.at("max");
    const auto& cells = b.at("cells");
    for (int d = 0; d < spec.dimension; ++d) {
      box.lo[d] = lo.at(d).get<double>();
      box.hi[d] = hi.at(d).get<double>();
      box.cells[d] = cells.at(d).get<int>();
    }
    spec.boxes.push_back(box);
  }
  return spec;
}

nlohmann::ordered_json DomainSpec::to_json() const
{
  nlohmann::ordered_json j;
  j["dimension"] = dimension;
  j["boxes"] = nlohmann::ordered_json::array();
  for (const auto& b : boxes) {
    nlohmann::ordered_json jb;
    jb["min"] = std::vector<double>(b.lo.begin(), b.lo.begin() + dimension);
    jb["max"] = std::vector<double>(b.hi.begin(), b.hi.begin() + dimension);
    jb["cells"] = std::vector<int>(b.cells.begin(), b.cells.begin() + dimension);
    j["boxes"].push_back(jb);
  }
  return j;
}

double Grid::min_extent() const
{
  double m = std::numeric_limits<double>::max();
  for (const auto& b : boxes)
    for (int d = 0; d < dim; ++d) m = std::min(m, b.hi[d] - b.lo[d]);
  return m;
}

Point Grid::centroid() const
{
  Point c{0.0, 0.0};
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (int d = 0; d < dim; ++d) c[d] += nodes[i][d] * weights[i];
  for (int d = 0; d < dim; ++d) c[d] /= total_measure;
  return c;
}

namespace {

bool boxes_overlap(const BoxSpec& a, const BoxSpec& b, int dim)
{
  for (int d = 0; d < dim; ++d)
    if (a.hi[d] <= b.lo[d] || b.hi[d] <= a.lo[d]) return false;
  return true;
}

double box_distance(const BoxSpec& a, const BoxSpec& b, int dim)
{
  double s = 0.0;
  for (int d = 0; d < dim; ++d) {
    const double gap = std::max({0.0, b.lo[d] - a.hi[d], a.lo[d] - b.hi[d]});
    s += gap * gap;
  }
  return std::sqrt(s);
}

}  // namespace

Grid build_grid(const DomainSpec& spec, std::optional<double> kernel_r0)
{
  Grid g;
  g.dim = spec.dimension;
  g.boxes = spec.boxes;

  std::size_t total_nodes = 0;
  for (const auto& b : spec.boxes) {
    std::size_t n = 1;
    for (int d = 0; d < g.dim; ++d) {
      if (!(b.lo[d] < b.hi[d]))
        throw ConfigError("box needs min < max on every axis");
      if (b.cells[d] < 2)
        throw ConfigError("box needs at least 2 cells per axis");
      n *= static_cast<std::size_t>(b.cells[d]);
    }
    total_nodes += n;
  }
  if (total_nodes * total_nodes > kMaxPairCount)
    throw ConfigError("grid produces " + std::to_string(total_nodes * total_nodes) +
                      " node pairs, exceeding the 2^24 cap");

  for (std::size_t i = 0; i < spec.boxes.size(); ++i)
    for (std::size_t j = i + 1; j < spec.boxes.size(); ++j)
      if (boxes_overlap(spec.boxes[i], spec.boxes[j], g.dim))
        throw ConfigError("domain boxes overlap");

  if (kernel_r0 && spec.boxes.size() > 1) {
    const double diam_b0 = 2.0 * *kernel_r0;
    for (std::size_t i = 0; i + 1 < spec.boxes.size(); ++i) {
      const double gap = box_distance(spec.boxes[i], spec.boxes[i + 1], g.dim);
      if (gap >= diam_b0)
        throw ComponentGapTooLarge("component gap " + std::to_string(gap) +
                                   " >= kernel ball diameter " + std::to_string(diam_b0));
    }
  }

  g.nodes.reserve(total_nodes);
  g.weights.reserve(total_nodes);
  g.component.reserve(total_nodes);
  for (std::size_t bi = 0; bi < spec.boxes.size(); ++bi) {
    const auto& b = spec.boxes[bi];
    std::array<double, 2> h{0.0, 0.0};
    double vol = 1.0;
    for (int d = 0; d < g.dim; ++d) {
      h[d] = (b.hi[d] - b.lo[d]) / b.cells[d];
      vol *= h[d];
    }
    if (g.dim == 1) {
      for (int i = 0; i < b.cells[0]; ++i) {
        g.nodes.push_back(Point{b.lo[0] + (i + 0.5) * h[0], 0.0});
        g.weights.push_back(vol);
        g.component.push_back(static_cast<int>(bi));
      }
    } else {
      for (int i = 0; i < b.cells[0]; ++i)
        for (int j = 0; j < b.cells[1]; ++j) {
          g.nodes.push_back(Point{b.lo[0] + (i + 0.5) * h[0], b.lo[1] + (j + 0.5) * h[1]});
          g.weights.push_back(vol);
          g.component.push_back(static_cast<int>(bi));
        }
    }
  }
  g.total_measure = 0.0;
  for (double w : g.weights) g.total_measure += w;
  return g;
}

GridFunction grid_function_from_expr(const Grid& g, const ScalarExpr& expr)
{
  GridFunction u(g);
  for (std::size_t i = 0; i < g.size(); ++i) u[i] = expr.eval(g.nodes[i]);
  return u;
}

GridFunction grid_function_from_expr(const Grid& g, const std::string& expr)
{
  return grid_function_from_expr(g, ScalarExpr::parse(expr));
}

void write_grid_function_csv(std::ostream& os, const GridFunction& u)
{
  const Grid& g = *u.grid;
  os << (g.dim == 1 ? "x0,value\n" : "x0,x1,value\n");
  char buf[128];
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.dim == 1)
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", g.nodes[i][0], u[i]);
    else
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.nodes[i][0], g.nodes[i][1], u[i]);
    os << buf;
  }
}

GridFunction read_grid_function_csv(std::istream& is, const Grid& g)
{
  GridFunction u(g);
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty grid-function CSV");
  std::size_t row = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (row >= g.size()) throw IoError("grid-function CSV has more rows than grid nodes");
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> cols;
    while (std::getline(ss, cell, ',')) cols.push_back(std::stod(cell));
    if (cols.size() != static_cast<std::size_t>(g.dim) + 1)
      throw IoError("grid-function CSV row has wrong column count");
    u[row] = cols.back();
    ++row;
  }
  if (row != g.size()) throw IoError("grid-function CSV has fewer rows than grid nodes");
  return u;
}

}  // namespace orlicz
