#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "orlicz/family.hpp"
#include "orlicz/functionals.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/quadrature.hpp"

using namespace orlicz;
using nlohmann::json;

namespace {

struct Setup {
  Grid grid;
  Kernel kernel;
  PhiFunction phi;
};

Setup make(int cells, double p = 2.0)
{
  Setup s;
  DomainSpec d;
  d.dimension = 1;
  BoxSpec b;
  b.lo = {0.0, 0.0};
  b.hi = {1.0, 1.0};
  b.cells = {cells, 1};
  d.boxes = {b};
  s.grid = build_grid(d);
  KernelSpec ks;
  ks.kind = "indicator";
  ks.r = 1.0;
  s.kernel = build_kernel(ks, 1);
  s.phi = build_phi(json{{"kind", "power"}, {"p", p}, {"b", 1.0}});
  return s;
}

}  // namespace

TEST_CASE("F vanishes on constants and matches the analytic benchmark")
{
  const Setup s = make(256);
  CHECK(static_cast<double>(eval_F(s.grid, s.kernel, s.phi, GridFunction(s.grid, 4.2))) == 0.0);

  const GridFunction u = grid_function_from_expr(s.grid, "x0");
  CHECK(std::fabs(eval_F(s.grid, s.kernel, s.phi, u) - 1.0 / 6.0) < 2e-5);
}

TEST_CASE("the variable-coefficient form b/p z^p reduces to the square")
{
  const Setup s = make(64);
  // phi = b(x,y)/p(x,y) z^{p(x,y)} with p = 2, b = 2
  const PhiFunction phi_form = build_phi(
      json{{"kind", "power"}, {"p", 2.0}, {"b", json{{"expr", "2/2"}, {"lo", 1.0}, {"hi", 1.0}}}});
  const GridFunction u = grid_function_from_expr(s.grid, "sin(3*x0)");
  const double a = eval_F(s.grid, s.kernel, s.phi, u);
  const double b = eval_F(s.grid, s.kernel, phi_form, u);
  CHECK(a == doctest::Approx(b).epsilon(1e-14));
}

TEST_CASE("G adds the local p-power mass")
{
  const Setup s = make(256);
  const GridFunction c(s.grid, 1.5);
  CHECK(eval_G(s.grid, s.kernel, s.phi, 2.0, c) == doctest::Approx(2.25));  // c^p |Omega|

  const GridFunction u = grid_function_from_expr(s.grid, "x0");
  CHECK(std::fabs(eval_G(s.grid, s.kernel, s.phi, 2.0, u) - 0.5) < 4e-5);  // 1/6 + 1/3

  CHECK(static_cast<double>(eval_G(s.grid, s.kernel, s.phi, 2.0, GridFunction(s.grid))) == 0.0);
}

TEST_CASE("pure power functional")
{
  const Setup s = make(256);
  const GridFunction u = grid_function_from_expr(s.grid, "x0");
  CHECK(std::fabs(eval_F_power(s.grid, s.kernel, 2.0, u) - 1.0 / 6.0) < 2e-5);
  CHECK(static_cast<double>(eval_F_power(s.grid, s.kernel, 2.0, GridFunction(s.grid, 1.0))) == 0.0);

  // exact homogeneity of degree p
  const double base = eval_F_power(s.grid, s.kernel, 3.0, u);
  GridFunction su = u;
  for (double& v : su.values) v *= 2.0;
  CHECK(eval_F_power(s.grid, s.kernel, 3.0, su) == doctest::Approx(8.0 * base).epsilon(1e-12));
}

TEST_CASE("H on difference pair functions reproduces F exactly")
{
  const Setup s = make(64);
  const GridFunction u = grid_function_from_expr(s.grid, "cos(2*x0)+0.3*sin(5*x0)");
  const double F = eval_F(s.grid, s.kernel, s.phi, u);
  const double H = eval_H(s.grid, s.kernel, s.phi, PairFunction::difference(u));
  CHECK(F == H);  // same arithmetic path, bitwise
}

TEST_CASE("H* of zero and of the unit pair function")
{
  const Setup s = make(64);
  auto zero = PairFunction::callable(s.grid, [](std::size_t, std::size_t) { return 0.0; });
  CHECK(static_cast<double>(eval_H_star(s.grid, s.kernel, s.phi, zero)) == 0.0);

  auto one = PairFunction::callable(s.grid, [](std::size_t, std::size_t) { return 1.0; });
  // conjugate of the square is t^2/4; mass of [0,1]x[0,1] is 1
  CHECK(eval_H_star(s.grid, s.kernel, s.phi, one) == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("dual pairing values and symmetries")
{
  const Setup s = make(256);
  const GridFunction u = grid_function_from_expr(s.grid, "x0");
  // Phi(u, u) = 2 F(u) for the square: 2 * 1/6
  CHECK(std::fabs(eval_pairing_Phi(s.grid, s.kernel, s.phi, u, u) - 1.0 / 3.0) < 4e-5);

  const GridFunction c(s.grid, 2.0);
  CHECK(eval_pairing_Phi(s.grid, s.kernel, s.phi, c, u) == 0.0);

  GridFunction neg = u;
  for (double& v : neg.values) v = -v;
  const double plus = eval_pairing_Phi(s.grid, s.kernel, s.phi, u, u);
  const double minus = eval_pairing_Phi(s.grid, s.kernel, s.phi, u, neg);
  CHECK(plus == doctest::Approx(-minus).epsilon(1e-14));
}

TEST_CASE("first variation: values, antisymmetry and the remainder")
{
  const Setup s = make(128);
  const GridFunction u = grid_function_from_expr(s.grid, "x0");
  CHECK(std::fabs(eval_ell(s.grid, s.kernel, s.phi, u, u) - 1.0 / 3.0) < 2e-4);

  const GridFunction v = grid_function_from_expr(s.grid, "sin(2*x0)");
  GridFunction neg = v;
  for (double& x : neg.values) x = -x;
  const double l = eval_ell(s.grid, s.kernel, s.phi, u, v);
  CHECK(eval_ell(s.grid, s.kernel, s.phi, u, neg) == -l);  // exact sign flip

  // for the square the remainder is exactly t^2 F(v)
  const double Fu = eval_F(s.grid, s.kernel, s.phi, u);
  const double Fv = eval_F(s.grid, s.kernel, s.phi, v);
  for (double t : {1e-2, 1e-3}) {
    GridFunction ut = u;
    for (std::size_t i = 0; i < ut.size(); ++i) ut[i] += t * v[i];
    const double rem = eval_F(s.grid, s.kernel, s.phi, ut) - Fu - t * l;
    CHECK(rem == doctest::Approx(t * t * Fv).epsilon(1e-8));
  }
}

TEST_CASE("subspace residual")
{
  const Setup s = make(64);
  const Grid& g = s.grid;

  auto sym = PairFunction::callable(g, [&](std::size_t i, std::size_t j) {
    return std::sin(g.nodes[i][0] + g.nodes[j][0]);
  });
  CHECK(m_subspace_residual(g, s.kernel, sym) < 1e-14);

  auto zero = PairFunction::callable(g, [](std::size_t, std::size_t) { return 0.0; });
  CHECK(m_subspace_residual(g, s.kernel, zero) == 0.0);

  // W(x,y) = x - y against the direct discrete summation
  auto skew = PairFunction::callable(g, [&](std::size_t i, std::size_t j) {
    return g.nodes[i][0] - g.nodes[j][0];
  });
  double expected = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double s_i = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j)
      s_i += 2.0 * (g.nodes[i][0] - g.nodes[j][0]) * g.weights[j];
    expected = std::max(expected, std::fabs(s_i));
  }
  CHECK(m_subspace_residual(g, s.kernel, skew) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(m_subspace_residual(g, s.kernel, skew) > 1e-3);  // nonzero off-center
}

TEST_CASE("shift invariance of F")
{
  const Setup s = make(64);
  const GridFunction u = grid_function_from_expr(s.grid, "sin(4*x0)");
  const double base = eval_F(s.grid, s.kernel, s.phi, u);
  for (double c : {1.0, -2.5, 0.125}) {
    GridFunction shifted = u;
    for (double& v : shifted.values) v += c;
    CHECK(eval_F(s.grid, s.kernel, s.phi, shifted) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("homogeneity of the power integrand")
{
  const Setup s = make(64, 3.0);
  const GridFunction u = grid_function_from_expr(s.grid, "cos(3*x0)");
  const double base = eval_F(s.grid, s.kernel, s.phi, u);
  GridFunction su = u;
  for (double& v : su.values) v *= 1.7;
  CHECK(eval_F(s.grid, s.kernel, s.phi, su) ==
        doctest::Approx(std::pow(1.7, 3.0) * base).epsilon(1e-12));
}

TEST_CASE("lambda-scaling of F is strictly decreasing")
{
  const Setup s = make(64);
  const GridFunction u = grid_function_from_expr(s.grid, "x0*x0");
  double prev = std::numeric_limits<double>::max();
  for (double lambda : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    GridFunction v = u;
    for (double& x : v.values) x /= lambda;
    const double F = eval_F(s.grid, s.kernel, s.phi, v);
    CHECK(F < prev);
    prev = F;
  }
}

TEST_CASE("pair-function Hoelder inequality on random instances")
{
  const Setup s = make(32);
  FamilySpec fam;
  for (int n = 0; n < 6; ++n) {
    const GridFunction v = sample_function(s.grid, fam, 100 + n);
    const GridFunction w = sample_function(s.grid, fam, 200 + n);
    auto V = PairFunction::difference(v);
    auto W = PairFunction::difference(w);
    const double pairing = quadrature_double(
        s.grid, s.kernel, [&](std::size_t i, std::size_t j) { return W(i, j) * V(i, j); });
    const double hv = h_norm(s.grid, s.kernel, s.phi, V);
    const double hw = h_star_norm(s.grid, s.kernel, s.phi, W);
    CHECK(std::fabs(pairing) <= 2.0 * hv * hw + 1e-8);
  }
}

TEST_CASE("derivative bound: a single constant covers the random family")
{
  const Setup s = make(32);
  FamilySpec fam;
  SamplingConfig cfg;
  const PhiFunction phi = calibrated(s.phi, cfg);
  const GrowthMeta& m = phi.meta();
  double worst = 0.0;
  for (int n = 0; n < 6; ++n) {
    const GridFunction uu = sample_function(s.grid, fam, 300 + n);
    const GridFunction vv = sample_function(s.grid, fam, 400 + n);
    auto U = PairFunction::difference(uu);
    auto V = PairFunction::difference(vv);
    const double lhs =
        std::fabs(quadrature_double(s.grid, s.kernel, [&](std::size_t i, std::size_t j) {
          const double du = std::fabs(U(i, j));
          if (du == 0.0) return 0.0;
          return phi.prime(du, s.grid.nodes[i], s.grid.nodes[j]) * std::fabs(V(i, j));
        }));
    const double hu = h_norm(s.grid, s.kernel, phi, U);
    const double hv = h_norm(s.grid, s.kernel, phi, V);
    const double scale =
        std::max(std::pow(hu, m.p_plus - 1.0), std::pow(hu, m.p_minus - 1.0)) * hv;
    if (scale > 0.0) worst = std::max(worst, lhs / scale);
  }
  CHECK(worst > 0.0);
  CHECK(worst < 1e4);
}
