#include "orlicz/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "orlicz/errors.hpp"
#include "orlicz/quadrature.hpp"

namespace orlicz {

PairFunction PairFunction::difference(const GridFunction& u)
{
  PairFunction p;
  p.grid = u.grid;
  const std::vector<double>& vals = u.values;
  p.fn_ = [vals](std::size_t i, std::size_t j) { return vals[i] - vals[j]; };
  return p;
}

PairFunction PairFunction::dense(const Grid& g, std::vector<double> row_major)
{
  if (row_major.size() != g.pair_count())
    throw ConfigError("dense pair function has the wrong length");
  PairFunction p;
  p.grid = &g;
  p.n_ = g.size();
  p.values_ = std::make_shared<const std::vector<double>>(std::move(row_major));
  return p;
}

PairFunction PairFunction::callable(const Grid& g, std::function<double(std::size_t, std::size_t)> f)
{
  PairFunction p;
  p.grid = &g;
  p.fn_ = std::move(f);
  return p;
}

FunctionalValue eval_F(const Grid& g, const Kernel& k, const PhiFunction& phi,
                       const GridFunction& u)
{
  FunctionalValue out;
  out.value = quadrature_double(g, k, [&](std::size_t i, std::size_t j) {
    const double dz = std::fabs(u[i] - u[j]);
    return dz == 0.0 ? 0.0 : phi(dz, g.nodes[i], g.nodes[j]);
  });
  return out;
}

FunctionalValue eval_G(const Grid& g, const Kernel& k, const PhiFunction& phi,
                       double p_minus, const GridFunction& u)
{
  FunctionalValue out = eval_F(g, k, phi, u);
  out.value += lp_power(g, u, p_minus);
  return out;
}

FunctionalValue eval_F_power(const Grid& g, const Kernel& k, double p, const GridFunction& u)
{
  FunctionalValue out;
  out.value = quadrature_double(g, k, [&](std::size_t i, std::size_t j) {
    const double dz = std::fabs(u[i] - u[j]);
    return dz == 0.0 ? 0.0 : std::pow(dz, p);
  });
  return out;
}

FunctionalValue eval_H(const Grid& g, const Kernel& k, const PhiFunction& phi,
                       const PairFunction& U)
{
  FunctionalValue out;
  out.value = quadrature_double(g, k, [&](std::size_t i, std::size_t j) {
    return phi(std::fabs(U(i, j)), g.nodes[i], g.nodes[j]);
  });
  return out;
}

FunctionalValue eval_H_star(const Grid& g, const Kernel& k, const PhiFunction& phi,
                            const PairFunction& W)
{
  FunctionalValue out;
  out.value = quadrature_double(g, k, [&](std::size_t i, std::size_t j) {
    return phi.conjugate(std::fabs(W(i, j)), g.nodes[i], g.nodes[j]);
  });
  return out;
}

double eval_pairing_Phi(const Grid& g, const Kernel& k, const PhiFunction& phi,
                        const GridFunction& u, const GridFunction& w)
{
  return quadrature_double(g, k, [&](std::size_t i, std::size_t j) {
    const double dw = w[i] - w[j];
    if (dw == 0.0) return 0.0;  // continuous extension: phi'(t) -> 0 as t -> 0
    const double sgn = dw > 0.0 ? 1.0 : -1.0;
    return (u[i] - u[j]) * phi.prime(std::fabs(dw), g.nodes[i], g.nodes[j]) * sgn;
  });
}

double eval_ell(const Grid& g, const Kernel& k, const PhiFunction& phi,
                const GridFunction& u, const GridFunction& v)
{
  return quadrature_double(g, k, [&](std::size_t i, std::size_t j) {
    const double du = u[i] - u[j];
    if (du == 0.0) return 0.0;
    const double sgn = du > 0.0 ? 1.0 : -1.0;
    return phi.prime(std::fabs(du), g.nodes[i], g.nodes[j]) * sgn * (v[i] - v[j]);
  });
}

double m_subspace_residual(const Grid& g, const Kernel& k, const PairFunction& W)
{
  const std::size_t n = g.size();
  std::vector<double> rows(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    std::vector<double> terms(n);
    for (std::size_t j = 0; j < n; ++j) {
      const Point dij{g.nodes[i][0] - g.nodes[j][0], g.nodes[i][1] - g.nodes[j][1]};
      const Point dji{-dij[0], -dij[1]};
      terms[j] = (W(i, j) * k(dij) - W(j, i) * k(dji)) * g.weights[j];
    }
    rows[i] = std::fabs(pairwise_sum(terms));
  });
  double worst = 0.0;
  for (double r : rows) worst = std::max(worst, r);
  return worst;
}

double lp_power(const Grid& g, const GridFunction& u, double p)
{
  return quadrature_single(g, [&](std::size_t i) {
    const double a = std::fabs(u[i]);
    return a == 0.0 ? 0.0 : std::pow(a, p);
  });
}

}  // namespace orlicz
