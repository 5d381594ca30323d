#include "orlicz/norms.hpp"

#include <algorithm>
#include <cmath>

#include "orlicz/errors.hpp"
#include "orlicz/quadrature.hpp"

namespace orlicz {

NormResult luxemburg_root(const std::function<double(double)>& E_scaled, double E_at_1,
                          double beta, double p_lo, double p_hi)
{
  NormResult res;
  if (E_at_1 <= 1e-14) return res;  // norm 0: constants and the zero function

  // Initial bracket from the growth sandwich at the root:
  //   beta^{-1} min{l^{p_lo}, l^{p_hi}} <= E(u) <= beta max{l^{p_lo}, l^{p_hi}}
  double lo = std::min(std::pow(E_at_1 / beta, 1.0 / p_lo), std::pow(E_at_1 / beta, 1.0 / p_hi));
  double hi = std::max(std::pow(E_at_1 * beta, 1.0 / p_lo), std::pow(E_at_1 * beta, 1.0 / p_hi));
  if (!(lo > 0.0) || !std::isfinite(hi)) { lo = 1e-8; hi = 1e8; }

  int expand = 0;
  while (E_scaled(lo) < 1.0) {
    hi = lo;
    lo *= 0.5;
    if (++expand > 200)
      throw BracketExpansionFailure("luxemburg bracket expansion failed toward 0");
  }
  expand = 0;
  while (E_scaled(hi) > 1.0) {
    lo = hi;
    hi *= 2.0;
    if (++expand > 200)
      throw BracketExpansionFailure("luxemburg bracket expansion failed toward infinity");
  }
  res.bracket = {lo, hi};

  double mid = 0.5 * (lo + hi), val = 0.0;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    val = E_scaled(mid);
    ++res.iterations;
    if (std::fabs(val - 1.0) <= 1e-10) break;
    if (val >= 1.0) lo = mid; else hi = mid;
    if ((hi - lo) <= 1e-10 * hi) { mid = 0.5 * (lo + hi); val = E_scaled(mid); break; }
  }
  res.value = mid;
  res.residual = std::fabs(val - 1.0);
  return res;
}

NormResult luxemburg_F(const Grid& g, const Kernel& k, const PhiFunction& phi,
                       const GridFunction& u)
{
  const double F1 = eval_F(g, k, phi, u);
  return luxemburg_root(
      [&](double lambda) {
        GridFunction v = u;
        for (double& x : v.values) x /= lambda;
        return static_cast<double>(eval_F(g, k, phi, v));
      },
      F1, phi.meta().beta, phi.meta().p_minus, phi.meta().p_plus);
}

NormResult luxemburg_G(const Grid& g, const Kernel& k, const PhiFunction& phi,
                       const GridFunction& u)
{
  const double pm = phi.meta().p_minus;
  const double G1 = eval_G(g, k, phi, pm, u);
  return luxemburg_root(
      [&](double lambda) {
        GridFunction v = u;
        for (double& x : v.values) x /= lambda;
        return static_cast<double>(eval_G(g, k, phi, pm, v));
      },
      G1, phi.meta().beta, phi.meta().p_minus, phi.meta().p_plus);
}

NormResult luxemburg_H(const Grid& g, const Kernel& k, const PhiFunction& phi,
                       const PairFunction& U)
{
  const double H1 = eval_H(g, k, phi, U);
  return luxemburg_root(
      [&](double lambda) {
        auto scaled = PairFunction::callable(g, [&U, lambda](std::size_t i, std::size_t j) {
          return U(i, j) / lambda;
        });
        return static_cast<double>(eval_H(g, k, phi, scaled));
      },
      H1, phi.meta().beta, phi.meta().p_minus, phi.meta().p_plus);
}

NormResult luxemburg_H_star(const Grid& g, const Kernel& k, const PhiFunction& phi,
                            const PairFunction& W)
{
  const double H1 = eval_H_star(g, k, phi, W);
  const double q_minus = phi.meta().p_plus / (phi.meta().p_plus - 1.0);
  const double q_plus = phi.meta().p_minus / (phi.meta().p_minus - 1.0);
  return luxemburg_root(
      [&](double lambda) {
        auto scaled = PairFunction::callable(g, [&W, lambda](std::size_t i, std::size_t j) {
          return W(i, j) / lambda;
        });
        return static_cast<double>(eval_H_star(g, k, phi, scaled));
      },
      H1, phi.meta().beta, q_minus, q_plus);
}

double f_norm(const Grid& g, const Kernel& k, const PhiFunction& phi, const GridFunction& u)
{
  const double pm = phi.meta().p_minus;
  return luxemburg_F(g, k, phi, u).value + std::pow(lp_power(g, u, pm), 1.0 / pm);
}

double g_norm(const Grid& g, const Kernel& k, const PhiFunction& phi, const GridFunction& u)
{
  return luxemburg_G(g, k, phi, u).value;
}

double h_norm(const Grid& g, const Kernel& k, const PhiFunction& phi, const PairFunction& U)
{
  return luxemburg_H(g, k, phi, U).value;
}

double h_star_norm(const Grid& g, const Kernel& k, const PhiFunction& phi,
                   const PairFunction& W)
{
  return luxemburg_H_star(g, k, phi, W).value;
}

std::pair<GridFunction, double> decompose_mean_zero(const Grid& g, const GridFunction& u)
{
  const double mean = quadrature_single(g, [&](std::size_t i) { return u[i]; }) / g.total_measure;
  GridFunction perp = u;
  for (double& x : perp.values) x -= mean;
  return {std::move(perp), mean};
}

double poincare_certificate(const Grid& g, const Kernel& k, double p_minus,
                            const std::vector<GridFunction>& samples)
{
  double worst = -1.0;
  for (const auto& u : samples) {
    const double Fp = eval_F_power(g, k, p_minus, u);
    if (Fp <= 1e-14) continue;  // constant sample: both sides vanish
    auto [perp, mean] = decompose_mean_zero(g, u);
    (void)mean;
    worst = std::max(worst, lp_power(g, perp, p_minus) / Fp);
  }
  if (worst < 0.0) throw DegenerateSample("all samples are constant");
  return worst;
}

SandwichCertificate verify_sandwich(const Grid& g, const Kernel& k, const PhiFunction& phi,
                                    const GridFunction& u)
{
  SandwichCertificate cert;
  const NormResult lux = luxemburg_F(g, k, phi, u);
  cert.lambda = lux.value;
  cert.F_value = eval_F(g, k, phi, u);
  if (lux.value == 0.0) return cert;  // vacuous pass

  const GrowthMeta& m = phi.meta();
  const double lp = std::pow(lux.value, m.p_minus);
  const double hp = std::pow(lux.value, m.p_plus);
  cert.lower = std::min(lp, hp) / m.beta;
  cert.upper = std::max(lp, hp) * m.beta;
  cert.slack = std::min(cert.F_value - cert.lower, cert.upper - cert.F_value);
  cert.pass = cert.slack >= -1e-9 * (1.0 + cert.F_value);
  return cert;
}

}  // namespace orlicz
