#include "orlicz/solver.hpp"

#include <algorithm>
#include <cmath>

#include "orlicz/errors.hpp"
#include "orlicz/quadrature.hpp"

namespace orlicz {

SolverOptions SolverOptions::from_json(const nlohmann::json& j)
{
  SolverOptions o;
  o.max_iters = j.value("max_iters", o.max_iters);
  o.grad_tol = j.value("grad_tol", o.grad_tol);
  o.armijo_c = j.value("armijo_c", o.armijo_c);
  o.backtrack_factor = j.value("backtrack_factor", o.backtrack_factor);
  o.initial_step = j.value("initial_step", o.initial_step);
  if (!(o.armijo_c > 0.0 && o.armijo_c < 1.0))
    throw ConfigError("armijo_c must lie in (0, 1)");
  if (!(o.backtrack_factor > 0.0 && o.backtrack_factor < 1.0))
    throw ConfigError("backtrack_factor must lie in (0, 1)");
  return o;
}

nlohmann::ordered_json SolverOptions::to_json() const
{
  return nlohmann::ordered_json{{"max_iters", max_iters},
                                {"grad_tol", grad_tol},
                                {"armijo_c", armijo_c},
                                {"backtrack_factor", backtrack_factor},
                                {"initial_step", initial_step}};
}

namespace {

// |u|^{p-2} u with the continuous extension 0 at u = 0.
double signed_power(double u, double p)
{
  if (u == 0.0) return 0.0;
  return std::pow(std::fabs(u), p - 1.0) * (u > 0.0 ? 1.0 : -1.0);
}

}  // namespace

double energy(const Grid& g, const Kernel& k, const PhiFunction& phi, double p_minus,
              const GridFunction& u, const GridFunction& rhs)
{
  const double F = eval_F(g, k, phi, u);
  const double local = lp_power(g, u, p_minus);
  const double load = quadrature_single(g, [&](std::size_t i) { return rhs[i] * u[i]; });
  return F + local - load;
}

GridFunction energy_gradient(const Grid& g, const Kernel& k, const PhiFunction& phi,
                             double p_minus, const GridFunction& u, const GridFunction& rhs)
{
  const std::size_t n = g.size();
  GridFunction grad(g);
  parallel_for(n, [&](std::size_t i) {
    std::vector<double> terms(n, 0.0);
    const Point& xi = g.nodes[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double du = u[i] - u[j];
      if (du == 0.0) continue;
      const Point& xj = g.nodes[j];
      const Point dij{xi[0] - xj[0], xi[1] - xj[1]};
      const Point dji{-dij[0], -dij[1]};
      const double aij = k(dij), aji = k(dji);
      if (aij == 0.0 && aji == 0.0) continue;
      const double z = std::fabs(du);
      const double sgn = du > 0.0 ? 1.0 : -1.0;
      double coeff = 0.0;
      if (aij != 0.0) coeff += phi.prime(z, xi, xj) * aij;
      if (aji != 0.0) coeff += phi.prime(z, xj, xi) * aji;
      terms[j] = coeff * sgn * g.weights[j];
    }
    grad[i] = g.weights[i] *
              (pairwise_sum(terms) + p_minus * signed_power(u[i], p_minus) - rhs[i]);
  });
  return grad;
}

SolveResult minimize(const Grid& g, const Kernel& k, const PhiFunction& phi, double p_minus,
                     const GridFunction& rhs, const GridFunction& u0,
                     const SolverOptions& opts)
{
  SolveResult res;
  GridFunction u = u0;
  double E = energy(g, k, phi, p_minus, u, rhs);

  // The accepted step warm-starts the next line search; stiff energies then
  // pay the backtracking cost once instead of every iteration.
  double step = opts.initial_step;

  for (int it = 0; it < opts.max_iters; ++it) {
    const GridFunction grad = energy_gradient(g, k, phi, p_minus, u, rhs);
    double gn = 0.0;
    for (double v : grad.values) gn = std::max(gn, std::fabs(v));
    res.grad_norm = gn;
    res.iterations = it;
    if (gn <= opts.grad_tol) {
      res.converged = true;
      break;
    }

    // Steepest descent in the weighted inner product <a,b> = sum a_i b_i w_i.
    GridFunction dir(g);
    double slope = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      dir[i] = -grad[i] / g.weights[i];
      slope += grad[i] * dir[i];
    }

    double t = std::min(opts.initial_step, step / opts.backtrack_factor);
    GridFunction trial(g);
    int halvings = 0;
    for (;;) {
      for (std::size_t i = 0; i < g.size(); ++i) trial[i] = u[i] + t * dir[i];
      const double Et = energy(g, k, phi, p_minus, trial, rhs);
      if (Et <= E + opts.armijo_c * t * slope) {
        u = trial;
        E = Et;
        step = t;
        break;
      }
      t *= opts.backtrack_factor;
      if (++halvings > 60)
        throw LineSearchStalled("Armijo backtracking exceeded 60 halvings at iteration " +
                                std::to_string(it));
    }
  }

  res.u_star = std::move(u);
  res.energy = E;
  if (!res.converged) {
    const GridFunction grad = energy_gradient(g, k, phi, p_minus, res.u_star, rhs);
    double gn = 0.0;
    for (double v : grad.values) gn = std::max(gn, std::fabs(v));
    res.grad_norm = gn;
    res.iterations = opts.max_iters;
    res.converged = gn <= opts.grad_tol;
  }
  return res;
}

double el_residual(const Grid& g, const Kernel& k, const PhiFunction& phi, double p_minus,
                   const GridFunction& u, const GridFunction& rhs)
{
  const GridFunction grad = energy_gradient(g, k, phi, p_minus, u, rhs);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    worst = std::max(worst, std::fabs(grad[i]) / g.weights[i]);
  return worst;
}

double dual_apply(const Grid& g, const Kernel& k, const PhiFunction& phi,
                  const GridFunction& w, const GridFunction& u)
{
  const NormResult lux = luxemburg_F(g, k, phi, w);
  if (lux.value <= 0.0)
    throw ZeroDenominator("dual element is generated by a constant function (|w| = 0)");
  GridFunction w_hat = w;
  for (double& x : w_hat.values) x /= lux.value;
  const double denom = eval_pairing_Phi(g, k, phi, w_hat, w_hat);
  if (!(denom > 0.0))
    throw ZeroDenominator("pairing Phi(w_hat, w_hat) is not positive");
  return lux.value * eval_pairing_Phi(g, k, phi, u, w_hat) / denom;
}

PairFunction dual_kernel_representation(const Grid& g, const Kernel& k, const PhiFunction& phi,
                                        const GridFunction& w)
{
  const NormResult lux = luxemburg_F(g, k, phi, w);
  if (lux.value <= 0.0)
    throw ZeroDenominator("dual element is generated by a constant function (|w| = 0)");
  GridFunction w_hat = w;
  for (double& x : w_hat.values) x /= lux.value;
  const double denom = eval_pairing_Phi(g, k, phi, w_hat, w_hat);
  if (!(denom > 0.0))
    throw ZeroDenominator("pairing Phi(w_hat, w_hat) is not positive");
  const double scale = lux.value / denom;

  std::vector<double> vals(g.pair_count(), 0.0);
  const std::size_t n = g.size();
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double dw = w_hat[i] - w_hat[j];
      if (dw == 0.0) continue;
      const double sgn = dw > 0.0 ? 1.0 : -1.0;
      vals[i * n + j] = scale * phi.prime(std::fabs(dw), g.nodes[i], g.nodes[j]) * sgn;
    }
  });
  return PairFunction::dense(g, std::move(vals));
}

}  // namespace orlicz
