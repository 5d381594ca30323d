#ifndef ORLICZ_SOLVER_HPP
#define ORLICZ_SOLVER_HPP

#include "orlicz/functionals.hpp"
#include "orlicz/norms.hpp"

#include "json.hpp"

namespace orlicz {

struct SolverOptions {
  int max_iters = 5000;
  double grad_tol = 1e-8;        // on the weighted gradient max-norm
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  double initial_step = 1.0;

  static SolverOptions from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

struct SolveResult {
  GridFunction u_star;
  double energy = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// E(u) = F(u) + sum |u_i|^{p-} w_i - sum g_i u_i w_i.
double energy(const Grid& g, const Kernel& k, const PhiFunction& phi, double p_minus,
              const GridFunction& u, const GridFunction& rhs);

/// Exact gradient of the discrete energy. The local term |u|^{p-2} u is
/// extended by zero at u = 0 for p- < 2.
GridFunction energy_gradient(const Grid& g, const Kernel& k, const PhiFunction& phi,
                             double p_minus, const GridFunction& u, const GridFunction& rhs);

/// Gradient descent with Armijo backtracking on the convex energy. Energy
/// never increases across accepted steps. Throws LineSearchStalled after
/// 60 rejected halvings.
SolveResult minimize(const Grid& g, const Kernel& k, const PhiFunction& phi, double p_minus,
                     const GridFunction& rhs, const GridFunction& u0,
                     const SolverOptions& opts = {});

/// Pointwise Euler-Lagrange residual: max |gradient_i| / w_i.
double el_residual(const Grid& g, const Kernel& k, const PhiFunction& phi, double p_minus,
                   const GridFunction& u, const GridFunction& rhs);

/// Action of the dual element generated by w on u:
///   |w| * Phi(u, w_hat) / Phi(w_hat, w_hat),  w_hat = w / luxemburg_F(w).
/// Throws ZeroDenominator when w is constant or the pairing degenerates.
double dual_apply(const Grid& g, const Kernel& k, const PhiFunction& phi,
                  const GridFunction& w, const GridFunction& u);

/// The same functional as an explicit representation kernel
///   W(x,y) = (|w| / Phi(w_hat, w_hat)) phi'(|dw|) sgn(dw).
PairFunction dual_kernel_representation(const Grid& g, const Kernel& k, const PhiFunction& phi,
                                        const GridFunction& w);

}  // namespace orlicz

#endif
