#ifndef ORLICZ_FUNCTIONALS_HPP
#define ORLICZ_FUNCTIONALS_HPP

#include <functional>
#include <memory>
#include <vector>

#include "orlicz/grid.hpp"
#include "orlicz/kernel.hpp"
#include "orlicz/phi.hpp"

namespace orlicz {

/// Extended-real result of an integral functional. On finite grids the
/// value is always finite; the marker exists so +infinity never travels
/// as a floating overflow.
struct FunctionalValue {
  double value = 0.0;
  bool finite = true;

  operator double() const { return value; }
};

/// Real-valued function U(x,y) on node pairs: dense storage or a callable
/// evaluated lazily.
class PairFunction {
 public:
  PairFunction() = default;

  /// U(x,y) = u(x) - u(y).
  static PairFunction difference(const GridFunction& u);

  static PairFunction dense(const Grid& g, std::vector<double> row_major);

  static PairFunction callable(const Grid& g, std::function<double(std::size_t, std::size_t)> f);

  double operator()(std::size_t i, std::size_t j) const
  {
    return values_ ? (*values_)[i * n_ + j] : fn_(i, j);
  }

  const Grid* grid = nullptr;

 private:
  std::shared_ptr<const std::vector<double>> values_;
  std::function<double(std::size_t, std::size_t)> fn_;
  std::size_t n_ = 0;
};

/// F(u): double integral of phi(|u(x)-u(y)|, x, y) against the kernel.
FunctionalValue eval_F(const Grid& g, const Kernel& k, const PhiFunction& phi,
                       const GridFunction& u);

/// G(u) = F(u) + sum_i |u_i|^{p-} w_i.
FunctionalValue eval_G(const Grid& g, const Kernel& k, const PhiFunction& phi,
                       double p_minus, const GridFunction& u);

/// Pure-power functional: double integral of |u(x)-u(y)|^p.
FunctionalValue eval_F_power(const Grid& g, const Kernel& k, double p, const GridFunction& u);

/// H(U): double integral of phi(|U(x,y)|, x, y) against the kernel.
FunctionalValue eval_H(const Grid& g, const Kernel& k, const PhiFunction& phi,
                       const PairFunction& U);

/// H*(W): same with the Legendre conjugate of phi.
FunctionalValue eval_H_star(const Grid& g, const Kernel& k, const PhiFunction& phi,
                            const PairFunction& W);

/// Dual pairing: integral of (u(x)-u(y)) phi'(|w(x)-w(y)|) sgn(w(x)-w(y))
/// against the kernel. Pairs with w(x) = w(y) contribute zero.
double eval_pairing_Phi(const Grid& g, const Kernel& k, const PhiFunction& phi,
                        const GridFunction& u, const GridFunction& w);

/// First variation of F at u in direction v, kernel weight included.
double eval_ell(const Grid& g, const Kernel& k, const PhiFunction& phi,
                const GridFunction& u, const GridFunction& v);

/// Residual of the antisymmetrized kernel-weighted average: max over nodes
/// x of | sum_y (W(x,y) a(x-y) - W(y,x) a(y-x)) w_y |. Zero certifies
/// discrete membership in the null subspace of the dual representation.
double m_subspace_residual(const Grid& g, const Kernel& k, const PairFunction& W);

/// Discrete L^p norm to the p-th power: sum_i |u_i|^p w_i.
double lp_power(const Grid& g, const GridFunction& u, double p);

}  // namespace orlicz

#endif
