#ifndef ORLICZ_NORMS_HPP
#define ORLICZ_NORMS_HPP

#include <functional>
#include <utility>
#include <vector>

#include "orlicz/functionals.hpp"

namespace orlicz {

/// Root of the scaled-functional equation E(u/lambda) = 1.
struct NormResult {
  double value = 0.0;
  double residual = 0.0;  // |E(u/value) - 1| when value > 0
  int iterations = 0;
  std::pair<double, double> bracket{0.0, 0.0};
};

/// Solves E(u/lambda) = 1 by bisection on a monotone continuous map.
/// E_at_1 is E(u); the initial bracket comes from the growth sandwich of
/// the functional with the supplied constants and is expanded by doubling
/// if needed. Returns 0 when E(u) vanishes. Throws
/// BracketExpansionFailure after 200 doublings.
NormResult luxemburg_root(const std::function<double(double)>& E_scaled, double E_at_1,
                          double beta, double p_lo, double p_hi);

NormResult luxemburg_F(const Grid& g, const Kernel& k, const PhiFunction& phi,
                       const GridFunction& u);
NormResult luxemburg_G(const Grid& g, const Kernel& k, const PhiFunction& phi,
                       const GridFunction& u);
NormResult luxemburg_H(const Grid& g, const Kernel& k, const PhiFunction& phi,
                       const PairFunction& U);
/// Conjugate-side root: the bracket uses the dual exponents
/// q = p / (p - 1).
NormResult luxemburg_H_star(const Grid& g, const Kernel& k, const PhiFunction& phi,
                            const PairFunction& W);

/// f(u) = luxemburg_F(u) + (sum |u_i|^{p-} w_i)^{1/p-}.
double f_norm(const Grid& g, const Kernel& k, const PhiFunction& phi, const GridFunction& u);

/// g(u): Luxemburg root of G.
double g_norm(const Grid& g, const Kernel& k, const PhiFunction& phi, const GridFunction& u);

double h_norm(const Grid& g, const Kernel& k, const PhiFunction& phi, const PairFunction& U);
double h_star_norm(const Grid& g, const Kernel& k, const PhiFunction& phi,
                   const PairFunction& W);

/// u = u_perp + mean, with the weighted mean over the grid; reconstruction
/// is exact and <u_perp> = 0 to machine precision.
std::pair<GridFunction, double> decompose_mean_zero(const Grid& g, const GridFunction& u);

/// Empirical constant sup ||u_perp||_{p-}^{p-} / F_{p-}(u) over the given
/// samples, skipping constants. Throws DegenerateSample when every sample
/// is constant.
double poincare_certificate(const Grid& g, const Kernel& k, double p_minus,
                            const std::vector<GridFunction>& samples);

struct SandwichCertificate {
  bool pass = true;
  double lambda = 0.0;   // the Luxemburg value
  double F_value = 0.0;
  double lower = 0.0, upper = 0.0;
  double slack = 0.0;    // min(F - lower, upper - F); vacuous pass when u = 0
};

/// Checks beta^{-1} min{l^{p-}, l^{p+}} <= F(u) <= beta max{l^{p-}, l^{p+}}
/// at l = luxemburg_F(u) with the constants stored on phi.
SandwichCertificate verify_sandwich(const Grid& g, const Kernel& k, const PhiFunction& phi,
                                    const GridFunction& u);

}  // namespace orlicz

#endif
