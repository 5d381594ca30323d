#ifndef ORLICZ_PHI_HPP
#define ORLICZ_PHI_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/expr.hpp"

#include "json.hpp"

namespace orlicz {

/// Bounded scalar coefficient of (x,y): a constant or a closed-form
/// expression with stated or sampled positive bounds.
struct Field {
  bool is_const = true;
  double value = 1.0;
  ScalarExpr expr;
  double lo = 1.0, hi = 1.0;
  bool bounds_stated = false;

  double operator()(const Point& x, const Point& y) const
  {
    return is_const ? value : expr.eval(x, y);
  }

  static Field constant(double v);
  static Field from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

struct PhiNode;
using PhiNodePtr = std::shared_ptr<const PhiNode>;

/// Expression tree of an integrand candidate. Field slots by kind:
///   Power: f1 = exponent p(x,y), f2 = coefficient b(x,y)
///   Log:   f1 = gamma(x,y),      f2 = upsilon(x,y)
///   Sin3:  f1 = coefficient b(x,y)
///   Scale: f1 = coefficient b(x,y)
/// Children: unary nodes use args[0]; perturb/psi_multiply keep the base in
/// args[0] and the psi factor in psi.
struct PhiNode {
  enum class Kind { Power, Log, Sin3, Sum, Scale, Product, Compose, Perturb, PsiMultiply };

  Kind kind = Kind::Power;
  Field f1, f2;
  std::vector<PhiNodePtr> args;
  PhiNodePtr psi;

  double value(double z, const Point& x, const Point& y) const;
  double d1(double z, const Point& x, const Point& y) const;
  double d2(double z, const Point& x, const Point& y) const;

  nlohmann::ordered_json to_json() const;
};

/// Growth metadata of an admissible integrand: the exponent window
/// 1 < p_minus <= p_plus, the almost-monotonicity constant beta >= 1, the
/// normalization constant c1 > 0, the derivative-domination constant
/// c2 > 1, and (when the second derivative controls the function) c7 > 0.
struct GrowthMeta {
  double p_minus = 2.0;
  double p_plus = 2.0;
  double beta = 1.0;
  double c1 = 1.0;
  double c2 = 2.0;
  std::optional<double> c7;

  nlohmann::ordered_json to_json() const;
};

/// Where and how the sample-based admissibility checks draw their points.
struct SamplingBox {
  int dim = 1;
  Point lo{0.0, 0.0};
  Point hi{1.0, 1.0};
};

struct SamplingConfig {
  int z_points = 64;
  double z_lo = 1e-4;
  double z_hi = 1e4;
  int xy_pairs = 128;
  std::vector<double> epsilons{0.5, 0.25, 0.1};
  std::uint64_t seed = 20240501;
  SamplingBox box;

  std::vector<double> z_grid() const;
  std::vector<std::pair<Point, Point>> xy_samples() const;
  nlohmann::ordered_json to_json() const;
};

/// Immutable integrand phi(z,x,y) with derivatives, Legendre conjugate and
/// growth metadata. All member calls are pure and thread-safe.
class PhiFunction {
 public:
  PhiFunction() = default;

  /// phi(z,x,y); exact 0 at z = 0.
  double operator()(double z, const Point& x, const Point& y) const;

  /// dphi/dz for z > 0; throws NonPositiveDerivative when the computed
  /// value is not positive.
  double prime(double z, const Point& x, const Point& y) const;

  /// d2phi/dz2 for z > 0 (the expression grammar is twice differentiable).
  double second(double z, const Point& x, const Point& y) const;

  /// Legendre conjugate sup_{s>=0} (s t - phi(s,x,y)). Solves phi'(s) = t
  /// on the increasing derivative; golden-section fallback. Throws
  /// ConjugateBracketFailure when no bracket exists.
  double conjugate(double t, const Point& x, const Point& y) const;

  const GrowthMeta& meta() const { return meta_; }
  PhiFunction with_meta(const GrowthMeta& m) const;

  const PhiNode& root() const { return *root_; }
  nlohmann::ordered_json to_json() const;
  std::string hash() const;

  PhiFunction(PhiNodePtr root, GrowthMeta meta)
      : root_(std::move(root)), meta_(meta) {}

 private:
  PhiNodePtr root_;
  GrowthMeta meta_;
};

/// Builds an admissible integrand from a JSON expression tree, propagating
/// growth metadata through the combinators and validating the perturbation
/// and psi-multiplication admissibility bounds on samples. Throws
/// NotAdmissible / ConfigError on rejection.
PhiFunction build_phi(const nlohmann::json& expr, const SamplingConfig& cfg = {});
PhiFunction build_phi(const std::string& json_text, const SamplingConfig& cfg = {});

/// Parses the tree but skips every admissibility check; the caller claims
/// the metadata. Meant for probing non-admissible integrands in checks.
PhiFunction build_phi_unchecked(const nlohmann::json& expr, const GrowthMeta& claimed);

struct ConditionReport {
  struct C2Row {
    double eps = 0.0;
    double delta_hat = 0.0;   // worst sampled midpoint convexity gain
    double delta_ref = 0.0;   // c7 eps^2 / (2^(p_+ + 4) beta) when c7 is known
  };
  std::vector<C2Row> c2_uniform_convexity;
  bool c2_pass = false;

  double c3_beta_increasing = 1.0;  // empirical constant for phi/z^{p-}
  double c3_beta_decreasing = 1.0;  // empirical constant for phi/z^{p+}
  bool c3_pass = false;

  double c4_min = 0.0, c4_max = 0.0;
  bool c4_pass = false;

  double c5_sup = 0.0;
  bool c5_pass = false;

  std::optional<double> secder_inf;
  bool secder_pass = false;

  SamplingConfig sampling;

  bool pass() const { return c2_pass && c3_pass && c4_pass && c5_pass; }
  nlohmann::ordered_json to_json() const;
};

/// Sample-based verdict on Conditions (C2)-(C5) and the second-derivative
/// bound, against the metadata currently stored on phi.
ConditionReport check_conditions(const PhiFunction& phi, const SamplingConfig& cfg = {});

/// Tightest constants that make the defining inequalities hold on the
/// sample set, with a 5% safety margin. Throws NotAdmissible when one of
/// the inequalities fails outright.
GrowthMeta estimate_growth_constants(const PhiFunction& phi, const SamplingConfig& cfg = {});

/// build + estimate in one step: returns phi carrying empirical constants.
PhiFunction calibrated(const PhiFunction& phi, const SamplingConfig& cfg = {});

}  // namespace orlicz

#endif
