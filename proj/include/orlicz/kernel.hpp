#ifndef ORLICZ_KERNEL_HPP
#define ORLICZ_KERNEL_HPP

#include <string>

#include "orlicz/expr.hpp"

#include "json.hpp"

namespace orlicz {

struct KernelSpec {
  std::string kind;        // indicator | gaussian | exp | expression
  double r = 1.0;          // indicator radius
  double sigma = 1.0;      // gaussian width
  double lambda = 1.0;     // exponential rate
  double r0 = -1.0;        // ball radius for the lower bound; defaults per kind
  double c0 = -1.0;        // stated lower bound on the ball; verified by sampling
  std::string expr;        // expression kind: a(z) as a function of x0..x{d-1}

  static KernelSpec from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

/// Convolution weight a(z) with its verified ball lower bound a >= c0 on
/// |z| <= r0 and its L1 mass.
class Kernel {
 public:
  double operator()(const Point& z) const;

  double c0 = 0.0;
  double r0 = 0.0;
  double l1_mass = 0.0;
  int dim = 1;

  const KernelSpec& spec() const { return spec_; }

 private:
  friend Kernel build_kernel(const KernelSpec&, int);
  enum class Kind { Indicator, Gaussian, Exp, Expression };
  Kind kind_ = Kind::Indicator;
  KernelSpec spec_;
  ScalarExpr expr_;
};

Kernel build_kernel(const KernelSpec& spec, int dim);

}  // namespace orlicz

#endif
