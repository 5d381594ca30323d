#include "orlicz/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orlicz/errors.hpp"

namespace orlicz {

KernelSpec KernelSpec::from_json(const nlohmann::json& j)
{
  KernelSpec s;
  s.kind = j.at("kind").get<std::string>();
  s.r = j.value("r", 1.0);
  s.sigma = j.value("sigma", 1.0);
  s.lambda = j.value("lambda", 1.0);
  s.r0 = j.value("r0", -1.0);
  s.c0 = j.value("c0", -1.0);
  s.expr = j.value("expr", std::string());
  return s;
}

nlohmann::ordered_json KernelSpec::to_json() const
{
  nlohmann::ordered_json j;
  j["kind"] = kind;
  if (kind == "indicator") j["r"] = r;
  if (kind == "gaussian") j["sigma"] = sigma;
  if (kind == "exp") j["lambda"] = lambda;
  if (kind == "expression") j["expr"] = expr;
  j["r0"] = r0;
  j["c0"] = c0;
  return j;
}

double Kernel::operator()(const Point& z) const
{
  double r2 = z[0] * z[0];
  if (dim == 2) r2 += z[1] * z[1];
  switch (kind_) {
    case Kind::Indicator:
      return r2 <= spec_.r * spec_.r ? 1.0 : 0.0;
    case Kind::Gaussian:
      return std::exp(-r2 / (2.0 * spec_.sigma * spec_.sigma));
    case Kind::Exp:
      return std::exp(-spec_.lambda * std::sqrt(r2));
    case Kind::Expression:
      return expr_.eval(z);
  }
  return 0.0;
}

namespace {

// Midpoint quadrature of the kernel over the reference box [-4 r0, 4 r0]^d.
double reference_l1_mass(const Kernel& k, double r0, int dim)
{
  const double half = 4.0 * r0;
  if (dim == 1) {
    const int n = 4096;
    const double h = 2.0 * half / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double z = -half + (i + 0.5) * h;
      s += k(Point{z, 0.0}) * h;
    }
    return s;
  }
  const int n = 512;
  const double h = 2.0 * half / n;
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Point z{-half + (i + 0.5) * h, -half + (j + 0.5) * h};
      s += k(z) * h * h;
    }
  return s;
}

}  // namespace

Kernel build_kernel(const KernelSpec& spec, int dim)
{
  Kernel k;
  k.dim = dim;
  k.spec_ = spec;

  if (spec.kind == "indicator") {
    k.kind_ = Kernel::Kind::Indicator;
    if (spec.r <= 0.0) throw ConfigError("indicator kernel needs r > 0");
    k.r0 = spec.r0 > 0.0 ? spec.r0 : spec.r;
    if (k.r0 > spec.r) throw ConfigError("indicator kernel: r0 exceeds the support radius");
  } else if (spec.kind == "gaussian") {
    k.kind_ = Kernel::Kind::Gaussian;
    if (spec.sigma <= 0.0) throw ConfigError("gaussian kernel needs sigma > 0");
    k.r0 = spec.r0 > 0.0 ? spec.r0 : spec.sigma;
  } else if (spec.kind == "exp") {
    k.kind_ = Kernel::Kind::Exp;
    if (spec.lambda <= 0.0) throw ConfigError("exp kernel needs lambda > 0");
    k.r0 = spec.r0 > 0.0 ? spec.r0 : 1.0 / spec.lambda;
  } else if (spec.kind == "expression") {
    k.kind_ = Kernel::Kind::Expression;
    if (spec.expr.empty()) throw ConfigError("expression kernel needs 'expr'");
    k.expr_ = ScalarExpr::parse(spec.expr);
    k.r0 = spec.r0 > 0.0 ? spec.r0 : 1.0;
  } else {
    throw ConfigError("unknown kernel kind '" + spec.kind + "'");
  }

  // Sampled minimum over the ball |z| <= r0 and non-negativity over the
  // reference box.
  double ball_min = std::numeric_limits<double>::max();
  const int samples = 257;
  for (int i = 0; i < samples; ++i) {
    const double t = -1.0 + 2.0 * i / (samples - 1);
    if (dim == 1) {
      const double v = k(Point{t * k.r0, 0.0});
      ball_min = std::min(ball_min, v);
    } else {
      for (int j = 0; j < 33; ++j) {
        const double s = -1.0 + 2.0 * j / 32.0;
        const Point z{t * k.r0, s * k.r0};
        if (z[0] * z[0] + z[1] * z[1] <= k.r0 * k.r0)
          ball_min = std::min(ball_min, k(z));
      }
    }
  }
  const double stated_c0 = spec.c0 > 0.0 ? spec.c0 : ball_min;
  if (!(ball_min > 0.0) || ball_min < stated_c0 * (1.0 - 1e-12))
    throw KernelLowerBoundViolated("sampled kernel minimum " + std::to_string(ball_min) +
                                   " on the ball of radius " + std::to_string(k.r0) +
                                   " violates the stated lower bound");
  k.c0 = stated_c0;

  const double half = 4.0 * k.r0;
  for (int i = 0; i < samples; ++i) {
    const double t = -1.0 + 2.0 * i / (samples - 1);
    const double v = dim == 1 ? k(Point{t * half, 0.0})
                              : std::min(k(Point{t * half, 0.0}), k(Point{0.0, t * half}));
    if (v < 0.0)
      throw KernelLowerBoundViolated("kernel takes a negative value at a sampled offset");
  }

  // L1 mass: closed forms where available, reference-box quadrature otherwise.
  if (spec.kind == "indicator") {
    k.l1_mass = dim == 1 ? 2.0 * spec.r : 3.14159265358979323846 * spec.r * spec.r;
  } else if (spec.kind == "gaussian") {
    const double s2pi = spec.sigma * std::sqrt(2.0 * 3.14159265358979323846);
    k.l1_mass = dim == 1 ? s2pi : s2pi * s2pi;
  } else if (spec.kind == "exp") {
    k.l1_mass = dim == 1 ? 2.0 / spec.lambda
                         : 2.0 * 3.14159265358979323846 / (spec.lambda * spec.lambda);
  } else {
    k.l1_mass = reference_l1_mass(k, k.r0, dim);
  }
  if (!std::isfinite(k.l1_mass))
    throw KernelLowerBoundViolated("kernel L1 mass is not finite");
  return k;
}

}  // namespace orlicz
