#include "orlicz/phi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "orlicz/errors.hpp"
#include "orlicz/jsonio.hpp"

namespace orlicz {

// ---------------------------------------------------------------------------
// Field

Field Field::constant(double v)
{
  Field f;
  f.is_const = true;
  f.value = v;
  f.lo = f.hi = v;
  f.bounds_stated = true;
  return f;
}

Field Field::from_json(const nlohmann::json& j)
{
  if (j.is_number()) return constant(j.get<double>());
  Field f;
  if (j.contains("const")) {
    f = constant(j["const"].get<double>());
  } else if (j.contains("expr")) {
    f.is_const = false;
    f.expr = ScalarExpr::parse(j["expr"].get<std::string>());
    if (j.contains("lo") && j.contains("hi")) {
      f.lo = j["lo"].get<double>();
      f.hi = j["hi"].get<double>();
      f.bounds_stated = true;
      if (!(f.lo <= f.hi)) throw ConfigError("field bounds need lo <= hi");
    }
  } else {
    throw ConfigError("field must be a number, {\"const\":v} or {\"expr\":...}");
  }
  return f;
}

nlohmann::ordered_json Field::to_json() const
{
  nlohmann::ordered_json j;
  if (is_const) {
    j["const"] = value;
  } else {
    j["expr"] = expr.text();
    j["lo"] = lo;
    j["hi"] = hi;
  }
  return j;
}

// ---------------------------------------------------------------------------
// SamplingConfig

namespace {

double u01(std::mt19937_64& rng)
{
  // 53 uniform mantissa bits; identical across platforms for a fixed seed.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<double> SamplingConfig::z_grid() const
{
  std::vector<double> zs(static_cast<std::size_t>(z_points));
  const double ratio = std::log(z_hi / z_lo);
  for (int k = 0; k < z_points; ++k)
    zs[static_cast<std::size_t>(k)] =
        z_lo * std::exp(ratio * k / static_cast<double>(z_points - 1));
  return zs;
}

std::vector<std::pair<Point, Point>> SamplingConfig::xy_samples() const
{
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Point, Point>> out(static_cast<std::size_t>(xy_pairs));
  for (auto& s : out) {
    for (int d = 0; d < box.dim; ++d)
      s.first[d] = box.lo[d] + (box.hi[d] - box.lo[d]) * u01(rng);
    for (int d = 0; d < box.dim; ++d)
      s.second[d] = box.lo[d] + (box.hi[d] - box.lo[d]) * u01(rng);
  }
  return out;
}

nlohmann::ordered_json SamplingConfig::to_json() const
{
  nlohmann::ordered_json j;
  j["z_points"] = z_points;
  j["z_lo"] = z_lo;
  j["z_hi"] = z_hi;
  j["xy_pairs"] = xy_pairs;
  j["epsilons"] = epsilons;
  j["seed"] = seed;
  j["box"] = nlohmann::ordered_json{
      {"dim", box.dim},
      {"lo", std::vector<double>(box.lo.begin(), box.lo.begin() + box.dim)},
      {"hi", std::vector<double>(box.hi.begin(), box.hi.begin() + box.dim)}};
  return j;
}

// ---------------------------------------------------------------------------
// PhiNode evaluation

double PhiNode::value(double z, const Point& x, const Point& y) const
{
  switch (kind) {
    case Kind::Power:
      return f2(x, y) * std::pow(z, f1(x, y));
    case Kind::Log: {
      const double L = std::log1p(f2(x, y) * z);
      return std::pow(L, f1(x, y));
    }
    case Kind::Sin3: {
      const double s = std::sin(z);
      return f1(x, y) * s * s * s;
    }
    case Kind::Sum:
      return args[0]->value(z, x, y) + args[1]->value(z, x, y);
    case Kind::Scale:
      return f1(x, y) * args[0]->value(z, x, y);
    case Kind::Product:
      return args[0]->value(z, x, y) * args[1]->value(z, x, y);
    case Kind::Compose:
      return args[0]->value(args[1]->value(z, x, y), x, y);
    case Kind::Perturb:
      return args[0]->value(z, x, y) + psi->value(z, x, y);
    case Kind::PsiMultiply:
      return args[0]->value(z, x, y) * psi->value(z, x, y);
  }
  return 0.0;
}

double PhiNode::d1(double z, const Point& x, const Point& y) const
{
  switch (kind) {
    case Kind::Power: {
      const double p = f1(x, y);
      return f2(x, y) * p * std::pow(z, p - 1.0);
    }
    case Kind::Log: {
      const double g = f1(x, y), U = f2(x, y);
      const double L = std::log1p(U * z);
      return g * std::pow(L, g - 1.0) * U / (1.0 + U * z);
    }
    case Kind::Sin3: {
      const double s = std::sin(z), c = std::cos(z);
      return 3.0 * f1(x, y) * s * s * c;
    }
    case Kind::Sum:
      return args[0]->d1(z, x, y) + args[1]->d1(z, x, y);
    case Kind::Scale:
      return f1(x, y) * args[0]->d1(z, x, y);
    case Kind::Product:
      return args[0]->d1(z, x, y) * args[1]->value(z, x, y) +
             args[0]->value(z, x, y) * args[1]->d1(z, x, y);
    case Kind::Compose: {
      const double inner = args[1]->value(z, x, y);
      return args[0]->d1(inner, x, y) * args[1]->d1(z, x, y);
    }
    case Kind::Perturb:
      return args[0]->d1(z, x, y) + psi->d1(z, x, y);
    case Kind::PsiMultiply:
      return args[0]->d1(z, x, y) * psi->value(z, x, y) +
             args[0]->value(z, x, y) * psi->d1(z, x, y);
  }
  return 0.0;
}

double PhiNode::d2(double z, const Point& x, const Point& y) const
{
  switch (kind) {
    case Kind::Power: {
      const double p = f1(x, y);
      return f2(x, y) * p * (p - 1.0) * std::pow(z, p - 2.0);
    }
    case Kind::Log: {
      const double g = f1(x, y), U = f2(x, y);
      const double L = std::log1p(U * z);
      const double q = U / (1.0 + U * z);
      return g * q * q * std::pow(L, g - 2.0) * ((g - 1.0) - L);
    }
    case Kind::Sin3: {
      const double s = std::sin(z), c = std::cos(z);
      return 3.0 * f1(x, y) * s * (2.0 * c * c - s * s);
    }
    case Kind::Sum:
      return args[0]->d2(z, x, y) + args[1]->d2(z, x, y);
    case Kind::Scale:
      return f1(x, y) * args[0]->d2(z, x, y);
    case Kind::Product:
      return args[0]->d2(z, x, y) * args[1]->value(z, x, y) +
             2.0 * args[0]->d1(z, x, y) * args[1]->d1(z, x, y) +
             args[0]->value(z, x, y) * args[1]->d2(z, x, y);
    case Kind::Compose: {
      const double iv = args[1]->value(z, x, y);
      const double i1 = args[1]->d1(z, x, y);
      return args[0]->d2(iv, x, y) * i1 * i1 + args[0]->d1(iv, x, y) * args[1]->d2(z, x, y);
    }
    case Kind::Perturb:
      return args[0]->d2(z, x, y) + psi->d2(z, x, y);
    case Kind::PsiMultiply:
      return args[0]->d2(z, x, y) * psi->value(z, x, y) +
             2.0 * args[0]->d1(z, x, y) * psi->d1(z, x, y) +
             args[0]->value(z, x, y) * psi->d2(z, x, y);
  }
  return 0.0;
}

nlohmann::ordered_json PhiNode::to_json() const
{
  nlohmann::ordered_json j;
  switch (kind) {
    case Kind::Power:
      j["kind"] = "power";
      j["p"] = f1.to_json();
      j["b"] = f2.to_json();
      return j;
    case Kind::Log:
      j["kind"] = "log";
      j["gamma"] = f1.to_json();
      j["upsilon"] = f2.to_json();
      return j;
    case Kind::Sin3:
      j["kind"] = "sin3";
      j["b"] = f1.to_json();
      return j;
    case Kind::Sum:
      j["kind"] = "sum";
      j["args"] = nlohmann::ordered_json::array({args[0]->to_json(), args[1]->to_json()});
      return j;
    case Kind::Scale:
      j["kind"] = "scale";
      j["args"] = nlohmann::ordered_json::array({args[0]->to_json()});
      j["b"] = f1.to_json();
      return j;
    case Kind::Product:
      j["kind"] = "product";
      j["args"] = nlohmann::ordered_json::array({args[0]->to_json(), args[1]->to_json()});
      return j;
    case Kind::Compose:
      j["kind"] = "compose";
      j["args"] = nlohmann::ordered_json::array({args[0]->to_json(), args[1]->to_json()});
      return j;
    case Kind::Perturb:
      j["kind"] = "perturb";
      j["args"] = nlohmann::ordered_json::array({args[0]->to_json()});
      j["psi"] = psi->to_json();
      return j;
    case Kind::PsiMultiply:
      j["kind"] = "psi_multiply";
      j["args"] = nlohmann::ordered_json::array({args[0]->to_json()});
      j["psi"] = psi->to_json();
      return j;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

void resolve_bounds(Field& f, const SamplingConfig& cfg)
{
  if (f.is_const || f.bounds_stated) return;
  double lo = std::numeric_limits<double>::max();
  double hi = std::numeric_limits<double>::lowest();
  for (const auto& [x, y] : cfg.xy_samples()) {
    const double v = f.expr.eval(x, y);
    if (!std::isfinite(v)) throw ConfigError("field expression is not finite on the sampled box");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  f.lo = lo;
  f.hi = hi;
}

PhiNodePtr parse_node(const nlohmann::json& j, const SamplingConfig& cfg)
{
  if (!j.is_object() || !j.contains("kind"))
    throw ConfigError("phi expression node needs a 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  auto node = std::make_shared<PhiNode>();

  auto field = [&](const char* key, double fallback,
                   bool required) {
    if (!j.contains(key)) {
      if (required) throw ConfigError(std::string("phi node '") + kind + "' needs field '" + key + "'");
      return Field::constant(fallback);
    }
    Field f = Field::from_json(j[key]);
    resolve_bounds(f, cfg);
    return f;
  };
  auto children = [&](std::size_t count) {
    if (!j.contains("args") || !j["args"].is_array())
      throw ConfigError("phi node '" + kind + "' needs an 'args' array");
    const auto& a = j["args"];
    if (kind == "sum" ? a.size() < 2 : a.size() != count)
      throw ConfigError("phi node '" + kind + "' has the wrong argument count");
    for (const auto& c : a) node->args.push_back(parse_node(c, cfg));
  };

  if (kind == "power") {
    node->kind = PhiNode::Kind::Power;
    node->f1 = field("p", 0.0, true);
    node->f2 = field("b", 1.0, false);
  } else if (kind == "log") {
    node->kind = PhiNode::Kind::Log;
    node->f1 = field("gamma", 1.0, true);
    node->f2 = field("upsilon", 1.0, true);
  } else if (kind == "sin3") {
    node->kind = PhiNode::Kind::Sin3;
    node->f1 = field("b", 1.0, true);
  } else if (kind == "sum") {
    node->kind = PhiNode::Kind::Sum;
    children(2);
    // fold n-ary sums into nested binary nodes
    while (node->args.size() > 2) {
      auto inner = std::make_shared<PhiNode>();
      inner->kind = PhiNode::Kind::Sum;
      inner->args = {node->args[0], node->args[1]};
      std::vector<PhiNodePtr> rest{inner};
      rest.insert(rest.end(), node->args.begin() + 2, node->args.end());
      node->args = std::move(rest);
    }
  } else if (kind == "scale") {
    node->kind = PhiNode::Kind::Scale;
    children(1);
    node->f1 = field("b", 1.0, true);
  } else if (kind == "product") {
    node->kind = PhiNode::Kind::Product;
    children(2);
  } else if (kind == "compose") {
    node->kind = PhiNode::Kind::Compose;
    children(2);
  } else if (kind == "perturb" || kind == "psi_multiply") {
    node->kind = kind == "perturb" ? PhiNode::Kind::Perturb : PhiNode::Kind::PsiMultiply;
    children(1);
    if (!j.contains("psi")) throw ConfigError("phi node '" + kind + "' needs 'psi'");
    node->psi = parse_node(j["psi"], cfg);
  } else {
    throw ConfigError("unknown phi node kind '" + kind + "'");
  }
  return node;
}

// ---------------------------------------------------------------------------
// Metadata derivation

struct NodeMeta {
  double w_lo = 0.0, w_hi = 0.0;  // growth exponent window
  double beta = 1.0, c1 = 1.0, c2 = 1.0;
  std::optional<double> c7;
  bool psi_only = false;
};

// Largest q with psi/z^q non-increasing, known structurally for the
// logarithmic psi family.
double psi_growth_exponent(const PhiNode& n)
{
  if (n.kind == PhiNode::Kind::Log) return n.f1.hi;
  if (n.kind == PhiNode::Kind::Scale) return psi_growth_exponent(*n.args[0]);
  throw NotAdmissible("psi_multiply accepts logarithmic psi expressions (log or scale of log)");
}

NodeMeta derive_meta(const PhiNode& n, const SamplingConfig& cfg)
{
  switch (n.kind) {
    case PhiNode::Kind::Power: {
      if (!(n.f1.lo > 1.0))
        throw NotAdmissible("power exponent must satisfy 1 < p- <= p+; lower bound is " +
                            std::to_string(n.f1.lo));
      if (!(n.f2.lo > 0.0))
        throw NotAdmissible("power coefficient must have a positive lower bound");
      NodeMeta m;
      m.w_lo = n.f1.lo;
      m.w_hi = n.f1.hi;
      m.beta = 1.0;
      m.c1 = std::max({1.0, n.f2.hi, 1.0 / n.f2.lo});
      m.c2 = n.f1.hi;
      m.c7 = n.f1.lo * (n.f1.lo - 1.0);
      return m;
    }
    case PhiNode::Kind::Log: {
      if (!(n.f1.lo >= 1.0)) throw NotAdmissible("log psi needs gamma >= 1");
      if (!(n.f2.lo > 0.0)) throw NotAdmissible("log psi needs upsilon > 0");
      NodeMeta m;
      m.psi_only = true;
      m.w_lo = 0.0;
      m.w_hi = n.f1.hi;
      return m;
    }
    case PhiNode::Kind::Sin3: {
      if (!(n.f1.lo > 0.0)) throw NotAdmissible("sin3 psi needs a positive coefficient");
      NodeMeta m;
      m.psi_only = true;
      return m;
    }
    case PhiNode::Kind::Sum: {
      const NodeMeta a = derive_meta(*n.args[0], cfg);
      const NodeMeta b = derive_meta(*n.args[1], cfg);
      if (a.psi_only || b.psi_only)
        throw NotAdmissible("sum arguments must be admissible integrands; use perturb instead");
      NodeMeta m;
      m.w_lo = std::min(a.w_lo, b.w_lo);
      m.w_hi = std::max(a.w_hi, b.w_hi);
      m.beta = std::max(a.beta, b.beta);
      m.c1 = a.c1 + b.c1;
      m.c2 = std::max(a.c2, b.c2);
      if (a.c7 && b.c7) m.c7 = std::min(*a.c7, *b.c7);
      return m;
    }
    case PhiNode::Kind::Scale: {
      if (!(n.f1.lo > 0.0)) throw NotAdmissible("scale coefficient must have a positive lower bound");
      NodeMeta m = derive_meta(*n.args[0], cfg);
      if (m.psi_only) return m;  // scaling a psi keeps it a psi
      m.c1 *= std::max({1.0, n.f1.hi, 1.0 / n.f1.lo});
      return m;
    }
    case PhiNode::Kind::Product: {
      const NodeMeta a = derive_meta(*n.args[0], cfg);
      const NodeMeta b = derive_meta(*n.args[1], cfg);
      if (a.psi_only || b.psi_only)
        throw NotAdmissible("product arguments must be admissible integrands; use psi_multiply instead");
      NodeMeta m;
      m.w_lo = a.w_lo + b.w_lo;
      m.w_hi = a.w_hi + b.w_hi;
      m.beta = a.beta * b.beta;
      m.c1 = a.c1 * b.c1;
      m.c2 = a.c2 + b.c2;
      if (a.c7 && b.c7) m.c7 = *a.c7 + *b.c7;
      return m;
    }
    case PhiNode::Kind::Compose: {
      const NodeMeta outer = derive_meta(*n.args[0], cfg);
      const NodeMeta inner = derive_meta(*n.args[1], cfg);
      if (outer.psi_only || inner.psi_only)
        throw NotAdmissible("compose arguments must be admissible integrands");
      NodeMeta m;
      m.w_lo = outer.w_lo * inner.w_lo;
      m.w_hi = outer.w_hi * inner.w_hi;
      m.beta = outer.beta * std::pow(inner.beta * inner.c1, std::max(1.0, outer.w_hi));
      m.c1 = outer.beta * outer.c1 * std::pow(inner.c1, outer.w_hi);
      m.c2 = outer.c2 * inner.c2;
      m.c7 = outer.c7;  // inner convexity only helps
      return m;
    }
    case PhiNode::Kind::Perturb: {
      const NodeMeta base = derive_meta(*n.args[0], cfg);
      if (base.psi_only) throw NotAdmissible("perturb base must be an admissible integrand");
      if (!base.c7)
        throw NotAdmissible("perturb base needs the second-derivative lower bound");
      const PhiNode& b = *n.args[0];
      const PhiNode& p = *n.psi;

      // structural requirement psi(0) = psi'(0) = 0
      const auto& probe = cfg.xy_samples().front();
      const double z0 = 1e-6;
      if (std::fabs(p.value(z0, probe.first, probe.second)) > 1e-9 ||
          std::fabs(p.d1(z0, probe.first, probe.second)) > 1e-3)
        throw NotAdmissible("perturbation psi must vanish to first order at z = 0");

      double c8 = 0.0;
      for (const auto& [x, y] : cfg.xy_samples()) {
        for (double z : cfg.z_grid()) {
          const double bd2 = b.d2(z, x, y);
          if (!(bd2 > 0.0))
            throw NotAdmissible("perturb base lost its positive second derivative at a sample");
          c8 = std::max(c8, std::fabs(p.d2(z, x, y)) / bd2);
        }
      }
      if (c8 >= 1.0)
        throw NotAdmissible("perturbation is too large: empirical c8 = " + std::to_string(c8) +
                            " >= 1");
      NodeMeta m = base;
      m.c1 *= 1.0 + c8;
      m.c2 *= 1.0 + c8;
      m.beta *= (1.0 + c8) / (1.0 - c8);
      m.c7 = *base.c7 * (1.0 - c8) / (1.0 + c8);
      return m;
    }
    case PhiNode::Kind::PsiMultiply: {
      const NodeMeta base = derive_meta(*n.args[0], cfg);
      if (base.psi_only) throw NotAdmissible("psi_multiply base must be an admissible integrand");
      if (!base.c7)
        throw NotAdmissible("psi_multiply base needs the second-derivative lower bound");
      const PhiNode& p = *n.psi;
      derive_meta(p, cfg);  // validates the psi fields
      const double q = psi_growth_exponent(p);  // throws for non-logarithmic psi

      double c1lo = std::numeric_limits<double>::max(), c1hi = 0.0;
      double c2psi = 0.0, c9 = 0.0;
      for (const auto& [x, y] : cfg.xy_samples()) {
        const double v1 = p.value(1.0, x, y);
        c1lo = std::min(c1lo, v1);
        c1hi = std::max(c1hi, v1);
        for (double z : cfg.z_grid()) {
          const double v = p.value(z, x, y);
          const double s1 = p.d1(z, x, y);
          const double s2 = p.d2(z, x, y);
          if (!(v > 0.0) || s1 < 0.0)
            throw NotAdmissible("psi factor must be positive and non-decreasing for z > 0");
          c2psi = std::max(c2psi, z * s1 / v);
          if (s1 > 0.0) c9 = std::max(c9, -z * s2 / s1);
        }
      }
      double c10 = 0.0;
      if (c9 >= 2.0) {
        c9 = 1.99;
        for (const auto& [x, y] : cfg.xy_samples())
          for (double z : cfg.z_grid()) {
            const double v = p.value(z, x, y);
            c10 = std::max(c10, -(z * z * p.d2(z, x, y) + c9 * z * p.d1(z, x, y)) / v);
          }
        if (c10 >= *base.c7)
          throw NotAdmissible("psi curvature balance fails: c9 >= 2 and c10 = " +
                              std::to_string(c10) + " >= c7 = " + std::to_string(*base.c7));
      }
      if (!(c1lo > 0.0)) throw NotAdmissible("psi factor vanishes at z = 1");

      NodeMeta m = base;
      m.w_hi += q;
      m.c1 *= std::max({1.0, c1hi, 1.0 / c1lo});
      m.c2 += std::max(c2psi, 0.0);
      m.c7 = *base.c7 - c10;
      return m;
    }
  }
  throw NotAdmissible("unreachable phi node kind");
}

GrowthMeta finalize_meta(const NodeMeta& m)
{
  GrowthMeta g;
  g.p_minus = m.w_lo;
  g.p_plus = m.w_hi;
  g.beta = std::max(1.0, m.beta);
  g.c1 = std::max(1.0, m.c1);
  g.c2 = std::max(m.c2, 1.0 + 1e-9);
  g.c7 = m.c7 && *m.c7 > 0.0 ? m.c7 : std::nullopt;
  return g;
}

}  // namespace

nlohmann::ordered_json GrowthMeta::to_json() const
{
  nlohmann::ordered_json j;
  j["p_minus"] = p_minus;
  j["p_plus"] = p_plus;
  j["beta"] = beta;
  j["c1"] = c1;
  j["c2"] = c2;
  if (c7) j["c7"] = *c7;
  return j;
}

// ---------------------------------------------------------------------------
// PhiFunction

double PhiFunction::operator()(double z, const Point& x, const Point& y) const
{
  if (z <= 0.0) return 0.0;
  return root_->value(z, x, y);
}

double PhiFunction::prime(double z, const Point& x, const Point& y) const
{
  const double v = root_->d1(z, x, y);
  if (!(v > 0.0))
    throw NonPositiveDerivative("phi'(z) = " + std::to_string(v) + " at z = " +
                                std::to_string(z));
  return v;
}

double PhiFunction::second(double z, const Point& x, const Point& y) const
{
  return root_->d2(z, x, y);
}

double PhiFunction::conjugate(double t, const Point& x, const Point& y) const
{
  if (t <= 0.0) return 0.0;
  const PhiNode& n = *root_;
  auto slope = [&](double s) { return n.d1(s, x, y); };

  double s_lo = 1.0, s_hi = 1.0;
  bool bracketed = false;
  if (slope(1.0) >= t) {
    for (int k = 0; k < 200; ++k) {
      s_hi = s_lo;
      s_lo *= 0.5;
      if (slope(s_lo) <= t) { bracketed = true; break; }
    }
    // slope stays above t down to s ~ 0: the supremum sits at s = 0.
    if (!bracketed) return 0.0;
  } else {
    for (int k = 0; k < 200; ++k) {
      s_hi = std::min(s_hi * 2.0, 1e150);
      if (slope(s_hi) >= t) { bracketed = true; break; }
      s_lo = s_hi;
      if (s_hi >= 1e150) break;
    }
  }

  if (bracketed) {
    for (int it = 0; it < 200; ++it) {
      const double sm = 0.5 * (s_lo + s_hi);
      if (slope(sm) < t) s_lo = sm; else s_hi = sm;
      if (s_hi - s_lo <= 1e-10 * s_hi) break;
    }
    const double s = 0.5 * (s_lo + s_hi);
    return std::max(0.0, s * t - n.value(s, x, y));
  }

  // Derivative never reached t: fall back to bracketing the maximum of
  // s -> s t - phi(s) directly.
  auto gain = [&](double s) { return s * t - n.value(s, x, y); };
  double a = 0.0, b = 1.0;
  double gb = gain(b);
  bool peaked = false;
  for (int k = 0; k < 200; ++k) {
    const double c = b * 2.0;
    const double gc = gain(c);
    if (gc < gb) { peaked = true; a = b * 0.5; b = c; break; }
    b = c;
    gb = gc;
  }
  if (!peaked)
    throw ConjugateBracketFailure("phi' never reaches t = " + std::to_string(t) +
                                  "; growth conditions are violated");
  const double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double g1 = gain(x1), g2 = gain(x2);
  for (int it = 0; it < 300 && (b - a) > 1e-12 * (1.0 + b); ++it) {
    if (g1 < g2) {
      a = x1; x1 = x2; g1 = g2;
      x2 = a + invphi * (b - a); g2 = gain(x2);
    } else {
      b = x2; x2 = x1; g2 = g1;
      x1 = b - invphi * (b - a); g1 = gain(x1);
    }
  }
  return std::max(0.0, gain(0.5 * (a + b)));
}

PhiFunction PhiFunction::with_meta(const GrowthMeta& m) const
{
  return PhiFunction(root_, m);
}

nlohmann::ordered_json PhiFunction::to_json() const
{
  return root_->to_json();
}

std::string PhiFunction::hash() const
{
  return fnv1a64_hex(dump_json_17(to_json(), 0));
}

PhiFunction build_phi(const nlohmann::json& expr, const SamplingConfig& cfg)
{
  PhiNodePtr root = parse_node(expr, cfg);
  const NodeMeta m = derive_meta(*root, cfg);
  if (m.psi_only)
    throw NotAdmissible("expression is a psi factor, not an admissible integrand; "
                        "combine it via perturb or psi_multiply");
  if (!(m.w_lo > 1.0))
    throw NotAdmissible("growth window must satisfy 1 < p-");
  return PhiFunction(std::move(root), finalize_meta(m));
}

PhiFunction build_phi(const std::string& json_text, const SamplingConfig& cfg)
{
  return build_phi(nlohmann::json::parse(json_text), cfg);
}

PhiFunction build_phi_unchecked(const nlohmann::json& expr, const GrowthMeta& claimed)
{
  SamplingConfig cfg;
  return PhiFunction(parse_node(expr, cfg), claimed);
}

// ---------------------------------------------------------------------------
// Condition checks

namespace {

struct Scan {
  double beta_inc = 1.0, beta_dec = 1.0;
  double c4_min = std::numeric_limits<double>::max();
  double c4_max = 0.0;
  double c5_sup = 0.0;
  double sec_inf = std::numeric_limits<double>::max();
  bool positive = true;
  bool derivative_positive = true;
  std::vector<double> delta_hat;  // per epsilon
};

Scan run_scan(const PhiFunction& phi, const SamplingConfig& cfg)
{
  Scan sc;
  sc.delta_hat.assign(cfg.epsilons.size(), std::numeric_limits<double>::max());
  const auto zs = cfg.z_grid();
  const auto xys = cfg.xy_samples();
  const std::size_t nz = zs.size();
  std::vector<double> vals(nz);

  for (const auto& [x, y] : xys) {
    for (std::size_t k = 0; k < nz; ++k) {
      vals[k] = phi(zs[k], x, y);
      if (!(vals[k] > 0.0) || !std::isfinite(vals[k])) sc.positive = false;
    }
    if (!sc.positive) break;

    const double v1 = phi(1.0, x, y);
    sc.c4_min = std::min(sc.c4_min, v1);
    sc.c4_max = std::max(sc.c4_max, v1);

    for (std::size_t k = 0; k < nz; ++k) {
      const double d = phi.root().d1(zs[k], x, y);
      if (!(d > 0.0)) sc.derivative_positive = false;
      else sc.c5_sup = std::max(sc.c5_sup, zs[k] * d / vals[k]);
      const double s = phi.root().d2(zs[k], x, y);
      sc.sec_inf = std::min(sc.sec_inf, zs[k] * zs[k] * s / vals[k]);
    }

    // C3: almost increasing of phi/z^{p-}, almost decreasing of phi/z^{p+}
    const double pm = phi.meta().p_minus, pp = phi.meta().p_plus;
    double prefix_max_inc = 0.0, prefix_min_dec = std::numeric_limits<double>::max();
    for (std::size_t k = 0; k < nz; ++k) {
      const double r_inc = vals[k] / std::pow(zs[k], pm);
      const double r_dec = vals[k] / std::pow(zs[k], pp);
      if (k > 0) {
        sc.beta_inc = std::max(sc.beta_inc, prefix_max_inc / r_inc);
        sc.beta_dec = std::max(sc.beta_dec, r_dec / prefix_min_dec);
      }
      prefix_max_inc = std::max(prefix_max_inc, r_inc);
      prefix_min_dec = std::min(prefix_min_dec, r_dec);
    }

    // C2: worst midpoint convexity gain over separated pairs
    for (std::size_t k = 0; k < nz; ++k)
      for (std::size_t l = k + 1; l < nz; ++l) {
        const double s = zs[k], t = zs[l];
        const double sep = (t - s) / t;  // |s-t| / max{s,t}
        const double mid = phi(0.5 * (s + t), x, y);
        const double gap = 1.0 - 2.0 * mid / (vals[k] + vals[l]);
        for (std::size_t e = 0; e < cfg.epsilons.size(); ++e)
          if (sep >= cfg.epsilons[e])
            sc.delta_hat[e] = std::min(sc.delta_hat[e], gap);
      }
  }
  return sc;
}

}  // namespace

nlohmann::ordered_json ConditionReport::to_json() const
{
  nlohmann::ordered_json j;
  j["c2"] = nlohmann::ordered_json::array();
  for (const auto& row : c2_uniform_convexity)
    j["c2"].push_back(nlohmann::ordered_json{
        {"eps", row.eps}, {"delta_hat", row.delta_hat}, {"delta_ref", row.delta_ref}});
  j["c2_pass"] = c2_pass;
  j["c3_beta_increasing"] = c3_beta_increasing;
  j["c3_beta_decreasing"] = c3_beta_decreasing;
  j["c3_pass"] = c3_pass;
  j["c4_min"] = c4_min;
  j["c4_max"] = c4_max;
  j["c4_pass"] = c4_pass;
  j["c5_sup"] = c5_sup;
  j["c5_pass"] = c5_pass;
  if (secder_inf) j["secder_inf"] = *secder_inf;
  j["secder_pass"] = secder_pass;
  j["pass"] = pass();
  j["sampling"] = sampling.to_json();
  return j;
}

ConditionReport check_conditions(const PhiFunction& phi, const SamplingConfig& cfg)
{
  ConditionReport rep;
  rep.sampling = cfg;
  const Scan sc = run_scan(phi, cfg);
  const GrowthMeta& m = phi.meta();
  const double slack = 1.05;

  rep.c2_pass = sc.positive;
  for (std::size_t e = 0; e < cfg.epsilons.size(); ++e) {
    ConditionReport::C2Row row;
    row.eps = cfg.epsilons[e];
    row.delta_hat = sc.delta_hat[e] == std::numeric_limits<double>::max() ? 0.0 : sc.delta_hat[e];
    row.delta_ref = m.c7 ? *m.c7 * row.eps * row.eps / (std::pow(2.0, m.p_plus + 4.0) * m.beta)
                         : 0.0;
    rep.c2_uniform_convexity.push_back(row);
    if (!(row.delta_hat > 1e-6)) rep.c2_pass = false;
  }

  rep.c3_beta_increasing = sc.beta_inc;
  rep.c3_beta_decreasing = sc.beta_dec;
  rep.c3_pass = sc.positive && m.p_minus > 1.0 &&
                sc.beta_inc <= m.beta * slack + 1e-12 &&
                sc.beta_dec <= m.beta * slack + 1e-12;

  rep.c4_min = sc.c4_min == std::numeric_limits<double>::max() ? 0.0 : sc.c4_min;
  rep.c4_max = sc.c4_max;
  rep.c4_pass = rep.c4_min > 0.0 && rep.c4_max <= m.c1 * slack + 1e-12 &&
                rep.c4_min >= 1.0 / (m.c1 * slack) - 1e-12;

  rep.c5_sup = sc.c5_sup;
  rep.c5_pass = sc.positive && sc.derivative_positive && sc.c5_sup <= m.c2 * slack + 1e-12;

  if (sc.sec_inf != std::numeric_limits<double>::max()) {
    rep.secder_inf = sc.sec_inf;
    rep.secder_pass = sc.sec_inf > 0.0;
  }
  return rep;
}

GrowthMeta estimate_growth_constants(const PhiFunction& phi, const SamplingConfig& cfg)
{
  const Scan sc = run_scan(phi, cfg);
  const GrowthMeta& m = phi.meta();
  if (!sc.positive)
    throw NotAdmissible("phi is not strictly positive and finite at sampled z > 0");
  if (!sc.derivative_positive)
    throw NotAdmissible("phi' is not strictly positive at sampled z > 0");
  if (!(m.p_minus > 1.0))
    throw NotAdmissible("growth window must satisfy 1 < p-");
  if (!(sc.c4_min > 0.0))
    throw NotAdmissible("phi(1, x, y) vanishes at a sample");
  for (double dh : sc.delta_hat)
    if (!(dh > 0.0))
      throw NotAdmissible("midpoint convexity fails on the sample set");

  GrowthMeta out = m;
  out.beta = std::max({1.0, sc.beta_inc, sc.beta_dec}) * 1.05;
  out.c1 = std::max({1.0, sc.c4_max, 1.0 / sc.c4_min}) * 1.05;
  out.c2 = std::max(sc.c5_sup * 1.05, 1.0 + 1e-9);
  out.c7 = sc.sec_inf > 0.0 && sc.sec_inf != std::numeric_limits<double>::max()
               ? std::optional<double>(sc.sec_inf * 0.95)
               : std::nullopt;
  return out;
}

PhiFunction calibrated(const PhiFunction& phi, const SamplingConfig& cfg)
{
  return phi.with_meta(estimate_growth_constants(phi, cfg));
}

}  // namespace orlicz
