#include "orlicz/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "orlicz/approximate.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/functionals.hpp"
#include "orlicz/jsonio.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/solver.hpp"
#include "orlicz/threads.hpp"

namespace orlicz {

// ---------------------------------------------------------------------------
// Config parsing

DensityPlan DensityPlan::from_json(const nlohmann::json& j)
{
  DensityPlan p;
  p.u_expr = j.value("u", p.u_expr);
  p.support_center = j.value("support_center", p.support_center);
  p.support_radius = j.value("support_radius", p.support_radius);
  if (j.contains("ladder")) p.ladder = j["ladder"].get<std::vector<double>>();
  return p;
}

nlohmann::ordered_json DensityPlan::to_json() const
{
  return nlohmann::ordered_json{{"u", u_expr},
                                {"support_center", support_center},
                                {"support_radius", support_radius},
                                {"ladder", ladder}};
}

Scenario Scenario::from_json(const nlohmann::json& j)
{
  Scenario s;
  s.id = j.at("id").get<std::string>();
  s.domain = DomainSpec::from_json(j.at("domain"));
  s.kernel = KernelSpec::from_json(j.at("kernel"));
  s.phi_expr = j.at("phi");
  if (j.contains("family")) s.family = FamilySpec::from_json(j["family"]);
  s.seed = j.value("seed", std::uint64_t{1});
  if (j.contains("density")) s.density = DensityPlan::from_json(j["density"]);
  if (j.contains("suites")) s.suites = j["suites"].get<std::vector<std::string>>();
  return s;
}

nlohmann::ordered_json Scenario::to_json() const
{
  nlohmann::ordered_json j;
  j["id"] = id;
  j["domain"] = domain.to_json();
  j["kernel"] = kernel.to_json();
  j["phi"] = nlohmann::ordered_json::parse(phi_expr.dump());
  j["family"] = family.to_json();
  j["seed"] = seed;
  j["density"] = density.to_json();
  if (!suites.empty()) j["suites"] = suites;
  return j;
}

const std::vector<std::string>& known_suites()
{
  static const std::vector<std::string> names{
      "young", "hoelder", "sandwich", "equivalence", "convexity",
      "variation", "poincare", "density", "dual", "conditions"};
  return names;
}

SuiteConfig SuiteConfig::from_json(const nlohmann::json& j)
{
  SuiteConfig c;
  if (!j.contains("scenarios") || !j["scenarios"].is_array())
    throw ConfigError("suite config needs a 'scenarios' array");
  for (const auto& s : j["scenarios"]) c.scenarios.push_back(Scenario::from_json(s));
  if (j.contains("suites"))
    c.suites = j["suites"].get<std::vector<std::string>>();
  else
    c.suites = known_suites();
  for (const auto& name : c.suites)
    if (std::find(known_suites().begin(), known_suites().end(), name) == known_suites().end())
      throw ConfigError("unknown suite '" + name + "'");
  if (j.contains("tolerances"))
    for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it)
      c.tolerances[it.key()] = it.value().get<double>();
  return c;
}

nlohmann::ordered_json SuiteConfig::to_json() const
{
  nlohmann::ordered_json j;
  j["scenarios"] = nlohmann::ordered_json::array();
  for (const auto& s : scenarios) j["scenarios"].push_back(s.to_json());
  j["suites"] = suites;
  nlohmann::ordered_json tols;
  for (const auto& [k, v] : tolerances) tols[k] = v;
  j["tolerances"] = tols;
  return j;
}

double SuiteConfig::tol(const std::string& suite, double fallback) const
{
  auto it = tolerances.find(suite);
  return it == tolerances.end() ? fallback : it->second;
}

// ---------------------------------------------------------------------------
// Scenario context

namespace {

struct ScenarioCtx {
  const Scenario* spec = nullptr;
  Grid grid;
  Kernel kernel;
  PhiFunction phi;
  SamplingConfig sampling;
  std::vector<GridFunction> family;
};

SamplingConfig sampling_for(const Grid& g, std::uint64_t seed)
{
  SamplingConfig cfg;
  cfg.seed = seed;
  cfg.box.dim = g.dim;
  Point lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
  Point hi{std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
  for (const auto& b : g.boxes)
    for (int d = 0; d < g.dim; ++d) {
      lo[d] = std::min(lo[d], b.lo[d]);
      hi[d] = std::max(hi[d], b.hi[d]);
    }
  cfg.box.lo = lo;
  cfg.box.hi = hi;
  return cfg;
}

ScenarioCtx prepare(const Scenario& s)
{
  ScenarioCtx ctx;
  ctx.spec = &s;
  ctx.kernel = build_kernel(s.kernel, s.domain.dimension);
  ctx.grid = build_grid(s.domain, ctx.kernel.r0);
  ctx.sampling = sampling_for(ctx.grid, s.seed);
  ctx.phi = calibrated(build_phi(s.phi_expr, ctx.sampling), ctx.sampling);
  ctx.family = sample_family(ctx.grid, s.family, s.seed);
  return ctx;
}

double norm_gap(double lhs, double rhs, double scale)
{
  return (lhs - rhs) / (1.0 + std::fabs(scale));
}

// ---------------------------------------------------------------------------
// Suites. Each returns one row; worst_slack is the largest normalized
// violation (negative means the inequality held with margin).

SuiteRow run_young(const ScenarioCtx& ctx, double tol)
{
  SuiteRow row{"young", ctx.spec->id, "s t <= phi*(t) + phi(s); phi*(phi'(t)) <= (c2-1) phi(t)",
               0, -1.0, true, 0.0};
  const auto zs = ctx.sampling.z_grid();
  const auto xys = ctx.sampling.xy_samples();
  const double c2 = ctx.phi.meta().c2;
  std::vector<double> vals(zs.size()), conj(zs.size());

  for (const auto& [x, y] : xys) {
    for (std::size_t k = 0; k < zs.size(); ++k) {
      vals[k] = ctx.phi(zs[k], x, y);
      conj[k] = ctx.phi.conjugate(zs[k], x, y);
    }
    for (std::size_t a = 0; a < zs.size(); ++a)
      for (std::size_t b = 0; b < zs.size(); ++b) {
        const double st = zs[a] * zs[b];
        row.worst_slack = std::max(row.worst_slack, norm_gap(st, conj[b] + vals[a], st));
        ++row.checked;
      }
    for (std::size_t k = 0; k < zs.size(); ++k) {
      const double lhs = ctx.phi.conjugate(ctx.phi.prime(zs[k], x, y), x, y);
      row.worst_slack =
          std::max(row.worst_slack, norm_gap(lhs, (c2 - 1.0) * vals[k], vals[k]));
      ++row.checked;
    }
  }
  row.pass = row.worst_slack <= tol;
  return row;
}

PairFunction make_pair_sample(const Grid& g, const FamilySpec& fam, std::uint64_t seed)
{
  const GridFunction v = sample_function(g, fam, seed);
  const GridFunction s = sample_function(g, fam, seed + 7919);
  auto vv = std::make_shared<std::vector<double>>(v.values);
  auto ss = std::make_shared<std::vector<double>>(s.values);
  return PairFunction::callable(g, [vv, ss](std::size_t i, std::size_t j) {
    return (*vv)[i] - (*vv)[j] + 0.5 * (*ss)[i] * (*ss)[j];
  });
}

SuiteRow run_hoelder(const ScenarioCtx& ctx, double tol)
{
  SuiteRow row{"hoelder", ctx.spec->id, "|integral(W V a)| <= 2 h(V) h*(W)", 0, -1.0, true, 0.0};
  const Grid& g = ctx.grid;
  for (int n = 0; n < ctx.spec->family.count; ++n) {
    const auto V = make_pair_sample(g, ctx.spec->family, ctx.spec->seed + 31ull * n);
    const auto W = make_pair_sample(g, ctx.spec->family, ctx.spec->seed + 31ull * n + 17);
    const double pairing = quadrature_double(
        g, ctx.kernel, [&](std::size_t i, std::size_t j) { return W(i, j) * V(i, j); });
    const double hv = h_norm(g, ctx.kernel, ctx.phi, V);
    const double hw = h_star_norm(g, ctx.kernel, ctx.phi, W);
    row.worst_slack =
        std::max(row.worst_slack, norm_gap(std::fabs(pairing), 2.0 * hv * hw, pairing));
    ++row.checked;
  }
  row.pass = row.worst_slack <= tol;
  return row;
}

SuiteRow run_sandwich(const ScenarioCtx& ctx, double tol)
{
  SuiteRow row{"sandwich", ctx.spec->id,
               "growth sandwich in z and the functional sandwich at the root", 0, -1.0, true, 0.0};
  const GrowthMeta& m = ctx.phi.meta();
  const auto zs = ctx.sampling.z_grid();
  for (const auto& [x, y] : ctx.sampling.xy_samples())
    for (double z : zs) {
      const double v = ctx.phi(z, x, y);
      const double zl = std::pow(z, m.p_minus), zh = std::pow(z, m.p_plus);
      const double lower = std::min(zl, zh) / (m.beta * m.c1);
      const double upper = std::max(zl, zh) * m.beta * m.c1;
      row.worst_slack = std::max(row.worst_slack, norm_gap(lower, v, v));
      row.worst_slack = std::max(row.worst_slack, norm_gap(v, upper, v));
      ++row.checked;
    }
  for (const auto& u : ctx.family) {
    const SandwichCertificate cert = verify_sandwich(ctx.grid, ctx.kernel, ctx.phi, u);
    if (cert.lambda == 0.0) { ++row.checked; continue; }
    row.worst_slack = std::max(row.worst_slack, norm_gap(cert.lower, cert.F_value, cert.F_value));
    row.worst_slack = std::max(row.worst_slack, norm_gap(cert.F_value, cert.upper, cert.F_value));
    ++row.checked;
  }
  row.pass = row.worst_slack <= tol;
  return row;
}

SuiteRow run_equivalence(const ScenarioCtx& ctx, double tol)
{
  SuiteRow row{"equivalence", ctx.spec->id, "f/2 <= g <= beta^{1/p-} f", 0, -1.0, true, 0.0};
  const GrowthMeta& m = ctx.phi.meta();
  for (const auto& u : ctx.family) {
    const double f = f_norm(ctx.grid, ctx.kernel, ctx.phi, u);
    const double gn = g_norm(ctx.grid, ctx.kernel, ctx.phi, u);
    row.worst_slack = std::max(row.worst_slack, norm_gap(0.5 * f, gn, f));
    row.worst_slack =
        std::max(row.worst_slack, norm_gap(gn, std::pow(m.beta, 1.0 / m.p_minus) * f, f));
    ++row.checked;
  }
  row.pass = row.worst_slack <= tol;
  return row;
}

SuiteRow run_convexity(const ScenarioCtx& ctx, double tol)
{
  SuiteRow row{"convexity", ctx.spec->id,
               "uniform convexity gain delta(eps); midpoint convexity of F", 0, -1.0, true, 0.0};
  const ConditionReport rep = check_conditions(ctx.phi, ctx.sampling);
  for (const auto& c2 : rep.c2_uniform_convexity) {
    row.worst_slack = std::max(row.worst_slack, 1e-6 - c2.delta_hat);
    ++row.checked;
  }
  for (std::size_t i = 0; i + 1 < ctx.family.size(); ++i) {
    const GridFunction& u = ctx.family[i];
    const GridFunction& v = ctx.family[i + 1];
    GridFunction mid(ctx.grid);
    for (std::size_t k = 0; k < mid.size(); ++k) mid[k] = 0.5 * (u[k] + v[k]);
    const double Fu = eval_F(ctx.grid, ctx.kernel, ctx.phi, u);
    const double Fv = eval_F(ctx.grid, ctx.kernel, ctx.phi, v);
    const double Fm = eval_F(ctx.grid, ctx.kernel, ctx.phi, mid);
    row.worst_slack = std::max(row.worst_slack, norm_gap(Fm, 0.5 * (Fu + Fv), Fu + Fv));
    ++row.checked;
  }
  row.pass = row.worst_slack <= tol;
  return row;
}

SuiteRow run_variation(const ScenarioCtx& ctx, double tol)
{
  SuiteRow row{"variation", ctx.spec->id,
               "F(u+tv) = F(u) + t l(u,v) + o(t); l(u,-v) = -l(u,v)", 0, -1.0, true, 0.0};
  const std::vector<double> ts{1e-2, 1e-3, 1e-4};
  for (std::size_t i = 0; i + 1 < ctx.family.size(); ++i) {
    const GridFunction& u = ctx.family[i];
    const GridFunction& v = ctx.family[i + 1];
    const double Fu = eval_F(ctx.grid, ctx.kernel, ctx.phi, u);
    const double l = eval_ell(ctx.grid, ctx.kernel, ctx.phi, u, v);

    GridFunction neg = v;
    for (double& x : neg.values) x = -x;
    const double l_neg = eval_ell(ctx.grid, ctx.kernel, ctx.phi, u, neg);
    row.worst_slack = std::max(row.worst_slack, std::fabs(l + l_neg) / (1.0 + std::fabs(l)));
    ++row.checked;

    std::vector<double> ratio;
    for (double t : ts) {
      GridFunction ut = u;
      for (std::size_t k = 0; k < ut.size(); ++k) ut[k] += t * v[k];
      const double Ft = eval_F(ctx.grid, ctx.kernel, ctx.phi, ut);
      ratio.push_back(std::fabs(Ft - Fu - t * l) / t);
    }
    for (std::size_t k = 0; k + 1 < ratio.size(); ++k) {
      if (ratio[k] <= 1e-12 * (1.0 + Fu)) continue;  // already at float noise
      row.worst_slack = std::max(row.worst_slack, 1.8 * ratio[k + 1] / ratio[k] - 1.0);
      ++row.checked;
    }
  }
  row.pass = row.worst_slack <= tol;
  return row;
}

SuiteRow run_poincare(const ScenarioCtx& ctx, double /*tol*/)
{
  SuiteRow row{"poincare", ctx.spec->id, "||u_perp||_{p-}^{p-} <= C F_{p-}(u)", 0, 0.0, true, 0.0};
  try {
    const double C =
        poincare_certificate(ctx.grid, ctx.kernel, ctx.phi.meta().p_minus, ctx.family);
    row.checked = static_cast<long>(ctx.family.size());
    row.worst_slack = C;
    row.pass = std::isfinite(C) && C > 0.0;
  } catch (const DegenerateSample&) {
    row.pass = false;
  }
  return row;
}

std::vector<double> density_gaps(const ScenarioCtx& ctx)
{
  const DensityPlan& plan = ctx.spec->density;
  if (plan.ladder.size() < 3)
    throw LadderTooShort("density ladder needs at least 3 rungs");
  GridFunction target = grid_function_from_expr(ctx.grid, plan.u_expr);
  target = support_truncate(target, Point{plan.support_center, plan.support_center},
                            plan.support_radius);
  std::vector<double> gaps;
  for (double eps : plan.ladder) {
    const GridFunction approx = density_chain(target, eps);
    GridFunction diff = target;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= approx[i];
    gaps.push_back(eval_F(ctx.grid, ctx.kernel, ctx.phi, diff));
  }
  return gaps;
}

SuiteRow run_density_suite(const ScenarioCtx& ctx, double /*tol*/)
{
  SuiteRow row{"density", ctx.spec->id,
               "approximation chain: F-gaps non-increasing, final <= 0.05 initial",
               0, -1.0, true, 0.0};
  const std::vector<double> gaps = density_gaps(ctx);
  row.checked = static_cast<long>(gaps.size());
  for (std::size_t k = 0; k + 1 < gaps.size(); ++k)
    row.worst_slack =
        std::max(row.worst_slack, (gaps[k + 1] - gaps[k] - 1e-10) / (1.0 + gaps.front()));
  if (gaps.front() > 0.0)
    row.worst_slack = std::max(row.worst_slack, gaps.back() / gaps.front() - 0.05);
  row.pass = row.worst_slack <= 0.0;
  return row;
}

// worst_slack here is the excess of each residual over its own bound; any
// positive value fails.
SuiteRow run_dual(const ScenarioCtx& ctx, double tol)
{
  SuiteRow row{"dual", ctx.spec->id,
               "dual_apply(w,w) = |w|^2; representation kernel reproduces the pairing",
               0, -1.0, true, 0.0};
  const Grid& g = ctx.grid;
  const std::size_t n_u = std::min<std::size_t>(3, ctx.family.size());
  for (std::size_t wi = 0; wi < ctx.family.size(); ++wi) {
    const GridFunction& w = ctx.family[wi];
    const NormResult lux = luxemburg_F(g, ctx.kernel, ctx.phi, w);
    if (lux.value <= 0.0) continue;

    const double self = dual_apply(g, ctx.kernel, ctx.phi, w, w);
    row.worst_slack =
        std::max(row.worst_slack, std::fabs(self - lux.value * lux.value) - 1e-5);
    ++row.checked;

    const PairFunction W = dual_kernel_representation(g, ctx.kernel, ctx.phi, w);
    const GridFunction s = sample_function(g, ctx.spec->family, ctx.spec->seed + 555 + wi);
    for (std::size_t ui = 0; ui < n_u; ++ui) {
      const GridFunction& u = ctx.family[(wi + ui + 1) % ctx.family.size()];
      const double lhs = dual_apply(g, ctx.kernel, ctx.phi, w, u);
      const double rhs = quadrature_double(g, ctx.kernel, [&](std::size_t i, std::size_t j) {
        return (u[i] - u[j]) * W(i, j);
      });
      row.worst_slack =
          std::max(row.worst_slack, std::fabs(lhs - rhs) / (1.0 + std::fabs(lhs)) - 1e-8);
      ++row.checked;

      // shifting the kernel by a symmetric pair function (a null direction)
      const double rhs_shifted =
          quadrature_double(g, ctx.kernel, [&](std::size_t i, std::size_t j) {
            return (u[i] - u[j]) * (W(i, j) + s[i] * s[j]);
          });
      row.worst_slack = std::max(
          row.worst_slack, std::fabs(rhs_shifted - rhs) / (1.0 + std::fabs(rhs)) - 1e-9);
      ++row.checked;
    }
  }
  row.pass = row.worst_slack <= tol;
  return row;
}

SuiteRow run_conditions(const ScenarioCtx& ctx, double /*tol*/)
{
  SuiteRow row{"conditions", ctx.spec->id, "sample checks of the admissibility conditions",
               0, 0.0, true, 0.0};
  const ConditionReport rep = check_conditions(ctx.phi, ctx.sampling);
  double min_delta = std::numeric_limits<double>::max();
  for (const auto& c2 : rep.c2_uniform_convexity) min_delta = std::min(min_delta, c2.delta_hat);
  row.checked = static_cast<long>(rep.c2_uniform_convexity.size()) + 3;
  row.worst_slack = 1e-6 - min_delta;
  row.pass = rep.pass();
  return row;
}

SuiteRow run_one(const std::string& suite, const ScenarioCtx& ctx, const SuiteConfig& cfg)
{
  const auto t0 = std::chrono::steady_clock::now();
  SuiteRow row;
  if (suite == "young") row = run_young(ctx, cfg.tol("young", 1e-8));
  else if (suite == "hoelder") row = run_hoelder(ctx, cfg.tol("hoelder", 1e-8));
  else if (suite == "sandwich") row = run_sandwich(ctx, cfg.tol("sandwich", 1e-9));
  else if (suite == "equivalence") row = run_equivalence(ctx, cfg.tol("equivalence", 1e-8));
  else if (suite == "convexity") row = run_convexity(ctx, cfg.tol("convexity", 1e-12));
  else if (suite == "variation") row = run_variation(ctx, cfg.tol("variation", 1e-12));
  else if (suite == "poincare") row = run_poincare(ctx, cfg.tol("poincare", 0.0));
  else if (suite == "density") row = run_density_suite(ctx, cfg.tol("density", 0.0));
  else if (suite == "dual") row = run_dual(ctx, cfg.tol("dual", 0.0));
  else if (suite == "conditions") row = run_conditions(ctx, cfg.tol("conditions", 0.0));
  else throw ConfigError("unknown suite '" + suite + "'");
  row.elapsed_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

}  // namespace

// ---------------------------------------------------------------------------
// Runners

GridFunction density_chain(const GridFunction& u, double eps)
{
  const Grid& g = *u.grid;
  GridFunction v = value_truncate(u, 1.0 / eps);
  v = small_cutoff(v, eps * eps / 10.0);
  v = support_truncate(v, 2.0 / eps);
  return mollify(v, std::min(eps, 0.49 * g.min_extent()));
}

Report run_suite(const SuiteConfig& config)
{
  Report report;
  report.environment = environment_fingerprint();
  report.config_echo = config.to_json();

  std::vector<std::vector<SuiteRow>> per_scenario(config.scenarios.size());
  parallel_for(
      config.scenarios.size(),
      [&](std::size_t si) {
    const Scenario& s = config.scenarios[si];
    const std::vector<std::string>& suites =
        config.suites.empty() ? config.suites
                              : (s.suites.empty() ? config.suites : s.suites);
    std::vector<SuiteRow>& rows = per_scenario[si];
    try {
      const ScenarioCtx ctx = prepare(s);
      for (const auto& suite : suites) {
        try {
          rows.push_back(run_one(suite, ctx, config));
        } catch (const std::exception& e) {
          rows.push_back(SuiteRow{suite, s.id, std::string("failed: ") + e.what(), 0,
                                  std::numeric_limits<double>::max(), false, 0.0});
        }
      }
    } catch (const std::exception& e) {
      for (const auto& suite : suites)
        rows.push_back(SuiteRow{suite, s.id,
                                std::string("scenario preparation failed: ") + e.what(), 0,
                                std::numeric_limits<double>::max(), false, 0.0});
    }
      },
      2);

  for (auto& rows : per_scenario)
    for (auto& row : rows) report.rows.push_back(std::move(row));
  return report;
}

Report run_density(const SuiteConfig& config)
{
  Report report;
  report.environment = environment_fingerprint();
  report.config_echo = config.to_json();
  for (const auto& s : config.scenarios) {
    const ScenarioCtx ctx = prepare(s);
    report.rows.push_back(run_density_suite(ctx, 0.0));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Report serialization

bool Report::all_pass() const
{
  for (const auto& row : rows)
    if (!row.pass) return false;
  return true;
}

nlohmann::ordered_json Report::to_json() const
{
  nlohmann::ordered_json j;
  j["environment"] = environment;
  j["config"] = config_echo;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json r;
    r["suite"] = row.suite;
    r["scenario"] = row.scenario;
    r["inequality"] = row.inequality;
    r["checked"] = row.checked;
    r["worst_slack"] = row.worst_slack;
    r["pass"] = row.pass;
    j["rows"].push_back(r);
  }
  j["all_pass"] = all_pass();
  return j;
}

std::string Report::to_csv() const
{
  std::string out = "suite,scenario,inequality,checked,worst_slack,pass\n";
  for (const auto& row : rows) {
    std::string ineq = row.inequality;
    std::replace(ineq.begin(), ineq.end(), ',', ';');
    out += row.suite + "," + row.scenario + "," + ineq + "," + std::to_string(row.checked) +
           "," + format_double_17(row.worst_slack) + "," + (row.pass ? "true" : "false") + "\n";
  }
  return out;
}

std::string Report::to_markdown() const
{
  std::string out = "| suite | scenario | inequality | checked | worst slack | pass |\n";
  out += "|---|---|---|---|---|---|\n";
  for (const auto& row : rows)
    out += "| " + row.suite + " | " + row.scenario + " | " + row.inequality + " | " +
           std::to_string(row.checked) + " | " + format_double_17(row.worst_slack) + " | " +
           (row.pass ? "pass" : "FAIL") + " |\n";
  return out;
}

void emit_report(const Report& report, const std::string& out_dir, const std::string& format)
{
  namespace fs = std::filesystem;
  try {
    fs::create_directories(out_dir);
    if (format == "all" || format == "json") {
      std::ofstream os(fs::path(out_dir) / "report.json", std::ios::binary);
      if (!os) throw IoError("cannot open report.json for writing");
      os << dump_json_17(report.to_json());
    }
    if (format == "all" || format == "markdown") {
      std::ofstream os(fs::path(out_dir) / "report.md", std::ios::binary);
      if (!os) throw IoError("cannot open report.md for writing");
      os << report.to_markdown();
    }
    if (format == "all" || format == "csv") {
      fs::create_directories(fs::path(out_dir) / "tables");
      std::ofstream os(fs::path(out_dir) / "tables" / "rows.csv", std::ios::binary);
      if (!os) throw IoError("cannot open tables/rows.csv for writing");
      os << report.to_csv();
    }
  } catch (const fs::filesystem_error& e) {
    throw IoError(std::string("report output failed: ") + e.what());
  }
}

SuiteConfig default_suite_config()
{
  SuiteConfig cfg;
  Scenario s;
  s.id = "quad-1d";
  s.domain.dimension = 1;
  BoxSpec box;
  box.lo = {0.0, 0.0};
  box.hi = {1.0, 1.0};
  box.cells = {48, 1};
  s.domain.boxes = {box};
  s.kernel.kind = "indicator";
  s.kernel.r = 1.0;
  s.phi_expr = nlohmann::json{{"kind", "power"}, {"p", 2.0}, {"b", 1.0}};
  s.family.count = 5;
  s.seed = 42;
  BoxSpec fine = box;
  fine.cells = {512, 1};
  Scenario d = s;
  d.id = "quad-1d-density";
  d.domain.boxes = {fine};
  d.suites = {"density"};
  s.suites = {"young", "hoelder", "sandwich", "equivalence", "convexity",
              "variation", "poincare", "dual", "conditions"};
  cfg.scenarios = {s, d};
  cfg.suites = known_suites();
  return cfg;
}

nlohmann::ordered_json environment_fingerprint()
{
  nlohmann::ordered_json env;
  env["project"] = "orlicz";
  env["version"] = "0.1.0";
  env["compiler"] = __VERSION__;
  env["float"] = "ieee754-binary64";
  env["pointer_bits"] = static_cast<int>(sizeof(void*) * 8);
  return env;
}

}  // namespace orlicz
