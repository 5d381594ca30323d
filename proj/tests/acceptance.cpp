// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every check calls the same public operations the CLI exposes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "orlicz/approximate.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/family.hpp"
#include "orlicz/functionals.hpp"
#include "orlicz/jsonio.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/solver.hpp"
#include "orlicz/suite.hpp"
#include "orlicz/threads.hpp"

using namespace orlicz;
using nlohmann::json;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail)
{
  if (!pass) ++g_failures;
  std::printf("[%2d] %s  %s  (%s)\n", id, pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Grid unit_grid(int cells)
{
  DomainSpec d;
  d.dimension = 1;
  BoxSpec b;
  b.lo = {0.0, 0.0};
  b.hi = {1.0, 1.0};
  b.cells = {cells, 1};
  d.boxes = {b};
  return build_grid(d);
}

Kernel unit_kernel()
{
  KernelSpec ks;
  ks.kind = "indicator";
  ks.r = 1.0;
  return build_kernel(ks, 1);
}

std::string fmt(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

json field_expr(const std::string& text, double lo, double hi)
{
  return json{{"expr", text}, {"lo", lo}, {"hi", hi}};
}

// The four integrand families, with per-instance parameter variation.
// k = 0: variable-exponent power, 1: sum of powers, 2: sine-cubed
// perturbation of a quadratic, 3: log-multiplied power.
json family_expr(int k, int instance)
{
  const double a = 0.2 + 0.02 * (instance % 8);   // exponent modulation
  const double b = 0.8 + 0.05 * (instance % 5);   // coefficient level
  switch (k) {
    case 0:
      return json{{"kind", "power"},
                  {"p", field_expr("2+" + fmt(a) + "*sin(3*(x0-y0))", 2.0 - a, 2.0 + a)},
                  {"b", field_expr(fmt(b) + "+0.2*cos(x0+y0)", b - 0.2, b + 0.2)}};
    case 1: {
      const double p2 = 3.5 + 0.1 * (instance % 6);
      return json{{"kind", "sum"},
                  {"args", json::array(
                               {json{{"kind", "power"}, {"p", 2.0}, {"b", b}},
                                json{{"kind", "power"}, {"p", p2}, {"b", 0.5}}})}};
    }
    case 2:
      return json{{"kind", "perturb"},
                  {"args", json::array({json{
                               {"kind", "power"},
                               {"p", 2.0},
                               {"b", field_expr("10*(" + fmt(b + 0.7) + "+0.5*sin(3*x0+y0))",
                                                10.0 * (b + 0.2), 10.0 * (b + 1.2))}}})},
                  {"psi", json{{"kind", "sin3"},
                               {"b", field_expr(fmt(b + 0.7) + "+0.5*sin(3*x0+y0)", b + 0.2,
                                                b + 1.2)}}}};
    default:
      return json{{"kind", "psi_multiply"},
                  {"args", json::array({json{{"kind", "power"},
                                             {"p", 2.0 + 0.1 * (instance % 4)},
                                             {"b", b}}})},
                  {"psi", json{{"kind", "log"},
                               {"gamma", field_expr("1+" + fmt(0.25 * (1 + instance % 3)) +
                                                        "*(1+sin(x0-2*y0))/2",
                                                    1.0, 1.0 + 0.25 * (1 + instance % 3))},
                               {"upsilon", 0.5 + 0.25 * (instance % 4)}}}};
  }
}

const char* family_name(int k)
{
  switch (k) {
    case 0: return "variable power";
    case 1: return "sum of powers";
    case 2: return "perturbed square";
    default: return "log-multiplied";
  }
}

// ---------------------------------------------------------------------------

void criterion_1()
{
  const auto t0 = std::chrono::steady_clock::now();
  const Grid g = unit_grid(256);
  const Kernel k = unit_kernel();
  SamplingConfig cfg;
  const PhiFunction phi = build_phi(json{{"kind", "power"}, {"p", 2.0}, {"b", 1.0}}, cfg);
  const GridFunction u = grid_function_from_expr(g, "x0");

  const double F = eval_F(g, k, phi, u);
  const double lux = luxemburg_F(g, k, phi, u).value;
  const double gn = g_norm(g, k, phi, u);
  const double fn = f_norm(g, k, phi, u);
  const double elapsed = seconds_since(t0);

  const bool pass = std::fabs(F - 1.0 / 6.0) <= 2e-5 && std::fabs(lux - 0.408248) <= 1e-5 &&
                    std::fabs(gn - 0.707107) <= 1e-5 && std::fabs(fn - 0.985598) <= 2e-5 &&
                    elapsed < 1.0;
  report(1, "analytic benchmark on the unit interval", pass,
         "F=" + fmt(F) + " lux=" + fmt(lux) + " g=" + fmt(gn) + " f=" + fmt(fn) + " t=" +
             fmt(elapsed) + "s");
}

struct Instance {
  PhiFunction phi;
  GridFunction u;
};

std::vector<Instance> make_instances(const Grid& g, int count)
{
  std::vector<Instance> out;
  FamilySpec fam;
  SamplingConfig cfg;
  for (int i = 0; i < count; ++i) {
    const int family = i % 4;
    cfg.seed = 42 + i;
    Instance inst{calibrated(build_phi(family_expr(family, i), cfg), cfg),
                  sample_function(g, fam, 9000 + i)};
    out.push_back(std::move(inst));
  }
  return out;
}

void criteria_2_3(const Grid& g, const Kernel& k, const std::vector<Instance>& instances)
{
  const auto t0 = std::chrono::steady_clock::now();
  double worst_root = 0.0;
  int root_fail = 0, equiv_fail = 0;
  for (const auto& inst : instances) {
    const NormResult lux = luxemburg_F(g, k, inst.phi, inst.u);
    if (lux.value > 0.0) {
      GridFunction v = inst.u;
      for (double& x : v.values) x /= lux.value;
      const double resid = std::fabs(static_cast<double>(eval_F(g, k, inst.phi, v)) - 1.0);
      worst_root = std::max(worst_root, resid);
      if (resid > 1e-8) ++root_fail;
    }
    const double f = f_norm(g, k, inst.phi, inst.u);
    const double gn = g_norm(g, k, inst.phi, inst.u);
    const double beta = inst.phi.meta().beta;
    if (!(0.5 * f <= gn && gn <= std::pow(beta, 1.0 / inst.phi.meta().p_minus) * f + 1e-8))
      ++equiv_fail;
  }
  const double elapsed = seconds_since(t0);
  report(2, "luxemburg root property on 50 instances", root_fail == 0 && elapsed < 30.0,
         "worst residual=" + fmt(worst_root) + " t=" + fmt(elapsed) + "s");
  report(3, "norm equivalence f/2 <= g <= beta^{1/p-} f", equiv_fail == 0,
         std::to_string(instances.size()) + " instances, violations=" +
             std::to_string(equiv_fail));
}

void criterion_4()
{
  SamplingConfig cfg;  // 64 z-points x 128 (x,y) pairs
  long checked = 0;
  int violations = 0;
  double worst = -1.0;
  for (int fam = 0; fam < 4; ++fam) {
    const PhiFunction phi = calibrated(build_phi(family_expr(fam, 0), cfg), cfg);
    const double c2 = phi.meta().c2;
    const auto zs = cfg.z_grid();
    std::vector<double> vals(zs.size()), conj(zs.size());
    for (const auto& [x, y] : cfg.xy_samples()) {
      for (std::size_t i = 0; i < zs.size(); ++i) {
        vals[i] = phi(zs[i], x, y);
        conj[i] = phi.conjugate(zs[i], x, y);
      }
      for (std::size_t a = 0; a < zs.size(); ++a)
        for (std::size_t b = 0; b < zs.size(); ++b) {
          const double st = zs[a] * zs[b];
          const double slack = st - (conj[b] + vals[a]);
          worst = std::max(worst, slack / (1.0 + st));
          if (slack > 1e-8 * (1.0 + st)) ++violations;
          ++checked;
        }
      for (std::size_t i = 0; i < zs.size(); ++i) {
        const double lhs = phi.conjugate(phi.prime(zs[i], x, y), x, y);
        if (lhs > (c2 - 1.0) * vals[i] + 1e-8 * (1.0 + lhs)) ++violations;
        ++checked;
      }
    }
  }
  report(4, "young and conjugate-derivative inequalities", violations == 0,
         std::to_string(checked) + " checks, worst normalized slack=" + fmt(worst));
}

void criterion_5(const Grid& g, const Kernel& k)
{
  SamplingConfig cfg;
  FamilySpec fam_spec;
  int violations = 0;
  long checked = 0;
  for (int fam = 0; fam < 4; ++fam) {
    const PhiFunction phi = calibrated(build_phi(family_expr(fam, 1), cfg), cfg);
    const GrowthMeta& m = phi.meta();
    for (const auto& [x, y] : cfg.xy_samples())
      for (double z : cfg.z_grid()) {
        const double v = phi(z, x, y);
        const double zl = std::pow(z, m.p_minus), zh = std::pow(z, m.p_plus);
        if (v < std::min(zl, zh) / (m.beta * m.c1) * (1.0 - 1e-12)) ++violations;
        if (v > std::max(zl, zh) * m.beta * m.c1 * (1.0 + 1e-12)) ++violations;
        ++checked;
      }
    for (int n = 0; n < 8; ++n) {
      const GridFunction u = sample_function(g, fam_spec, 700 + n);
      if (!verify_sandwich(g, k, phi, u).pass) ++violations;
      ++checked;
    }
  }
  report(5, "growth sandwich and functional sandwich", violations == 0,
         std::to_string(checked) + " checks with 5%-inflated constants, violations=" +
             std::to_string(violations));
}

void criterion_6()
{
  const Grid g = unit_grid(32);
  const Kernel k = unit_kernel();
  SamplingConfig cfg;
  FamilySpec fam;
  int violations = 0;
  double worst = -1.0;
  for (int i = 0; i < 25; ++i) {
    const PhiFunction phi = calibrated(build_phi(family_expr(i % 4, i), cfg), cfg);
    const GridFunction v = sample_function(g, fam, 1000 + i);
    const GridFunction w = sample_function(g, fam, 2000 + i);
    const GridFunction sv = sample_function(g, fam, 3000 + i);
    auto V = PairFunction::callable(g, [&v, &sv](std::size_t a, std::size_t b) {
      return v[a] - v[b] + 0.5 * sv[a] * sv[b];
    });
    auto W = PairFunction::difference(w);
    const double pairing =
        quadrature_double(g, k, [&](std::size_t a, std::size_t b) { return W(a, b) * V(a, b); });
    const double hv = h_norm(g, k, phi, V);
    const double hw = h_star_norm(g, k, phi, W);
    const double slack = std::fabs(pairing) - 2.0 * hv * hw;
    worst = std::max(worst, slack);
    if (slack > 1e-8) ++violations;
  }
  report(6, "pair-function Hoelder inequality on 25 instances", violations == 0,
         "worst slack=" + fmt(worst));
}

void criterion_7(const Grid& g, const Kernel& k)
{
  SamplingConfig cfg;
  FamilySpec fam;
  bool pass = true;
  std::string detail;

  // quadratic family: the remainder is exactly t^2 F(v)
  {
    const PhiFunction sq = build_phi(json{{"kind", "power"}, {"p", 2.0}, {"b", 1.0}}, cfg);
    const GridFunction u = sample_function(g, fam, 81);
    const GridFunction v = sample_function(g, fam, 82);
    const double Fu = eval_F(g, k, sq, u);
    const double Fv = eval_F(g, k, sq, v);
    const double l = eval_ell(g, k, sq, u, v);
    double worst = 0.0;
    for (double t : {1e-2, 1e-3}) {
      GridFunction ut = u;
      for (std::size_t i = 0; i < ut.size(); ++i) ut[i] += t * v[i];
      const double rem = static_cast<double>(eval_F(g, k, sq, ut)) - Fu - t * l;
      worst = std::max(worst, std::fabs(rem - t * t * Fv) / (t * t * Fv));
    }
    if (worst > 1e-8) pass = false;
    detail = "square remainder rel err=" + fmt(worst);
  }

  // remaining families: remainder/t shrinks by >= 1.8 per t step
  for (int famk = 1; famk < 4; ++famk) {
    const PhiFunction phi = calibrated(build_phi(family_expr(famk, 2), cfg), cfg);
    const GridFunction u = sample_function(g, fam, 83 + famk);
    const GridFunction v = sample_function(g, fam, 93 + famk);
    const double Fu = eval_F(g, k, phi, u);
    const double l = eval_ell(g, k, phi, u, v);
    std::vector<double> ratio;
    for (double t : {1e-2, 1e-3, 1e-4}) {
      GridFunction ut = u;
      for (std::size_t i = 0; i < ut.size(); ++i) ut[i] += t * v[i];
      ratio.push_back(std::fabs(static_cast<double>(eval_F(g, k, phi, ut)) - Fu - t * l) / t);
    }
    for (std::size_t s = 0; s + 1 < ratio.size(); ++s) {
      if (ratio[s] <= 1e-12 * (1.0 + Fu)) continue;
      if (ratio[s] < 1.8 * ratio[s + 1]) pass = false;
    }
  }
  report(7, "first variation expansion", pass, detail);
}

void criterion_8(const Kernel& k)
{
  const auto t0 = std::chrono::steady_clock::now();
  const Grid g = unit_grid(24);
  SamplingConfig cfg;
  FamilySpec fam;
  double worst = 0.0;
  for (int famk = 0; famk < 4; ++famk) {
    const PhiFunction phi = calibrated(build_phi(family_expr(famk, 3), cfg), cfg);
    const double pm = 2.0;
    for (int inst = 0; inst < 20; ++inst) {
      const GridFunction u = sample_function(g, fam, 4000 + 100 * famk + inst);
      const GridFunction rhs = sample_function(g, fam, 4050 + 100 * famk + inst);
      const GridFunction grad = energy_gradient(g, k, phi, pm, u, rhs);
      const double h = 1e-6;
      for (std::size_t i = 0; i < g.size(); ++i) {
        GridFunction up = u, dn = u;
        up[i] += h;
        dn[i] -= h;
        const double fd =
            (energy(g, k, phi, pm, up, rhs) - energy(g, k, phi, pm, dn, rhs)) / (2.0 * h);
        worst = std::max(worst, std::fabs(grad[i] - fd) / (1.0 + std::fabs(grad[i])));
      }
    }
  }
  bool pass = worst <= 1e-5;

  // quadratic case against the dense linear-algebra oracle
  const Grid g32 = unit_grid(32);
  const PhiFunction sq = build_phi(json{{"kind", "power"}, {"p", 2.0}, {"b", 1.0}}, cfg);
  const GridFunction rhs = sample_function(g32, fam, 4242);
  const GridFunction zero(g32);
  const GridFunction b = energy_gradient(g32, k, sq, 2.0, zero, rhs);
  const std::size_t n = g32.size();
  std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
  for (std::size_t c = 0; c < n; ++c) {
    GridFunction e(g32);
    e[c] = 1.0;
    const GridFunction col = energy_gradient(g32, k, sq, 2.0, e, rhs);
    for (std::size_t r = 0; r < n; ++r) A[r][c] = col[r] - b[r];
  }
  // gaussian elimination, test-side oracle
  std::vector<double> x(n);
  {
    std::vector<std::vector<double>> M = A;
    std::vector<double> rb(n);
    for (std::size_t r = 0; r < n; ++r) rb[r] = -b[r];
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < n; ++r)
        if (std::fabs(M[r][col]) > std::fabs(M[piv][col])) piv = r;
      std::swap(M[piv], M[col]);
      std::swap(rb[piv], rb[col]);
      for (std::size_t r = col + 1; r < n; ++r) {
        const double m = M[r][col] / M[col][col];
        for (std::size_t c = col; c < n; ++c) M[r][c] -= m * M[col][c];
        rb[r] -= m * rb[col];
      }
    }
    for (std::size_t r = n; r-- > 0;) {
      double s = rb[r];
      for (std::size_t c = r + 1; c < n; ++c) s -= M[r][c] * x[c];
      x[r] = s / M[r][r];
    }
  }
  SolverOptions opts;
  opts.grad_tol = 1e-10;
  opts.max_iters = 20000;
  const SolveResult res = minimize(g32, k, sq, 2.0, rhs, zero, opts);
  double oracle_gap = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    oracle_gap = std::max(oracle_gap, std::fabs(res.u_star[i] - x[i]));
  pass = pass && oracle_gap <= 1e-6;

  report(8, "gradient against central differences and the dense oracle", pass,
         "worst fd gap=" + fmt(worst) + " oracle gap=" + fmt(oracle_gap) + " t=" +
             fmt(seconds_since(t0)) + "s");
}

void criterion_9(const Kernel& k)
{
  const Grid g = unit_grid(24);
  SamplingConfig cfg;
  FamilySpec fam;
  bool pass = true;
  std::string detail;
  for (int famk = 0; famk < 4; ++famk) {
    const auto t0 = std::chrono::steady_clock::now();
    const PhiFunction phi = calibrated(build_phi(family_expr(famk, 4), cfg), cfg);
    const double pm = 2.0;
    const GridFunction rhs = sample_function(g, fam, 5000 + famk);

    SolverOptions opts;
    opts.max_iters = 30000;
    const SolveResult a =
        minimize(g, k, phi, pm, rhs, sample_function(g, fam, 6000 + famk), opts);
    const SolveResult b =
        minimize(g, k, phi, pm, rhs, sample_function(g, fam, 7000 + famk), opts);
    double start_gap = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      start_gap = std::max(start_gap, std::fabs(a.u_star[i] - b.u_star[i]));

    const GridFunction target = grid_function_from_expr(g, "0.3*sin(3*x0)+0.1*x0");
    const GridFunction res0 = energy_gradient(g, k, phi, pm, target, GridFunction(g));
    GridFunction manufactured(g);
    for (std::size_t i = 0; i < g.size(); ++i) manufactured[i] = res0[i] / g.weights[i];
    const SolveResult m = minimize(g, k, phi, pm, manufactured, GridFunction(g), opts);
    double recover_gap = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      recover_gap = std::max(recover_gap, std::fabs(m.u_star[i] - target[i]));

    const double elapsed = seconds_since(t0);
    const bool ok = a.converged && b.converged && m.converged && start_gap <= 1e-6 &&
                    recover_gap <= 1e-5 && elapsed < 60.0;
    if (!ok) pass = false;
    detail += std::string(famk ? "; " : "") + family_name(famk) + ": starts=" + fmt(start_gap) +
              " recovery=" + fmt(recover_gap) + " conv=" + (a.converged ? "y" : "n") +
              (b.converged ? "y" : "n") + (m.converged ? "y" : "n") + " gn=" +
              fmt(std::max({a.grad_norm, b.grad_norm, m.grad_norm})) + " t=" + fmt(elapsed) +
              "s";
  }
  report(9, "minimizer uniqueness and manufactured recovery", pass, detail);
}

void criterion_10(const Grid& g, const Kernel& k)
{
  FamilySpec fam;
  double worst = 0.0;
  int checked = 0;
  for (int n = 0; n < 10; ++n) {
    const GridFunction u = sample_function(g, fam, 8000 + n);
    const double Fp = eval_F_power(g, k, 2.0, u);
    if (Fp <= 1e-14) continue;
    const auto [perp, mean] = decompose_mean_zero(g, u);
    (void)mean;
    worst = std::max(worst, std::fabs(lp_power(g, perp, 2.0) / Fp - 0.5));
    ++checked;
  }
  report(10, "exact discrete half identity for the full-kernel quotient", worst <= 1e-10,
         std::to_string(checked) + " samples, worst |ratio-1/2|=" + fmt(worst));
}

void criterion_11(const Grid& g, const Kernel& k)
{
  SamplingConfig cfg;
  FamilySpec fam;
  bool pass = true;
  double worst_self = 0.0, worst_rep = 0.0, worst_null = 0.0;
  int reproduced = 0;
  for (int famk : {0, 1, 3}) {
    const PhiFunction phi = calibrated(build_phi(family_expr(famk, 5), cfg), cfg);
    const GridFunction w = sample_function(g, fam, 8500 + famk);
    const NormResult lux = luxemburg_F(g, k, phi, w);
    if (lux.value <= 0.0) continue;

    const double self = dual_apply(g, k, phi, w, w);
    worst_self = std::max(worst_self, std::fabs(self - lux.value * lux.value));

    const PairFunction W = dual_kernel_representation(g, k, phi, w);
    const GridFunction sfn = sample_function(g, fam, 8600 + famk);
    auto S = PairFunction::callable(
        g, [&sfn](std::size_t i, std::size_t j) { return sfn[i] * sfn[j]; });
    if (m_subspace_residual(g, k, S) > 1e-12) pass = false;

    for (int n = 0; n < 7; ++n) {
      const GridFunction u = sample_function(g, fam, 8700 + 10 * famk + n);
      const double lhs = dual_apply(g, k, phi, w, u);
      const double rhs = quadrature_double(
          g, k, [&](std::size_t i, std::size_t j) { return (u[i] - u[j]) * W(i, j); });
      worst_rep = std::max(worst_rep, std::fabs(lhs - rhs) / (1.0 + std::fabs(lhs)));
      const double shifted = quadrature_double(g, k, [&](std::size_t i, std::size_t j) {
        return (u[i] - u[j]) * (W(i, j) + S(i, j));
      });
      worst_null = std::max(worst_null, std::fabs(shifted - rhs) / (1.0 + std::fabs(rhs)));
      ++reproduced;
    }
  }
  pass = pass && worst_self <= 1e-5 && worst_rep <= 1e-8 && worst_null <= 1e-9 &&
         reproduced >= 20;
  report(11, "dual representation formulas", pass,
         "self=" + fmt(worst_self) + " reproduce=" + fmt(worst_rep) + " null=" +
             fmt(worst_null) + " on " + std::to_string(reproduced) + " probes");
}

void criterion_12()
{
  const Grid g = unit_grid(1024);
  const Kernel k = unit_kernel();
  SamplingConfig cfg;
  const PhiFunction phi = build_phi(json{{"kind", "power"}, {"p", 2.0}, {"b", 1.0}}, cfg);

  GridFunction target = grid_function_from_expr(g, "x0");
  target = support_truncate(target, Point{0.5, 0.0}, 0.25);

  std::vector<double> gaps;
  for (double eps : {0.2, 0.1, 0.05, 0.025, 0.0125, 0.00625}) {
    const GridFunction approx = density_chain(target, eps);
    GridFunction diff = target;
    for (std::size_t i = 0; i < g.size(); ++i) diff[i] -= approx[i];
    gaps.push_back(eval_F(g, k, phi, diff));
  }
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < gaps.size(); ++i)
    if (gaps[i + 1] > gaps[i] + 1e-10) monotone = false;
  const double ratio = gaps.back() / gaps.front();

  // mollification alone decays at second order on a smooth target
  GridFunction smooth = grid_function_from_expr(g, "cos(2.5*pi*(x0-0.5))^4");
  smooth = support_truncate(smooth, Point{0.5, 0.0}, 0.2);
  std::vector<double> errs;
  for (double eps : {0.16, 0.08, 0.04}) {
    const GridFunction m = mollify(smooth, eps);
    GridFunction diff = smooth;
    for (std::size_t i = 0; i < g.size(); ++i) diff[i] -= m[i];
    errs.push_back(std::sqrt(static_cast<double>(eval_F(g, k, phi, diff))));
  }
  const bool second_order = errs[0] / errs[1] >= 3.0 && errs[1] / errs[2] >= 3.0;

  report(12, "approximation-chain density ladder", monotone && ratio <= 0.05 && second_order,
         "final/initial=" + fmt(ratio) + " mollify decay factors=" + fmt(errs[0] / errs[1]) +
             "," + fmt(errs[1] / errs[2]));
}

std::string slurp(const std::filesystem::path& p)
{
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void criterion_13()
{
#ifdef ORLICZ_CLI
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "orlicz_acceptance_determinism";
  fs::remove_all(base);
  fs::create_directories(base);
  const std::string cli = ORLICZ_CLI;
  const std::string d1 = (base / "t1").string(), d8 = (base / "t8").string();
  const int r1 = std::system(
      (cli + " suite --threads 1 --out " + d1 + " > " + d1 + ".log 2>&1").c_str());
  const int r8 = std::system(
      (cli + " suite --threads 8 --out " + d8 + " > " + d8 + ".log 2>&1").c_str());
  const bool ran = r1 == 0 && r8 == 0;
  const std::string json1 = slurp(fs::path(d1) / "report.json");
  const bool same_json = json1 == slurp(fs::path(d8) / "report.json");
  const bool same_csv = slurp(fs::path(d1) / "tables" / "rows.csv") ==
                        slurp(fs::path(d8) / "tables" / "rows.csv");
  report(13, "byte-identical reports across thread counts",
         ran && same_json && same_csv && !json1.empty(),
         std::string("exit codes ") + std::to_string(r1) + "/" + std::to_string(r8) +
             ", json " + (same_json ? "identical" : "DIFFERENT"));
  fs::remove_all(base);
#else
  report(13, "byte-identical reports across thread counts", false, "CLI path not wired");
#endif
}

}  // namespace

int main()
{
  set_threads(2);
  std::printf("acceptance suite\n");

  const Grid g64 = unit_grid(64);
  const Kernel k = unit_kernel();

  try {
    criterion_1();
    const std::vector<Instance> instances = make_instances(g64, 50);
    criteria_2_3(g64, k, instances);
    criterion_4();
    criterion_5(g64, k);
    criterion_6();
    criterion_7(unit_grid(48), k);
    criterion_8(k);
    criterion_9(k);
    criterion_10(unit_grid(128), k);
    criterion_11(unit_grid(48), k);
    criterion_12();
    criterion_13();
  } catch (const std::exception& e) {
    std::printf("[--] FAIL unexpected exception: %s\n", e.what());
    ++g_failures;
  }

  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
