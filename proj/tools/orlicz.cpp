#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "orlicz/approximate.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/functionals.hpp"
#include "orlicz/jsonio.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/solver.hpp"
#include "orlicz/suite.hpp"
#include "orlicz/threads.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json load_config(const std::string& path)
{
  std::ifstream is(path);
  if (!is) throw orlicz::IoError("cannot open config file '" + path + "'");
  try {
    return json::parse(is);
  } catch (const json::exception& e) {
    throw orlicz::ConfigError(std::string("config parse error: ") + e.what());
  }
}

struct Problem {
  orlicz::Grid grid;
  orlicz::Kernel kernel;
  orlicz::PhiFunction phi;
  orlicz::SamplingConfig sampling;
};

Problem load_problem(const json& cfg, std::uint64_t seed)
{
  Problem p;
  const auto domain = orlicz::DomainSpec::from_json(cfg.at("domain"));
  p.kernel = orlicz::build_kernel(orlicz::KernelSpec::from_json(cfg.at("kernel")), domain.dimension);
  p.grid = orlicz::build_grid(domain, p.kernel.r0);
  p.sampling.seed = seed;
  p.sampling.box.dim = p.grid.dim;
  p.sampling.box.lo = p.grid.boxes.front().lo;
  p.sampling.box.hi = p.grid.boxes.front().hi;
  for (const auto& b : p.grid.boxes)
    for (int d = 0; d < p.grid.dim; ++d) {
      p.sampling.box.lo[d] = std::min(p.sampling.box.lo[d], b.lo[d]);
      p.sampling.box.hi[d] = std::max(p.sampling.box.hi[d], b.hi[d]);
    }
  p.phi = orlicz::calibrated(orlicz::build_phi(cfg.at("phi"), p.sampling), p.sampling);
  return p;
}

orlicz::GridFunction load_u(const json& cfg, const char* key, const orlicz::Grid& grid)
{
  if (cfg.contains(std::string(key) + "_csv")) {
    std::ifstream is(cfg.at(std::string(key) + "_csv").get<std::string>());
    if (!is) throw orlicz::IoError("cannot open grid-function CSV");
    return orlicz::read_grid_function_csv(is, grid);
  }
  return orlicz::grid_function_from_expr(grid, cfg.at(key).get<std::string>());
}

void write_text(const std::string& dir, const std::string& name, const std::string& text)
{
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ofstream os(fs::path(dir) / name, std::ios::binary);
  if (!os) throw orlicz::IoError("cannot write " + name);
  os << text;
}

void emit(const ordered_json& doc, const std::string& out_dir, const std::string& name)
{
  const std::string text = orlicz::dump_json_17(doc);
  std::cout << text;
  if (!out_dir.empty()) write_text(out_dir, name, text);
}

int cmd_eval(const json& cfg, const std::string& out_dir, std::uint64_t seed)
{
  Problem p = load_problem(cfg, seed);
  const std::string functional = cfg.value("functional", "F");
  double value = 0.0;

  if (functional == "F") {
    value = orlicz::eval_F(p.grid, p.kernel, p.phi, load_u(cfg, "u", p.grid));
  } else if (functional == "G") {
    value = orlicz::eval_G(p.grid, p.kernel, p.phi, p.phi.meta().p_minus,
                           load_u(cfg, "u", p.grid));
  } else if (functional == "Fp") {
    value = orlicz::eval_F_power(p.grid, p.kernel, cfg.value("p", p.phi.meta().p_minus),
                                 load_u(cfg, "u", p.grid));
  } else if (functional == "H" || functional == "Hstar") {
    const orlicz::ScalarExpr Ue = orlicz::ScalarExpr::parse(cfg.at("U").get<std::string>());
    const orlicz::Grid& g = p.grid;
    auto U = orlicz::PairFunction::callable(g, [&](std::size_t i, std::size_t j) {
      return Ue.eval(g.nodes[i], g.nodes[j]);
    });
    value = functional == "H" ? orlicz::eval_H(g, p.kernel, p.phi, U)
                              : orlicz::eval_H_star(g, p.kernel, p.phi, U);
  } else if (functional == "pairing") {
    value = orlicz::eval_pairing_Phi(p.grid, p.kernel, p.phi, load_u(cfg, "u", p.grid),
                                     load_u(cfg, "w", p.grid));
  } else if (functional == "ell") {
    value = orlicz::eval_ell(p.grid, p.kernel, p.phi, load_u(cfg, "u", p.grid),
                             load_u(cfg, "v", p.grid));
  } else {
    throw orlicz::ConfigError("unknown functional '" + functional + "'");
  }

  ordered_json doc;
  doc["functional"] = functional;
  doc["value"] = value;
  doc["grid_resolution"] = static_cast<long>(p.grid.size());
  doc["kernel"] = orlicz::KernelSpec::from_json(cfg.at("kernel")).to_json();
  doc["phi_hash"] = p.phi.hash();
  emit(doc, out_dir, "eval.json");
  return 0;
}

int cmd_norm(const json& cfg, const std::string& functional, const std::string& out_dir,
             std::uint64_t seed)
{
  Problem p = load_problem(cfg, seed);
  ordered_json doc;
  doc["functional"] = functional;

  orlicz::NormResult res;
  if (functional == "f" || functional == "g" || functional == "lux-F" || functional == "lux-G") {
    const orlicz::GridFunction u = load_u(cfg, "u", p.grid);
    if (functional == "f") {
      doc["value"] = orlicz::f_norm(p.grid, p.kernel, p.phi, u);
      emit(doc, out_dir, "norm.json");
      return 0;
    }
    res = functional == "lux-F" ? orlicz::luxemburg_F(p.grid, p.kernel, p.phi, u)
                                : orlicz::luxemburg_G(p.grid, p.kernel, p.phi, u);
  } else if (functional == "h" || functional == "hstar") {
    const orlicz::ScalarExpr Ue = orlicz::ScalarExpr::parse(cfg.at("U").get<std::string>());
    const orlicz::Grid& g = p.grid;
    auto U = orlicz::PairFunction::callable(g, [&](std::size_t i, std::size_t j) {
      return Ue.eval(g.nodes[i], g.nodes[j]);
    });
    res = functional == "h" ? orlicz::luxemburg_H(g, p.kernel, p.phi, U)
                            : orlicz::luxemburg_H_star(g, p.kernel, p.phi, U);
  } else {
    throw orlicz::ConfigError("unknown norm functional '" + functional + "'");
  }
  doc["value"] = res.value;
  doc["residual"] = res.residual;
  doc["iterations"] = res.iterations;
  doc["bracket"] = ordered_json::array({res.bracket.first, res.bracket.second});
  emit(doc, out_dir, "norm.json");
  return 0;
}

int cmd_minimize(const json& cfg, const std::string& out_dir, std::uint64_t seed)
{
  Problem p = load_problem(cfg, seed);
  const double p_minus = cfg.value("p_minus", p.phi.meta().p_minus);
  const orlicz::GridFunction rhs = load_u(cfg, "g", p.grid);
  orlicz::GridFunction u0(p.grid);
  if (cfg.contains("u0") || cfg.contains("u0_csv")) u0 = load_u(cfg, "u0", p.grid);
  orlicz::SolverOptions opts;
  if (cfg.contains("options")) opts = orlicz::SolverOptions::from_json(cfg["options"]);

  const orlicz::SolveResult res =
      orlicz::minimize(p.grid, p.kernel, p.phi, p_minus, rhs, u0, opts);

  ordered_json doc;
  doc["energy"] = res.energy;
  doc["grad_norm"] = res.grad_norm;
  doc["iterations"] = res.iterations;
  doc["converged"] = res.converged;
  doc["el_residual"] = orlicz::el_residual(p.grid, p.kernel, p.phi, p_minus, res.u_star, rhs);
  emit(doc, out_dir, "minimize.json");
  if (!out_dir.empty()) {
    std::ostringstream csv;
    orlicz::write_grid_function_csv(csv, res.u_star);
    write_text(out_dir, "u_star.csv", csv.str());
  }
  return 0;
}

int cmd_dual(const json& cfg, const std::string& out_dir, std::uint64_t seed)
{
  Problem p = load_problem(cfg, seed);
  const orlicz::GridFunction w = load_u(cfg, "w", p.grid);
  const orlicz::PairFunction W = orlicz::dual_kernel_representation(p.grid, p.kernel, p.phi, w);

  ordered_json doc;
  doc["h_star_norm"] = orlicz::h_star_norm(p.grid, p.kernel, p.phi, W);
  doc["m_residual"] = orlicz::m_subspace_residual(p.grid, p.kernel, W);
  doc["pairs"] = static_cast<long>(p.grid.pair_count());
  emit(doc, out_dir, "dual.json");

  if (!out_dir.empty()) {
    std::string csv = "i,j,x_i,x_j,W\n";
    char buf[160];
    for (std::size_t i = 0; i < p.grid.size(); ++i)
      for (std::size_t j = 0; j < p.grid.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g,%.17g\n", i, j,
                      p.grid.nodes[i][0], p.grid.nodes[j][0], W(i, j));
        csv += buf;
      }
    write_text(out_dir, "dual_kernel.csv", csv);
  }
  return 0;
}

int cmd_phi_check(const json& cfg, const std::string& out_dir, std::uint64_t seed)
{
  orlicz::SamplingConfig sampling;
  sampling.seed = seed;
  if (cfg.contains("domain")) {
    const auto domain = orlicz::DomainSpec::from_json(cfg["domain"]);
    sampling.box.dim = domain.dimension;
    sampling.box.lo = domain.boxes.front().lo;
    sampling.box.hi = domain.boxes.front().hi;
  }
  if (cfg.contains("sampling")) {
    const auto& s = cfg["sampling"];
    sampling.z_points = s.value("z_points", sampling.z_points);
    sampling.z_lo = s.value("z_lo", sampling.z_lo);
    sampling.z_hi = s.value("z_hi", sampling.z_hi);
    sampling.xy_pairs = s.value("xy_pairs", sampling.xy_pairs);
  }
  const orlicz::PhiFunction phi = orlicz::build_phi(cfg.at("phi"), sampling);
  const orlicz::GrowthMeta estimated = orlicz::estimate_growth_constants(phi, sampling);
  const orlicz::ConditionReport rep = orlicz::check_conditions(phi.with_meta(estimated), sampling);

  ordered_json doc;
  doc["phi_hash"] = phi.hash();
  doc["declared"] = phi.meta().to_json();
  doc["estimated"] = estimated.to_json();
  doc["conditions"] = rep.to_json();
  emit(doc, out_dir, "phi_check.json");
  return rep.pass() ? 0 : 1;
}

int cmd_suite(const json* cfg, const std::string& out_dir, std::optional<std::uint64_t> seed,
              bool density_only)
{
  orlicz::SuiteConfig sc = cfg ? orlicz::SuiteConfig::from_json(*cfg)
                               : orlicz::default_suite_config();
  if (seed)
    for (auto& s : sc.scenarios) s.seed = *seed;
  const orlicz::Report report = density_only ? orlicz::run_density(sc) : orlicz::run_suite(sc);
  const std::string dir = out_dir.empty() ? std::string("out") : out_dir;
  orlicz::emit_report(report, dir);
  std::cout << report.to_markdown();
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"nonlocal convolution-type Orlicz functionals: evaluation, norms, "
               "minimization and the inequality property suites"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir, functional = "f";
  std::optional<std::uint64_t> seed;
  int threads = 0;

  app.add_option("--threads", threads, "worker threads (0 = ORLICZ_THREADS env or 1)");

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", config_path, "JSON config file");
    if (config_required) opt->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "seed override");
  };

  auto* c_eval = app.add_subcommand("eval", "evaluate one functional");
  add_common(c_eval, true);
  auto* c_norm = app.add_subcommand("norm", "Luxemburg-type norms");
  add_common(c_norm, true);
  c_norm->add_option("--functional", functional, "f | g | h | hstar | lux-F | lux-G");
  auto* c_min = app.add_subcommand("minimize", "minimize the convex energy");
  add_common(c_min, true);
  auto* c_dual = app.add_subcommand("dual", "emit the dual representation kernel");
  add_common(c_dual, true);
  auto* c_phi = app.add_subcommand("phi-check", "conditions report for an integrand");
  add_common(c_phi, true);
  auto* c_suite = app.add_subcommand("suite", "run the inequality property suites");
  add_common(c_suite, false);
  auto* c_density = app.add_subcommand("density", "run the approximation-chain experiment");
  add_common(c_density, false);

  CLI11_PARSE(app, argc, argv);

  if (threads <= 0) {
    const char* env = std::getenv("ORLICZ_THREADS");
    threads = env ? std::atoi(env) : 1;
  }
  orlicz::set_threads(threads);

  try {
    const std::uint64_t s = seed.value_or(20240501ull);
    if (app.got_subcommand(c_eval)) return cmd_eval(load_config(config_path), out_dir, s);
    if (app.got_subcommand(c_norm))
      return cmd_norm(load_config(config_path), functional, out_dir, s);
    if (app.got_subcommand(c_min)) return cmd_minimize(load_config(config_path), out_dir, s);
    if (app.got_subcommand(c_dual)) return cmd_dual(load_config(config_path), out_dir, s);
    if (app.got_subcommand(c_phi)) return cmd_phi_check(load_config(config_path), out_dir, s);
    if (app.got_subcommand(c_suite)) {
      json cfg;
      if (!config_path.empty()) cfg = load_config(config_path);
      return cmd_suite(config_path.empty() ? nullptr : &cfg, out_dir, seed, false);
    }
    if (app.got_subcommand(c_density)) {
      json cfg;
      if (!config_path.empty()) cfg = load_config(config_path);
      return cmd_suite(config_path.empty() ? nullptr : &cfg, out_dir, seed, true);
    }
  } catch (const orlicz::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const orlicz::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const orlicz::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
