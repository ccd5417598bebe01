// Command-line front end: evaluates the solitary-wave profile, operator
// spectra, stability bounds and non-relativistic comparisons, with
// deterministic CSV/JSON output suitable for golden-file testing.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dsl/acceptance.hpp"
#include "dsl/asymptotics.hpp"
#include "dsl/grossneveu.hpp"
#include "dsl/io.hpp"
#include "dsl/model.hpp"
#include "dsl/operators.hpp"
#include "dsl/spectra.hpp"
#include "dsl/stability.hpp"

namespace {

using dsl::fmt_sig12;

struct CliConfig {
  double m = 1.0;
  double p = 1.0;
  double omega = 0.5;
  double mu = 2.0;
  double p_min = 0.0, p_max = 0.0;
  int p_steps = 0;
  double omega_min = 0.0, omega_max = 0.0;
  int omega_steps = 0;
  double grid_x = 0.0;  // 0: use the sizing rule
  int grid_n = 1024;
  double tol = 1e-12;
  int workers = 0;  // 0: env DSL_WORKERS, else hardware
  int samples = 1001;
  std::string op = "L";
  std::string kappas = "0.1,0.05,0.025";
  std::string omegas = "0.3,0.5,0.7,0.9";
  std::string out;
  std::string format = "csv";
  std::string config_path;
  bool emit_plotscript = false;
};

int resolve_workers(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("DSL_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs tasks 0..count-1 on a small pool; results land in caller storage by
/// index, so output order never depends on scheduling. The first exception
/// thrown by any task is rethrown after the pool drains.
void run_indexed(int count, int workers, const std::function<void(int)>& task) {
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> out;
  if (steps <= 1) {
    out.push_back(lo);
    return out;
  }
  for (int i = 0; i < steps; ++i) out.push_back(lo + (hi - lo) * i / (steps - 1));
  return out;
}

void emit(const CliConfig& cfg, const std::string& content) {
  if (cfg.out.empty()) {
    std::cout << content;
  } else {
    dsl::write_text_file(cfg.out, content);
  }
}

void emit_plotscript(const CliConfig& cfg, const std::string& script) {
  if (!cfg.emit_plotscript || cfg.out.empty()) return;
  dsl::write_text_file(cfg.out + ".gp", script);
}

dsl::ModelParams make_params(const CliConfig& cfg) {
  dsl::ModelParams params{cfg.m, cfg.p, cfg.omega, cfg.mu};
  params.validate();
  return params;
}

dsl::Grid make_grid(const CliConfig& cfg, const dsl::ModelParams& params) {
  dsl::Grid grid{
      cfg.grid_x > 0.0 ? cfg.grid_x : dsl::Grid::recommended_half_width(params),
      cfg.grid_n};
  grid.validate();
  return grid;
}

std::vector<double> p_values(const CliConfig& cfg) {
  if (cfg.p_steps > 0) return linspace(cfg.p_min, cfg.p_max, cfg.p_steps);
  return {cfg.p};
}

std::vector<double> omega_values(const CliConfig& cfg) {
  if (cfg.omega_steps > 0)
    return linspace(cfg.omega_min, cfg.omega_max, cfg.omega_steps);
  return {cfg.omega};
}

int cmd_soliton(const CliConfig& cfg) {
  const dsl::ModelParams params = make_params(cfg);
  const double half =
      cfg.grid_x > 0.0 ? cfg.grid_x : dsl::Grid::recommended_half_width(params);
  std::ostringstream os;
  os << "x,v,u,density_p,M\n";
  for (int i = 0; i < cfg.samples; ++i) {
    const double x = cfg.samples > 1 ? -half + 2.0 * half * i / (cfg.samples - 1) : 0.0;
    const dsl::SolitonSample s = dsl::soliton_eval(params, x);
    os << fmt_sig12(s.x) << ',' << fmt_sig12(s.v) << ',' << fmt_sig12(s.u) << ','
       << fmt_sig12(s.density_p) << ',' << fmt_sig12(s.M) << '\n';
  }
  emit(cfg, os.str());
  emit_plotscript(cfg,
                  "set datafile separator ','\n"
                  "set key autotitle columnhead\n"
                  "plot '" + cfg.out + "' using 1:2 with lines, '' using 1:3 with lines, "
                  "'' using 1:4 with lines\n");
  return 0;
}

int cmd_spectrum(const CliConfig& cfg) {
  const dsl::ModelParams params = make_params(cfg);
  const dsl::Grid grid = make_grid(cfg, params);
  nlohmann::json j;
  if (cfg.op == "L") {
    const dsl::DiscreteOperator l = dsl::assemble_L(params, grid);
    j = dsl::report_to_json(dsl::eig_hermitian(l));
  } else if (cfg.op == "H") {
    const dsl::DiscreteOperator h = dsl::assemble_H_square_block(params, grid);
    j = dsl::report_to_json(dsl::eig_general(h).z);
  } else {
    throw std::invalid_argument("spectrum: --op must be L or H");
  }
  emit(cfg, j.dump(2) + "\n");
  return 0;
}

int cmd_vk_scan(const CliConfig& cfg) {
  const std::vector<double> ps = p_values(cfg);
  const std::vector<double> ws = omega_values(cfg);
  // validate the whole range up front; worker threads must not throw
  for (const double p : ps)
    for (const double w : ws) dsl::ModelParams{cfg.m, p, w, cfg.mu}.validate();
  std::vector<dsl::StabilityVerdict> rows(ps.size() * ws.size());
  dsl::RegionOptions ropts;
  ropts.m = cfg.m;
  ropts.mu = cfg.mu;
  ropts.quad.rel_tol = cfg.tol;
  run_indexed(static_cast<int>(rows.size()), resolve_workers(cfg.workers), [&](int i) {
    const double p = ps[i / ws.size()];
    const double w = ws[i % ws.size()];
    rows[i] = dsl::region_classify(p, w, ropts);
  });
  std::ostringstream os;
  os << dsl::region_csv_header() << '\n';
  for (const auto& v : rows) os << dsl::region_csv_row(v) << '\n';
  emit(cfg, os.str());
  emit_plotscript(cfg,
                  "set datafile separator ','\n"
                  "set key autotitle columnhead\n"
                  "plot '" + cfg.out + "' using 1:($9 == 1 ? $2 : 1/0) with points\n");
  return 0;
}

int cmd_regions(const CliConfig& cfg) {
  const std::vector<double> ps = p_values(cfg);
  const dsl::BetaThresholds meta = dsl::beta_thresholds(1.0, cfg.mu);
  const dsl::ImprovedBeta1 b1 = dsl::improved_beta1();
  std::ostringstream os;
  os << "# mu = " << fmt_sig12(cfg.mu) << '\n';
  os << "# p_circ = " << fmt_sig12(meta.p_circ) << '\n';
  os << "# p_star = " << fmt_sig12(meta.p_star) << '\n';
  os << "# beta_gn_improved_1 = " << fmt_sig12(b1.closed_form) << '\n';
  os << "p,beta,omega_circ_over_m,omega_star_over_m\n";
  for (const double p : ps) {
    const dsl::BetaThresholds b = dsl::beta_thresholds(p, cfg.mu);
    os << fmt_sig12(p) << ',' << fmt_sig12(b.beta) << ',' << fmt_sig12(b.omega_circ)
       << ',' << fmt_sig12(b.omega_star) << '\n';
  }
  emit(cfg, os.str());
  emit_plotscript(cfg,
                  "set datafile separator ','\n"
                  "set key autotitle columnhead\n"
                  "plot '" + cfg.out + "' using 1:2 with lines, '' using 1:4 with lines\n");
  return 0;
}

int cmd_nonrel(const CliConfig& cfg) {
  const std::vector<double> kappas = parse_list(cfg.kappas);
  std::vector<std::string> blocks(kappas.size());
  std::atomic<bool> bad_kappa{false};
  run_indexed(static_cast<int>(kappas.size()), resolve_workers(cfg.workers), [&](int i) {
    const double kappa = kappas[i];
    if (!(kappa > 0.0 && kappa < cfg.m)) {
      bad_kappa = true;
      return;
    }
    dsl::ModelParams params{cfg.m, cfg.p,
                            std::sqrt((cfg.m - kappa) * (cfg.m + kappa)), cfg.mu};
    const dsl::Grid grid = make_grid(cfg, params);
    const dsl::ComparisonTable table = dsl::compare_to_spectrum(params, grid);
    std::ostringstream os;
    for (const auto& row : table.rows) {
      os << fmt_sig12(cfg.p) << ',' << fmt_sig12(cfg.mu) << ','
         << fmt_sig12(kappa / cfg.m) << ',' << row.k << ',' << fmt_sig12(row.predicted)
         << ',' << fmt_sig12(row.computed) << ',' << fmt_sig12(row.rel_err) << ','
         << (table.count_ok ? 1 : 0) << '\n';
    }
    blocks[i] = os.str();
  });
  if (bad_kappa) throw std::invalid_argument("nonrel: every kappa must lie in (0, m)");
  std::ostringstream os;
  os << "p,mu,kappa_over_m,k,predicted,computed,rel_err,count_ok\n";
  for (const auto& b : blocks) os << b;
  emit(cfg, os.str());
  return 0;
}

int cmd_gn_verify(const CliConfig& cfg) {
  const std::vector<double> omegas = parse_list(cfg.omegas);
  const dsl::ImprovedBeta1 b1 = dsl::improved_beta1();
  nlohmann::json report;
  report["schema"] = 1;
  report["beta1_closed_form"] = b1.closed_form;
  report["beta1_dichotomy"] = b1.dichotomy;
  report["dichotomy_boundary"] = dsl::gn_dichotomy_boundary();
  bool all_pass = true;
  nlohmann::json rows = nlohmann::json::array();
  for (const double w : omegas) {
    dsl::ModelParams params{cfg.m, 1.0, w * cfg.m, 0.0};
    params.validate();
    const dsl::Grid grid = make_grid(cfg, params);
    const dsl::ResonanceResidual res = dsl::resonance_residual(params);
    const dsl::GnSpectrumCheck spec_check =
        dsl::verify_L0_spectrum_p1(params, grid, 1e-6 * cfg.m);
    const dsl::ThresholdClearance clearance = dsl::threshold_clearance(w * cfg.m, cfg.m);
    const bool resonances_ok = res.max_rel_rs <= 1e-10 && res.max_rel_sr <= 1e-10;
    const bool row_pass = resonances_ok && spec_check.pass;
    all_pass = all_pass && row_pass;
    rows.push_back({{"omega_over_m", w},
                    {"resonance_residual_rs", res.max_rel_rs},
                    {"resonance_residual_sr", res.max_rel_sr},
                    {"resonances_ok", resonances_ok},
                    {"l0_gap_values", spec_check.gap_values},
                    {"l0_spectrum_ok", spec_check.pass},
                    {"threshold_clearance",
                     {{"pass", clearance.pass},
                      {"E", clearance.e},
                      {"theta", clearance.theta},
                      {"theta_plus_at_xi", clearance.theta_plus_at_xi}}},
                    {"pass", row_pass}});
  }
  report["omegas"] = std::move(rows);
  report["pass"] = all_pass;
  emit(cfg, report.dump(2) + "\n");
  return all_pass ? 0 : 4;
}

int cmd_verify_all(const CliConfig&) {
  const auto results = dsl::run_acceptance(std::cout);
  for (const auto& r : results)
    if (!r.pass) return 4;
  return 0;
}

void apply_config_file(CLI::App& app, CliConfig& cfg) {
  if (cfg.config_path.empty()) return;
  std::ifstream f(cfg.config_path);
  if (!f) throw std::invalid_argument("cannot open config file " + cfg.config_path);
  nlohmann::json j;
  f >> j;
  auto apply = [&](const std::string& flag, auto& target) {
    if (!j.contains(flag)) return;
    const CLI::Option* opt = app.get_option_no_throw("--" + flag);
    if (opt != nullptr && opt->count() > 0) return;  // flags win
    j.at(flag).get_to(target);
  };
  apply("m", cfg.m);
  apply("p", cfg.p);
  apply("omega", cfg.omega);
  apply("mu", cfg.mu);
  apply("p-min", cfg.p_min);
  apply("p-max", cfg.p_max);
  apply("p-steps", cfg.p_steps);
  apply("omega-min", cfg.omega_min);
  apply("omega-max", cfg.omega_max);
  apply("omega-steps", cfg.omega_steps);
  apply("grid-x", cfg.grid_x);
  apply("grid-n", cfg.grid_n);
  apply("tol", cfg.tol);
  apply("workers", cfg.workers);
  apply("samples", cfg.samples);
  apply("op", cfg.op);
  apply("kappas", cfg.kappas);
  apply("omegas", cfg.omegas);
  apply("out", cfg.out);
  apply("format", cfg.format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for solitary waves of the 1D Soler-type "
               "nonlinear Dirac equation and their linearized spectra"};
  app.fallthrough();
  CliConfig cfg;

  app.add_option("--m", cfg.m, "mass (default 1)");
  app.add_option("--p", cfg.p, "nonlinearity power");
  app.add_option("--omega", cfg.omega, "frequency in (0, m)");
  app.add_option("--mu", cfg.mu, "linearization parameter (2 = physical)");
  app.add_option("--p-min", cfg.p_min, "range scan: lowest p");
  app.add_option("--p-max", cfg.p_max, "range scan: highest p");
  app.add_option("--p-steps", cfg.p_steps, "range scan: inclusive point count in p");
  app.add_option("--omega-min", cfg.omega_min, "range scan: lowest omega");
  app.add_option("--omega-max", cfg.omega_max, "range scan: highest omega");
  app.add_option("--omega-steps", cfg.omega_steps,
                 "range scan: inclusive point count in omega");
  app.add_option("--grid-x", cfg.grid_x,
                 "grid half-width override (default: max(20/kappa, 20/(p kappa)))");
  app.add_option("--grid-n", cfg.grid_n, "grid point count (even, default 1024)");
  app.add_option("--tol", cfg.tol, "relative tolerance for quadratures (default 1e-12)");
  app.add_option("--workers", cfg.workers,
                 "worker threads (default: DSL_WORKERS env, then logical CPUs)");
  app.add_option("--out", cfg.out, "output path (default: stdout)");
  app.add_option("--format", cfg.format, "output format: csv | json");
  app.add_option("--config", cfg.config_path,
                 "JSON config mirroring the flags; explicit flags win");
  app.add_flag("--emit-plotscript", cfg.emit_plotscript,
               "write a gnuplot script next to the CSV output");

  auto* soliton = app.add_subcommand("soliton", "profile samples as CSV");
  soliton->add_option("--samples", cfg.samples, "row count (default 1001)");

  auto* spectrum = app.add_subcommand("spectrum", "operator spectrum as JSON");
  spectrum->add_option("--op", cfg.op, "operator: L or H");

  auto* vk_scan =
      app.add_subcommand("vk-scan", "stability verdict rows over a (p, omega) grid");
  auto* regions =
      app.add_subcommand("regions", "threshold curves beta, omega_circ, omega_star");
  auto* nonrel = app.add_subcommand("nonrel", "ladder vs spectrum comparison table");
  nonrel->add_option("--kappas", cfg.kappas, "comma-separated kappa values");
  auto* gn = app.add_subcommand("gn-verify", "Gross-Neveu verification report (JSON)");
  gn->add_option("--omegas", cfg.omegas, "comma-separated omega/m values");
  auto* verify = app.add_subcommand("verify-all", "run the full acceptance battery");

  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
    apply_config_file(app, cfg);
    if (soliton->parsed()) return cmd_soliton(cfg);
    if (spectrum->parsed()) return cmd_spectrum(cfg);
    if (vk_scan->parsed()) return cmd_vk_scan(cfg);
    if (regions->parsed()) return cmd_regions(cfg);
    if (nonrel->parsed()) return cmd_nonrel(cfg);
    if (gn->parsed()) return cmd_gn_verify(cfg);
    if (verify->parsed()) return cmd_verify_all(cfg);
    return 2;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
