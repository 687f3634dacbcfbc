#include "cli_app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "phasebound/continuum.hpp"
#include "phasebound/fisher.hpp"
#include "phasebound/optimize.hpp"
#include "phasebound/quadrature.hpp"
#include "phasebound/simulate.hpp"
#include "phasebound/state.hpp"
#include "phasebound/state_io.hpp"
#include "phasebound/toeplitz.hpp"
#include "phasebound/util.hpp"
#include "phasebound/version.hpp"

namespace phasebound::cli {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

template <typename T>
std::string join_list(const std::vector<T>& values) {
  std::ostringstream s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s << ",";
    s << values[i];
  }
  return s.str();
}

/// Tabular run report with a provenance header: tool version, command, the
/// fully resolved configuration (defaults included), and the seed.
class Report {
 public:
  Report(std::string command, std::uint64_t seed) : command_(std::move(command)), seed_(seed) {}

  void config(const std::string& key, const std::string& value) {
    config_.emplace_back(key, value);
  }
  void config(const std::string& key, double value) { config(key, format_double(value)); }
  void config(const std::string& key, int value) { config(key, std::to_string(value)); }

  void columns(std::vector<std::string> names) { columns_ = std::move(names); }
  void row(std::vector<double> values) { rows_.push_back(std::move(values)); }
  void note(std::string text) { notes_.push_back(std::move(text)); }

  void write_csv(std::ostream& out) const {
    out << "# phasebound " << version_string << "\n";
    out << "# command: " << command_ << "\n";
    for (const auto& [k, v] : config_) out << "# " << k << ": " << v << "\n";
    out << "# seed: " << seed_ << "\n";
    for (const std::string& n : notes_) out << "# note: " << n << "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      out << columns_[i] << (i + 1 < columns_.size() ? "," : "");
    }
    out << "\n";
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        out << format_double(r[i]) << (i + 1 < r.size() ? "," : "");
      }
      out << "\n";
    }
  }

  void write_json(std::ostream& out) const {
    nlohmann::json j;
    j["tool"] = "phasebound";
    j["version"] = version_string;
    j["command"] = command_;
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : config_) cfg[k] = v;
    j["config"] = std::move(cfg);
    j["seed"] = seed_;
    j["columns"] = columns_;
    j["rows"] = rows_;
    j["notes"] = notes_;
    out << j.dump(2) << "\n";
  }

 private:
  std::string command_;
  std::uint64_t seed_;
  std::vector<std::pair<std::string, std::string>> config_;
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::string> notes_;
};

struct CommonOptions {
  std::string format = "csv";
  std::string output;
  std::uint64_t seed = 0;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output", common.output, "Write the report to this file (default: stdout)");
  cmd->add_option("--seed", common.seed, "Seed for seeded operations")->capture_default_str();
  cmd->add_option("--threads", common.threads,
                  "Worker threads (default: PHASEBOUND_THREADS or hardware)");
}

void emit(const Report& report, const CommonOptions& common, std::ostream& out) {
  std::ostream* sink = &out;
  std::ofstream file;
  if (!common.output.empty()) {
    file.open(common.output);
    if (!file) {
      throw std::invalid_argument("cannot open output file: " + common.output);
    }
    sink = &file;
  }
  if (common.format == "json") {
    report.write_json(*sink);
  } else {
    report.write_csv(*sink);
  }
}

struct StateOptions {
  std::string kind = "noon";
  int n = 1;
  double energy = 8.0;
  double alpha = 2.0;
  double cutoff_sigmas = 8.0;
  double tail_tolerance = 1e-9;
  std::string file;
};

void add_state_options(CLI::App* cmd, StateOptions& opt) {
  cmd->add_option("--state", opt.kind, "State family")
      ->check(CLI::IsMember({"noon", "gaussian", "sine", "coherent-noon", "vacuum", "file"}))
      ->capture_default_str();
  cmd->add_option("--n", opt.n, "Noon order")->capture_default_str();
  cmd->add_option("--E", opt.energy, "Profile energy budget")->capture_default_str();
  cmd->add_option("--alpha", opt.alpha, "Coherent amplitude")->capture_default_str();
  cmd->add_option("--cutoff-sigmas", opt.cutoff_sigmas, "Gaussian truncation in sigmas")
      ->capture_default_str();
  cmd->add_option("--tail-tol", opt.tail_tolerance, "Coherent-noon truncation tolerance")
      ->capture_default_str();
  cmd->add_option("--state-file", opt.file, "Load the state from a JSON file");
}

StateVector make_state(const StateOptions& opt, Report& report) {
  report.config("state", opt.file.empty() ? opt.kind : "file");
  if (!opt.file.empty() || opt.kind == "file") {
    if (opt.file.empty()) {
      throw std::invalid_argument("--state file requires --state-file PATH");
    }
    report.config("state-file", opt.file);
    return load_state_json(opt.file);
  }
  if (opt.kind == "noon") {
    report.config("n", opt.n);
    return build_noon(opt.n);
  }
  if (opt.kind == "gaussian") {
    report.config("E", opt.energy);
    report.config("cutoff-sigmas", opt.cutoff_sigmas);
    return build_gaussian(opt.energy, opt.cutoff_sigmas).state;
  }
  if (opt.kind == "sine") {
    report.config("E", opt.energy);
    return build_sine(static_cast<int>(std::lround(opt.energy)));
  }
  if (opt.kind == "coherent-noon") {
    report.config("alpha", opt.alpha);
    report.config("tail-tol", opt.tail_tolerance);
    return build_coherent_noon(opt.alpha, opt.tail_tolerance).state;
  }
  return StateVector(0, 0, {Complex{1.0, 0.0}});  // vacuum
}

ContinuumFunction make_profile(const std::string& name, int points, double half_width) {
  if (name == "sine") {
    return ContinuumFunction::from_callable(
        [](double x) { return Complex{std::sin(pi * (1.0 + x) / 2.0), 0.0}; }, -1.0, 1.0,
        points);
  }
  return ContinuumFunction::from_callable(
      [](double x) { return Complex{std::exp(-x * x / 4.0), 0.0}; }, -half_width, half_width,
      points);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Covariant phase-estimation bounds under photon-number constraints"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("phasebound ") + version_string);

  CommonOptions common;

  // kernel
  auto* kernel_cmd = app.add_subcommand("kernel", "Tabulate the covariant MSE kernel");
  int max_lag = 8;
  int kernel_check_points = 0;
  kernel_cmd->add_option("--max-lag", max_lag, "Largest lag")->capture_default_str();
  kernel_cmd->add_option("--check-points", kernel_check_points,
                         "Also tabulate the quadrature cross-check with this many nodes");
  add_common(kernel_cmd, common);

  // mse
  auto* mse_cmd = app.add_subcommand("mse", "Covariant MSE of a state");
  StateOptions mse_state;
  int oracle_points = 0;
  std::string save_state;
  add_state_options(mse_cmd, mse_state);
  mse_cmd->add_option("--oracle-points", oracle_points,
                      "Cross-check with the quadrature oracle on this many nodes");
  mse_cmd->add_option("--save-state", save_state, "Write the state as JSON to this path");
  add_common(mse_cmd, common);

  // fisher
  auto* fisher_cmd = app.add_subcommand("fisher", "SLD Fisher information of a state");
  StateOptions fisher_state;
  add_state_options(fisher_cmd, fisher_state);
  add_common(fisher_cmd, common);

  // optimize
  auto* opt_cmd = app.add_subcommand("optimize", "Optimal state under a photon constraint");
  std::string constraint_kind = "max";
  double opt_energy = 8.0;
  int opt_truncation = 0;
  std::string opt_save_state;
  opt_cmd->add_option("--constraint", constraint_kind, "Constraint kind")
      ->check(CLI::IsMember({"max", "avg"}))
      ->capture_default_str();
  opt_cmd->add_option("--E", opt_energy, "Photon budget")->required();
  opt_cmd->add_option("--truncation", opt_truncation,
                      "Index window for the avg constraint (default 8E)");
  opt_cmd->add_option("--save-state", opt_save_state, "Write the optimal state as JSON");
  add_common(opt_cmd, common);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Constraint sweeps and noon divergence");
  std::string sweep_bound = "max";
  std::vector<double> sweep_energies;
  std::vector<int> sweep_orders;
  int trunc_factor = 8;
  bool sweep_noon = false;
  bool two_column = false;
  sweep_cmd->add_option("--bound", sweep_bound, "Constraint kind for --E sweeps")
      ->check(CLI::IsMember({"max", "avg"}))
      ->capture_default_str();
  sweep_cmd->add_option("--E", sweep_energies, "Ascending photon budgets")->delimiter(',');
  sweep_cmd->add_flag("--noon", sweep_noon, "Sweep phase-optimized noon states instead");
  sweep_cmd->add_option("--n", sweep_orders, "Ascending noon orders")->delimiter(',');
  sweep_cmd->add_option("--trunc-factor", trunc_factor, "Window factor for the avg constraint")
      ->capture_default_str();
  sweep_cmd->add_flag("--two-column", two_column,
                      "Emit only (budget, scaled value) for plotting");
  add_common(sweep_cmd, common);

  // noon
  auto* noon_cmd = app.add_subcommand("noon", "Noon-state local minimax analysis");
  int noon_n = 100;
  double noon_eps = 0.1;
  int noon_restarts = 16;
  noon_cmd->add_option("--n", noon_n, "Noon order")->required();
  noon_cmd->add_option("--eps", noon_eps, "Half width of the phase window")->required();
  noon_cmd->add_option("--restarts", noon_restarts, "Phase-optimization restarts")
      ->capture_default_str();
  add_common(noon_cmd, common);

  // continuum
  auto* cont_cmd = app.add_subcommand("continuum", "Continuum-limit problems");
  std::string cont_op = "ground";
  std::string cont_profile = "sine";
  int cont_points = 401;
  double cont_half_width = 12.0;
  std::vector<double> cont_energies{16.0, 32.0, 64.0, 128.0};
  cont_cmd->add_option("--op", cont_op, "Operation")
      ->check(CLI::IsMember({"ground", "uncertainty", "scaling"}))
      ->capture_default_str();
  cont_cmd->add_option("--profile", cont_profile, "Profile for uncertainty/scaling")
      ->check(CLI::IsMember({"sine", "gaussian"}))
      ->capture_default_str();
  cont_cmd->add_option("--points", cont_points, "Grid points")->capture_default_str();
  cont_cmd->add_option("--half-width", cont_half_width, "Gaussian domain half width")
      ->capture_default_str();
  cont_cmd->add_option("--E", cont_energies, "Budgets for the scaling sweep")->delimiter(',');
  add_common(cont_cmd, common);

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo verification");
  StateOptions sim_state;
  double sim_theta = 0.0;
  int sim_count = 100000;
  bool sim_plateau = false;
  std::vector<int> plateau_orders{50, 100, 200, 400};
  double plateau_eps = 0.1;
  double plateau_theta0 = 0.0;
  int plateau_grid = 33;
  int plateau_contrast = 0;
  add_state_options(sim_cmd, sim_state);
  sim_cmd->add_option("--theta", sim_theta, "True phase")->capture_default_str();
  sim_cmd->add_option("--count", sim_count, "Samples per batch")->capture_default_str();
  sim_cmd->add_flag("--plateau", sim_plateau, "Run the noon plateau demonstration");
  sim_cmd->add_option("--n-list", plateau_orders, "Noon orders for the plateau demo")
      ->delimiter(',');
  sim_cmd->add_option("--eps", plateau_eps, "Phase window half width")->capture_default_str();
  sim_cmd->add_option("--theta0", plateau_theta0, "Window center")->capture_default_str();
  sim_cmd->add_option("--theta-grid", plateau_grid, "True phases per window")
      ->capture_default_str();
  sim_cmd->add_option("--contrast-E", plateau_contrast,
                      "Add a sine-state contrast row with this budget");
  add_common(sim_cmd, common);

  // twostep
  auto* two_cmd = app.add_subcommand("twostep", "Two-stage estimation demo");
  int two_total = 64;
  double two_split = 0.25;
  int two_trials = 10000;
  two_cmd->add_option("--E-total", two_total, "Total photon budget")->required();
  two_cmd->add_option("--split", two_split, "Stage-1 share of the budget")
      ->capture_default_str();
  two_cmd->add_option("--trials", two_trials, "Monte-Carlo trials")->capture_default_str();
  add_common(two_cmd, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << app.version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    err << app.help();
    return 2;
  }

  if (common.threads > 0) {
    setenv("PHASEBOUND_THREADS", std::to_string(common.threads).c_str(), 1);
  }

  try {
    if (kernel_cmd->parsed()) {
      Report report("kernel", common.seed);
      report.config("max-lag", max_lag);
      if (kernel_check_points > 0) {
        report.config("check-points", kernel_check_points);
        const QuadratureRule& rule = gauss_legendre(kernel_check_points, -pi, pi);
        report.columns({"k", "theta", "quadrature", "abs_diff"});
        for (int k = 0; k <= max_lag; ++k) {
          KahanSum integral;
          for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            integral.add(rule.weights[i] * rule.nodes[i] * rule.nodes[i] *
                         std::cos(k * rule.nodes[i]));
          }
          const double quad = integral.value() / two_pi;
          const double closed = kernel_entry(k);
          report.row({static_cast<double>(k), closed, quad, std::abs(closed - quad)});
        }
      } else {
        report.columns({"k", "theta"});
        for (int k = 0; k <= max_lag; ++k) {
          report.row({static_cast<double>(k), kernel_entry(k)});
        }
      }
      emit(report, common, out);
      return 0;
    }

    if (mse_cmd->parsed()) {
      Report report("mse", common.seed);
      const StateVector state = make_state(mse_state, report);
      const PhotonMetrics m = metrics(state);
      const double value = covariant_mse(state);
      if (oracle_points > 0) {
        report.config("oracle-points", oracle_points);
        const double oracle = quadrature_mse_oracle(state, oracle_points);
        report.columns({"covariant_mse", "oracle_mse", "abs_diff", "n2_avg", "n_max", "n_mean"});
        report.row({value, oracle, std::abs(value - oracle), m.n2_avg,
                    static_cast<double>(m.n_max), m.n_mean});
      } else {
        report.columns({"covariant_mse", "n2_avg", "n_max", "n_mean"});
        report.row({value, m.n2_avg, static_cast<double>(m.n_max), m.n_mean});
      }
      if (!save_state.empty()) {
        save_state_json(state, save_state);
        report.note("state written to " + save_state);
      }
      emit(report, common, out);
      return 0;
    }

    if (fisher_cmd->parsed()) {
      Report report("fisher", common.seed);
      const StateVector state = make_state(fisher_state, report);
      const FisherResult f = sld_fisher(state);
      const PhotonMetrics m = metrics(state);
      report.columns({"information", "cr_bound", "n2_avg", "n_max", "n_mean"});
      report.row({f.information, f.cr_bound, m.n2_avg, static_cast<double>(m.n_max), m.n_mean});
      emit(report, common, out);
      return 0;
    }

    if (opt_cmd->parsed()) {
      Report report("optimize", common.seed);
      report.config("constraint", constraint_kind);
      report.config("E", opt_energy);
      OptimizationResult result =
          constraint_kind == "max"
              ? optimize_max_constraint(static_cast<int>(std::lround(opt_energy)))
              : optimize_avg_constraint(opt_energy, opt_truncation);
      if (constraint_kind == "avg") {
        report.config("truncation", opt_truncation > 0
                                        ? opt_truncation
                                        : 8 * static_cast<int>(std::ceil(opt_energy)));
      }
      report.columns({"E", "value", "scaled_value", "constraint_value", "multiplier",
                      "residual", "iterations"});
      report.row({opt_energy, result.value, opt_energy * opt_energy * result.value,
                  result.constraint_value,
                  result.multiplier.value_or(std::numeric_limits<double>::quiet_NaN()),
                  result.residual, static_cast<double>(result.iterations)});
      if (result.degenerate) report.note("ground eigenspace is near-degenerate");
      if (!opt_save_state.empty()) {
        save_state_json(result.state, opt_save_state);
        report.note("state written to " + opt_save_state);
      }
      emit(report, common, out);
      return 0;
    }

    if (sweep_cmd->parsed()) {
      Report report("sweep", common.seed);
      if (sweep_noon) {
        if (sweep_orders.empty()) {
          throw std::invalid_argument("sweep --noon requires --n with an ascending list");
        }
        for (std::size_t i = 1; i < sweep_orders.size(); ++i) {
          if (sweep_orders[i] <= sweep_orders[i - 1]) {
            throw std::invalid_argument("--n list must be ascending");
          }
        }
        report.config("mode", "noon");
        report.config("n", join_list(sweep_orders));
        const auto rows = noon_divergence_sweep(sweep_orders, 16, common.seed);
        if (two_column) {
          report.columns({"n", "scaled_mse"});
          for (const auto& r : rows) report.row({static_cast<double>(r.n), r.scaled});
        } else {
          report.columns({"n", "mse", "scaled_mse"});
          for (const auto& r : rows) report.row({static_cast<double>(r.n), r.mse, r.scaled});
        }
      } else {
        if (sweep_energies.empty()) {
          throw std::invalid_argument("sweep requires --E with an ascending list");
        }
        for (std::size_t i = 1; i < sweep_energies.size(); ++i) {
          if (sweep_energies[i] <= sweep_energies[i - 1]) {
            throw std::invalid_argument("--E list must be ascending");
          }
        }
        report.config("bound", sweep_bound);
        report.config("E", join_list(sweep_energies));
        if (sweep_bound == "avg") report.config("trunc-factor", trunc_factor);
        const double limit = sweep_bound == "max" ? pi * pi / 4.0 : 0.25;
        if (two_column) {
          report.columns({"E", "scaled_value"});
        } else {
          report.columns({"E", "value", "scaled_value", "limit_gap", "residual"});
        }
        for (const double e : sweep_energies) {
          OptimizationResult r =
              sweep_bound == "max"
                  ? optimize_max_constraint(static_cast<int>(std::lround(e)))
                  : optimize_avg_constraint(
                        e, trunc_factor * static_cast<int>(std::ceil(e)));
          const double scaled = e * e * r.value;
          if (two_column) {
            report.row({e, scaled});
          } else {
            report.row({e, r.value, scaled, std::abs(scaled - limit) / limit, r.residual});
          }
        }
        report.note(std::string("scaled values approach ") +
                    (sweep_bound == "max" ? "pi^2/4" : "1/4"));
      }
      emit(report, common, out);
      return 0;
    }

    if (noon_cmd->parsed()) {
      Report report("noon", common.seed);
      report.config("n", noon_n);
      report.config("eps", noon_eps);
      report.config("restarts", noon_restarts);
      const double lower = noon_local_minimax_lower(noon_n, noon_eps);
      std::vector<double> moduli(static_cast<std::size_t>(2 * noon_n + 1), 0.0);
      moduli.front() = 1.0 / std::sqrt(2.0);
      moduli.back() = 1.0 / std::sqrt(2.0);
      const PhaseOptimum opt = min_phase_mse(moduli, -noon_n, noon_restarts, common.seed);
      const int k = static_cast<int>(std::floor(noon_n * noon_eps / pi));
      report.columns({"n", "eps", "K", "lower_bound", "covariant_mse", "scaled_mse",
                      "worst_floor", "worst_half_count"});
      double floor_bound = 0.0, half_bound = 0.0;
      if (k >= 1) {
        const GridMinimaxInstance inst = GridMinimaxInstance::for_noon(noon_n, noon_eps);
        floor_bound = grid_worst_case_floor(inst);
        half_bound = grid_worst_case_half_count(inst);
      }
      report.row({static_cast<double>(noon_n), noon_eps, static_cast<double>(k), lower,
                  opt.value, noon_n * static_cast<double>(noon_n) * opt.value, floor_bound,
                  half_bound});
      emit(report, common, out);
      return 0;
    }

    if (cont_cmd->parsed()) {
      Report report("continuum", common.seed);
      report.config("op", cont_op);
      if (cont_op == "ground") {
        report.config("points", cont_points);
        const DirichletGroundState g = dirichlet_ground_state(cont_points);
        report.columns({"points", "eigenvalue", "limit", "relative_gap"});
        report.row({static_cast<double>(cont_points), g.eigenvalue, pi * pi / 4.0,
                    std::abs(g.eigenvalue / (pi * pi / 4.0) - 1.0)});
      } else if (cont_op == "uncertainty") {
        report.config("profile", cont_profile);
        report.config("points", cont_points);
        const ContinuumFunction f = make_profile(cont_profile, cont_points, cont_half_width);
        const UncertaintyCheck u = uncertainty_check(f);
        report.columns({"q2", "p2", "product", "ok"});
        report.row({u.q2, u.p2, u.product, u.ok ? 1.0 : 0.0});
      } else {
        report.config("profile", cont_profile);
        report.config("points", cont_points);
        report.config("E", join_list(cont_energies));
        const ContinuumFunction f = make_profile(cont_profile, cont_points, cont_half_width);
        const ScalingTable table = scaling_convergence(f, cont_energies);
        report.columns({"E", "scaled_mse", "limit", "relative_gap"});
        for (const ScalingRow& r : table.rows) {
          report.row({r.energy, r.scaled_mse, table.limit,
                      std::abs(r.scaled_mse / table.limit - 1.0)});
        }
        report.note("final relative gap: " + format_double(table.final_relative_gap));
      }
      emit(report, common, out);
      return 0;
    }

    if (sim_cmd->parsed()) {
      Report report("simulate", common.seed);
      if (sim_plateau) {
        report.config("mode", "plateau");
        report.config("n-list", join_list(plateau_orders));
        report.config("eps", plateau_eps);
        report.config("theta0", plateau_theta0);
        report.config("theta-grid", plateau_grid);
        report.config("count", sim_count);
        const PlateauTable table =
            noon_plateau_demo(plateau_orders, plateau_eps, sim_count, common.seed,
                              plateau_theta0, plateau_grid, plateau_contrast);
        report.columns({"n", "worst_mse", "worst_std_error", "lower_bound", "is_contrast"});
        for (const PlateauRow& r : table.rows) {
          report.row({static_cast<double>(r.n), r.worst_mse, r.worst_std_error, r.lower_bound,
                      0.0});
        }
        if (table.sine_contrast) {
          const PlateauRow& r = *table.sine_contrast;
          report.row({static_cast<double>(r.n), r.worst_mse, r.worst_std_error, r.lower_bound,
                      1.0});
        }
        if (!table.plateau_regime_reached) {
          report.note("warning: every n is at most 2 pi / eps; the plateau regime "
                      "is not reached");
        }
      } else {
        const StateVector state = make_state(sim_state, report);
        report.config("theta", sim_theta);
        report.config("count", sim_count);
        const SampleBatch batch = sample_outcomes(state, sim_theta, sim_count, common.seed);
        const MseEstimate est = empirical_mse(batch);
        const double exact = covariant_mse(state);
        report.columns(
            {"count", "empirical_mse", "std_error", "covariant_mse", "sigmas_off"});
        report.row({static_cast<double>(sim_count), est.mse, est.std_error, exact,
                    est.std_error > 0.0 ? std::abs(est.mse - exact) / est.std_error : 0.0});
      }
      emit(report, common, out);
      return 0;
    }

    if (two_cmd->parsed()) {
      Report report("twostep", common.seed);
      report.config("E-total", two_total);
      report.config("split", two_split);
      report.config("trials", two_trials);
      const TwoStepReport r = two_step_demo(two_total, two_split, two_trials, common.seed);
      report.columns({"E1", "E2", "two_step_mse", "two_step_std_error", "noon_variant_mse",
                      "one_shot_mse", "reference", "two_step_over_reference"});
      report.row({static_cast<double>(r.energy_stage1), static_cast<double>(r.energy_stage2),
                  r.two_step.mse, r.two_step.std_error, r.two_step_noon.mse, r.one_shot.mse,
                  r.reference, r.two_step.mse / r.reference});
      if (r.degenerate_one_shot) {
        report.note("split consumed the full budget; the run degenerates to one-shot");
      }
      emit(report, common, out);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const numerical_error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return 1;
  }

  err << "no command selected\n";
  return 2;
}

}  // namespace phasebound::cli
