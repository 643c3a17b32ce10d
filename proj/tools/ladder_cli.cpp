// Command-line front end: steady-state observables, parameter sweeps,
// figure-data emitters and the verification suite.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ladder/closed_form.hpp"
#include "ladder/config_io.hpp"
#include "ladder/observables.hpp"
#include "ladder/sweep.hpp"
#include "ladder/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitComputation = 2;
constexpr int kExitVerification = 3;

struct CommonOptions {
  std::string config_path;
  std::optional<int> n_atoms;
  std::optional<double> eta;
  std::optional<double> nbar1;
  std::optional<double> nbar2;
  std::string thermal;  // OMEGA:T
  std::string pump;     // R:D:G
  std::optional<double> theta_deg;
  std::string mode;
  std::string output;
  std::string format = "csv";
  int workers = 0;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config_path, "JSON config file");
  cmd->add_option("--n-atoms", opt.n_atoms, "ensemble size N");
  cmd->add_option("--eta", opt.eta, "pump parameter eta = nbar/(1+nbar) for both transitions")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--nbar1", opt.nbar1, "reservoir occupation at the upper transition");
  cmd->add_option("--nbar2", opt.nbar2, "reservoir occupation at the lower transition");
  cmd->add_option("--thermal", opt.thermal, "OMEGA:T thermal bath for both transitions");
  cmd->add_option("--pump", opt.pump, "R:D:G incoherent pump for both transitions");
  cmd->add_option("--theta-deg", opt.theta_deg, "angle between the dipole moments, degrees");
  cmd->add_option("--mode", opt.mode, "dipole geometry")
      ->check(CLI::IsMember({"orthogonal", "interfering"}));
  cmd->add_option("--output", opt.output, "output path (default stdout)");
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--workers", opt.workers, "worker threads (0 = hardware parallelism)");
}

std::vector<double> split_numbers(const std::string& text, size_t expected,
                                  const std::string& what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ':')) values.push_back(std::stod(field));
  if (values.size() != expected) {
    throw CLI::ValidationError(what + ": expected " + std::to_string(expected) +
                               " colon-separated numbers");
  }
  return values;
}

ladder::EnsembleConfig build_config(const CommonOptions& opt) {
  ladder::EnsembleConfig cfg;
  if (!opt.config_path.empty()) {
    cfg = ladder::parse_config_file(opt.config_path);
  }
  if (opt.n_atoms) cfg.n_atoms = *opt.n_atoms;
  if (opt.eta) cfg.nbar1 = cfg.nbar2 = ladder::nbar_from_eta(*opt.eta);
  if (opt.nbar1) cfg.nbar1 = *opt.nbar1;
  if (opt.nbar2) cfg.nbar2 = *opt.nbar2;
  if (!opt.thermal.empty()) {
    const auto v = split_numbers(opt.thermal, 2, "--thermal");
    cfg.nbar1 = cfg.nbar2 = ladder::nbar_thermal(v[0], v[1]);
  }
  if (!opt.pump.empty()) {
    const auto v = split_numbers(opt.pump, 3, "--pump");
    cfg.nbar1 = cfg.nbar2 = ladder::nbar_pump(v[0], v[1], v[2]);
  }
  if (opt.theta_deg) cfg.theta = *opt.theta_deg * M_PI / 180.0;
  if (!opt.mode.empty()) cfg.mode = ladder::mode_from_string(opt.mode);
  ladder::validate(cfg);
  return cfg;
}

int with_output(const CommonOptions& opt, const std::function<void(std::ostream&)>& emit) {
  if (opt.output.empty()) {
    emit(std::cout);
    return kExitOk;
  }
  std::ofstream out(opt.output);
  if (!out) {
    std::cerr << "cannot open output file '" << opt.output << "'\n";
    return kExitComputation;
  }
  emit(out);
  return kExitOk;
}

void emit_values(std::ostream& out, const std::string& format,
                 const std::vector<std::pair<std::string, double>>& values) {
  if (format == "json") {
    nlohmann::json j;
    for (const auto& [k, v] : values) j[k] = v;
    out << j.dump(2) << '\n';
    return;
  }
  for (size_t i = 0; i < values.size(); ++i) {
    out << (i ? "," : "") << values[i].first;
  }
  out << '\n';
  char buf[32];
  for (size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", values[i].second);
    out << (i ? "," : "") << buf;
  }
  out << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steady-state observables of ladder ensembles in incoherent reservoirs"};
  app.require_subcommand(1);

  CommonOptions pop_opt, int_opt, g2_opt, sweep_opt, fig_opt, verify_opt;

  CLI::App* cmd_pop = app.add_subcommand("populations", "level populations <S11>,<S22>,<S33>");
  add_common_flags(cmd_pop, pop_opt);

  CLI::App* cmd_int = app.add_subcommand("intensity", "steady-state fluorescence intensities");
  add_common_flags(cmd_int, int_opt);

  std::string g2_channel = "22";
  CLI::App* cmd_g2 = app.add_subcommand("g2", "second-order coherence g2(0)");
  add_common_flags(cmd_g2, g2_opt);
  cmd_g2->add_option("--channel", g2_channel, "photon channel")
      ->check(CLI::IsMember({"11", "22", "12", "21", "total"}));

  std::string sweep_param = "eta";
  std::string sweep_grid;
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "observables over a parameter grid");
  add_common_flags(cmd_sweep, sweep_opt);
  cmd_sweep->add_option("--param", sweep_param, "swept parameter")
      ->check(CLI::IsMember({"eta", "eta1", "eta2", "theta", "n-atoms", "n_atoms"}));
  cmd_sweep->add_option("--grid", sweep_grid, "START:STOP:COUNT")->required();

  int figure_id = 0;
  CLI::App* cmd_fig = app.add_subcommand("figure", "data behind the published sweep plots");
  add_common_flags(cmd_fig, fig_opt);
  cmd_fig->add_option("--id", figure_id, "figure id")->required()->check(CLI::Range(1, 4));

  double perturbation = 0.0;
  CLI::App* cmd_verify = app.add_subcommand("verify", "run the consistency suite");
  add_common_flags(cmd_verify, verify_opt);
  cmd_verify
      ->add_option("--perturb-weight", perturbation,
                   "test hook: additively perturb one steady weight")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_pop->parsed()) {
      const auto cfg = build_config(pop_opt);
      const ladder::Populations p = ladder::populations(cfg);
      return with_output(pop_opt, [&](std::ostream& out) {
        emit_values(out, pop_opt.format,
                    {{"s11", p.s11}, {"s22", p.s22}, {"s33", p.s33}});
      });
    }

    if (cmd_int->parsed()) {
      const auto cfg = build_config(int_opt);
      const ladder::ObservableReport r = ladder::compute_report(cfg);
      return with_output(int_opt, [&](std::ostream& out) {
        emit_values(out, int_opt.format,
                    {{"g1_1", r.g1_1}, {"g1_2", r.g1_2}, {"g1_total", r.g1_total}});
      });
    }

    if (cmd_g2->parsed()) {
      const auto cfg = build_config(g2_opt);
      double value;
      if (g2_channel == "total") {
        value = ladder::observables_indistinguishable(cfg).g2_total;
      } else {
        value = ladder::g2_distinguishable(cfg, g2_channel[0] - '0',
                                           g2_channel[1] - '0');
      }
      return with_output(g2_opt, [&](std::ostream& out) {
        emit_values(out, g2_opt.format, {{"g2_" + g2_channel, value}});
      });
    }

    if (cmd_sweep->parsed()) {
      const auto v = split_numbers(sweep_grid, 3, "--grid");
      ladder::SweepSpec spec;
      spec.parameter = ladder::sweep_parameter_from_string(sweep_param);
      spec.grid = ladder::SweepGrid{v[0], v[1], static_cast<int>(std::lround(v[2]))};
      spec.base = build_config(sweep_opt);
      const auto rows = ladder::run_sweep(spec, sweep_opt.workers);
      return with_output(sweep_opt, [&](std::ostream& out) {
        if (sweep_opt.format == "json") {
          ladder::write_json(out, rows);
        } else {
          ladder::write_csv(out, rows);
        }
      });
    }

    if (cmd_fig->parsed()) {
      const auto dataset = ladder::emit_figure(figure_id, fig_opt.workers);
      return with_output(fig_opt, [&](std::ostream& out) {
        if (fig_opt.format == "json") {
          nlohmann::json j{{"figure_id", dataset.figure_id}};
          for (const auto& s : dataset.series) {
            j["series"].push_back({{"label", s.label}, {"x", s.x}, {"y", s.y}});
          }
          out << j.dump(2) << '\n';
        } else {
          ladder::write_figure_csv(out, dataset);
        }
      });
    }

    if (cmd_verify->parsed()) {
      ladder::VerifyOptions options;
      options.weight_perturbation = perturbation;
      const auto results = ladder::run_verification(options);
      const int rc = ladder::all_passed(results) ? kExitOk : kExitVerification;
      const int out_rc = with_output(verify_opt, [&](std::ostream& out) {
        for (const auto& r : results) {
          out << (r.pass ? "PASS" : "FAIL") << ' ' << r.name
              << " residual=" << r.residual << " tol=" << r.tolerance << '\n';
        }
      });
      return out_rc == kExitOk ? rc : out_rc;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitUsage;
}
