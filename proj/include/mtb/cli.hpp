#pragma once
// Command implementations behind the `mtb` binary: simulate | bound | oracle.
// Kept in a header so tests can drive the exact production code path
// in-process. Exit codes: 0 success, 1 runtime failure, 2 bad input/config.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bound_check.hpp"
#include "bounds.hpp"
#include "config.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "sim.hpp"
#include "svg.hpp"

namespace mtb {

inline void do_oracle(const ExperimentConfig& cfg, std::ostream& out) {
  const OptimalArm opt = optimal_arm(cfg.instance, cfg.objective);
  out << "objective: " << to_string(cfg.objective) << "\n";
  out << "best arm: " << opt.index << "\n";
  if (opt.tie) out << "note: another arm ties within 1e-12; smaller index was chosen\n";
  out << "gaps:";
  for (const double g : opt.gaps) out << " " << format_double(g);
  out << "\n";
}

inline void do_bound(const ExperimentConfig& cfg, bool verify, int resolution, const std::string& out_path,
                     std::ostream& out) {
  const BoundResult bound = bound_for(cfg.instance, cfg.objective);
  out << "objective: " << to_string(bound.objective) << "\n";
  out << "constant: " << format_double(bound.constant) << "  (regret grows at least like constant * ln t)\n";
  for (const BoundTerm& t : bound.terms)
    out << "term: arm " << t.arm << ", coefficient " << format_double(t.coefficient) << ", target "
        << format_double(t.target) << "\n";
  out << bound_csv(bound);
  if (verify) {
    const BoundCheckReport report = verify_bound(cfg.instance, cfg.objective, resolution);
    out << "numerical check (resolution " << resolution << "): optimum " << format_double(report.numerical)
        << ", closed form " << format_double(report.closed_form) << ", rel diff "
        << format_double(report.rel_diff * 100.0) << "%\n";
    out << "constraint rows: " << report.rows << " across " << report.families.size() << " families\n";
    for (const ConstraintFamily& f : report.families)
      out << "family: best arm shifted to " << f.shifted_to << ", arms " << f.first_arm << ".."
          << f.first_arm + f.depth - 1 << ", rows " << f.rows << "\n";
    if (report.degenerate)
      out << "note: no confusable alternative exists here, the numerical optimum is trivially 0\n";
  }
  if (!out_path.empty()) {
    write_file(out_path + ".bound.csv", bound_csv(bound));
    out << "wrote " << out_path << ".bound.csv\n";
  }
}

inline void do_simulate(const ExperimentConfig& cfg, int workers, std::ostream& out) {
  const PolicyKind kind = resolved_policy(cfg);
  const OptimalArm opt = optimal_arm(cfg.instance, cfg.objective);

  MonteCarloSpec spec;
  spec.instance = cfg.instance;
  spec.objective = cfg.objective;
  spec.policy = kind;
  spec.schedule = ExplorationSchedule{cfg.c};
  spec.horizon = cfg.horizon;
  spec.trials = cfg.trials;
  spec.seed = cfg.seed;
  spec.checkpoint_count = cfg.checkpoints;
  spec.workers = workers;
  const AggregateResult agg = run_monte_carlo(spec);

  const std::string title = to_string(cfg.objective) + " objective, " + to_string(kind) + " sampler, " +
                            std::to_string(cfg.instance.means.size()) + " arms";
  write_file(cfg.out + ".csv", regret_csv(agg));
  write_file(cfg.out + ".manifest.json", result_manifest(cfg, opt, agg).dump(2) + "\n");
  write_file(cfg.out + ".svg", regret_svg(agg, title));

  out << "objective: " << to_string(cfg.objective) << "  ->  best arm " << opt.index << "\n";
  out << "policy: " << to_string(kind) << " sampler, c = " << format_double(cfg.c) << "\n";
  out << "bound constant: " << format_double(agg.bound.constant) << "\n";
  out << "trials: " << cfg.trials << ", horizon: " << cfg.horizon << ", seed: " << cfg.seed << "\n";
  out << "final mean regret at t = " << agg.rounds.back() << ": " << format_double(agg.mean_regret.back())
      << "\n";
  out << "late-window best-arm fraction: " << format_double(agg.best_arm_fraction) << "\n";
  out << "wrote " << cfg.out << ".csv, " << cfg.out << ".manifest.json, " << cfg.out << ".svg\n";
}

inline int run_cli(int argc, const char* const* argv) {
  CLI::App app{"monotone threshold bandits: regret simulation, oracles and rate constants"};
  app.require_subcommand(1);

  std::string config_path, preset, out_override;
  std::int64_t trials = 0, horizon = 0;
  std::uint64_t seed = 0;
  int workers = 0, resolution = 1000;
  bool verify = false;

  CLI::Option *trials_opt = nullptr, *horizon_opt = nullptr, *seed_opt = nullptr, *out_opt = nullptr;
  const auto add_source = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "experiment config JSON file (or a result manifest)");
    sub->add_option("--preset", preset, "built-in config: figure1a, figure1b, figure1c, figure1d");
  };

  CLI::App* sim = app.add_subcommand("simulate", "run the Monte-Carlo regret experiment");
  add_source(sim);
  trials_opt = sim->add_option("--trials", trials, "override trial count");
  horizon_opt = sim->add_option("--horizon", horizon, "override horizon");
  seed_opt = sim->add_option("--seed", seed, "override experiment seed");
  out_opt = sim->add_option("--out", out_override, "override output path prefix");
  sim->add_option("--workers", workers, "worker threads (0 = one per hardware thread)");

  CLI::App* bound = app.add_subcommand("bound", "print the regret rate constant");
  add_source(bound);
  bound->add_flag("--verify", verify, "cross-check the constant against the discretized covering program");
  bound->add_option("--resolution", resolution, "verification grid resolution (default 1000)");
  bound->add_option("--out", out_override, "also write <prefix>.bound.csv");

  CLI::App* oracle = app.add_subcommand("oracle", "print the objective's best arm and gap vector");
  add_source(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty() && !preset.empty())
      throw std::invalid_argument("give either a config file or --preset, not both");
    if (config_path.empty() && preset.empty())
      throw std::invalid_argument("need a config file argument or --preset");
    ExperimentConfig cfg = preset.empty() ? load_config(config_path) : preset_config(preset);
    if (trials_opt && trials_opt->count()) {
      if (trials < 1) throw std::invalid_argument("--trials must be positive");
      cfg.trials = static_cast<int>(trials);
    }
    if (horizon_opt && horizon_opt->count()) {
      if (horizon < static_cast<std::int64_t>(cfg.instance.means.size()))
        throw std::invalid_argument("--horizon must cover at least one sweep of the arms");
      cfg.horizon = horizon;
    }
    if (seed_opt && seed_opt->count()) cfg.seed = seed;
    if (out_opt && out_opt->count()) cfg.out = out_override;

    if (sim->parsed()) do_simulate(cfg, workers, std::cout);
    else if (bound->parsed()) do_bound(cfg, verify, resolution, bound->count("--out") ? out_override : "", std::cout);
    else do_oracle(cfg, std::cout);
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mtb
