#include "confgate/harness/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "confgate/core/rng.hpp"
#include "confgate/defense/gate.hpp"
#include "confgate/eval/pareto.hpp"
#include "confgate/harness/blobs.hpp"
#include "confgate/harness/config.hpp"
#include "confgate/harness/grid.hpp"
#include "confgate/harness/report.hpp"
#include "confgate/model/calibrate.hpp"
#include "confgate/model/mlp.hpp"

namespace confgate::harness {

namespace {

// Invocation problems we detect ourselves (as opposed to CLI11 parse
// errors); reported like config errors with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOpts {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool out_set = false;
};

ExperimentConfig resolve_config(const GlobalOpts& g) {
  if (g.config.empty())
    throw UsageError("this command needs --config <file>");
  ExperimentConfig cfg = load_config(g.config);
  if (g.seed_set) cfg.master_seed = g.seed;
  if (g.out_set) cfg.out_dir = g.out;
  return cfg;
}

std::string num(double v) { return nlohmann::json(v).dump(); }

int cmd_gen_data(const ExperimentConfig& cfg) {
  DataSplits splits = load_or_generate(cfg);
  std::filesystem::path dir = std::filesystem::path(cfg.out_dir) / "data";
  save_splits(splits, dir);
  std::cout << "wrote " << dir.string() << " (train=" << splits.train.size()
            << " val=" << splits.val.size() << " test=" << splits.test.size()
            << ", classes=" << splits.train.n_classes << ")\n"
            << "reuse with dataset.kind = \"tensors\", dataset.dir = \""
            << dir.string() << "\"\n";
  return 0;
}

int cmd_train(const ExperimentConfig& cfg) {
  DataSplits splits = load_or_generate(cfg);
  auto [net, scaler] = train_model(cfg, splits);
  std::filesystem::path path =
      std::filesystem::path(cfg.out_dir) / "model.json";
  std::filesystem::create_directories(cfg.out_dir);
  model::save_checkpoint(path, net, scaler.temperature);
  std::cout << "checkpoint " << path.string() << "\n"
            << "val accuracy " << num(model::accuracy(net, splits.val))
            << ", test accuracy " << num(model::accuracy(net, splits.test))
            << ", temperature " << num(scaler.temperature) << "\n";
  return 0;
}

int cmd_calibrate(const ExperimentConfig& cfg) {
  if (cfg.model.checkpoint.empty())
    throw UsageError("calibrate needs model.checkpoint in the config");
  auto [net, old_temp] = model::load_checkpoint(cfg.model.checkpoint);
  DataSplits splits = load_or_generate(cfg);
  auto logits = model::collect_logits(net, splits.val);
  model::CalibrationConfig cal;
  double ece_raw = model::expected_calibration_error(logits, splits.val.ys,
                                                     1.0, cal.bins);
  auto scaler = model::calibrate_temperature(logits, splits.val.ys, cal);
  double ece_cal = model::expected_calibration_error(
      logits, splits.val.ys, scaler.temperature, cal.bins);
  model::save_checkpoint(cfg.model.checkpoint, net, scaler.temperature);
  std::cout << "temperature " << num(old_temp) << " -> "
            << num(scaler.temperature) << "\n"
            << "val ECE " << num(ece_raw) << " at T=1, " << num(ece_cal)
            << " calibrated\n";
  return 0;
}

int cmd_attack(const ExperimentConfig& cfg, double nu, double tau,
               std::size_t repeats) {
  if (repeats == 0) throw UsageError("--repeats must be at least 1");
  defense::GateConfig{tau}.validate();

  PreparedExperiment prep = prepare_experiment(cfg);
  defense::DefenseParam{cfg.defense_kind, nu}.validate(
      prep.splits.test.xs.front().shape);
  std::filesystem::create_directories(cfg.out_dir);
  std::cout << "epsilon " << num(prep.epsilon) << ", undefended CA "
            << num(prep.undefended_ca) << "\n";

  double sum_asr = 0.0;
  for (std::size_t r = 0; r < repeats; ++r) {
    // Repeats reseed the whole cell so every sample gets a fresh attack
    // stream; repeat 0 is the exact cell the grid would run.
    ExperimentConfig rcfg = cfg;
    if (r > 0) rcfg.master_seed = core::mix_seed(cfg.master_seed, r);
    std::string traces;
    eval::ExperimentPoint p = run_cell(rcfg, prep, nu, tau, &traces);
    std::string name =
        repeats == 1 ? "attack_trace.jsonl"
                     : "attack_trace_r" + std::to_string(r) + ".jsonl";
    std::filesystem::path path = std::filesystem::path(cfg.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << traces;
    std::cout << format_ca_ra(p.ca, p.ra) << " (asr " << num(p.asr)
              << ", mean queries " << num(p.mean_queries) << ", trace "
              << path.string() << ")\n";
    sum_asr += p.asr;
  }
  if (repeats > 1) {
    double mean_asr = sum_asr / static_cast<double>(repeats);
    std::cout << "mean over " << repeats << " repeats: ASR " << num(mean_asr)
              << " / RA " << num(1.0 - mean_asr) << "\n";
  }
  return 0;
}

int cmd_grid(const ExperimentConfig& cfg) {
  GridResult result = run_grid(cfg, cfg.out_dir);
  std::cout << "undefended CA " << num(result.undefended_ca) << ", epsilon "
            << num(result.epsilon) << "\n"
            << result.points.size() << " cells -> "
            << result.csv_path.string() << "\n"
            << "frontier -> " << result.frontier_path.string() << "\n"
            << "manifest -> " << result.manifest_path.string() << "\n";
  for (const std::string& f : result.failures)
    std::cerr << "warning: " << f << "\n";
  if (result.points.empty()) {
    std::cerr << "error: every grid cell failed\n";
    return 3;
  }
  return 0;
}

int cmd_frontier(const std::string& csv, bool emit_plot_data) {
  auto points = read_results_csv_file(csv);
  auto frontier = eval::pareto_frontier(points);
  if (emit_plot_data) {
    std::vector<bool> on(points.size(), false);
    for (std::size_t i : frontier) on[i] = true;
    std::cout << "ca,ra,on_frontier\n";
    for (std::size_t i = 0; i < points.size(); ++i)
      std::cout << num(points[i].ca) << ',' << num(points[i].ra) << ','
                << (on[i] ? 1 : 0) << "\n";
    return 0;
  }
  for (std::size_t i : frontier) {
    const eval::ExperimentPoint& p = points[i];
    std::cout << format_ca_ra(p.ca, p.ra) << " (attack=" << to_string(p.attack)
              << ", defense=" << to_string(p.defense.kind)
              << ", nu=" << num(p.defense.nu) << ", tau=" << num(p.tau)
              << ")\n";
  }
  return 0;
}

int cmd_report(const std::string& csv) {
  RenderedTable table = render_table(read_results_csv_file(csv));
  std::cout << table.text;
  for (const std::string& w : table.warnings)
    std::cerr << "warning: " << w << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Evaluation harness for confidence-gated classification "
               "defenses against decision-based black-box attacks"};
  app.name("confgate");
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config, "experiment config (TOML)");
  app.add_option("--seed", g.seed, "master seed (overrides the config)")
      ->each([&g](const std::string&) { g.seed_set = true; });
  app.add_option("--out", g.out, "output directory (overrides the config)")
      ->each([&g](const std::string&) { g.out_set = true; });

  auto* gen = app.add_subcommand(
      "gen-data", "Generate the configured dataset and save its splits");
  auto* train = app.add_subcommand(
      "train", "Train and calibrate the model, save a checkpoint");
  auto* calibrate = app.add_subcommand(
      "calibrate", "Re-fit the temperature of a checkpointed model");

  auto* attack =
      app.add_subcommand("attack", "Attack a single (nu, tau) cell");
  double nu = 0.0;
  double tau = 0.0;
  std::size_t repeats = 1;
  attack->add_option("--nu", nu, "defense strength")->required();
  attack->add_option("--tau", tau, "gate threshold")->required();
  attack->add_option("--repeats", repeats,
                     "attack runs per sample, averaged into ASR");

  auto* grid = app.add_subcommand(
      "grid", "Run the full (nu, tau) grid and write CSV/frontier/manifest");

  auto* frontier = app.add_subcommand(
      "frontier", "Print the Pareto frontier of a results CSV");
  std::string frontier_csv;
  bool emit_plot_data = false;
  frontier->add_option("csv", frontier_csv, "results CSV")->required();
  frontier->add_flag("--emit-plot-data", emit_plot_data,
                     "dump ca/ra series for external plotting");

  auto* report = app.add_subcommand(
      "report", "Render a results CSV as one table per attack/defense");
  std::string report_csv;
  report->add_option("csv", report_csv, "results CSV")->required();

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success))
      return app.exit(e);
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  try {
    try {
      if (*gen) return cmd_gen_data(resolve_config(g));
      if (*train) return cmd_train(resolve_config(g));
      if (*calibrate) return cmd_calibrate(resolve_config(g));
      if (*attack) return cmd_attack(resolve_config(g), nu, tau, repeats);
      if (*grid) return cmd_grid(resolve_config(g));
      if (*frontier) return cmd_frontier(frontier_csv, emit_plot_data);
      if (*report) return cmd_report(report_csv);
    } catch (const UsageError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    } catch (const TomlError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    } catch (const std::invalid_argument& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace confgate::harness
