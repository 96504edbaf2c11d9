// Batch experiment driver: detection oracle, KL CDFs, trend sweeps and plots.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "covertbf/csv.hpp"
#include "covertbf/experiment.hpp"
#include "covertbf/plot.hpp"

using namespace covertbf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitAllInfeasible = 2;

struct RunFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  int jobs = 1;
  bool timing = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config_path, "experiment JSON")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "override the config seed");
  cmd->add_option("--out", f.out, "CSV path (default: config output_path, else stdout)");
  cmd->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--timing", f.timing, "record wall_time_ms (breaks byte-identical reruns)");
}

ExperimentConfig load(const RunFlags& f, ExperimentKind expected) {
  ExperimentConfig c = load_experiment_config(f.config_path);
  if (c.kind != expected) {
    throw InvalidInput(std::string("kind: config is '") + to_string(c.kind) + "', subcommand expects '" +
                       to_string(expected) + "'");
  }
  if (f.seed) {
    c.seed = *f.seed;
    c.scene.seed = *f.seed;
  }
  if (!f.out.empty()) c.output_path = f.out;
  return c;
}

void emit(const ExperimentConfig& c, const std::vector<ResultRow>& rows) {
  if (c.output_path.empty()) {
    write_rows(std::cout, rows);
  } else {
    write_rows(c.output_path, rows);
  }
}

int detect_oracle(const RunFlags& f) {
  const ExperimentConfig c = load(f, ExperimentKind::kDetectionOracle);
  emit(c, run_detect_oracle(c, {f.jobs, f.timing}));
  return kExitOk;
}

int cdf_kl(const RunFlags& f) {
  const ExperimentConfig c = load(f, ExperimentKind::kCdfKl);
  const CdfKlOutput out = run_cdf_kl(c, {f.jobs, f.timing});
  emit(c, out.rows);
  if (!c.output_path.empty()) write_violation_summary(summary_path(c.output_path), out.scenes);
  int violating = 0;
  for (const auto& s : out.scenes) violating += s.feasible && (s.n_violations > 0 || s.worst_violates);
  std::cerr << "cdf-kl: " << out.scenes.size() - out.n_infeasible << " feasible scenes, " << out.n_infeasible
            << " infeasible, " << violating << " with a covertness violation\n";
  return out.n_infeasible == static_cast<int>(out.scenes.size()) ? kExitAllInfeasible : kExitOk;
}

int sweep(const RunFlags& f) {
  const ExperimentConfig c = load(f, ExperimentKind::kSweep);
  const SweepOutput out = run_sweep(c, {f.jobs, f.timing});
  emit(c, out.rows);
  if (!c.output_path.empty()) write_sweep_summary(summary_path(c.output_path), out.points);
  std::cerr << "sweep over " << to_string(*c.sweep_axis) << ": " << out.rows.size() - out.n_infeasible
            << " feasible designs, " << out.n_infeasible << " infeasible\n";
  return out.n_infeasible == static_cast<int>(out.rows.size()) ? kExitAllInfeasible : kExitOk;
}

struct PlotFlags {
  std::string in, out, kind = "auto", config_path, title;
  std::optional<double> threshold;
  bool rate = false;
  bool kl10 = false;
};

int plot(const PlotFlags& f) {
  PlotSpec spec;
  std::optional<ExperimentConfig> c;
  if (!f.config_path.empty()) c = load_experiment_config(f.config_path);
  std::string kind = f.kind;
  if (kind == "auto") {
    if (!c) throw InvalidInput("--kind: give cdf|sweep|detection or pass --config");
    kind = c->kind == ExperimentKind::kCdfKl ? "cdf" : c->kind == ExperimentKind::kSweep ? "sweep" : "detection";
  }
  spec.rate = f.rate || (c && c->objective == DesignObjective::kRate);
  spec.kl10 = f.kl10 || (c && c->direction == KlDirection::kP1P0);
  if (kind == "cdf") {
    spec.kind = PlotKind::kCdf;
    spec.x_label = spec.kl10 ? "D(p1||p0)" : "D(p0||p1)";
    spec.y_label = "empirical CDF";
    spec.threshold = f.threshold;
    if (!spec.threshold && c) spec.threshold = 2.0 * c->epsilon * c->epsilon;
  } else if (kind == "sweep") {
    spec.kind = PlotKind::kSweep;
    spec.x_label = c && c->sweep_axis ? to_string(*c->sweep_axis) : "axis value";
    spec.y_label = spec.rate ? "Bob rate (bits/s/Hz)" : "radar MI (bits)";
  } else if (kind == "detection") {
    spec.kind = PlotKind::kDetection;
    spec.x_label = "lambda1 / lambda0";
    spec.y_label = "probability";
  } else {
    throw InvalidInput("--kind: expected auto|cdf|sweep|detection, got '" + kind + "'");
  }
  spec.title = f.title;
  render_plot(f.in, f.out, spec);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covert beamforming experiments"};
  app.require_subcommand(1);

  RunFlags oracle_flags, cdf_flags, sweep_flags;
  add_run_flags(app.add_subcommand("detect-oracle", "Monte Carlo check of the warden's error probabilities"),
                oracle_flags);
  add_run_flags(app.add_subcommand("cdf-kl", "achieved KL under sampled warden-CSI errors"), cdf_flags);
  add_run_flags(app.add_subcommand("sweep", "design metrics over a parameter grid"), sweep_flags);

  PlotFlags plot_flags;
  CLI::App* p = app.add_subcommand("plot", "render a result CSV as SVG");
  p->add_option("--in", plot_flags.in, "result CSV")->required()->check(CLI::ExistingFile);
  p->add_option("--out", plot_flags.out, "SVG path")->required();
  p->add_option("--config", plot_flags.config_path, "config that produced the CSV")->check(CLI::ExistingFile);
  p->add_option("--kind", plot_flags.kind, "auto|cdf|sweep|detection");
  p->add_option("--threshold", plot_flags.threshold, "KL threshold marker for CDF plots");
  p->add_option("--title", plot_flags.title, "plot title");
  p->add_flag("--rate", plot_flags.rate, "sweep plots: Bob rate instead of MI");
  p->add_flag("--kl10", plot_flags.kl10, "CDF plots: D(p1||p0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (app.got_subcommand("detect-oracle")) return detect_oracle(oracle_flags);
    if (app.got_subcommand("cdf-kl")) return cdf_kl(cdf_flags);
    if (app.got_subcommand("sweep")) return sweep(sweep_flags);
    return plot(plot_flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
