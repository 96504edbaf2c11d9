#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "covertbf/covert_metrics.hpp"
#include "covertbf/perfect_designs.hpp"
#include "covertbf/robust_designs.hpp"
#include "covertbf/scene.hpp"

namespace covertbf {

enum class ExperimentKind { kDetectionOracle, kCdfKl, kSweep };
enum class DesignKind { kSdr, kZf, kRobust, kNonRobust };
enum class DesignObjective { kMi, kRate };
enum class SweepAxis { kPTotalDbm, kAntennas, kEpsilon, kUpsilon, kBeta, kGamma };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kSweep;
  SceneConfig scene;
  DesignKind design = DesignKind::kSdr;
  DesignObjective objective = DesignObjective::kMi;
  double epsilon = 0.05;
  KlDirection direction = KlDirection::kP0P1;
  /// Bob SINR floor (linear) for MI designs.
  double beta = 1.0;
  /// Radar MI floor in bits for rate designs.
  double gamma = 1.0;
  std::optional<SweepAxis> sweep_axis;
  std::vector<double> grid;
  int n_scenes = 100;
  int n_error_samples = 10000;
  int n_detection_samples = 1000000;
  /// Detection oracle grid: every (lambda0, lambda1) pair with lambda1 >= lambda0.
  std::vector<double> lambda0_grid{1.0};
  std::vector<double> lambda1_grid{2.0};
  double zeta = 1e-8;
  int n_trials = 500;
  std::uint64_t seed = 42;
  std::string output_path;

  /// Throws InvalidInput naming the offending field.
  void validate() const;
};

/// Parses the JSON experiment format; unknown keys are rejected. Errors name
/// the field.
ExperimentConfig parse_experiment_config(std::string_view json_text);
ExperimentConfig load_experiment_config(const std::string& path);

const char* to_string(ExperimentKind kind);
const char* to_string(DesignKind kind);
const char* to_string(SweepAxis axis);

struct ResultRow {
  std::int64_t scene_id = 0;
  double axis_value = 0.0;
  double mi_bits = 0.0;
  double rate_bits = 0.0;
  double kl01 = 0.0;
  double kl10 = 0.0;
  double p_fa = 0.0;
  double p_md = 0.0;
  double xi = 0.0;
  double worst_kl = 0.0;
  bool feasible = false;
  double wall_time_ms = 0.0;
};

struct RunOptions {
  int jobs = 1;
  /// Off by default so that reruns are byte-identical.
  bool record_timing = false;
};

/// Empirical (P_FA, P_MD) of the optimal-threshold detector on exponential
/// draws of |y_W|^2 under each hypothesis.
std::pair<double, double> empirical_detection_sim(const LambdaPair& lp, int n_samples, Rng& rng);

/// One row per grid pair: analytic KLs, empirical p_fa / p_md / xi.
/// scene_id indexes the pair, axis_value is lambda1 / lambda0 and worst_kl is
/// the larger divergence.
std::vector<ResultRow> run_detect_oracle(const ExperimentConfig& config, const RunOptions& options = {});

struct SceneViolation {
  std::int64_t scene_id = 0;
  bool feasible = false;
  int n_samples = 0;
  int n_violations = 0;
  /// Local-ascent worst case over the uncertainty set.
  double worst_kl = 0.0;
  bool worst_violates = false;
  double violation_fraction() const { return n_samples > 0 ? double(n_violations) / n_samples : 0.0; }
};

struct CdfKlOutput {
  /// Per error sample; axis_value is the sample index.
  std::vector<ResultRow> rows;
  std::vector<SceneViolation> scenes;
  int n_infeasible = 0;
};

CdfKlOutput run_cdf_kl(const ExperimentConfig& config, const RunOptions& options = {});

struct SweepPoint {
  double axis_value = 0.0;
  int n_feasible = 0;
  double mean_mi = 0.0, std_mi = 0.0;
  double mean_rate = 0.0, std_rate = 0.0;
  double mean_worst_kl = 0.0;
};

struct SweepOutput {
  std::vector<ResultRow> rows;
  std::vector<SweepPoint> points;
  int n_infeasible = 0;
};

SweepOutput run_sweep(const ExperimentConfig& config, const RunOptions& options = {});

/// Mean/std per axis value over feasible rows.
std::vector<SweepPoint> summarize_sweep(const std::vector<ResultRow>& rows);

enum class Trend { kNondecreasing, kNonincreasing };

/// True when consecutive means move in the stated direction up to one pooled
/// standard error of the difference.
bool trend_holds(const std::vector<SweepPoint>& points, Trend trend, bool use_rate);

/// The config with one sweep coordinate overridden.
ExperimentConfig apply_axis(const ExperimentConfig& config, SweepAxis axis, double value);

/// The covertness spec a robust design would use on `scene`; without a CSI
/// error (or for non_robust designs) it is the nominal one.
RobustCovertSpec covert_spec(const ExperimentConfig& config, const Scene& scene);

struct DesignOutcome {
  std::optional<BeamformerPair> pair;
  ResultRow row;
};

/// Runs the configured design. Feasible rows carry metrics at the true warden
/// channel; worst_kl is the directional worst case over the configured
/// uncertainty set (or the KL at the true channel without one). Design
/// infeasibility and extraction failure give an infeasible row.
DesignOutcome evaluate_design(const ExperimentConfig& config, const Scene& scene, bool record_timing = false);

/// Scene i of an experiment; identical for every grid point that does not
/// change the antenna count.
Scene experiment_scene(const SceneConfig& scene, std::uint64_t seed, std::int64_t index);

}  // namespace covertbf
