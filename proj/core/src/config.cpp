#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "covertbf/experiment.hpp"
#include "json.hpp"

namespace covertbf {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) { throw InvalidInput(field + ": " + what); }

double number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "must be finite");
  return v;
}

int count(const json& j, const std::string& field) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) fail(field, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < 1 || v > std::numeric_limits<int>::max()) fail(field, "must be a positive integer");
  return static_cast<int>(v);
}

std::string text(const json& j, const std::string& field) {
  if (!j.is_string()) fail(field, "expected a string");
  return j.get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a nonempty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

cdouble complex_entry(const json& j, const std::string& field) {
  if (j.is_number()) return {number(j, field), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], field + ".re"), number(j[1], field + ".im")};
  fail(field, "expected a number or [re, im]");
}

CMatrix shape_matrix(const json& j, int n, const std::string& field) {
  if (j.is_string()) {
    if (j.get<std::string>() != "identity") fail(field, "only \"identity\" is accepted as a name");
    return CMatrix::Identity(n, n);
  }
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    fail(field, "expected \"identity\" or an n_antennas square matrix");
  CMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const auto row_field = field + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != n) fail(row_field, "row length must equal n_antennas");
    for (int c = 0; c < n; ++c) m(r, c) = complex_entry(j[r][c], row_field + "[" + std::to_string(c) + "]");
  }
  return m;
}

template <typename E>
E pick(const json& j, const std::string& field, std::initializer_list<std::pair<const char*, E>> table) {
  const std::string v = text(j, field);
  for (const auto& [name, value] : table) {
    if (v == name) return value;
  }
  std::string allowed;
  for (const auto& [name, value] : table) allowed += std::string(allowed.empty() ? "" : "|") + name;
  fail(field, "expected one of " + allowed + ", got \"" + v + "\"");
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) fail(where + key, "unknown key");
  }
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kDetectionOracle:
      return "detection_oracle";
    case ExperimentKind::kCdfKl:
      return "cdf_kl";
    case ExperimentKind::kSweep:
      return "sweep";
  }
  return "?";
}

const char* to_string(DesignKind kind) {
  switch (kind) {
    case DesignKind::kSdr:
      return "sdr";
    case DesignKind::kZf:
      return "zf";
    case DesignKind::kRobust:
      return "robust";
    case DesignKind::kNonRobust:
      return "non_robust";
  }
  return "?";
}

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kPTotalDbm:
      return "p_total_dbm";
    case SweepAxis::kAntennas:
      return "n_antennas";
    case SweepAxis::kEpsilon:
      return "epsilon";
    case SweepAxis::kUpsilon:
      return "upsilon";
    case SweepAxis::kBeta:
      return "beta";
    case SweepAxis::kGamma:
      return "gamma";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (scene.n_antennas < 2) fail("n_antennas", "must be >= 2");
  if (n_scenes < 1) fail("n_scenes", "must be >= 1");
  if (n_error_samples < 1) fail("n_error_samples", "must be >= 1");
  if (n_detection_samples < 1) fail("n_detection_samples", "must be >= 1");
  if (n_trials < 1) fail("n_trials", "must be >= 1");
  if (!(epsilon > 0.0)) fail("epsilon", "must be positive");
  if (!(beta >= 0.0)) fail("beta", "must be nonnegative");
  if (!(gamma >= 0.0)) fail("gamma", "must be nonnegative");
  if (!(zeta > 0.0 && zeta < 1.0)) fail("zeta", "must lie in (0, 1)");
  if (design == DesignKind::kZf && objective == DesignObjective::kRate) {
    fail("objective", "the zf design supports \"mi\" only");
  }
  switch (kind) {
    case ExperimentKind::kDetectionOracle:
      for (double l : lambda0_grid) {
        if (!(l > 0.0)) fail("lambda0_grid", "entries must be positive");
      }
      for (double l : lambda1_grid) {
        if (!(l > 0.0)) fail("lambda1_grid", "entries must be positive");
      }
      if (lambda0_grid.empty() || lambda1_grid.empty()) fail("lambda0_grid", "grids must be nonempty");
      break;
    case ExperimentKind::kCdfKl:
      if (design != DesignKind::kRobust && design != DesignKind::kNonRobust) {
        fail("design", "cdf_kl needs \"robust\" or \"non_robust\"");
      }
      if (!scene.csi_error) fail("csi_error", "required for cdf_kl");
      break;
    case ExperimentKind::kSweep:
      if (!sweep_axis) fail("sweep_axis", "required for sweep");
      if (grid.empty()) fail("grid", "must be nonempty");
      if (!std::is_sorted(grid.begin(), grid.end())) fail("grid", "must be sorted ascending");
      if (std::adjacent_find(grid.begin(), grid.end()) != grid.end()) fail("grid", "values must be distinct");
      if (*sweep_axis == SweepAxis::kAntennas) {
        for (double v : grid) {
          if (v < 2.0 || v != std::floor(v)) fail("grid", "antenna counts must be integers >= 2");
        }
      }
      if (*sweep_axis == SweepAxis::kUpsilon) {
        if (!scene.csi_error) fail("csi_error", "an upsilon sweep needs a c_shape");
        for (double v : grid) {
          if (!(v > 0.0)) fail("grid", "upsilon values must be positive");
        }
      }
      if (*sweep_axis == SweepAxis::kEpsilon) {
        for (double v : grid) {
          if (!(v > 0.0)) fail("grid", "epsilon values must be positive");
        }
      }
      break;
  }
}

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("config: malformed JSON (") + e.what() + ")");
  }
  if (!j.is_object()) fail("config", "top level must be an object");
  check_keys(j,
             {"kind",
              "n_antennas",
              "theta_deg",
              "p_total_dbm",
              "sigma_r_dbm",
              "sigma_b_dbm",
              "sigma_w_dbm",
              "alpha",
              "channel_var_bob",
              "channel_var_warden",
              "seed",
              "csi_error",
              "design",
              "objective",
              "epsilon",
              "direction",
              "beta",
              "gamma",
              "sweep_axis",
              "grid",
              "n_scenes",
              "n_error_samples",
              "n_detection_samples",
              "lambda0_grid",
              "lambda1_grid",
              "zeta",
              "n_trials",
              "output_path"},
             "");

  ExperimentConfig c;
  if (!j.contains("kind")) fail("kind", "missing");
  c.kind = pick<ExperimentKind>(j["kind"], "kind",
                                {{"detection_oracle", ExperimentKind::kDetectionOracle},
                                 {"cdf_kl", ExperimentKind::kCdfKl},
                                 {"sweep", ExperimentKind::kSweep}});
  SceneConfig& s = c.scene;
  if (j.contains("n_antennas")) s.n_antennas = count(j["n_antennas"], "n_antennas");
  if (j.contains("theta_deg")) s.theta_deg = number(j["theta_deg"], "theta_deg");
  if (j.contains("p_total_dbm")) s.p_total_dbm = number(j["p_total_dbm"], "p_total_dbm");
  if (j.contains("sigma_r_dbm")) s.sigma_r_dbm = number(j["sigma_r_dbm"], "sigma_r_dbm");
  if (j.contains("sigma_b_dbm")) s.sigma_b_dbm = number(j["sigma_b_dbm"], "sigma_b_dbm");
  if (j.contains("sigma_w_dbm")) s.sigma_w_dbm = number(j["sigma_w_dbm"], "sigma_w_dbm");
  if (j.contains("alpha")) s.alpha = number(j["alpha"], "alpha");
  if (j.contains("channel_var_bob")) s.channel_var_bob = number(j["channel_var_bob"], "channel_var_bob");
  if (j.contains("channel_var_warden")) s.channel_var_warden = number(j["channel_var_warden"], "channel_var_warden");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<std::int64_t>() >= 0)) {
      fail("seed", "expected a nonnegative integer");
    }
    c.seed = j["seed"].get<std::uint64_t>();
  }
  s.seed = c.seed;
  if (j.contains("csi_error")) {
    const json& e = j["csi_error"];
    if (!e.is_object()) fail("csi_error", "expected an object");
    check_keys(e, {"c_shape", "upsilon"}, "csi_error.");
    if (!e.contains("upsilon")) fail("csi_error.upsilon", "missing");
    const double upsilon = number(e["upsilon"], "csi_error.upsilon");
    const CMatrix shape = e.contains("c_shape") ? shape_matrix(e["c_shape"], s.n_antennas, "csi_error.c_shape")
                                                : CMatrix::Identity(s.n_antennas, s.n_antennas);
    try {
      s.csi_error = EllipsoidError(shape, upsilon);
    } catch (const InvalidInput& ex) {
      fail("csi_error", ex.what());
    }
  }
  if (j.contains("design")) {
    c.design = pick<DesignKind>(j["design"], "design",
                                {{"sdr", DesignKind::kSdr},
                                 {"zf", DesignKind::kZf},
                                 {"robust", DesignKind::kRobust},
                                 {"non_robust", DesignKind::kNonRobust}});
  }
  if (j.contains("objective")) {
    c.objective = pick<DesignObjective>(j["objective"], "objective",
                                        {{"mi", DesignObjective::kMi}, {"rate", DesignObjective::kRate}});
  }
  if (j.contains("epsilon")) c.epsilon = number(j["epsilon"], "epsilon");
  if (j.contains("direction")) {
    c.direction =
        pick<KlDirection>(j["direction"], "direction", {{"kl01", KlDirection::kP0P1}, {"kl10", KlDirection::kP1P0}});
  }
  if (j.contains("beta")) c.beta = number(j["beta"], "beta");
  if (j.contains("gamma")) c.gamma = number(j["gamma"], "gamma");
  if (j.contains("sweep_axis")) {
    c.sweep_axis = pick<SweepAxis>(j["sweep_axis"], "sweep_axis",
                                   {{"p_total_dbm", SweepAxis::kPTotalDbm},
                                    {"n_antennas", SweepAxis::kAntennas},
                                    {"epsilon", SweepAxis::kEpsilon},
                                    {"upsilon", SweepAxis::kUpsilon},
                                    {"beta", SweepAxis::kBeta},
                                    {"gamma", SweepAxis::kGamma}});
  }
  if (j.contains("grid")) c.grid = numbers(j["grid"], "grid");
  if (j.contains("n_scenes")) c.n_scenes = count(j["n_scenes"], "n_scenes");
  if (j.contains("n_error_samples")) c.n_error_samples = count(j["n_error_samples"], "n_error_samples");
  if (j.contains("n_detection_samples")) c.n_detection_samples = count(j["n_detection_samples"], "n_detection_samples");
  if (j.contains("lambda0_grid")) c.lambda0_grid = numbers(j["lambda0_grid"], "lambda0_grid");
  if (j.contains("lambda1_grid")) c.lambda1_grid = numbers(j["lambda1_grid"], "lambda1_grid");
  if (j.contains("zeta")) c.zeta = number(j["zeta"], "zeta");
  if (j.contains("n_trials")) c.n_trials = count(j["n_trials"], "n_trials");
  if (j.contains("output_path")) c.output_path = text(j["output_path"], "output_path");
  c.validate();
  return c;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

}  // namespace covertbf
