#include "covertbf/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

namespace covertbf {

namespace {

// Runs fn(i) for i in [0, n) on `jobs` threads. If tasks throw, the exception
// of the lowest index is rethrown, so failures do not depend on scheduling.
void parallel_for(std::int64_t n, int jobs, const std::function<void(std::int64_t)>& fn) {
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(std::min<std::int64_t>(n, 1 << 16))));
  if (jobs == 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::mutex mu;
  std::int64_t failed_at = n;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

// Same spec as covert_spec but keeping the uncertainty set; worst cases are
// always measured against it.
RobustCovertSpec uncertain_spec(const ExperimentConfig& config, const Scene& scene) {
  return RobustCovertSpec{config.epsilon, config.direction, config.scene.csi_error, scene.h_warden_est};
}

void fill_detection(ResultRow& row, const LambdaPair& lp) {
  const DetectionReport d = detection_error_probs(lp);
  row.kl01 = kl_p0_p1(lp);
  row.kl10 = kl_p1_p0(lp);
  row.p_fa = d.p_fa;
  row.p_md = d.p_md;
  row.xi = d.xi;
}

double worst_case_directional(const BeamformerPair& pair, const RobustCovertSpec& spec, double sigma2_w) {
  return directional_kl(spec.direction, {1.0, worst_case_ratio(pair, spec, sigma2_w).first});
}

}  // namespace

std::pair<double, double> empirical_detection_sim(const LambdaPair& lp, int n_samples, Rng& rng) {
  if (n_samples < 1) throw InvalidInput("n_samples: must be >= 1");
  lp.validate();
  const double phi = optimal_threshold(lp);
  std::exponential_distribution<double> h0(1.0 / lp.lambda0), h1(1.0 / lp.lambda1);
  std::int64_t false_alarms = 0, misses = 0;
  for (int i = 0; i < n_samples; ++i) false_alarms += h0(rng) > phi;
  for (int i = 0; i < n_samples; ++i) misses += h1(rng) <= phi;
  return {double(false_alarms) / n_samples, double(misses) / n_samples};
}

std::vector<ResultRow> run_detect_oracle(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  std::vector<LambdaPair> pairs;
  for (double l0 : config.lambda0_grid) {
    for (double l1 : config.lambda1_grid) {
      if (l1 >= l0) pairs.push_back({l0, l1});
    }
  }
  if (pairs.empty()) throw InvalidInput("lambda1_grid: no pair with lambda1 >= lambda0");
  std::vector<ResultRow> rows(pairs.size());
  const RngStreams streams(config.seed);
  parallel_for(static_cast<std::int64_t>(pairs.size()), options.jobs, [&](std::int64_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng = streams.make(Stream::kDetection, static_cast<std::uint64_t>(i));
    const auto [p_fa, p_md] = empirical_detection_sim(pairs[i], config.n_detection_samples, rng);
    ResultRow& r = rows[i];
    r.scene_id = i;
    r.axis_value = pairs[i].lambda1 / pairs[i].lambda0;
    r.kl01 = kl_p0_p1(pairs[i]);
    r.kl10 = kl_p1_p0(pairs[i]);
    r.p_fa = p_fa;
    r.p_md = p_md;
    r.xi = p_fa + p_md;
    r.worst_kl = std::max(r.kl01, r.kl10);
    r.feasible = true;
    if (options.record_timing) {
      r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
  });
  return rows;
}

Scene experiment_scene(const SceneConfig& scene, std::uint64_t seed, std::int64_t index) {
  Rng rng = RngStreams(seed).make(Stream::kChannels, static_cast<std::uint64_t>(index));
  return scene_from_config(scene, rng);
}

ExperimentConfig apply_axis(const ExperimentConfig& config, SweepAxis axis, double value) {
  ExperimentConfig c = config;
  switch (axis) {
    case SweepAxis::kPTotalDbm:
      c.scene.p_total_dbm = value;
      break;
    case SweepAxis::kAntennas: {
      const int n = static_cast<int>(value);
      if (c.scene.csi_error) {
        const CMatrix& shape = c.scene.csi_error->shape();
        if (shape != CMatrix::Identity(shape.rows(), shape.cols())) {
          throw InvalidInput("csi_error.c_shape: an antenna sweep needs the identity shape");
        }
        c.scene.csi_error = EllipsoidError::identity(n, c.scene.csi_error->upsilon());
      }
      c.scene.n_antennas = n;
      break;
    }
    case SweepAxis::kEpsilon:
      c.epsilon = value;
      break;
    case SweepAxis::kUpsilon:
      if (!c.scene.csi_error) throw InvalidInput("csi_error: an upsilon sweep needs a c_shape");
      c.scene.csi_error = EllipsoidError(c.scene.csi_error->shape(), value);
      break;
    case SweepAxis::kBeta:
      c.beta = value;
      break;
    case SweepAxis::kGamma:
      c.gamma = value;
      break;
  }
  return c;
}

RobustCovertSpec covert_spec(const ExperimentConfig& config, const Scene& scene) {
  RobustCovertSpec spec = uncertain_spec(config, scene);
  return config.design == DesignKind::kRobust ? spec : nominal(spec);
}

DesignOutcome evaluate_design(const ExperimentConfig& config, const Scene& scene, bool record_timing) {
  DesignOptions options;
  options.zeta = config.zeta;
  options.n_trials = config.n_trials;
  options.randomization_seed = config.seed;
  const bool mi = config.objective == DesignObjective::kMi;

  DesignOutcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    DesignResult d;
    switch (config.design) {
      case DesignKind::kSdr:
        d = mi ? maximize_mi_sdr(scene, config.beta, options) : maximize_rate_perfect(scene, config.gamma, options);
        break;
      case DesignKind::kZf:
        if (!mi) throw InvalidInput("objective: the zf design supports \"mi\" only");
        d = maximize_mi_zf(scene, config.beta);
        break;
      case DesignKind::kRobust:
      case DesignKind::kNonRobust: {
        const RobustCovertSpec spec = covert_spec(config, scene);
        d = mi ? maximize_mi_robust(scene, spec, config.beta, options).design
               : maximize_rate_robust(scene, spec, config.gamma, options).design;
        break;
      }
    }
    out.pair = d.pair;
    out.row.mi_bits = d.mi_bits;
    out.row.rate_bits = d.rate_bits;
  } catch (const DesignInfeasible&) {
    out.pair.reset();
  } catch (const ExtractionFailure&) {
    out.pair.reset();
  }
  if (record_timing) {
    out.row.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  if (!out.pair) return out;

  out.row.feasible = true;
  const LambdaPair lp = lambda_pair(scene.h_warden, out.pair->cover, out.pair->comm, scene.sigma2_warden);
  fill_detection(out.row, lp);
  const RobustCovertSpec spec = uncertain_spec(config, scene);
  out.row.worst_kl =
      spec.error ? worst_case_directional(*out.pair, spec, scene.sigma2_warden) : directional_kl(config.direction, lp);
  return out;
}

CdfKlOutput run_cdf_kl(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  if (config.kind != ExperimentKind::kCdfKl) throw InvalidInput("kind: expected cdf_kl");
  const std::int64_t n = config.n_scenes;
  std::vector<std::vector<ResultRow>> per_scene(n);
  std::vector<SceneViolation> scenes(n);
  const RngStreams streams(config.seed);
  const double budget = 2.0 * config.epsilon * config.epsilon;

  parallel_for(n, options.jobs, [&](std::int64_t i) {
    const Scene scene = experiment_scene(config.scene, config.seed, i);
    const DesignOutcome d = evaluate_design(config, scene, options.record_timing);
    SceneViolation& v = scenes[i];
    v.scene_id = i;
    auto& rows = per_scene[i];
    if (!d.pair) {
      ResultRow r = d.row;
      r.scene_id = i;
      rows.push_back(r);
      return;
    }
    v.feasible = true;
    const RobustCovertSpec spec = uncertain_spec(config, scene);
    v.worst_kl = std::max(worst_case_kl(*d.pair, spec, scene.sigma2_warden, 2000).kl, d.row.worst_kl);
    v.worst_violates = v.worst_kl > budget;

    Rng rng = streams.make(Stream::kCsiError, static_cast<std::uint64_t>(i));
    rows.reserve(config.n_error_samples);
    for (int k = 0; k < config.n_error_samples; ++k) {
      const auto mode = k % 2 == 0 ? EllipsoidSampling::kInterior : EllipsoidSampling::kBoundary;
      const CVector h = scene.h_warden_est + sample_ellipsoid_error(*config.scene.csi_error, rng, mode);
      ResultRow r = d.row;
      r.scene_id = i;
      r.axis_value = k;
      fill_detection(r, lambda_pair(h, d.pair->cover, d.pair->comm, scene.sigma2_warden));
      r.worst_kl = v.worst_kl;
      const double achieved = config.direction == KlDirection::kP0P1 ? r.kl01 : r.kl10;
      v.n_violations += achieved > budget;
      rows.push_back(r);
    }
    v.n_samples = config.n_error_samples;
  });

  CdfKlOutput out;
  out.scenes = std::move(scenes);
  for (auto& rows : per_scene) {
    out.rows.insert(out.rows.end(), rows.begin(), rows.end());
  }
  for (const auto& v : out.scenes) out.n_infeasible += !v.feasible;
  return out;
}

SweepOutput run_sweep(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  if (config.kind != ExperimentKind::kSweep) throw InvalidInput("kind: expected sweep");
  const std::int64_t n_grid = static_cast<std::int64_t>(config.grid.size());
  const std::int64_t n = config.n_scenes * n_grid;
  std::vector<ResultRow> rows(n);
  parallel_for(n, options.jobs, [&](std::int64_t t) {
    const std::int64_t i = t / n_grid;
    const double value = config.grid[t % n_grid];
    const ExperimentConfig point = apply_axis(config, *config.sweep_axis, value);
    const Scene scene = experiment_scene(point.scene, config.seed, i);
    ResultRow r = evaluate_design(point, scene, options.record_timing).row;
    r.scene_id = i;
    r.axis_value = value;
    rows[t] = r;
  });
  SweepOutput out;
  out.points = summarize_sweep(rows);
  for (const auto& r : rows) out.n_infeasible += !r.feasible;
  out.rows = std::move(rows);
  return out;
}

std::vector<SweepPoint> summarize_sweep(const std::vector<ResultRow>& rows) {
  struct Acc {
    int n = 0;
    double mi = 0, mi2 = 0, rate = 0, rate2 = 0, wk = 0;
  };
  std::map<double, Acc> acc;
  for (const auto& r : rows) {
    Acc& a = acc[r.axis_value];
    if (!r.feasible) continue;
    ++a.n;
    a.mi += r.mi_bits;
    a.mi2 += r.mi_bits * r.mi_bits;
    a.rate += r.rate_bits;
    a.rate2 += r.rate_bits * r.rate_bits;
    a.wk += r.worst_kl;
  }
  auto sample_std = [](double sum, double sum2, int n) {
    if (n < 2) return 0.0;
    const double mean = sum / n;
    return std::sqrt(std::max(0.0, (sum2 - n * mean * mean) / (n - 1)));
  };
  std::vector<SweepPoint> out;
  for (const auto& [x, a] : acc) {
    SweepPoint p;
    p.axis_value = x;
    p.n_feasible = a.n;
    if (a.n > 0) {
      p.mean_mi = a.mi / a.n;
      p.mean_rate = a.rate / a.n;
      p.mean_worst_kl = a.wk / a.n;
      p.std_mi = sample_std(a.mi, a.mi2, a.n);
      p.std_rate = sample_std(a.rate, a.rate2, a.n);
    }
    out.push_back(p);
  }
  return out;
}

bool trend_holds(const std::vector<SweepPoint>& points, Trend trend, bool use_rate) {
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const SweepPoint& a = points[k];
    const SweepPoint& b = points[k + 1];
    if (a.n_feasible == 0 || b.n_feasible == 0) return false;
    const double ma = use_rate ? a.mean_rate : a.mean_mi;
    const double mb = use_rate ? b.mean_rate : b.mean_mi;
    const double sa = use_rate ? a.std_rate : a.std_mi;
    const double sb = use_rate ? b.std_rate : b.std_mi;
    const double se = std::sqrt(sa * sa / a.n_feasible + sb * sb / b.n_feasible);
    const double step = trend == Trend::kNondecreasing ? mb - ma : ma - mb;
    if (step < -se) return false;
  }
  return true;
}

}  // namespace covertbf
