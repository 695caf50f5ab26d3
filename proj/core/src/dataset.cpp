#include "grudyn/dataset.hpp"

#include <cmath>
#include <random>

namespace grudyn {

std::string to_string(Task t) {
  switch (t) {
    case Task::fhn: return "fhn";
    case Task::line: return "line";
    case Task::ring: return "ring";
    case Task::twoseq: return "twoseq";
  }
  return "unknown";
}

Task task_from_string(const std::string& s) {
  if (s == "fhn") return Task::fhn;
  if (s == "line") return Task::line;
  if (s == "ring") return Task::ring;
  if (s == "twoseq") return Task::twoseq;
  throw ConfigError("unknown task: " + s);
}

bool is_prediction(Task t) { return t != Task::twoseq; }

int observation_dim(Task t) { return is_prediction(t) ? 2 : 1; }

double DatasetConfig::effective_step() const {
  if (data_step > 0.0) return data_step;
  return task == Task::fhn ? 0.5 : 0.1;
}

double DatasetConfig::effective_noise() const {
  if (noise_var >= 0.0) return noise_var;
  switch (task) {
    case Task::fhn: return 0.0;
    case Task::twoseq: return 1.0;
    default: return 0.1;
  }
}

void DatasetConfig::validate() const {
  if (n < 1) throw ConfigError("dataset size must be at least 1");
  if (T < 1) throw ConfigError("T must be at least 1");
  if (substeps < 1) throw ConfigError("substeps must be at least 1");
  if (task == Task::twoseq && (seq_len < 1 || cue_len < 1 || cue_len > seq_len))
    throw ConfigError("twoseq needs 1 <= cue_len <= seq_len");
}

Vec target_field(const DatasetConfig& cfg, const Vec& w, double iext) {
  Vec v(2);
  const double x = w[0], y = w[1];
  switch (cfg.task) {
    case Task::fhn:
      v << x - x * x * x / 3.0 - y + iext, (x + cfg.fhn_a - cfg.fhn_b * y) / cfg.fhn_tau;
      break;
    case Task::line:
      v << -x, 0.0;
      break;
    case Task::ring: {
      const double s = x * x + y * y - 1.0;
      v << -s * x, -s * y;
      break;
    }
    case Task::twoseq:
      throw ConfigError("twoseq has no target field");
  }
  return v;
}

namespace {

Vec rk4(const DatasetConfig& cfg, Vec w, double iext, double dt, int n) {
  for (int k = 0; k < n; ++k) {
    const Vec k1 = target_field(cfg, w, iext);
    const Vec k2 = target_field(cfg, w + 0.5 * dt * k1, iext);
    const Vec k3 = target_field(cfg, w + 0.5 * dt * k2, iext);
    const Vec k4 = target_field(cfg, w + dt * k3, iext);
    w += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return w;
}

}  // namespace

Dataset generate_dataset(const DatasetConfig& cfg) {
  cfg.validate();
  Dataset ds;
  ds.task = cfg.task;
  ds.config = cfg;
  std::mt19937_64 rng(cfg.seed);
  const double noise_sd = std::sqrt(cfg.effective_noise());
  std::normal_distribution<double> noise(0.0, 1.0);

  if (cfg.task == Task::twoseq) {
    ds.steps.assign(static_cast<std::size_t>(cfg.seq_len), Mat::Zero(1, cfg.n));
    ds.labels = Vec::Zero(cfg.n);
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < cfg.n; ++i) {
      const bool positive = coin(rng);
      ds.labels[i] = positive ? 1.0 : 0.0;
      for (int k = 0; k < cfg.seq_len; ++k)
        ds.steps[k](0, i) = k < cfg.cue_len ? (positive ? 1.0 : -1.0) : noise_sd * noise(rng);
    }
    return ds;
  }

  const double step = cfg.effective_step();
  ds.steps.assign(static_cast<std::size_t>(cfg.T + 1), Mat::Zero(2, cfg.n));
  const bool fhn = cfg.task == Task::fhn;
  std::uniform_real_distribution<double> ux(fhn ? -2.5 : -2.0, fhn ? 2.5 : 2.0);
  std::uniform_real_distribution<double> uy(-2.0, 2.0);
  std::normal_distribution<double> drive(cfg.fhn_iext_mean, cfg.fhn_iext_sd);
  if (fhn) ds.iext = Vec::Zero(cfg.n);
  for (int i = 0; i < cfg.n; ++i) {
    Vec w(2);
    w[0] = ux(rng);
    w[1] = uy(rng);
    const double iext = fhn ? drive(rng) : 0.0;
    if (fhn) ds.iext[i] = iext;
    for (int k = 0; k <= cfg.T; ++k) {
      if (k > 0) w = rk4(cfg, w, iext, step / cfg.substeps, cfg.substeps);
      ds.steps[k].col(i) = w;
    }
  }
  if (noise_sd > 0.0) {
    for (Mat& m : ds.steps)
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) += noise_sd * noise(rng);
  }
  return ds;
}

}  // namespace grudyn
