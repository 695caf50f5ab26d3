#pragma once

#include "grudyn/gru.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace grudyn {

enum class Task { fhn, line, ring, twoseq };
std::string to_string(Task t);
Task task_from_string(const std::string& s);  // throws ConfigError
bool is_prediction(Task t);
int observation_dim(Task t);  // 2 for prediction tasks, 1 for twoseq

struct DatasetConfig {
  Task task = Task::fhn;
  int n = 200;
  std::uint64_t seed = 1;
  int T = 29;             // prediction: T + 1 samples per trajectory
  double data_step = -1;  // < 0 picks the task default (fhn 0.5, line/ring 0.1)
  int substeps = 10;      // RK4 substeps per data step
  double noise_var = -1;  // < 0 picks the task default (fhn 0, line/ring 0.1, twoseq 1)
  int seq_len = 10;       // twoseq
  int cue_len = 3;        // twoseq

  // FitzHugh-Nagumo constants; I_ext is drawn once per trajectory.
  double fhn_tau = 12.5, fhn_a = 0.7, fhn_b = 0.8;
  double fhn_iext_mean = 0.7, fhn_iext_sd = 0.04;

  double effective_step() const;
  double effective_noise() const;
  void validate() const;
};

struct Dataset {
  Task task = Task::fhn;
  DatasetConfig config;
  // steps[k] is p x N: observation k of every sequence. Prediction tasks
  // hold T + 1 observations, twoseq holds seq_len inputs.
  std::vector<Mat> steps;
  Vec labels;  // twoseq: 1 for the +1 cue, 0 for the -1 cue
  Vec iext;    // fhn: drive used for each trajectory

  int size() const { return steps.empty() ? 0 : static_cast<int>(steps.front().cols()); }
  int horizon() const { return static_cast<int>(steps.size()) - 1; }
};

/// Velocity of the target system for prediction tasks (iext only for fhn).
Vec target_field(const DatasetConfig& cfg, const Vec& w, double iext = 0.7);

Dataset generate_dataset(const DatasetConfig& cfg);

}  // namespace grudyn
