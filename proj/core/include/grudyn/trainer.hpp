#pragma once

#include "grudyn/model.hpp"
#include "grudyn/report.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace grudyn {

struct AdamConfig {
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

class Adam {
 public:
  Adam(const AdamConfig& cfg, Eigen::Index n);
  void step(Vec& theta, const Vec& grad);
  long steps() const { return t_; }

 private:
  AdamConfig cfg_;
  Vec m_, v_;
  long t_ = 0;
};

struct TrainConfig {
  Task task = Task::fhn;
  int d = 2;
  int epochs = 2000;
  int n_traj = 200;
  int T = 29;
  AdamConfig adam{};
  std::uint64_t seed = 1;  // weight initialization
  double init_std = 0.1;

  void validate() const;
  /// 667 sequences and 4000 epochs.
  static TrainConfig full_scale(Task task, int d);
};

class TrainingDiverged : public Error {
 public:
  explicit TrainingDiverged(int epoch);
  int epoch() const { return epoch_; }

 private:
  int epoch_;
};

struct LearningCurve {
  std::vector<double> loss;  // whole-batch training loss before each epoch's update
  double final_train_loss = 0.0;
  std::optional<double> test_loss;
  std::optional<double> test_accuracy;  // twoseq only
};

struct TrainResult {
  TrainedModel model;
  LearningCurve curve;
};

/// Whole-batch Adam on the task loss. Deterministic for a given config and dataset.
TrainResult train(const TrainConfig& cfg, const Dataset& train_set,
                  const Dataset* test_set = nullptr);

/// Dataset matching a training config (n_traj sequences, horizon T).
DatasetConfig dataset_config_for(const TrainConfig& cfg, std::uint64_t data_seed);

void write_learning_curve_csv(const LearningCurve& curve, std::ostream& out);

struct SweepEntry {
  int d = 0;
  std::vector<double> losses;  // final training loss per seed
  double median = 0.0;
};

/// Trains seeds x dims models on one dataset (seeds differ only in
/// initialization) and reports the median final loss per dimension.
std::vector<SweepEntry> dimension_sweep(const TrainConfig& base, const Dataset& data,
                                        const std::vector<int>& dims = {2, 4, 8, 16},
                                        int seeds = 3);

/// Analysis of the model's autonomous hidden dynamics (input weights dropped).
AnalysisReport analyze_trained(const TrainedModel& m, const ReportOptions& opts = {});

Json to_json(const TrainConfig& c);
Json to_json(const DatasetConfig& c);
Json to_json(const LearningCurve& c);
Json to_json(const std::vector<SweepEntry>& sweep);

}  // namespace grudyn
