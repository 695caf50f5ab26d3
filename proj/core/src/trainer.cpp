#include "grudyn/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

namespace grudyn {

Adam::Adam(const AdamConfig& cfg, Eigen::Index n) : cfg_(cfg), m_(Vec::Zero(n)), v_(Vec::Zero(n)) {}

void Adam::step(Vec& theta, const Vec& grad) {
  if (grad.size() != theta.size() || theta.size() != m_.size())
    throw ShapeError("Adam state size mismatch");
  ++t_;
  m_ = cfg_.beta1 * m_ + (1.0 - cfg_.beta1) * grad;
  v_ = cfg_.beta2 * v_ + (1.0 - cfg_.beta2) * grad.cwiseAbs2();
  const double c1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  theta.array() -= cfg_.lr * (m_.array() / c1) / ((v_.array() / c2).sqrt() + cfg_.eps);
}

void TrainConfig::validate() const {
  if (d < 1) throw ConfigError("hidden dimension must be positive");
  if (epochs < 1) throw ConfigError("epochs must be positive");
  if (n_traj < 1) throw ConfigError("n_traj must be positive");
  if (T < 1) throw ConfigError("T must be positive");
  if (!(adam.lr > 0.0) || !(adam.eps > 0.0)) throw ConfigError("Adam lr and eps must be positive");
  if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0 && adam.beta2 >= 0.0 && adam.beta2 < 1.0))
    throw ConfigError("Adam betas must lie in [0, 1)");
  if (!(init_std >= 0.0)) throw ConfigError("init_std must be nonnegative");
}

TrainConfig TrainConfig::full_scale(Task task, int d) {
  TrainConfig c;
  c.task = task;
  c.d = d;
  c.epochs = 4000;
  c.n_traj = 667;
  return c;
}

TrainingDiverged::TrainingDiverged(int epoch)
    : Error("training diverged at epoch " + std::to_string(epoch)), epoch_(epoch) {}

DatasetConfig dataset_config_for(const TrainConfig& cfg, std::uint64_t data_seed) {
  DatasetConfig d;
  d.task = cfg.task;
  d.n = cfg.n_traj;
  d.T = cfg.T;
  d.seed = data_seed;
  return d;
}

TrainResult train(const TrainConfig& cfg, const Dataset& train_set, const Dataset* test_set) {
  cfg.validate();
  if (train_set.task != cfg.task) throw ConfigError("dataset task does not match the config");
  TrainResult out;
  out.model = TrainedModel::random(cfg.d, cfg.task, cfg.seed, cfg.init_std);
  Vec theta = flatten(out.model);
  Adam adam(cfg.adam, theta.size());
  out.curve.loss.reserve(static_cast<std::size_t>(cfg.epochs));

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    unflatten(theta, out.model);
    const LossGrad lg = loss_and_gradient(out.model, train_set);
    if (!std::isfinite(lg.loss) || !lg.grad.allFinite()) throw TrainingDiverged(epoch);
    out.curve.loss.push_back(lg.loss);
    adam.step(theta, lg.grad);
  }
  unflatten(theta, out.model);
  out.curve.final_train_loss = task_loss(out.model, train_set);
  if (!std::isfinite(out.curve.final_train_loss)) throw TrainingDiverged(cfg.epochs);
  if (test_set) {
    out.curve.test_loss = task_loss(out.model, *test_set);
    if (!is_prediction(test_set->task)) out.curve.test_accuracy = accuracy(out.model, *test_set);
  }
  return out;
}

void write_learning_curve_csv(const LearningCurve& curve, std::ostream& out) {
  out << "epoch,loss\n" << std::setprecision(17);
  for (std::size_t e = 0; e < curve.loss.size(); ++e) out << e << ',' << curve.loss[e] << '\n';
}

std::vector<SweepEntry> dimension_sweep(const TrainConfig& base, const Dataset& data,
                                        const std::vector<int>& dims, int seeds) {
  if (seeds < 1) throw ConfigError("seeds must be positive");
  std::vector<SweepEntry> table;
  for (int d : dims) {
    SweepEntry e;
    e.d = d;
    for (int s = 0; s < seeds; ++s) {
      TrainConfig cfg = base;
      cfg.d = d;
      cfg.seed = base.seed + static_cast<std::uint64_t>(s);
      e.losses.push_back(train(cfg, data).curve.final_train_loss);
    }
    std::vector<double> sorted = e.losses;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    e.median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    table.push_back(std::move(e));
  }
  return table;
}

AnalysisReport analyze_trained(const TrainedModel& m, const ReportOptions& opts) {
  m.validate();
  return analyze(m.gru, opts);
}

Json to_json(const TrainConfig& c) {
  return {{"task", to_string(c.task)},
          {"d", c.d},
          {"epochs", c.epochs},
          {"n_traj", c.n_traj},
          {"T", c.T},
          {"lr", c.adam.lr},
          {"beta1", c.adam.beta1},
          {"beta2", c.adam.beta2},
          {"eps", c.adam.eps},
          {"seed", c.seed},
          {"init_std", c.init_std}};
}

Json to_json(const DatasetConfig& c) {
  Json j{{"task", to_string(c.task)}, {"n", c.n},          {"seed", c.seed},
         {"noise_var", c.effective_noise()}};
  if (is_prediction(c.task)) {
    j["T"] = c.T;
    j["data_step"] = c.effective_step();
    j["substeps"] = c.substeps;
  } else {
    j["seq_len"] = c.seq_len;
    j["cue_len"] = c.cue_len;
  }
  if (c.task == Task::fhn)
    j["fhn"] = {{"tau", c.fhn_tau},
                {"a", c.fhn_a},
                {"b", c.fhn_b},
                {"iext_mean", c.fhn_iext_mean},
                {"iext_sd", c.fhn_iext_sd}};
  return j;
}

Json to_json(const LearningCurve& c) {
  Json j{{"epochs", c.loss.size()},
         {"initial_loss", c.loss.empty() ? Json(nullptr) : Json(c.loss.front())},
         {"final_train_loss", c.final_train_loss}};
  if (c.test_loss) j["test_loss"] = *c.test_loss;
  if (c.test_accuracy) j["test_accuracy"] = *c.test_accuracy;
  return j;
}

Json to_json(const std::vector<SweepEntry>& sweep) {
  Json rows = Json::array();
  for (const auto& e : sweep) rows.push_back({{"d", e.d}, {"losses", e.losses}, {"median", e.median}});
  return rows;
}

}  // namespace grudyn
