#pragma once

#include "grudyn/dataset.hpp"
#include "grudyn/serialize.hpp"

#include <cstdint>
#include <vector>

namespace grudyn {

/// Discrete GRU with input weights and a linear readout.
struct TrainedModel {
  GruParams gru;
  InputParams input;
  Mat readout_W;  // output_dim x d
  Vec readout_b;
  Task task = Task::fhn;
  std::uint64_t seed = 0;

  int hidden_dim() const { return gru.dim(); }
  int input_dim() const { return input.input_dim(); }
  int output_dim() const { return static_cast<int>(readout_b.size()); }
  void validate() const;

  static TrainedModel zeros(int d, int p, int out, Task task);
  /// Matrix entries drawn from N(0, init_std^2), biases zero.
  static TrainedModel random(int d, Task task, std::uint64_t seed, double init_std = 0.1);
};

Json to_json(const TrainedModel& m);
TrainedModel trained_model_from_json(const Json& j);

/// Parameter vector in a fixed block order: Uz Ur Uh bz br bh Wz Wr Wh readout_W readout_b.
Vec flatten(const TrainedModel& m);
void unflatten(const Vec& theta, TrainedModel& m);  // shapes taken from m

/// Closed-loop prediction from observation w0 (p x N): w0 drives the first
/// step, then the network runs without input. Returns T outputs, each out x N.
std::vector<Mat> forward(const TrainedModel& m, const Mat& w0, int T);

/// Hidden states h_1..h_T of the same rollout (h_0 = 0).
std::vector<Mat> hidden_rollout(const TrainedModel& m, const Mat& w0, int T);

/// (1/T) sum_i sum_k |w_hat_i(k) - w_i(k)|^2, no 1/N factor.
double loss_mse(const TrainedModel& m, const Dataset& ds);
/// loss_mse / N, for comparing runs with different dataset sizes.
double loss_mse_normalized(const TrainedModel& m, const Dataset& ds);

/// Random initial hidden states for twoseq, N(0, 0.1^2) per entry; fixed by the
/// dataset seed so a given dataset always sees the same initial states.
Mat twoseq_initial_states(const Dataset& ds, int d);

/// Final-state class logits (1 x N) for twoseq.
Vec twoseq_logits(const TrainedModel& m, const Dataset& ds);
/// Mean binary cross-entropy of the final-state logit.
double loss_xent(const TrainedModel& m, const Dataset& ds);
double accuracy(const TrainedModel& m, const Dataset& ds);

/// Loss matching the dataset task (mse for prediction tasks, xent for twoseq).
double task_loss(const TrainedModel& m, const Dataset& ds);

/// Loss and its exact gradient (BPTT) with respect to flatten(m).
struct LossGrad {
  double loss = 0.0;
  Vec grad;
};
LossGrad loss_and_gradient(const TrainedModel& m, const Dataset& ds);

/// Gradient laid out as a model (same shapes as m).
TrainedModel gradients(const TrainedModel& m, const Dataset& ds);

}  // namespace grudyn
