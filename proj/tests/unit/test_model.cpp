#include "oracles.hpp"

#include <grudyn/model.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace grudyn;

namespace {

Dataset small(Task t, int n = 4, std::uint64_t seed = 5) {
  DatasetConfig c;
  c.task = t;
  c.n = n;
  c.seed = seed;
  c.T = 8;
  return generate_dataset(c);
}

double fd_relative_error(const TrainedModel& m, const Dataset& ds) {
  const LossGrad lg = loss_and_gradient(m, ds);
  const Vec theta = flatten(m);
  Vec fd(theta.size());
  const double eps = 1e-5;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    TrainedModel a = m, b = m;
    Vec ta = theta, tb = theta;
    ta[i] += eps;
    tb[i] -= eps;
    unflatten(ta, a);
    unflatten(tb, b);
    fd[i] = (task_loss(a, ds) - task_loss(b, ds)) / (2 * eps);
  }
  return (lg.grad - fd).norm() / std::max(1e-12, fd.norm());
}

}  // namespace

TEST(Model, FlattenRoundTripAndBlockOrder) {
  TrainedModel m = TrainedModel::random(2, Task::fhn, 3, 0.5);
  const Vec theta = flatten(m);
  EXPECT_EQ(theta.size(), 36);
  EXPECT_EQ(theta[0], m.gru.Uz(0, 0));
  EXPECT_EQ(theta[theta.size() - 1], m.readout_b[1]);
  TrainedModel z = TrainedModel::zeros(2, 2, 2, Task::fhn);
  unflatten(theta, z);
  EXPECT_EQ(flatten(z), theta);
  EXPECT_THROW(unflatten(Vec::Zero(3), z), ShapeError);
}

TEST(Model, RandomInitHasZeroBiasesAndTheRequestedSpread) {
  const TrainedModel m = TrainedModel::random(16, Task::ring, 4, 0.1);
  EXPECT_TRUE(m.gru.bz.isZero());
  EXPECT_TRUE(m.gru.bh.isZero());
  EXPECT_TRUE(m.readout_b.isZero());
  const double var = m.gru.Uh.squaredNorm() / m.gru.Uh.size();
  EXPECT_NEAR(std::sqrt(var), 0.1, 0.02);
  EXPECT_EQ(flatten(TrainedModel::random(16, Task::ring, 4, 0.1)), flatten(m));
}

TEST(Model, JsonRoundTrip) {
  const TrainedModel m = TrainedModel::random(3, Task::twoseq, 8, 0.4);
  const TrainedModel back = trained_model_from_json(Json::parse(to_json(m).dump()));
  EXPECT_EQ(flatten(back), flatten(m));
  EXPECT_EQ(back.task, Task::twoseq);
  EXPECT_EQ(back.seed, 8u);
  // The file doubles as a parameter file for the analysis tools.
  EXPECT_EQ(gru_params_from_json(to_json(m)), m.gru);
}

TEST(Model, RolloutFeedsTheInitialObservationOnce) {
  const TrainedModel m = TrainedModel::random(2, Task::fhn, 5, 0.8);
  const Dataset ds = small(Task::fhn, 1);
  const auto hs = hidden_rollout(m, ds.steps[0], 4);
  Vec h = discrete_step(m.gru, m.input, Vec::Zero(2), ds.steps[0].col(0));
  EXPECT_TRUE(hs[0].col(0).isApprox(h, 1e-14));
  for (int k = 1; k < 4; ++k) {
    h = discrete_step(m.gru, h);
    EXPECT_TRUE(hs[k].col(0).isApprox(h, 1e-14));
  }
}

TEST(Model, LossExamples) {
  const Dataset ds = small(Task::ring, 6);
  const TrainedModel zero = TrainedModel::zeros(2, 2, 2, Task::ring);
  double expect = 0;
  for (int k = 1; k <= ds.horizon(); ++k) expect += ds.steps[k].squaredNorm();
  expect /= ds.horizon();
  EXPECT_NEAR(loss_mse(zero, ds), expect, 1e-12);
  EXPECT_NEAR(loss_mse_normalized(zero, ds), expect / 6, 1e-12);

  const Dataset tw = small(Task::twoseq, 40);
  const TrainedModel z1 = TrainedModel::zeros(2, 1, 1, Task::twoseq);
  EXPECT_NEAR(loss_xent(z1, tw), std::log(2.0), 1e-15);
  EXPECT_NEAR(accuracy(z1, tw), 1.0 - tw.labels.mean(), 1e-15);

  EXPECT_THROW(loss_mse(z1, tw), ConfigError);
  EXPECT_THROW(loss_xent(zero, ds), ConfigError);
}

TEST(Model, BpttMatchesFiniteDifferences) {
  std::uint64_t seed = 100;
  for (Task t : {Task::fhn, Task::line, Task::ring, Task::twoseq})
    for (int d : {1, 2, 3}) {
      const TrainedModel m = TrainedModel::random(d, t, ++seed, 0.8);
      EXPECT_LE(fd_relative_error(m, small(t, 3, seed)), 1e-4) << to_string(t) << " d=" << d;
    }
}

TEST(Model, GradientModelMatchesTheFlatGradient) {
  const TrainedModel m = TrainedModel::random(2, Task::fhn, 9, 0.5);
  const Dataset ds = small(Task::fhn);
  EXPECT_EQ(flatten(gradients(m, ds)), loss_and_gradient(m, ds).grad);
  EXPECT_NEAR(loss_and_gradient(m, ds).loss, task_loss(m, ds), 1e-12 * task_loss(m, ds));
}

TEST(Model, TwoSequenceInitialStatesAreFixedByTheDataset) {
  const Dataset ds = small(Task::twoseq, 500);
  const Mat a = twoseq_initial_states(ds, 4);
  EXPECT_EQ(a, twoseq_initial_states(ds, 4));
  EXPECT_NEAR(std::sqrt(a.squaredNorm() / a.size()), 0.1, 0.01);
}
