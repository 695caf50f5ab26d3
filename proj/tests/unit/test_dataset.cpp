#include <grudyn/dataset.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace grudyn;

namespace {

DatasetConfig cfg_for(Task t, int n = 50, std::uint64_t seed = 9) {
  DatasetConfig c;
  c.task = t;
  c.n = n;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(Dataset, Shapes) {
  for (Task t : {Task::fhn, Task::line, Task::ring}) {
    const Dataset ds = generate_dataset(cfg_for(t));
    ASSERT_EQ(ds.steps.size(), 30u);
    EXPECT_EQ(ds.horizon(), 29);
    EXPECT_EQ(ds.size(), 50);
    EXPECT_EQ(ds.steps[0].rows(), 2);
  }
  const Dataset tw = generate_dataset(cfg_for(Task::twoseq));
  ASSERT_EQ(tw.steps.size(), 10u);
  EXPECT_EQ(tw.steps[0].rows(), 1);
  EXPECT_EQ(tw.labels.size(), 50);
}

TEST(Dataset, SeedDeterminesTheData) {
  const Dataset a = generate_dataset(cfg_for(Task::ring));
  const Dataset b = generate_dataset(cfg_for(Task::ring));
  const Dataset c = generate_dataset(cfg_for(Task::ring, 50, 10));
  for (std::size_t k = 0; k < a.steps.size(); ++k) EXPECT_EQ(a.steps[k], b.steps[k]);
  EXPECT_NE(a.steps[3], c.steps[3]);
}

TEST(Dataset, TargetFields) {
  DatasetConfig c = cfg_for(Task::fhn);
  const Vec w = Eigen::Vector2d(0.3, -0.4);
  const Vec f = target_field(c, w, 0.7);
  EXPECT_NEAR(f[0], 0.3 - 0.027 / 3 + 0.4 + 0.7, 1e-15);
  EXPECT_NEAR(f[1], (0.3 + 0.7 + 0.8 * 0.4) / 12.5, 1e-15);

  c.task = Task::ring;
  for (double a : {0.0, 1.0, 2.5}) {
    const Vec on = Eigen::Vector2d(std::cos(a), std::sin(a));
    EXPECT_LT(target_field(c, on).norm(), 1e-15);
    EXPECT_LT(on.dot(target_field(c, 1.5 * on)), 0.0);
    EXPECT_GT(on.dot(target_field(c, 0.5 * on)), 0.0);
  }
  c.task = Task::line;
  const Vec g = target_field(c, w);
  EXPECT_EQ(g[0], -0.3);
  EXPECT_EQ(g[1], 0.0);
  c.task = Task::twoseq;
  EXPECT_THROW(target_field(c, w), ConfigError);
}

TEST(Dataset, NoiselessTrajectoriesFollowTheTargetFlow) {
  DatasetConfig c = cfg_for(Task::fhn, 5);
  const Dataset ds = generate_dataset(c);
  ASSERT_EQ(ds.iext.size(), 5);
  for (int i = 0; i < 5; ++i) {
    // Fine explicit Euler over one sampling interval.
    Vec w = ds.steps[0].col(i);
    const int n = 200000;
    for (int k = 0; k < n; ++k) w += (0.5 / n) * target_field(c, w, ds.iext[i]);
    EXPECT_LT((w - ds.steps[1].col(i)).norm(), 1e-4);
  }
}

TEST(Dataset, ObservationNoiseHasTheConfiguredVariance) {
  DatasetConfig clean = cfg_for(Task::ring, 400);
  clean.noise_var = 0.0;
  const Dataset a = generate_dataset(clean);
  const Dataset b = generate_dataset(cfg_for(Task::ring, 400));
  double sum = 0, sq = 0;
  long n = 0;
  for (std::size_t k = 0; k < a.steps.size(); ++k) {
    const Mat d = b.steps[k] - a.steps[k];
    sum += d.sum();
    sq += d.squaredNorm();
    n += d.size();
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(sq / n - mean * mean, 0.1, 0.005);
}

TEST(Dataset, TwoSequenceCuesAndLabels) {
  const Dataset ds = generate_dataset(cfg_for(Task::twoseq, 400));
  int positives = 0;
  double sq = 0;
  long n = 0;
  for (int i = 0; i < ds.size(); ++i) {
    const double cue = ds.labels[i] > 0.5 ? 1.0 : -1.0;
    positives += ds.labels[i] > 0.5;
    for (int k = 0; k < 3; ++k) EXPECT_EQ(ds.steps[k](0, i), cue);
    for (int k = 3; k < 10; ++k, ++n) sq += ds.steps[k](0, i) * ds.steps[k](0, i);
  }
  EXPECT_GT(positives, 160);
  EXPECT_LT(positives, 240);
  EXPECT_NEAR(sq / n, 1.0, 0.1);
}

TEST(Dataset, DefaultsAndValidation) {
  EXPECT_EQ(cfg_for(Task::fhn).effective_step(), 0.5);
  EXPECT_EQ(cfg_for(Task::ring).effective_step(), 0.1);
  EXPECT_EQ(cfg_for(Task::fhn).effective_noise(), 0.0);
  EXPECT_EQ(cfg_for(Task::line).effective_noise(), 0.1);
  EXPECT_EQ(cfg_for(Task::twoseq).effective_noise(), 1.0);
  DatasetConfig c = cfg_for(Task::twoseq);
  c.cue_len = 11;
  EXPECT_THROW(c.validate(), ConfigError);
  c = cfg_for(Task::fhn, 0);
  EXPECT_THROW(generate_dataset(c), ConfigError);
  EXPECT_THROW(task_from_string("spiral"), ConfigError);
  EXPECT_EQ(task_from_string("ring"), Task::ring);
}
