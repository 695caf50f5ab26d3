#include "oracles.hpp"

#include <grudyn/gru.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace grudyn;

TEST(Gru, ZeroParamsGiveLinearContraction) {
  const GruParams p = GruParams::zeros(3);
  Vec h(3);
  h << 0.4, -1.2, 0.0;
  EXPECT_TRUE(vector_field(p, h).isApprox(-0.5 * h));
  EXPECT_TRUE(jacobian(p, h).isApprox(-0.5 * Mat::Identity(3, 3)));
}

TEST(Gru, FieldMatchesHandWrittenFormula) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + trial % 4;
    const GruParams p = oracle::random_params(rng, d);
    const Vec h = oracle::random_state(rng, d);
    EXPECT_LT((vector_field(p, h) - oracle::field(p, h)).norm(), 1e-13);
  }
}

TEST(Gru, DiscreteStepIsBitIdenticalToEulerStep) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 1 + trial % 5;
    const GruParams p = oracle::random_params(rng, d, 4.0);
    const Vec h = oracle::random_state(rng, d, -3, 3);
    const Vec a = discrete_step(p, h);
    const Vec b = h + vector_field(p, h);
    for (int i = 0; i < d; ++i) EXPECT_LE(oracle::ulp_distance(a[i], b[i]), 4);
  }
}

TEST(Gru, InputStepWithZeroInputMatchesAutonomousStep) {
  std::mt19937_64 rng(2);
  const GruParams p = oracle::random_params(rng, 3);
  InputParams in = InputParams::zeros(3, 2);
  in.Wz.setConstant(0.7);
  in.Wh.setConstant(-1.1);
  const Vec h = oracle::random_state(rng, 3);
  EXPECT_TRUE(discrete_step(p, in, h, Vec::Zero(2)).isApprox(discrete_step(p, h), 1e-15));
}

TEST(Gru, JacobianMatchesCentralDifferences) {
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 4;
    const GruParams p = oracle::random_params(rng, d, 2.0);
    const Vec h = oracle::random_state(rng, d);
    const Mat J = jacobian(p, h);
    const Mat Jfd = oracle::fd_jacobian([&](const Vec& x) { return oracle::field(p, x); }, h);
    worst = std::max(worst, (J - Jfd).norm() / std::max(1e-8, Jfd.norm()));
  }
  EXPECT_LE(worst, 1e-6);
}

TEST(Gru, JacobianVanishesAtOriginForDoubleZeroCase) {
  // Uh = 2I, Ur = -I: -0.5 * (I - 0.5 * 2I) = 0.
  const GruParams p = oracle::params2({2, 0, 0, 2}, {-1, 0, 0, -1});
  const Mat J = jacobian(p, Vec::Zero(2));
  EXPECT_EQ(J.cwiseAbs().maxCoeff(), 0.0);
  const Mat Jfd =
      oracle::fd_jacobian([&](const Vec& x) { return oracle::field(p, x); }, Vec::Zero(2));
  EXPECT_LT(Jfd.cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Gru, UpdateGateDoesNotMoveZeros) {
  std::mt19937_64 rng(4);
  GruParams p = oracle::random_params(rng, 2);
  const Vec h = oracle::random_state(rng, 2);
  GruParams q = p;
  q.Uz.setRandom();
  q.bz.setRandom();
  // F differs only by the positive factor (1 - z) per component.
  const Vec a = vector_field(p, h), b = vector_field(q, h);
  for (int i = 0; i < 2; ++i) EXPECT_EQ(a[i] > 0, b[i] > 0);
}

TEST(Gru, SigmoidIsStableForExtremeArguments) {
  EXPECT_EQ(sigmoid(-1000.0), 0.0);
  EXPECT_EQ(sigmoid(1000.0), 1.0);
  EXPECT_DOUBLE_EQ(sigmoid(0.0), 0.5);
  EXPECT_NEAR(sigmoid(2.0) + sigmoid(-2.0), 1.0, 4e-16);
}

TEST(Gru, ShapeAndValueErrors) {
  GruParams p = GruParams::zeros(2);
  EXPECT_THROW(vector_field(p, Vec::Zero(3)), ShapeError);
  EXPECT_THROW(GruParams::zeros(0), ShapeError);
  p.Uh.resize(3, 3);
  EXPECT_THROW(p.validate(), ShapeError);
  p = GruParams::zeros(2);
  p.bh[1] = std::nan("");
  EXPECT_THROW(p.validate(), ConfigError);
  InputParams in = InputParams::zeros(2, 1);
  EXPECT_THROW(discrete_step(GruParams::zeros(2), in, Vec::Zero(2), Vec::Zero(2)), ShapeError);
}

TEST(Gru, TrappingRegionBoundaryPointsInward) {
  // On the faces of [-1, 1]^d the normal component of F points inside.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const GruParams p = oracle::random_params(rng, 2, 5.0);
    Vec h = oracle::random_state(rng, 2, -1, 1);
    const int axis = trial % 2;
    h[axis] = (trial / 2) % 2 ? 1.0 : -1.0;
    EXPECT_LE(h[axis] * vector_field(p, h)[axis], 0.0);
  }
}
