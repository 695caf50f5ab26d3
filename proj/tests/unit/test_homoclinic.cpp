#include <grudyn/homoclinic.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace grudyn;

TEST(Homoclinic, ZeroParamsGiveAnEmptyMask) {
  HomoclinicOptions o;
  o.grid_n = 11;
  const HomoclinicScan s = homoclinic_scan(GruParams::zeros(2), o);
  EXPECT_EQ(s.regions, 0);
  EXPECT_EQ(s.mask.size(), 121u);
  for (auto v : s.mask) EXPECT_EQ(v, 0);
}

TEST(Homoclinic, ComponentsUseFourAdjacency) {
  // Diagonal neighbours stay separate.
  const std::vector<std::uint8_t> mask{1, 0, 0,  //
                                       0, 1, 0,  //
                                       0, 1, 1};
  const auto [labels, n] = label_components(mask, 3, 3);
  EXPECT_EQ(n, 2);
  EXPECT_EQ(labels[0], 1);
  EXPECT_EQ(labels[4], 2);
  EXPECT_EQ(labels[7], 2);
  EXPECT_EQ(labels[8], 2);
  EXPECT_EQ(labels[1], 0);
}

TEST(Homoclinic, RunLengthRoundTrip) {
  std::mt19937_64 rng(51);
  std::bernoulli_distribution coin(0.3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::uint8_t> mask(1 + trial * 7);
    for (auto& v : mask) v = coin(rng);
    EXPECT_EQ(run_length_decode(run_length_encode(mask)), mask);
  }
  const std::vector<std::uint8_t> ones{1, 1, 0};
  EXPECT_EQ(run_length_encode(ones), (std::vector<int>{0, 2, 1}));
}

TEST(Homoclinic, RequiresTwoDimensions) {
  EXPECT_THROW(homoclinic_scan(GruParams::zeros(1)), DimensionError);
}
