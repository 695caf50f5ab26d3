#include "oracles.hpp"

#include <grudyn/catalog.hpp>
#include <grudyn/report.hpp>

#include <gtest/gtest.h>

using namespace grudyn;

TEST(Report, AnalysisJsonCarriesParamsTolerancesAndPoints) {
  const GruParams p = find_case("5b").params;
  const AnalysisReport rep = analyze(p);
  const Json j = Json::parse(to_json(rep).dump());
  EXPECT_EQ(gru_params_from_json(j.at("params")), p);
  EXPECT_EQ(j.at("options").at("fixed_points").at("zero_tol").get<double>(), 1e-4);
  ASSERT_EQ(j.at("fixed_points").size(), rep.fixed_points.size());
  const Json& fp = j.at("fixed_points").at(0);
  EXPECT_EQ(fp.at("class").get<std::string>(), to_string(rep.fixed_points[0].cls.kind));
  ASSERT_EQ(fp.at("eigenvalues").at(0).size(), 2u);  // [re, im]
  EXPECT_FALSE(j.at("cycle").is_null());
  EXPECT_EQ(signature_from_json(j.at("signature")), rep.signature);
}

TEST(Report, ComplexNumbersArePairs) {
  const Json z = to_json(std::complex<double>(1.5, -2.0));
  EXPECT_EQ(z, Json::parse("[1.5, -2.0]"));
}

TEST(Report, SignatureToString) {
  const TopologySignature s{3, 2, 0, 1, 0, 0, 0, 0};
  EXPECT_EQ(s.to_string(), "total=3 sinks=2 sources=0 saddles=1 sn1=0 sn2=0 codim2=0");
}

TEST(Report, HomoclinicScanSerializesTheMaskAsRuns) {
  HomoclinicScan s;
  s.grid_n = 2;
  s.mask = {0, 1, 1, 0};
  const Json j = to_json(s);
  EXPECT_EQ(j.at("mask_rle"), Json::parse("[1, 2, 1]"));
}
