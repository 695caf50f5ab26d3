#pragma once

#include "grudyn/fixed_points.hpp"
#include "grudyn/homoclinic.hpp"
#include "grudyn/limit_cycle.hpp"
#include "grudyn/roots1d.hpp"
#include "grudyn/serialize.hpp"
#include "grudyn/slow_points.hpp"

#include <optional>
#include <vector>

namespace grudyn {

struct ReportOptions {
  FixedPointOptions fixed_points{};
  bool cycles = true;  // d = 2 only
  IntegratorConfig cycle_config = limit_cycle_config();
  bool slow_points = true;  // d <= 2 only
  SlowPointOptions slow{};
};

struct AnalysisReport {
  GruParams params;
  ReportOptions options;
  std::vector<FixedPoint> fixed_points;
  TopologySignature signature;
  std::optional<LimitCycle> cycle;
  std::vector<SlowPoint> slow_points;
};

/// Fixed points, signature, and (where the dimension allows) cycles and
/// slow points of the autonomous system.
AnalysisReport analyze(const GruParams& params, const ReportOptions& opts = {});

Json to_json(const std::complex<double>& z);
Json to_json(const FixedPoint& fp);
Json to_json(const TopologySignature& s);
TopologySignature signature_from_json(const Json& j);
Json to_json(const LimitCycle& lc);
Json to_json(const SlowPoint& sp);
Json to_json(const Root1D& r);
Json to_json(const SaddleNodeTransition& t);
Json to_json(const Roots1DOptions& o);
Json to_json(const HopfResult& h);
Json to_json(const HomoclinicScan& scan);
Json to_json(const HomoclinicOptions& o);
Json to_json(const FixedPointOptions& o);
Json to_json(const IntegratorConfig& c);
Json to_json(const ReportOptions& o);
Json to_json(const AnalysisReport& r);

}  // namespace grudyn
