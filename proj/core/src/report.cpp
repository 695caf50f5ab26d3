#include "grudyn/report.hpp"

namespace grudyn {

AnalysisReport analyze(const GruParams& params, const ReportOptions& opts) {
  params.validate();
  AnalysisReport r;
  r.params = params;
  r.options = opts;
  r.fixed_points = find_fixed_points(params, opts.fixed_points);
  r.signature = topology_signature(r.fixed_points);
  if (opts.cycles && params.dim() == 2) {
    IntegratorConfig cfg = opts.cycle_config;
    cfg.region = opts.fixed_points.region;
    r.cycle = detect_limit_cycle(params, cfg);
  }
  if (opts.slow_points && params.dim() <= 2) {
    SlowPointOptions so = opts.slow;
    so.region = opts.fixed_points.region;
    r.slow_points = find_slow_points(params, so);
  }
  return r;
}

Json to_json(const std::complex<double>& z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const FixedPoint& fp) {
  Json ev = Json::array();
  for (const auto& z : fp.eigenvalues()) ev.push_back(to_json(z));
  Json j{{"location", vector_to_json(fp.location)},
         {"residual", fp.residual},
         {"jacobian", matrix_to_json(fp.jacobian)},
         {"eigenvalues", ev},
         {"class", to_string(fp.cls.kind)},
         {"zero_tol", fp.cls.zero_tol}};
  if (!fp.cls.probe_signs.empty()) j["probe_signs"] = fp.cls.probe_signs;
  return j;
}

Json to_json(const TopologySignature& s) {
  return {{"total", s.total},
          {"sinks", s.sinks},
          {"sources", s.sources},
          {"saddles", s.saddles},
          {"saddle_node_1", s.saddle_node_1},
          {"saddle_node_2", s.saddle_node_2},
          {"codim2", s.codim2},
          {"other", s.other}};
}

TopologySignature signature_from_json(const Json& j) {
  TopologySignature s;
  s.total = j.at("total").get<int>();
  s.sinks = j.value("sinks", 0);
  s.sources = j.value("sources", 0);
  s.saddles = j.value("saddles", 0);
  s.saddle_node_1 = j.value("saddle_node_1", 0);
  s.saddle_node_2 = j.value("saddle_node_2", 0);
  s.codim2 = j.value("codim2", 0);
  s.other = j.value("other", 0);
  return s;
}

Json to_json(const LimitCycle& lc) {
  Json pts = Json::array();
  for (const auto& p : lc.points) pts.push_back({p[0], p[1]});
  Json j{{"sample_point", vector_to_json(lc.sample_point)},
         {"period", lc.period},
         {"winding_number", lc.winding_number},
         {"min_speed", lc.min_speed},
         {"points", pts}};
  j["enclosed_fixed_point"] =
      lc.enclosed_fixed_point ? vector_to_json(*lc.enclosed_fixed_point) : Json(nullptr);
  return j;
}

Json to_json(const SlowPoint& sp) {
  return {{"location", vector_to_json(sp.location)},
          {"speed", sp.speed},
          {"gradient", sp.gradient}};
}

Json to_json(const Root1D& r) {
  return {{"location", r.location},
          {"boundary_margin", r.boundary_margin},
          {"slope", r.slope},
          {"class", to_string(r.stability)},
          {"tangency", r.tangency}};
}

Json to_json(const SaddleNodeTransition& t) {
  return {{"bh", t.bh}, {"count_before", t.count_before}, {"count_after", t.count_after}};
}

Json to_json(const Roots1DOptions& o) {
  return {{"grid_n", o.grid_n},
          {"zero_tol", o.zero_tol},
          {"tangency_tol", o.tangency_tol},
          {"bisect_tol", o.bisect_tol}};
}

Json to_json(const HopfResult& h) {
  Json j{{"alpha_star", h.alpha_star}, {"unstable_below", h.unstable_below}};
  j["cycle"] = h.cycle ? to_json(*h.cycle) : Json(nullptr);
  return j;
}

Json to_json(const HomoclinicOptions& o) {
  return {{"region", {o.region.lo, o.region.hi}},
          {"grid_n", o.grid_n},
          {"capture_tol", o.capture_tol},
          {"leave_radius", o.leave_radius},
          {"dt", o.dt},
          {"horizon", o.horizon},
          {"fixed_points", to_json(o.fixed_points)}};
}

Json to_json(const HomoclinicScan& scan) {
  Json fps = Json::array();
  for (const auto& fp : scan.fixed_points) fps.push_back(to_json(fp));
  return {{"grid_n", scan.grid_n},
          {"region", {scan.region.lo, scan.region.hi}},
          {"regions", scan.regions},
          {"region_sizes", scan.region_sizes},
          {"mask_rle", run_length_encode(scan.mask)},
          {"fixed_points", fps}};
}

Json to_json(const FixedPointOptions& o) {
  return {{"region", {o.region.lo, o.region.hi}},
          {"grid_n", o.grid_n},
          {"zero_tol", o.zero_tol},
          {"residual_tol", o.residual_tol},
          {"dedup_tol", o.dedup_tol},
          {"max_iter", o.max_iter},
          {"probe_delta", o.probe_delta}};
}

Json to_json(const IntegratorConfig& c) {
  return {{"method", to_string(c.method)},
          {"dt", c.dt},
          {"max_steps", c.max_steps},
          {"convergence_tol", c.convergence_tol},
          {"recurrence_tol", c.recurrence_tol},
          {"region", {c.region.lo, c.region.hi}}};
}

Json to_json(const ReportOptions& o) {
  return {{"fixed_points", to_json(o.fixed_points)},
          {"cycles", o.cycles},
          {"cycle_config", to_json(o.cycle_config)},
          {"slow_points", o.slow_points},
          {"slow",
           {{"grid_n", o.slow.grid_n},
            {"slow_threshold", o.slow.slow_threshold},
            {"floor", o.slow.floor},
            {"dedup_tol", o.slow.dedup_tol}}}};
}

Json to_json(const AnalysisReport& r) {
  Json fps = Json::array();
  for (const auto& fp : r.fixed_points) fps.push_back(to_json(fp));
  Json slow = Json::array();
  for (const auto& sp : r.slow_points) slow.push_back(to_json(sp));
  return {{"params", to_json(r.params)},
          {"options", to_json(r.options)},
          {"fixed_points", fps},
          {"signature", to_json(r.signature)},
          {"cycle", r.cycle ? to_json(*r.cycle) : Json(nullptr)},
          {"slow_points", slow}};
}

}  // namespace grudyn
