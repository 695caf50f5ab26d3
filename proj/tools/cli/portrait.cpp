#include "portrait.hpp"

#include <grudyn/integrate.hpp>
#include <grudyn/limit_cycle.hpp>
#include <grudyn/nullclines.hpp>
#include <grudyn/report.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace grudyn::cli {

void PortraitSpec::validate() const {
  region.validate();
  if (resolution < 16) throw ConfigError("portrait resolution must be at least 16");
  if (arrows < 0 || seeds_n < 0) throw ConfigError("arrow and seed counts must be nonnegative");
  if (!(traj_dt > 0.0) || !(traj_time >= 0.0)) throw ConfigError("bad trajectory timing");
  if (nullcline_resolution < 2) throw ConfigError("nullcline resolution must be at least 2");
  if (size_px < 64) throw ConfigError("portrait size must be at least 64 px");
}

Json to_json(const PortraitSpec& s) {
  Json fp = to_json(s.fixed_points);
  fp["region"] = {s.region.lo, s.region.hi};
  return Json{{"region", {s.region.lo, s.region.hi}},
              {"resolution", s.resolution},
              {"speed_levels", kSpeedLevels},
              {"arrows", s.arrows},
              {"seeds_n", s.seeds_n},
              {"traj_time", s.traj_time},
              {"traj_dt", s.traj_dt},
              {"nullcline_resolution", s.nullcline_resolution},
              {"size_px", s.size_px},
              {"nullclines", s.show_nullclines},
              {"trajectories", s.show_trajectories},
              {"fixed_points", s.show_fixed_points},
              {"cycle", s.show_cycle},
              {"fixed_point_options", fp},
              {"homoclinic_overlay", s.homoclinic.has_value()}};
}

std::string speed_color(int level) {
  // Five viridis anchors, linearly interpolated.
  static constexpr std::array<std::array<double, 3>, 5> anchors{{{68, 1, 84},
                                                                 {59, 82, 139},
                                                                 {33, 145, 140},
                                                                 {94, 201, 98},
                                                                 {253, 231, 37}}};
  level = std::clamp(level, 0, kSpeedLevels - 1);
  const double t = static_cast<double>(level) / (kSpeedLevels - 1) * (anchors.size() - 1);
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(t), anchors.size() - 2);
  const double f = t - static_cast<double>(k);
  char buf[8];
  int rgb[3];
  for (int c = 0; c < 3; ++c)
    rgb[c] = static_cast<int>(std::lround(anchors[k][c] * (1.0 - f) + anchors[k + 1][c] * f));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

std::string class_color(FixedPointClass c) {
  switch (c) {
    case FixedPointClass::sink_node:
    case FixedPointClass::sink_spiral:
    case FixedPointClass::stable_1d: return "#2166ac";
    case FixedPointClass::source_node:
    case FixedPointClass::source_spiral:
    case FixedPointClass::unstable_1d: return "#d6604d";
    case FixedPointClass::saddle: return "#1b7837";
    case FixedPointClass::saddle_node_1: return "#e08214";
    case FixedPointClass::saddle_node_2: return "#8073ac";
    case FixedPointClass::codim2: return "#000000";
    case FixedPointClass::center: return "#c51b7d";
    case FixedPointClass::degenerate:
    case FixedPointClass::half_stable_1d: return "#878787";
  }
  return "#878787";
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  Box region;
  double margin = 10.0;
  double size = 600.0;

  double px(double x) const { return margin + (x - region.lo) / region.width() * size; }
  double py(double y) const { return margin + (region.hi - y) / region.width() * size; }
  double scale() const { return size / region.width(); }
};

void path_from(std::ostream& os, const Frame& fr, const Polyline& line) {
  os << "M";
  for (std::size_t k = 0; k < line.size(); ++k) {
    if (k > 0) os << " L";
    os << num(fr.px(line[k][0])) << ',' << num(fr.py(line[k][1]));
  }
}

void speed_background(std::ostream& os, const GruParams& p, const PortraitSpec& s,
                      const Frame& fr) {
  const int n = s.resolution;
  const double cell = s.region.width() / n;
  std::vector<double> logs(static_cast<std::size_t>(n) * n);
  Vec h(2);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      h << s.region.lo + (i + 0.5) * cell, s.region.lo + (j + 0.5) * cell;
      logs[static_cast<std::size_t>(j) * n + i] =
          std::log10(std::max(vector_field(p, h).norm(), 1e-12));
    }
  const auto [mn, mx] = std::minmax_element(logs.begin(), logs.end());
  const double lo = *mn;
  const double span = *mx - *mn;
  const double px_cell = cell * fr.scale();

  os << "<g class=\"speed\" shape-rendering=\"crispEdges\">\n";
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double v = logs[static_cast<std::size_t>(j) * n + i];
      const int level =
          span > 1e-12 ? std::min(kSpeedLevels - 1, static_cast<int>((v - lo) / span * kSpeedLevels))
                       : 0;
      const double x0 = s.region.lo + i * cell;
      const double y1 = s.region.lo + (j + 1) * cell;
      os << "<rect x=\"" << num(fr.px(x0)) << "\" y=\"" << num(fr.py(y1)) << "\" width=\""
         << num(px_cell) << "\" height=\"" << num(px_cell) << "\" fill=\"" << speed_color(level)
         << "\"/>\n";
    }
  os << "</g>\n";
  os << "<desc class=\"speed-range\">log10 speed " << num(lo) << " to " << num(lo + span)
     << " in " << kSpeedLevels << " levels</desc>\n";
}

void homoclinic_overlay(std::ostream& os, const HomoclinicScan& scan, const Frame& fr) {
  const double step = scan.region.width() / (scan.grid_n - 1);
  const double w = step * fr.scale();
  for (int label = 1; label <= scan.regions; ++label) {
    os << "<g class=\"homoclinic-region\" data-region=\"" << label
       << "\" fill=\"#ffd700\" fill-opacity=\"0.45\" stroke=\"none\">\n";
    for (int j = 0; j < scan.grid_n; ++j)
      for (int i = 0; i < scan.grid_n; ++i) {
        if (scan.labels[static_cast<std::size_t>(j * scan.grid_n + i)] != label) continue;
        os << "<rect x=\"" << num(fr.px(scan.x(i) - 0.5 * step)) << "\" y=\""
           << num(fr.py(scan.y(j) + 0.5 * step)) << "\" width=\"" << num(w) << "\" height=\""
           << num(w) << "\"/>\n";
      }
    os << "</g>\n";
  }
}

void arrows(std::ostream& os, const GruParams& p, const PortraitSpec& s, const Frame& fr) {
  if (s.arrows == 0) return;
  const double cell = s.region.width() / s.arrows;
  const double len = 0.6 * cell;
  os << "<g class=\"arrows\" stroke=\"#ffffff\" stroke-opacity=\"0.7\" stroke-width=\"1\" "
        "marker-end=\"url(#head)\">\n";
  Vec h(2);
  for (int j = 0; j < s.arrows; ++j)
    for (int i = 0; i < s.arrows; ++i) {
      h << s.region.lo + (i + 0.5) * cell, s.region.lo + (j + 0.5) * cell;
      const Vec f = vector_field(p, h);
      const double n = f.norm();
      if (n < 1e-12) continue;
      const Vec a = h - 0.5 * len * f / n;
      const Vec b = h + 0.5 * len * f / n;
      os << "<line x1=\"" << num(fr.px(a[0])) << "\" y1=\"" << num(fr.py(a[1])) << "\" x2=\""
         << num(fr.px(b[0])) << "\" y2=\"" << num(fr.py(b[1])) << "\"/>\n";
    }
  os << "</g>\n";
}

void trajectories(std::ostream& os, const GruParams& p, const PortraitSpec& s, const Frame& fr) {
  if (s.seeds_n == 0) return;
  IntegratorConfig cfg;
  cfg.dt = s.traj_dt;
  cfg.max_steps = std::max(1L, std::lround(s.traj_time / s.traj_dt));
  cfg.region = s.region;
  os << "<g class=\"trajectories\" fill=\"none\" stroke=\"#ffffff\" stroke-width=\"1\">\n";
  for (const Vec& seed : seed_lattice(2, s.region, s.seeds_n)) {
    const Trajectory traj = integrate(p, seed, cfg);
    Polyline line;
    line.reserve(traj.size());
    for (const Vec& h : traj.states) line.push_back({h[0], h[1]});
    os << "<path d=\"";
    path_from(os, fr, line);
    os << "\"/>\n";
  }
  os << "</g>\n";
}

void nullcline_layer(std::ostream& os, const std::vector<Polyline>& lines, const char* cls,
                     const char* color, const Frame& fr) {
  os << "<g class=\"" << cls << "\" fill=\"none\" stroke=\"" << color
     << "\" stroke-width=\"2\">\n";
  for (const Polyline& line : lines) {
    os << "<path d=\"";
    path_from(os, fr, line);
    os << "\"/>\n";
  }
  os << "</g>\n";
}

}  // namespace

std::string render_portrait(const GruParams& params, const PortraitSpec& spec,
                            const Json& extra_config) {
  spec.validate();
  if (params.dim() != 2) throw DimensionError("phase portraits require d = 2");
  params.validate();

  Frame fr{spec.region, 10.0, static_cast<double>(spec.size_px)};
  FixedPointOptions fopts = spec.fixed_points;
  fopts.region = spec.region;
  const std::vector<FixedPoint> fps =
      spec.show_fixed_points ? find_fixed_points(params, fopts) : std::vector<FixedPoint>{};

  std::optional<LimitCycle> cycle;
  if (spec.show_cycle) {
    IntegratorConfig ccfg = limit_cycle_config();
    ccfg.region = spec.region;
    cycle = detect_limit_cycle(params, ccfg);
  }

  // Legend entries, one per class present, in enum order.
  std::map<int, std::pair<std::string, int>> legend;
  for (const FixedPoint& fp : fps) {
    auto& e = legend[static_cast<int>(fp.cls.kind)];
    e.first = to_string(fp.cls.kind);
    ++e.second;
  }
  const double legend_h = 18.0 * static_cast<double>(legend.size() + 1);
  const double width = spec.size_px + 2 * fr.margin;
  const double height = width + legend_h;

  Json meta = extra_config;
  meta["portrait"] = to_json(spec);
  meta["params"] = to_json(params);

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
     << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n";
  os << "<metadata id=\"grudyn-config\">" << xml_escape(meta.dump()) << "</metadata>\n";
  os << "<defs>\n<clipPath id=\"plot\"><rect x=\"" << num(fr.margin) << "\" y=\""
     << num(fr.margin) << "\" width=\"" << num(fr.size) << "\" height=\"" << num(fr.size)
     << "\"/></clipPath>\n"
     << "<marker id=\"head\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"5\" "
        "markerHeight=\"5\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#ffffff\"/>"
        "</marker>\n</defs>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  os << "<g clip-path=\"url(#plot)\">\n";

  speed_background(os, params, spec, fr);
  if (spec.homoclinic) homoclinic_overlay(os, *spec.homoclinic, fr);
  arrows(os, params, spec, fr);
  if (spec.show_trajectories) trajectories(os, params, spec, fr);
  if (spec.show_nullclines) {
    const Nullclines nc = nullclines(params, spec.region, spec.nullcline_resolution);
    nullcline_layer(os, nc.x, "nullcline-x", "#00bfff", fr);
    nullcline_layer(os, nc.y, "nullcline-y", "#ff8c00", fr);
  }
  if (cycle) {
    os << "<path class=\"limit-cycle\" fill=\"none\" stroke=\"#ff00ff\" stroke-width=\"3\" d=\"";
    path_from(os, fr, cycle->points);
    os << "\"/>\n";
  }
  os << "<g class=\"fixed-points\" stroke=\"#ffffff\" stroke-width=\"1.5\">\n";
  for (const FixedPoint& fp : fps) {
    const std::string name = to_string(fp.cls.kind);
    os << "<circle class=\"fixed-point " << name << "\" cx=\"" << num(fr.px(fp.location[0]))
       << "\" cy=\"" << num(fr.py(fp.location[1])) << "\" r=\"5\" fill=\""
       << class_color(fp.cls.kind) << "\"><title>" << name << " (" << fp.location[0] << ", "
       << fp.location[1] << ")</title></circle>\n";
  }
  os << "</g>\n</g>\n";

  os << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  double y = width + 14.0;
  os << "<text x=\"" << num(fr.margin) << "\" y=\"" << num(y) << "\">" << fps.size()
     << " fixed points" << (cycle ? ", limit cycle" : "") << "</text>\n";
  for (const auto& [kind, entry] : legend) {
    y += 18.0;
    os << "<circle cx=\"" << num(fr.margin + 5) << "\" cy=\"" << num(y - 4) << "\" r=\"5\" fill=\""
       << class_color(static_cast<FixedPointClass>(kind)) << "\"/>";
    os << "<text x=\"" << num(fr.margin + 16) << "\" y=\"" << num(y) << "\">" << entry.first
       << ": " << entry.second << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace grudyn::cli
