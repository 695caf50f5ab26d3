#pragma once

#include <grudyn/fixed_points.hpp>
#include <grudyn/homoclinic.hpp>
#include <grudyn/serialize.hpp>

#include <optional>
#include <string>

namespace grudyn::cli {

inline constexpr int kSpeedLevels = 64;

struct PortraitSpec {
  Box region{};
  int resolution = 64;  // speed background cells per axis
  int arrows = 16;      // direction arrows per axis
  int seeds_n = 8;      // trajectory seed lattice per axis
  double traj_time = 20.0;
  double traj_dt = 0.05;
  int nullcline_resolution = 200;
  int size_px = 600;
  bool show_nullclines = true;
  bool show_trajectories = true;
  bool show_fixed_points = true;
  bool show_cycle = true;
  FixedPointOptions fixed_points{};  // region is taken from `region`
  std::optional<HomoclinicScan> homoclinic;

  void validate() const;
};

Json to_json(const PortraitSpec& spec);

/// Deterministic SVG phase portrait of a 2D GRU. The effective configuration
/// and parameters are embedded in a <metadata> element.
std::string render_portrait(const GruParams& params, const PortraitSpec& spec,
                            const Json& extra_config = Json::object());

/// RGB hex color for speed level k in [0, kSpeedLevels).
std::string speed_color(int level);

/// Marker fill for a fixed-point class.
std::string class_color(FixedPointClass c);

}  // namespace grudyn::cli
