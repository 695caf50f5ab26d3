#pragma once

#include "grudyn/gru.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace grudyn {

enum class FixedPointClass {
  sink_node,
  sink_spiral,
  source_node,
  source_spiral,
  saddle,
  saddle_node_1,  // saddle merged with a stable node
  saddle_node_2,  // saddle merged with an unstable node
  codim2,         // double zero eigenvalue
  center,         // imaginary pair with |Re| <= zero_tol
  degenerate,     // d > 2 with an eigenvalue inside the zero band
  stable_1d,
  unstable_1d,
  half_stable_1d,
};

std::string to_string(FixedPointClass c);
bool is_sink(FixedPointClass c);
bool is_source(FixedPointClass c);

struct Classification {
  FixedPointClass kind = FixedPointClass::sink_node;
  double zero_tol = 1e-4;
  std::vector<std::complex<double>> eigenvalues;
  // For degenerate points: sign of v.F(h + s*delta*v) for s = -1, +1 along
  // each near-null eigenvector v. Empty otherwise.
  std::vector<int> probe_signs;
};

struct FixedPoint {
  Vec location;
  double residual = 0.0;
  Mat jacobian;
  Classification cls;

  const std::vector<std::complex<double>>& eigenvalues() const { return cls.eigenvalues; }
};

struct FixedPointOptions {
  Box region{};
  int grid_n = 40;            // seeds per axis (d <= 2); random-free lattice
  double zero_tol = 1e-4;
  double residual_tol = 1e-10;
  double dedup_tol = 1e-6;
  int max_iter = 100;
  double probe_delta = 1e-2;

  void validate() const;
};

/// Damped Newton from h0 with a Levenberg-Marquardt fallback near singular
/// Jacobians. Returns the polished point when |F| < residual_tol.
std::optional<Vec> newton_solve(const GruParams& params, const Vec& h0,
                                const FixedPointOptions& opts = {});

/// Throws NotAFixedPoint if |F(h)| >= residual_tol.
Classification classify_fixed_point(const GruParams& params, const Vec& h, double zero_tol = 1e-4,
                                    double residual_tol = 1e-10, double probe_delta = 1e-2);

/// All fixed points reachable from a grid of seeds, deduplicated, inside the
/// region, sorted lexicographically by location.
std::vector<FixedPoint> find_fixed_points(const GruParams& params,
                                          const FixedPointOptions& opts = {});

struct TopologySignature {
  int total = 0;
  int sinks = 0;
  int sources = 0;
  int saddles = 0;
  int saddle_node_1 = 0;
  int saddle_node_2 = 0;
  int codim2 = 0;
  int other = 0;  // centers, higher-dimensional degenerate points, 1D half-stable

  bool operator==(const TopologySignature&) const = default;
  std::string to_string() const;
};

TopologySignature topology_signature(const std::vector<FixedPoint>& points);

/// Seed lattice: grid_n^d points evenly spaced over the region, vertices included.
std::vector<Vec> seed_lattice(int d, const Box& region, int grid_n);

}  // namespace grudyn
