#pragma once

// Equilibria of the one-dimensional GRU. The update gate only rescales the
// speed, so equilibria are the roots of
//
//   g(h) = tanh(Uh * sigmoid(Ur h + br) * h + bh) - h   on (-1, 1).
//
// Roots are located in the coordinate u = atanh(h). With a(h) the tanh
// argument, g(h) and G(u) = a(tanh u) - u share signs and roots, and
// g'(h*) = G'(u*) at every root, but G stays well conditioned when a root
// sits within 1e-16 of the boundary (large |bh|).

#include "grudyn/gru.hpp"

#include <string>
#include <vector>

namespace grudyn {

enum class RootStability { stable, unstable, half_stable };
std::string to_string(RootStability s);

struct Root1D {
  double location = 0.0;         // h*
  double boundary_margin = 1.0;  // 1 - |h*|, accurate even when h* rounds to +-1
  double slope = 0.0;            // g'(h*)
  RootStability stability = RootStability::stable;
  bool tangency = false;         // detected as a touching (double) root
};

struct Roots1DOptions {
  int grid_n = 2000;
  double zero_tol = 1e-4;       // |g'| below this is half-stable
  double tangency_tol = 1e-10;  // |G| at a critical point below this is a touching root
  double bisect_tol = 1e-12;
};

/// All equilibria of a 1D GRU, sorted ascending. Throws DimensionError if d != 1.
std::vector<Root1D> find_roots_1d(const GruParams& params, const Roots1DOptions& opts = {});
std::vector<Root1D> find_roots_1d(const GruParams& params, int grid_n);

/// g(h) for a 1D parameter set.
double root_function_1d(const GruParams& params, double h);

struct SaddleNodeTransition {
  double bh = 0.0;       // bracketed to bh_tol
  int count_before = 0;  // root count on the sweep-start side
  int count_after = 0;
};

/// Sweeps bh from bh_from to bh_to over `steps` samples and brackets every
/// change in the number of roots by bisection on the count.
std::vector<SaddleNodeTransition> scan_saddle_node_1d(const GruParams& params, double bh_from,
                                                      double bh_to, int steps,
                                                      const Roots1DOptions& opts = {},
                                                      double bh_tol = 1e-6);

}  // namespace grudyn
