#pragma once

#include "grudyn/gru.hpp"

#include <array>
#include <functional>
#include <vector>

namespace grudyn {

using Point2 = std::array<double, 2>;
using Polyline = std::vector<Point2>;

struct Nullclines {
  std::vector<Polyline> x;  // F_1 = 0
  std::vector<Polyline> y;  // F_2 = 0
};

/// Zero-level contours of each component of F over a resolution x resolution
/// grid (marching squares, linear interpolation, ambiguous cells resolved by
/// the cell-center value). Segments are stitched into maximal polylines;
/// closed curves repeat their first point at the end.
Nullclines nullclines(const GruParams& params, const Box& region = {}, int resolution = 200);

/// Contours of an arbitrary sampled scalar field; values[j * nx + i] is the
/// sample at (xs[i], ys[j]). center(i, j) returns the value at the middle of
/// cell (i, j), used only for saddle cells.
std::vector<Polyline> contour_zero(const std::vector<double>& xs, const std::vector<double>& ys,
                                   const std::vector<double>& values,
                                   const std::function<double(std::size_t, std::size_t)>& center);

/// Intersections between any segment of a and any segment of b.
std::vector<Point2> polyline_intersections(const std::vector<Polyline>& a,
                                           const std::vector<Polyline>& b);

}  // namespace grudyn
