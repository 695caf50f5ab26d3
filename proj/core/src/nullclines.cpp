#include "grudyn/nullclines.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

namespace grudyn {

namespace {

// Edges are keyed by grid geometry so neighbouring cells share endpoints
// exactly: horizontal edge (i, j)->(i+1, j), vertical edge (i, j)->(i, j+1).
std::uint64_t edge_key(std::size_t i, std::size_t j, bool vertical) {
  return (static_cast<std::uint64_t>(j) << 33) | (static_cast<std::uint64_t>(i) << 1) |
         (vertical ? 1u : 0u);
}

struct Segment {
  std::uint64_t a, b;
};

std::vector<Polyline> stitch(const std::vector<Segment>& segs,
                             const std::unordered_map<std::uint64_t, Point2>& where) {
  // Each edge point touches at most two segments.
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> touching;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    touching[segs[s].a].push_back(s);
    touching[segs[s].b].push_back(s);
  }
  std::vector<bool> used(segs.size(), false);

  auto walk = [&](std::uint64_t from, std::size_t seg, std::vector<std::uint64_t>& keys) {
    std::uint64_t at = from;
    while (true) {
      used[seg] = true;
      const std::uint64_t next = segs[seg].a == at ? segs[seg].b : segs[seg].a;
      keys.push_back(next);
      at = next;
      std::size_t follow = segs.size();
      for (std::size_t cand : touching[at])
        if (!used[cand]) follow = cand;
      if (follow == segs.size()) return;
      seg = follow;
    }
  };

  std::vector<Polyline> out;
  // Open chains first, starting from their loose ends, then closed loops.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t s = 0; s < segs.size(); ++s) {
      if (used[s]) continue;
      std::uint64_t start = segs[s].a;
      if (pass == 0) {
        if (touching[segs[s].a].size() == 1)
          start = segs[s].a;
        else if (touching[segs[s].b].size() == 1)
          start = segs[s].b;
        else
          continue;
      }
      std::vector<std::uint64_t> keys{start};
      walk(start, s, keys);
      Polyline line;
      line.reserve(keys.size());
      for (std::uint64_t k : keys) line.push_back(where.at(k));
      out.push_back(std::move(line));
    }
  }
  return out;
}

}  // namespace

std::vector<Polyline> contour_zero(const std::vector<double>& xs, const std::vector<double>& ys,
                                   const std::vector<double>& values,
                                   const std::function<double(std::size_t, std::size_t)>& center) {
  const std::size_t nx = xs.size(), ny = ys.size();
  if (values.size() != nx * ny) throw ShapeError("contour grid size mismatch");
  std::unordered_map<std::uint64_t, Point2> where;
  std::vector<Segment> segs;
  auto v = [&](std::size_t i, std::size_t j) { return values[j * nx + i]; };

  auto crossing = [&](std::size_t i, std::size_t j, bool vertical) {
    const std::uint64_t key = edge_key(i, j, vertical);
    if (where.find(key) == where.end()) {
      const double a = v(i, j);
      const double b = vertical ? v(i, j + 1) : v(i + 1, j);
      const double t = a / (a - b);
      where[key] = vertical ? Point2{xs[i], ys[j] + t * (ys[j + 1] - ys[j])}
                            : Point2{xs[i] + t * (xs[i + 1] - xs[i]), ys[j]};
    }
    return key;
  };

  for (std::size_t j = 0; j + 1 < ny; ++j) {
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      // Corners: 0 (i,j), 1 (i+1,j), 2 (i+1,j+1), 3 (i,j+1).
      const bool p0 = v(i, j) >= 0.0, p1 = v(i + 1, j) >= 0.0;
      const bool p2 = v(i + 1, j + 1) >= 0.0, p3 = v(i, j + 1) >= 0.0;
      const int mask = p0 | (p1 << 1) | (p2 << 2) | (p3 << 3);
      if (mask == 0 || mask == 15) continue;
      auto bottom = [&] { return crossing(i, j, false); };
      auto right = [&] { return crossing(i + 1, j, true); };
      auto top = [&] { return crossing(i, j + 1, false); };
      auto left = [&] { return crossing(i, j, true); };
      switch (mask) {
        case 1: case 14: segs.push_back({left(), bottom()}); break;
        case 2: case 13: segs.push_back({bottom(), right()}); break;
        case 3: case 12: segs.push_back({left(), right()}); break;
        case 4: case 11: segs.push_back({right(), top()}); break;
        case 6: case 9: segs.push_back({bottom(), top()}); break;
        case 7: case 8: segs.push_back({left(), top()}); break;
        default: {
          // Saddle cell (5 or 10): corners 0 and 2 share a sign. If the
          // center agrees with them, that diagonal is connected and the
          // contour cuts off corners 1 and 3.
          if ((center(i, j) >= 0.0) == p0) {
            segs.push_back({left(), top()});
            segs.push_back({bottom(), right()});
          } else {
            segs.push_back({left(), bottom()});
            segs.push_back({right(), top()});
          }
        }
      }
    }
  }
  return stitch(segs, where);
}

Nullclines nullclines(const GruParams& params, const Box& region, int resolution) {
  params.validate();
  region.validate();
  if (params.dim() != 2) throw DimensionError("nullclines require d = 2");
  if (resolution < 2) throw ConfigError("resolution must be at least 2");

  const auto n = static_cast<std::size_t>(resolution);
  std::vector<double> axis(n);
  for (std::size_t k = 0; k < n; ++k) axis[k] = region.lo + region.width() * k / (n - 1);

  std::vector<double> f1(n * n), f2(n * n);
  Vec h(2);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      h << axis[i], axis[j];
      const Vec f = vector_field(params, h);
      f1[j * n + i] = f[0];
      f2[j * n + i] = f[1];
    }
  }
  auto center_of = [&](int comp) {
    return [&, comp](std::size_t i, std::size_t j) {
      Vec c(2);
      c << 0.5 * (axis[i] + axis[i + 1]), 0.5 * (axis[j] + axis[j + 1]);
      return vector_field(params, c)[comp];
    };
  };
  return {contour_zero(axis, axis, f1, center_of(0)), contour_zero(axis, axis, f2, center_of(1))};
}

namespace {

bool segment_hit(const Point2& p, const Point2& p2, const Point2& q, const Point2& q2, Point2& out) {
  const double rx = p2[0] - p[0], ry = p2[1] - p[1];
  const double sx = q2[0] - q[0], sy = q2[1] - q[1];
  const double denom = rx * sy - ry * sx;
  if (denom == 0.0) return false;
  const double qpx = q[0] - p[0], qpy = q[1] - p[1];
  const double t = (qpx * sy - qpy * sx) / denom;
  const double u = (qpx * ry - qpy * rx) / denom;
  if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) return false;
  out = {p[0] + t * rx, p[1] + t * ry};
  return true;
}

}  // namespace

std::vector<Point2> polyline_intersections(const std::vector<Polyline>& a,
                                           const std::vector<Polyline>& b) {
  std::vector<Point2> hits;
  for (const Polyline& la : a) {
    for (std::size_t i = 0; i + 1 < la.size(); ++i) {
      const double ax0 = std::min(la[i][0], la[i + 1][0]), ax1 = std::max(la[i][0], la[i + 1][0]);
      const double ay0 = std::min(la[i][1], la[i + 1][1]), ay1 = std::max(la[i][1], la[i + 1][1]);
      for (const Polyline& lb : b) {
        for (std::size_t k = 0; k + 1 < lb.size(); ++k) {
          if (std::max(lb[k][0], lb[k + 1][0]) < ax0 || std::min(lb[k][0], lb[k + 1][0]) > ax1 ||
              std::max(lb[k][1], lb[k + 1][1]) < ay0 || std::min(lb[k][1], lb[k + 1][1]) > ay1)
            continue;
          Point2 p;
          if (segment_hit(la[i], la[i + 1], lb[k], lb[k + 1], p)) {
            const bool dup = std::any_of(hits.begin(), hits.end(), [&](const Point2& q) {
              return std::abs(q[0] - p[0]) < 1e-12 && std::abs(q[1] - p[1]) < 1e-12;
            });
            if (!dup) hits.push_back(p);
          }
        }
      }
    }
  }
  return hits;
}

}  // namespace grudyn
