#include "grudyn/homoclinic.hpp"

#include "grudyn/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace grudyn {

namespace {

struct EndResult {
  int target = -1;          // fixed point reached, -1 otherwise
  double max_distance = 0;  // farthest excursion from that point along the branch
};

int nearest(const std::vector<FixedPoint>& fps, const Vec& h, double tol) {
  for (std::size_t k = 0; k < fps.size(); ++k)
    if ((fps[k].location - h).norm() < tol) return static_cast<int>(k);
  return -1;
}

EndResult follow(const GruParams& params, const Vec& h0, Direction dir,
                 const std::vector<FixedPoint>& fps, const HomoclinicOptions& opts) {
  const long steps = static_cast<long>(std::ceil(opts.horizon / opts.dt));
  const double far = 10.0 * std::max(std::abs(opts.region.lo), std::abs(opts.region.hi));
  std::vector<double> reach(fps.size(), 0.0);
  auto update = [&](const Vec& h) {
    for (std::size_t k = 0; k < fps.size(); ++k)
      reach[k] = std::max(reach[k], (fps[k].location - h).norm());
  };
  Vec h = h0;
  update(h);
  for (long k = 0; k <= steps; ++k) {
    const int t = nearest(fps, h, opts.capture_tol);
    if (t >= 0) return {t, reach[static_cast<std::size_t>(t)]};
    if (k == steps) break;
    h = step(params, h, opts.dt, Method::rk4, dir);
    if (!h.allFinite() || (h.array().abs() > far).any()) break;
    update(h);
  }
  return {};
}

}  // namespace

HomoclinicScan homoclinic_scan(const GruParams& params, const HomoclinicOptions& opts) {
  params.validate();
  if (params.dim() != 2) throw DimensionError("homoclinic scan requires d = 2");
  if (opts.grid_n < 2) throw ConfigError("grid_n must be at least 2");
  if (!(opts.dt > 0.0) || !(opts.horizon > 0.0)) throw ConfigError("dt and horizon must be positive");

  HomoclinicScan scan;
  scan.grid_n = opts.grid_n;
  scan.region = opts.region;
  FixedPointOptions fpo = opts.fixed_points;
  fpo.region = opts.region;
  scan.fixed_points = find_fixed_points(params, fpo);

  const auto n = static_cast<std::size_t>(opts.grid_n);
  scan.mask.assign(n * n, 0);
  scan.target.assign(n * n, -1);
  parallel_for(n * n, [&](std::size_t idx) {
    const int i = static_cast<int>(idx % n), j = static_cast<int>(idx / n);
    Vec h0(2);
    h0 << scan.x(i), scan.y(j);
    const EndResult fwd = follow(params, h0, Direction::forward, scan.fixed_points, opts);
    if (fwd.target < 0) return;
    const EndResult bwd = follow(params, h0, Direction::backward, scan.fixed_points, opts);
    if (bwd.target != fwd.target) return;
    if (std::max(fwd.max_distance, bwd.max_distance) <= opts.leave_radius) return;
    scan.mask[idx] = 1;
    scan.target[idx] = fwd.target;
  });

  auto [labels, count] = label_components(scan.mask, opts.grid_n, opts.grid_n);
  scan.labels = std::move(labels);
  scan.regions = count;
  scan.region_sizes.assign(static_cast<std::size_t>(count), 0);
  for (int l : scan.labels)
    if (l > 0) ++scan.region_sizes[static_cast<std::size_t>(l - 1)];
  return scan;
}

std::pair<std::vector<int>, int> label_components(const std::vector<std::uint8_t>& mask, int nx,
                                                  int ny) {
  if (static_cast<long>(mask.size()) != static_cast<long>(nx) * ny)
    throw ShapeError("mask size mismatch");
  std::vector<int> labels(mask.size(), 0);
  int count = 0;
  std::vector<int> stack;
  for (int start = 0; start < nx * ny; ++start) {
    if (!mask[start] || labels[start]) continue;
    labels[start] = ++count;
    stack.push_back(start);
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      const int i = c % nx, j = c / nx;
      const int nb[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
      for (const auto& q : nb) {
        if (q[0] < 0 || q[0] >= nx || q[1] < 0 || q[1] >= ny) continue;
        const int k = q[1] * nx + q[0];
        if (mask[k] && !labels[k]) {
          labels[k] = count;
          stack.push_back(k);
        }
      }
    }
  }
  return {labels, count};
}

std::vector<int> run_length_encode(const std::vector<std::uint8_t>& mask) {
  std::vector<int> runs;
  std::uint8_t cur = 0;
  int len = 0;
  for (std::uint8_t v : mask) {
    const std::uint8_t b = v ? 1 : 0;
    if (b == cur) {
      ++len;
    } else {
      runs.push_back(len);
      cur = b;
      len = 1;
    }
  }
  runs.push_back(len);
  return runs;
}

std::vector<std::uint8_t> run_length_decode(const std::vector<int>& runs) {
  std::vector<std::uint8_t> mask;
  std::uint8_t cur = 0;
  for (int r : runs) {
    mask.insert(mask.end(), static_cast<std::size_t>(r), cur);
    cur ^= 1;
  }
  return mask;
}

}  // namespace grudyn
