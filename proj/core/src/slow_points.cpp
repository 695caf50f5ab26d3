#include "grudyn/slow_points.hpp"

#include "grudyn/fixed_points.hpp"
#include "grudyn/parallel.hpp"

#include <algorithm>
#include <optional>

namespace grudyn {

namespace {

std::optional<SlowPoint> descend(const GruParams& params, const Vec& h0,
                                 const SlowPointOptions& opts) {
  Vec h = h0;
  Vec f = vector_field(params, h);
  double cost = f.squaredNorm();
  double mu = 1e-3;
  for (int it = 0; it < opts.max_iter; ++it) {
    const Mat J = jacobian(params, h);
    const Vec g = J.transpose() * f;
    if (g.norm() < 1e-3 * opts.gradient_tol) break;
    bool moved = false;
    for (int k = 0; k < 30; ++k) {
      Mat A = J.transpose() * J;
      A.diagonal().array() += mu;
      const Vec trial = h - A.ldlt().solve(g);
      const Vec ft = vector_field(params, trial);
      const double ct = ft.squaredNorm();
      if (ct < cost) {
        h = trial;
        f = ft;
        cost = ct;
        mu = std::max(mu * 0.3, 1e-15);
        moved = true;
        break;
      }
      mu *= 10.0;
    }
    if (!moved) break;
    if (!opts.region.contains(h, 0.5 * opts.region.width())) return std::nullopt;
  }
  SlowPoint sp;
  sp.location = h;
  sp.speed = f.norm();
  sp.gradient = (jacobian(params, h).transpose() * f).norm();
  return sp;
}

}  // namespace

std::vector<SlowPoint> find_slow_points(const GruParams& params, const SlowPointOptions& opts) {
  params.validate();
  opts.region.validate();
  if (params.dim() > 2) throw DimensionError("slow point search supports d <= 2");
  const std::vector<Vec> seeds = seed_lattice(params.dim(), opts.region, opts.grid_n);
  std::vector<std::optional<SlowPoint>> found(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) { found[i] = descend(params, seeds[i], opts); });

  std::vector<SlowPoint> out;
  for (const auto& sp : found) {
    if (!sp || !opts.region.contains(sp->location)) continue;
    if (!(sp->speed > opts.floor) || sp->speed > opts.slow_threshold) continue;
    if (sp->gradient > opts.gradient_tol) continue;
    auto dup = std::find_if(out.begin(), out.end(), [&](const SlowPoint& q) {
      return (q.location - sp->location).norm() < opts.dedup_tol;
    });
    if (dup == out.end())
      out.push_back(*sp);
    else if (sp->speed < dup->speed)
      *dup = *sp;
  }
  std::sort(out.begin(), out.end(), [](const SlowPoint& a, const SlowPoint& b) {
    return std::lexicographical_compare(a.location.begin(), a.location.end(), b.location.begin(),
                                        b.location.end());
  });
  return out;
}

}  // namespace grudyn
