#include "fpp/russo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fpp/edge_hash.hpp"
#include "fpp/geodesic.hpp"
#include "fpp/parallel.hpp"
#include "fpp/stats.hpp"
#include "fpp/weights.hpp"

namespace fpp {

CoupledDelta coupled_delta(const Configuration& cfg, const Region& region, double h) {
  if (!(h > 0) || !(h <= cfg.p())) throw InvalidArgument("coupled_delta: need 0 < h <= p");
  const EdgeBitsGrid bits = EdgeBitsGrid::from_config(cfg, region.box());
  const WeightGrid at_p = WeightGrid::from_bits(bits, cfg.p());
  const WeightGrid at_alt = WeightGrid::from_bits(bits, cfg.p() - h);
  const GeodesicField field = geodesic_field(at_p, region);
  CoupledDelta c;
  c.time_p = field.total;
  c.time_alt = restricted_passage_time(at_alt, region);
  c.delta = c.time_alt - c.time_p;
  c.pivotal = field.pivotal_count;
  const std::uint64_t lo = hash::threshold(cfg.p() - h), hi = hash::threshold(cfg.p());
  for (const auto& e : field.route_edges) {
    const auto b = bits.bits(e.base, e.axis);
    if (b >= lo && b < hi) ++c.flip_bound;
  }
  return c;
}

DerivativeReport derivative_report(double p, double h, const Region& region, int reps, std::uint64_t seed_base,
                                   int workers) {
  if (reps < 1) throw InvalidArgument("derivative_report: reps must be >= 1");
  std::vector<CoupledDelta> runs(static_cast<std::size_t>(reps));
  parallel_for(runs.size(), workers, [&](std::size_t r) {
    const Configuration cfg(region.dim(), p, seed_base + r, region.box());
    runs[r] = coupled_delta(cfg, region, h);
  });

  DerivativeReport rep;
  rep.p = p;
  rep.h = h;
  rep.reps = reps;
  rep.seed_base = seed_base;
  std::vector<double> delta(runs.size()), k(runs.size()), diff(runs.size()), corr(runs.size());
  rep.min_delta = std::numeric_limits<std::int64_t>::max();
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto& c = runs[r];
    rep.deltas.push_back(c.delta);
    rep.pivotals.push_back(c.pivotal);
    rep.min_delta = std::min(rep.min_delta, c.delta);
    if (c.delta > c.flip_bound) ++rep.bound_violations;
    delta[r] = static_cast<double>(c.delta);
    k[r] = static_cast<double>(c.pivotal);
    diff[r] = delta[r] / h - k[r];
    corr[r] = delta[r] / h - k[r] / (1 - p);
  }
  const Moments md = moments(delta), mk = moments(k), mdiff = moments(diff), mcorr = moments(corr);
  rep.mean_delta = md.mean;
  rep.se_delta = md.se;
  rep.mean_K = mk.mean;
  rep.se_K = mk.se;
  rep.difference = mdiff.mean;
  rep.se_difference = mdiff.se;
  rep.corrected_difference = mcorr.mean;
  rep.corrected_se = mcorr.se;
  rep.stderr_defined = reps >= 2;
  auto z = [](const Moments& m) {
    if (m.n < 2) return std::numeric_limits<double>::quiet_NaN();
    if (m.se == 0) return m.mean == 0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), m.mean);
    return m.mean / m.se;
  };
  rep.z_score = z(mdiff);
  rep.corrected_z = z(mcorr);
  rep.pass = std::abs(rep.z_score) < 3;
  rep.corrected_pass = std::abs(rep.corrected_z) < 3;
  return rep;
}

}  // namespace fpp
