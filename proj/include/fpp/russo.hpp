#pragma once

#include <cstdint>
#include <vector>

#include "fpp/lattice.hpp"
#include "fpp/region.hpp"

namespace fpp {

/// T_Gamma at p and at p - h on the same edge uniforms.
struct CoupledDelta {
  std::int64_t time_p = 0;
  std::int64_t time_alt = 0;
  /// time_alt - time_p; never negative under the coupling.
  std::int64_t delta = 0;
  /// K_Gamma of the p-run.
  std::int64_t pivotal = 0;
  /// Route edges of the p-run whose uniform lies in [p - h, p); these are
  /// the only edges that can turn from 0 to 1, so delta <= flip_bound.
  std::int64_t flip_bound = 0;
};

CoupledDelta coupled_delta(const Configuration& cfg, const Region& region, double h);

struct DerivativeReport {
  double p = 0;
  double h = 0;
  int reps = 0;
  std::uint64_t seed_base = 0;
  std::vector<std::int64_t> deltas;
  std::vector<std::int64_t> pivotals;
  double mean_delta = 0;
  double se_delta = 0;
  double mean_K = 0;
  double se_K = 0;
  /// mean_delta / h - mean_K and its paired standard error.
  double difference = 0;
  double se_difference = 0;
  double z_score = 0;
  /// False with fewer than two replicates; z_score is then NaN.
  bool stderr_defined = false;
  std::int64_t min_delta = 0;
  std::int64_t bound_violations = 0;
  bool pass = false;
  /// The same comparison against mean_K / (1 - p), the derivative of E T
  /// once the weight-1 condition in K is accounted for.
  double corrected_difference = 0;
  double corrected_se = 0;
  double corrected_z = 0;
  bool corrected_pass = false;
};

DerivativeReport derivative_report(double p, double h, const Region& region, int reps, std::uint64_t seed_base = 1,
                                   int workers = 1);

}  // namespace fpp
