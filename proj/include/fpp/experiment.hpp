#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fpp/io.hpp"
#include "fpp/lattice.hpp"

namespace fpp {

/// Invalid or inconsistent experiment specification.
class SpecError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A computation failed for one (t, seed) task.
class ComputeError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kSpecVersion = 1;

struct ExperimentSpec {
  int spec_version = kSpecVersion;
  int d = 2;
  double p = 0.25;
  std::optional<double> p_c_override;

  std::vector<std::int32_t> t;
  int reps = 1;
  std::uint64_t seed_base = 1;
  int workers = 1;

  /// Region for routes: "diamond" (radius scale t), "box" (half-width
  /// scale t) or "shape" (scale t times the frozen shape).
  std::string region_kind = "diamond";
  double region_scale = 1.0;

  /// Fluctuation references, any of "shape", "meanball", "diamond", "box".
  /// l_in and l_out in the raw output refer to the first one.
  std::vector<std::string> targets{"diamond"};
  std::filesystem::path shape_file;

  int meanball_reps = 50;
  std::uint64_t meanball_seed_base = 1000000;
  double meanball_cap_factor = 1.5;
  std::int32_t meanball_cap_extra = 10;

  std::vector<int> bad_cube_k{4, 8, 16};

  std::filesystem::path output_dir = "results";
  /// "csv" or "csv.gz" for the raw tables, "json" for the aggregate.
  std::vector<std::string> formats{"csv", "json"};
};

/// Validates and fills defaults. Relative paths resolve against base_dir.
ExperimentSpec parse_spec(const json& j, const std::filesystem::path& base_dir = {});
ExperimentSpec load_spec(const std::filesystem::path& path);
json spec_to_json(const ExperimentSpec& s);

/// Runs every (t, replicate) task and writes the raw tables and the
/// aggregate into spec.output_dir. Returns the aggregate. Output bytes
/// depend only on the experiment spec, not on the worker count.
json run_sweep(const ExperimentSpec& spec, std::optional<int> workers_override = std::nullopt);

}  // namespace fpp
