#pragma once

#include <json.hpp>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fpp/ball.hpp"
#include "fpp/geodesic.hpp"
#include "fpp/lattice.hpp"
#include "fpp/mean_ball.hpp"
#include "fpp/russo.hpp"
#include "fpp/shape.hpp"
#include "fpp/stats.hpp"

namespace fpp {

using json = nlohmann::json;

class IoError : public Error {
 public:
  using Error::Error;
};

/// Text sink that gzips when the path ends in ".gz". The gzip header
/// carries no timestamp, so equal content gives equal bytes.
class TextSink {
 public:
  explicit TextSink(const std::filesystem::path& path);
  ~TextSink();
  TextSink(const TextSink&) = delete;
  TextSink& operator=(const TextSink&) = delete;

  void write(std::string_view s);
  void line(std::string_view s) {
    write(s);
    write("\n");
  }
  void close();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::string read_text(const std::filesystem::path& path);
/// Reads plain or gzipped text.
std::string read_maybe_gz(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);
json read_json(const std::filesystem::path& path);

/// Shortest round-trip decimal form.
std::string format_double(double x);
/// "x0 x1 ..." for the first d coordinates.
std::string format_vertex(const Vertex& v, int d);

json to_json(const Vertex& v, int d);
json to_json(const Box& b);
json config_json(const Configuration& cfg);

/// Ball export: CSV rows (x0.., time, role) with role in {interior, inner,
/// outer}, and the sidecar summary.
void write_ball_csv(const std::filesystem::path& path, const Ball& ball);
json ball_sidecar(const Ball& ball, const Configuration& cfg);

void write_route_csv(const std::filesystem::path& path, const GeodesicField& field);
json route_summary(const GeodesicField& field, const std::vector<BadCubeReport>& cubes);

json to_json(const ShapeEstimate& s);
ShapeEstimate shape_from_json(const json& j);

json to_json(const DerivativeReport& r, bool include_raw = true);
json to_json(const ScalingFit& f);

/// Mean ball export: CSV rows (x0.., mean, unknown, member) over vertices
/// seen by at least one replicate, plus a summary.
void write_mean_ball_csv(const std::filesystem::path& path, const MeanBall& mb);
json mean_ball_summary(const MeanBall& mb);

/// NaN and infinities become null.
json number_or_null(double x);

}  // namespace fpp
