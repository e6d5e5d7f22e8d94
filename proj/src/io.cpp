#include "fpp/io.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fpp {

struct TextSink::Impl {
  gzFile gz = nullptr;
  std::FILE* plain = nullptr;
  std::string path;
};

TextSink::TextSink(const std::filesystem::path& path) : impl_(std::make_unique<Impl>()) {
  impl_->path = path.string();
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const bool gz = impl_->path.size() > 3 && impl_->path.ends_with(".gz");
  if (gz) {
    impl_->gz = gzopen(impl_->path.c_str(), "wb6");
    if (impl_->gz == nullptr) throw IoError("cannot open " + impl_->path + " for writing");
  } else {
    impl_->plain = std::fopen(impl_->path.c_str(), "wb");
    if (impl_->plain == nullptr) throw IoError("cannot open " + impl_->path + " for writing");
  }
}

TextSink::~TextSink() {
  try {
    close();
  } catch (...) {
  }
}

void TextSink::write(std::string_view s) {
  if (s.empty()) return;
  if (impl_->gz != nullptr) {
    if (gzwrite(impl_->gz, s.data(), static_cast<unsigned>(s.size())) != static_cast<int>(s.size())) {
      throw IoError("write failed: " + impl_->path);
    }
  } else if (impl_->plain != nullptr) {
    if (std::fwrite(s.data(), 1, s.size(), impl_->plain) != s.size()) throw IoError("write failed: " + impl_->path);
  } else {
    throw IoError("write after close: " + impl_->path);
  }
}

void TextSink::close() {
  if (impl_->gz != nullptr) {
    const int rc = gzclose(impl_->gz);
    impl_->gz = nullptr;
    if (rc != Z_OK) throw IoError("close failed: " + impl_->path);
  }
  if (impl_->plain != nullptr) {
    const int rc = std::fclose(impl_->plain);
    impl_->plain = nullptr;
    if (rc != 0) throw IoError("close failed: " + impl_->path);
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string read_maybe_gz(const std::filesystem::path& path) {
  gzFile gz = gzopen(path.string().c_str(), "rb");  // also reads plain files
  if (gz == nullptr) throw IoError("cannot read " + path.string());
  std::string out;
  char buf[1 << 16];
  int n;
  while ((n = gzread(gz, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(n));
  gzclose(gz);
  if (n < 0) throw IoError("read failed: " + path.string());
  return out;
}

void write_json(const std::filesystem::path& path, const json& j) {
  TextSink out(path);
  out.line(j.dump(2));
  out.close();
}

json read_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string format_vertex(const Vertex& v, int d) {
  std::string s;
  for (int a = 0; a < d; ++a) {
    if (a) s += ' ';
    s += std::to_string(v[a]);
  }
  return s;
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json to_json(const Vertex& v, int d) {
  json j = json::array();
  for (int a = 0; a < d; ++a) j.push_back(v[a]);
  return j;
}

json to_json(const Box& b) { return {{"lo", to_json(b.lo(), b.dim())}, {"hi", to_json(b.hi(), b.dim())}}; }

json config_json(const Configuration& cfg) {
  return {{"d", cfg.dim()}, {"p", cfg.p()}, {"seed", cfg.seed()}, {"box", to_json(cfg.box())}};
}

void write_ball_csv(const std::filesystem::path& path, const Ball& ball) {
  const int d = ball.dim();
  TextSink out(path);
  std::string head;
  for (int a = 0; a < d; ++a) head += "x" + std::to_string(a) + ",";
  out.line(head + "time,role");
  std::vector<std::uint8_t> role(static_cast<std::size_t>(ball.box().volume()), 0);
  for (auto i : ball.inner_boundary()) role[static_cast<std::size_t>(i)] = 1;
  std::vector<std::int64_t> rows(ball.members().begin(), ball.members().end());
  for (auto i : ball.outer_boundary()) {
    role[static_cast<std::size_t>(i)] = 2;
    rows.push_back(i);
  }
  std::sort(rows.begin(), rows.end());
  static constexpr const char* kRole[] = {"interior", "inner", "outer"};
  std::string line;
  for (auto i : rows) {
    const Vertex v = ball.box().vertex(i);
    line.clear();
    for (int a = 0; a < d; ++a) {
      line += std::to_string(v[a]);
      line += ',';
    }
    line += std::to_string(ball.time_at(i));
    line += ',';
    line += kRole[role[static_cast<std::size_t>(i)]];
    out.line(line);
  }
  out.close();
}

json ball_sidecar(const Ball& ball, const Configuration& cfg) {
  return {{"t", ball.t()},
          {"config", config_json(cfg)},
          {"ball_size", ball.size()},
          {"inner_boundary_size", ball.inner_boundary().size()},
          {"outer_boundary_size", ball.outer_boundary().size()}};
}

void write_route_csv(const std::filesystem::path& path, const GeodesicField& field) {
  const Box& box = field.box;
  const int d = box.dim();
  TextSink out(path);
  out.line("u,v,weight,on_min_route");
  for (const auto& e : field.route_edges) {
    auto u = e.base, v = e.base + box.stride(e.axis);
    // Orient unit edges along increasing passage time.
    if (field.forward[static_cast<std::size_t>(v)] < field.forward[static_cast<std::size_t>(u)]) std::swap(u, v);
    out.line(format_vertex(box.vertex(u), d) + "," + format_vertex(box.vertex(v), d) + "," + std::to_string(e.weight) +
             "," + (e.on_min_route ? "1" : "0"));
  }
  out.close();
}

json route_summary(const GeodesicField& field, const std::vector<BadCubeReport>& cubes) {
  json dk = json::object();
  for (const auto& c : cubes) dk[std::to_string(c.k)] = {{"occupied", c.occupied}, {"bad", c.bad}};
  return {{"total", field.total},
          {"K", field.pivotal_count},
          {"n_min", field.n_min},
          {"n_max", field.n_max},
          {"n_max_exact", field.n_max_exact},
          {"R", field.route_vertex_count},
          {"route_edges", field.route_edges.size()},
          {"D_by_k", dk}};
}

json to_json(const ShapeEstimate& s) {
  json dirs = json::array(), mu = json::array(), se = json::array(), ladder = json::array();
  for (const auto& e : s.directions) {
    dirs.push_back(e.direction);
    mu.push_back(number_or_null(e.mu_hat));
    se.push_back(number_or_null(e.se));
    json l = json::array();
    for (const auto& pt : e.ladder) l.push_back({{"n", pt.n}, {"mean", number_or_null(pt.mean)}, {"stderr", number_or_null(pt.se)}});
    ladder.push_back(std::move(l));
  }
  const auto& P = s.polytope;
  json normals = json::array(), verts = json::array();
  for (std::size_t f = 0; f < P.facets(); ++f) {
    const auto n = P.normal(f);
    normals.push_back(std::vector<double>(n.begin(), n.end()));
  }
  const auto vs = P.vertices();
  for (std::size_t i = 0; i < P.vertex_count(); ++i) {
    verts.push_back(std::vector<double>(vs.begin() + static_cast<std::ptrdiff_t>(i * static_cast<std::size_t>(s.d)),
                                        vs.begin() + static_cast<std::ptrdiff_t>((i + 1) * static_cast<std::size_t>(s.d))));
  }
  return {{"d", s.d},
          {"p", s.p},
          {"n_max", s.n_max},
          {"reps", s.reps},
          {"seed_base", s.seed_base},
          {"directions", dirs},
          {"mu_hat", mu},
          {"stderr", se},
          {"n_used", s.directions.empty() ? 0 : s.directions.front().n_used},
          {"ladder", ladder},
          {"polytope",
           {{"normals", normals},
            {"offsets", std::vector<double>(P.offsets().begin(), P.offsets().end())},
            {"vertices", verts}}}};
}

ShapeEstimate shape_from_json(const json& j) {
  try {
    ShapeEstimate s;
    s.d = j.at("d").get<int>();
    s.p = j.at("p").get<double>();
    s.n_max = j.value("n_max", std::int64_t{0});
    s.reps = j.value("reps", 0);
    s.seed_base = j.value("seed_base", std::uint64_t{0});
    const auto& dirs = j.at("directions");
    const auto& mu = j.at("mu_hat");
    if (dirs.size() != mu.size()) throw InvalidArgument("shape file: directions and mu_hat differ in length");
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      DirectionEstimate e;
      e.direction = dirs[i].get<std::vector<double>>();
      e.mu_hat = mu[i].get<double>();
      if (j.contains("stderr") && j["stderr"][i].is_number()) e.se = j["stderr"][i].get<double>();
      s.directions.push_back(std::move(e));
    }
    if (j.contains("polytope")) {
      const auto& P = j["polytope"];
      std::vector<double> normals, offsets = P.at("offsets").get<std::vector<double>>(), verts;
      for (const auto& n : P.at("normals")) {
        for (double c : n.get<std::vector<double>>()) normals.push_back(c);
      }
      for (const auto& v : P.at("vertices")) {
        for (double c : v.get<std::vector<double>>()) verts.push_back(c);
      }
      s.polytope = ConvexPolytope(s.d, std::move(normals), std::move(offsets), std::move(verts));
    } else {
      s.polytope = shape_polytope(s.d, s.directions);
    }
    return s;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("shape file: ") + e.what());
  }
}

json to_json(const DerivativeReport& r, bool include_raw) {
  json j = {{"p", r.p},
            {"h", r.h},
            {"reps", r.reps},
            {"seed_base", r.seed_base},
            {"mean_delta", number_or_null(r.mean_delta)},
            {"stderr_delta", number_or_null(r.se_delta)},
            {"mean_K", number_or_null(r.mean_K)},
            {"stderr_K", number_or_null(r.se_K)},
            {"rate", number_or_null(r.mean_delta / r.h)},
            {"difference", number_or_null(r.difference)},
            {"stderr_difference", number_or_null(r.se_difference)},
            {"z_score", number_or_null(r.z_score)},
            {"stderr_defined", r.stderr_defined},
            {"min_delta", r.min_delta},
            {"delta_nonnegative", r.min_delta >= 0},
            {"bound_violations", r.bound_violations},
            {"pass", r.pass},
            {"corrected",
             {{"target", number_or_null(r.mean_K / (1 - r.p))},
              {"difference", number_or_null(r.corrected_difference)},
              {"stderr", number_or_null(r.corrected_se)},
              {"z_score", number_or_null(r.corrected_z)},
              {"pass", r.corrected_pass}}}};
  if (include_raw) {
    j["deltas"] = r.deltas;
    j["K"] = r.pivotals;
  }
  return j;
}

json to_json(const ScalingFit& f) {
  json j = {{"series", f.series},
            {"model", to_string(f.model)},
            {"n", f.n},
            {"weighted", f.weighted},
            {"intercept", number_or_null(f.intercept)},
            {"intercept_stderr", number_or_null(f.intercept_se)},
            {"intercept_ci", {number_or_null(f.intercept_ci_low), number_or_null(f.intercept_ci_high)}},
            {"slope", number_or_null(f.slope)},
            {"slope_stderr", number_or_null(f.slope_se)},
            {"slope_ci", {number_or_null(f.slope_ci_low), number_or_null(f.slope_ci_high)}},
            {"confidence", f.confidence},
            {"chi2", number_or_null(f.chi2)},
            {"r2", number_or_null(f.r2)}};
  if (f.model == FitModel::kPower) {
    j["chi"] = number_or_null(f.slope);
    j["amplitude"] = number_or_null(std::exp(f.intercept));
  } else {
    j["c"] = number_or_null(f.slope);
  }
  return j;
}

void write_mean_ball_csv(const std::filesystem::path& path, const MeanBall& mb) {
  const int d = mb.box.dim();
  TextSink out(path);
  std::string head;
  for (int a = 0; a < d; ++a) head += "x" + std::to_string(a) + ",";
  out.line(head + "mean,unknown,member");
  std::string line;
  for (std::int64_t i = 0; i < mb.box.volume(); ++i) {
    const auto u = mb.unknown[static_cast<std::size_t>(i)];
    if (u == static_cast<std::uint32_t>(mb.reps)) continue;  // never reached
    const Vertex v = mb.box.vertex(i);
    line.clear();
    for (int a = 0; a < d; ++a) {
      line += std::to_string(v[a]);
      line += ',';
    }
    line += u == 0 ? format_double(mb.mean_at(i)) : std::string();
    line += ',' + std::to_string(u) + ',' + (mb.members[static_cast<std::size_t>(i)] ? "1" : "0");
    out.line(line);
  }
  out.close();
}

json mean_ball_summary(const MeanBall& mb) {
  return {{"t", mb.t},
          {"reps", mb.reps},
          {"cap", mb.cap},
          {"box", to_json(mb.box)},
          {"size", mb.size},
          {"ambiguous", mb.ambiguous},
          {"connected", mb.connected}};
}

}  // namespace fpp
