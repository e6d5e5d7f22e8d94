#include "fpp/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "fpp/edge_hash.hpp"

namespace fpp {

std::int64_t l1_norm(const Vertex& v, int d) {
  std::int64_t s = 0;
  for (int i = 0; i < d; ++i) s += std::abs(static_cast<std::int64_t>(v[i]));
  return s;
}

EdgeId edge_between(const Vertex& u, const Vertex& v, int d) {
  int axis = -1;
  for (int i = 0; i < d; ++i) {
    const std::int64_t diff = static_cast<std::int64_t>(v[i]) - u[i];
    if (diff == 0) continue;
    if (axis >= 0 || (diff != 1 && diff != -1)) {
      throw InvalidArgument("edge_between: vertices are not adjacent");
    }
    axis = i;
  }
  if (axis < 0) throw InvalidArgument("edge_between: identical vertices");
  return EdgeId{u[axis] < v[axis] ? u : v, axis};
}

std::size_t EdgeIdHash::operator()(const EdgeId& e) const noexcept {
  std::uint64_t h = hash::mix64(static_cast<std::uint64_t>(e.axis) + 1);
  for (auto c : e.base.x) {
    h = hash::mix64(h + hash::kGolden * static_cast<std::uint32_t>(c));
  }
  return static_cast<std::size_t>(h);
}

Box::Box(int d, const Vertex& lo, const Vertex& hi) : d_(d), lo_(lo), hi_(hi) {
  if (d < 1 || d > kMaxDim) throw InvalidArgument("Box: dimension out of range");
  std::int64_t s = 1;
  for (int i = 0; i < kMaxDim; ++i) {
    if (i >= d) {
      lo_[i] = hi_[i] = 0;
      stride_[static_cast<std::size_t>(i)] = 0;
      continue;
    }
    if (hi_[i] < lo_[i]) throw InvalidArgument("Box: hi < lo");
    stride_[static_cast<std::size_t>(i)] = s;
    const std::int64_t ext = static_cast<std::int64_t>(hi_[i]) - lo_[i] + 1;
    if (s > std::numeric_limits<std::int64_t>::max() / ext) {
      throw InvalidArgument("Box: volume overflow");
    }
    s *= ext;
  }
  volume_ = s;
}

Box Box::centered(int d, std::int32_t radius) {
  Vertex lo{}, hi{};
  for (int i = 0; i < d; ++i) {
    lo[i] = -radius;
    hi[i] = radius;
  }
  return Box(d, lo, hi);
}

bool Box::contains(const Vertex& v) const {
  for (int i = 0; i < d_; ++i) {
    if (v[i] < lo_[i] || v[i] > hi_[i]) return false;
  }
  return true;
}

std::int64_t Box::index(const Vertex& v) const {
  std::int64_t idx = 0;
  for (int i = 0; i < d_; ++i) idx += (static_cast<std::int64_t>(v[i]) - lo_[i]) * stride_[static_cast<std::size_t>(i)];
  return idx;
}

Vertex Box::vertex(std::int64_t index) const {
  Vertex v{};
  for (int i = 0; i < d_; ++i) {
    const std::int64_t ext = extent(i);
    v[i] = static_cast<std::int32_t>(lo_[i] + index % ext);
    index /= ext;
  }
  return v;
}

bool Box::on_face(const Vertex& v) const {
  for (int i = 0; i < d_; ++i) {
    if (v[i] == lo_[i] || v[i] == hi_[i]) return true;
  }
  return false;
}

Box Box::hull(const Box& other) const {
  if (other.d_ != d_) throw InvalidArgument("Box::hull: dimension mismatch");
  Vertex lo{}, hi{};
  for (int i = 0; i < d_; ++i) {
    lo[i] = std::min(lo_[i], other.lo_[i]);
    hi[i] = std::max(hi_[i], other.hi_[i]);
  }
  return Box(d_, lo, hi);
}

Box Box::padded(std::int32_t margin) const {
  Vertex lo = lo_, hi = hi_;
  for (int i = 0; i < d_; ++i) {
    lo[i] -= margin;
    hi[i] += margin;
  }
  return Box(d_, lo, hi);
}

std::optional<double> default_critical_probability(int d) {
  switch (d) {
    case 2: return 0.5;
    case 3: return 0.2488;
    case 4: return 0.1601;
    case 5: return 0.1182;
    case 6: return 0.0942;
    default: return std::nullopt;
  }
}

Configuration::Configuration(int d, double p, std::uint64_t seed, Box box)
    : d_(d), p_(p), seed_(seed), box_(std::move(box)) {
  if (d < 2 || d > kMaxDim) throw InvalidArgument("Configuration: d must be in [2, 6]");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("Configuration: p must be in [0, 1]");
  if (box_.dim() != d) throw InvalidArgument("Configuration: box dimension differs from d");
}

Configuration Configuration::with_box(Box box) const {
  Configuration c = *this;
  if (box.dim() != d_) throw InvalidArgument("Configuration: box dimension differs from d");
  c.box_ = std::move(box);
  return c;
}

Configuration Configuration::with_seed(std::uint64_t seed) const {
  Configuration c = *this;
  c.seed_ = seed;
  return c;
}

Configuration Configuration::with_p(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("Configuration: p must be in [0, 1]");
  Configuration c = *this;
  c.p_ = p;
  return c;
}

Configuration Configuration::with_overrides(UniformOverrides overrides) const {
  Configuration c = *this;
  c.overrides_ = std::make_shared<const UniformOverrides>(std::move(overrides));
  return c;
}

void Configuration::require_subcritical(std::optional<double> p_c_override) const {
  const auto p_c = p_c_override ? p_c_override : default_critical_probability(d_);
  if (!p_c) {
    throw InvalidArgument("no default p_c for d=" + std::to_string(d_) + "; pass an override");
  }
  if (!(p_ > 0.0 && p_ < *p_c)) {
    throw InvalidArgument("p=" + std::to_string(p_) + " outside (0, p_c=" + std::to_string(*p_c) + ")");
  }
}

namespace {

std::uint64_t edge_bits_of(const Configuration& cfg, const EdgeId& e) {
  if (const auto* ov = cfg.overrides()) {
    if (auto it = ov->find(e); it != ov->end()) return hash::uniform_to_bits(it->second);
  }
  return hash::edge_bits(hash::row_key(cfg.seed(), cfg.dim(), e.axis, e.base), e.base[0]);
}

void require_in_box(const Configuration& cfg, const EdgeId& e) {
  if (!cfg.box().contains(e.base)) throw BoxExhausted("edge outside the bounding box");
}

}  // namespace

double edge_uniform(const Configuration& cfg, const EdgeId& e) {
  require_in_box(cfg, e);
  if (const auto* ov = cfg.overrides()) {
    if (auto it = ov->find(e); it != ov->end()) return it->second;
  }
  return hash::bits_to_uniform(edge_bits_of(cfg, e));
}

int edge_weight(const Configuration& cfg, const EdgeId& e) {
  return coupled_weight(cfg, e, cfg.p());
}

int coupled_weight(const Configuration& cfg, const EdgeId& e, double p_alt) {
  require_in_box(cfg, e);
  return edge_bits_of(cfg, e) < hash::threshold(p_alt) ? 0 : 1;
}

}  // namespace fpp
