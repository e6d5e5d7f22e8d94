#include "fpp/weights.hpp"

namespace fpp {

std::vector<std::uint64_t> row_keys(const Configuration& cfg, const Box& box, int axis) {
  std::vector<std::uint64_t> keys(static_cast<std::size_t>(box.rows()));
  const std::int64_t ext0 = box.extent(0);
  for (std::int64_t r = 0; r < box.rows(); ++r) {
    keys[static_cast<std::size_t>(r)] = hash::row_key(cfg.seed(), cfg.dim(), axis, box.vertex(r * ext0));
  }
  return keys;
}

namespace {

template <typename Fn>
void for_each_override_in(const Configuration& cfg, const Box& box, Fn&& fn) {
  if (!cfg.has_overrides()) return;
  for (const auto& [e, u] : *cfg.overrides()) {
    if (box.contains(e.base)) fn(box.index(e.base), e.axis, u);
  }
}

}  // namespace

EdgeBitsGrid EdgeBitsGrid::from_config(const Configuration& cfg, const Box& box, const simd::Kernels& k) {
  if (box.dim() != cfg.dim()) throw InvalidArgument("EdgeBitsGrid: dimension mismatch");
  EdgeBitsGrid g;
  g.box_ = box;
  const auto vol = static_cast<std::size_t>(box.volume());
  g.bits_.resize(vol * static_cast<std::size_t>(cfg.dim()));
  const std::int64_t ext0 = box.extent(0);
  for (int a = 0; a < cfg.dim(); ++a) {
    const auto keys = row_keys(cfg, box, a);
    for (std::int64_t r = 0; r < box.rows(); ++r) {
      k.edge_bits_row(keys[static_cast<std::size_t>(r)], box.lo()[0], static_cast<std::size_t>(ext0),
                      g.bits_.data() + a * box.volume() + r * ext0);
    }
  }
  for_each_override_in(cfg, box, [&](std::int64_t idx, int axis, double u) {
    g.bits_[static_cast<std::size_t>(axis * box.volume() + idx)] = hash::uniform_to_bits(u);
  });
  return g;
}

WeightGrid WeightGrid::from_config(const Configuration& cfg, const Box& box, const simd::Kernels& k) {
  if (box.dim() != cfg.dim()) throw InvalidArgument("WeightGrid: dimension mismatch");
  WeightGrid g(box);
  const std::uint64_t thr = hash::threshold(cfg.p());
  const std::int64_t ext0 = box.extent(0);
  for (int a = 0; a < cfg.dim(); ++a) {
    const auto keys = row_keys(cfg, box, a);
    for (std::int64_t r = 0; r < box.rows(); ++r) {
      k.edge_weight_row(keys[static_cast<std::size_t>(r)], box.lo()[0], static_cast<std::size_t>(ext0), thr,
                        static_cast<std::uint8_t>(1u << a), g.w_.data() + r * ext0);
    }
  }
  for_each_override_in(cfg, box, [&](std::int64_t idx, int axis, double u) {
    g.set_weight(idx, axis, hash::uniform_to_bits(u) < thr ? 0 : 1);
  });
  return g;
}

WeightGrid WeightGrid::from_bits(const EdgeBitsGrid& bits, double p, const simd::Kernels& k) {
  WeightGrid g(bits.box());
  const std::uint64_t thr = hash::threshold(p);
  for (int a = 0; a < bits.box().dim(); ++a) {
    const auto plane = bits.plane(a);
    k.threshold_row(plane.data(), plane.size(), thr, static_cast<std::uint8_t>(1u << a), g.w_.data());
  }
  return g;
}

void WeightGrid::set_weight(std::int64_t index, int axis, int w) {
  auto& byte = w_[static_cast<std::size_t>(index)];
  const auto bit = static_cast<std::uint8_t>(1u << axis);
  byte = static_cast<std::uint8_t>(w ? (byte | bit) : (byte & ~bit));
}

HashedWeights::HashedWeights(const Configuration& cfg, const Box& box) : HashedWeights(cfg, box, cfg.p()) {}

HashedWeights::HashedWeights(const Configuration& cfg, const Box& box, double p)
    : cfg_(&cfg),
      threshold_(hash::threshold(p)),
      extent0_(box.extent(0)),
      rows_(box.rows()),
      overrides_(cfg.has_overrides() ? cfg.overrides() : nullptr) {
  keys_.reserve(static_cast<std::size_t>(rows_ * cfg.dim()));
  for (int a = 0; a < cfg.dim(); ++a) {
    const auto k = row_keys(cfg, box, a);
    keys_.insert(keys_.end(), k.begin(), k.end());
  }
}

int HashedWeights::slow(const Vertex& base, int axis) const {
  if (auto it = overrides_->find(EdgeId{base, axis}); it != overrides_->end()) {
    return hash::uniform_to_bits(it->second) < threshold_ ? 0 : 1;
  }
  const auto b = hash::edge_bits(hash::row_key(cfg_->seed(), cfg_->dim(), axis, base), base[0]);
  return b < threshold_ ? 0 : 1;
}

}  // namespace fpp
