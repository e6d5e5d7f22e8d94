#pragma once

// 0-1 shortest-path search on a box of Z^d. The deque of the textbook
// algorithm is kept as its two halves: the FIFO of the level being settled
// (zero edges append to it) and the FIFO of the next level (unit edges).

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "fpp/lattice.hpp"

namespace fpp {

inline constexpr std::int32_t kUnreached = std::numeric_limits<std::int32_t>::max();

struct BfsStats {
  std::int64_t settled = 0;
  std::int64_t relaxations = 0;
};

struct AllowAll {
  bool operator()(std::int64_t) const { return true; }
};

struct MaskAllowed {
  std::span<const std::uint8_t> mask;
  bool operator()(std::int64_t i) const { return mask[static_cast<std::size_t>(i)] != 0; }
};

/// Settles vertices in nondecreasing distance order up to `max_level`.
///
/// weight(base_index, base, axis) -> {0,1} for the edge {base, base + e_axis}.
/// allowed(index) restricts the search to a vertex subset.
/// visit(index, vertex, dist) is called once per settled vertex and returns
/// false to stop the search.
///
/// dist must be sized to box.volume() and pre-filled with kUnreached.
/// Tentative labels of unsettled vertices (at most max_level + 1) are left
/// in dist.
template <typename Weight, typename Allowed, typename Visit>
void zero_one_bfs(const Box& box, std::span<std::int32_t> dist, std::span<const std::int64_t> sources,
                  std::int32_t max_level, const Weight& weight, const Allowed& allowed, Visit&& visit,
                  BfsStats* stats = nullptr) {
  const int d = box.dim();
  std::vector<std::int64_t> cur, next;
  for (auto s : sources) {
    if (!allowed(s)) continue;
    if (dist[static_cast<std::size_t>(s)] != 0) {
      dist[static_cast<std::size_t>(s)] = 0;
      cur.push_back(s);
    }
  }
  BfsStats local;
  for (std::int32_t level = 0; level <= max_level && !cur.empty(); ++level) {
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const std::int64_t u = cur[i];
      if (dist[static_cast<std::size_t>(u)] != level) continue;  // settled earlier
      const Vertex v = box.vertex(u);
      ++local.settled;
      if (!visit(u, v, level)) {
        if (stats) *stats = local;
        return;
      }
      for (int a = 0; a < d; ++a) {
        const std::int64_t s = box.stride(a);
        if (v[a] < box.hi()[a]) {
          const std::int64_t n = u + s;
          if (allowed(n)) {
            ++local.relaxations;
            const int w = weight(u, v, a);
            const std::int32_t nd = level + w;
            if (nd < dist[static_cast<std::size_t>(n)]) {
              dist[static_cast<std::size_t>(n)] = nd;
              (w == 0 ? cur : next).push_back(n);
            }
          }
        }
        if (v[a] > box.lo()[a]) {
          const std::int64_t n = u - s;
          if (allowed(n)) {
            ++local.relaxations;
            Vertex base = v;
            base[a] -= 1;
            const int w = weight(n, base, a);
            const std::int32_t nd = level + w;
            if (nd < dist[static_cast<std::size_t>(n)]) {
              dist[static_cast<std::size_t>(n)] = nd;
              (w == 0 ? cur : next).push_back(n);
            }
          }
        }
      }
    }
    cur.clear();
    std::swap(cur, next);
  }
  if (stats) *stats = local;
}

}  // namespace fpp
