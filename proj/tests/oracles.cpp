#include "oracles.hpp"

#include <queue>

namespace oracle {

using fpp::Box;
using fpp::Configuration;
using fpp::Vertex;

namespace {

int w(const Configuration& cfg, const Vertex& a, const Vertex& b) {
  return fpp::edge_weight(cfg, fpp::edge_between(a, b, cfg.dim()));
}

template <typename F>
void for_neighbors(const Box& box, const Vertex& v, F&& f) {
  for (int a = 0; a < box.dim(); ++a) {
    for (int s : {-1, 1}) {
      Vertex u = v;
      u[a] += s;
      if (box.contains(u)) f(u);
    }
  }
}

}  // namespace

std::vector<std::int64_t> dijkstra(const Configuration& cfg_in, const Box& box, const std::vector<Vertex>& sources,
                                   const std::function<bool(const Vertex&)>& allowed) {
  const Configuration cfg = cfg_in.with_box(box);
  std::vector<std::int64_t> dist(static_cast<std::size_t>(box.volume()), kInf);
  using Item = std::pair<std::int64_t, std::int64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (const auto& s : sources) {
    const auto i = box.index(s);
    dist[static_cast<std::size_t>(i)] = 0;
    pq.push({0, i});
  }
  while (!pq.empty()) {
    auto [d, i] = pq.top();
    pq.pop();
    if (d > dist[static_cast<std::size_t>(i)]) continue;
    const Vertex v = box.vertex(i);
    for_neighbors(box, v, [&](const Vertex& u) {
      if (allowed && !allowed(u)) return;
      const auto j = box.index(u);
      const auto nd = d + w(cfg, v, u);
      if (nd < dist[static_cast<std::size_t>(j)]) {
        dist[static_cast<std::size_t>(j)] = nd;
        pq.push({nd, j});
      }
    });
  }
  return dist;
}

std::int64_t passage_time(const Configuration& cfg, const Box& box, const Vertex& u, const Vertex& v,
                          bool* certified) {
  const auto dist = dijkstra(cfg, box, {u});
  const auto ans = dist[static_cast<std::size_t>(box.index(v))];
  if (certified != nullptr) {
    std::int64_t face = kInf;
    for (std::int64_t i = 0; i < box.volume(); ++i) {
      if (box.on_face(box.vertex(i))) face = std::min(face, dist[static_cast<std::size_t>(i)]);
    }
    *certified = ans <= face;
  }
  return ans;
}

std::int64_t passage_time_certified(const Configuration& cfg, const Vertex& u, const Vertex& v, std::int32_t radius) {
  for (;; radius *= 2) {
    bool certified = false;
    const auto ans = passage_time(cfg, Box::centered(cfg.dim(), radius), u, v, &certified);
    if (certified) return ans;
  }
}

std::int64_t restricted_time(const Configuration& cfg, const fpp::Region& region) {
  const Box& box = region.box();
  const auto dist = dijkstra(cfg, box, {Vertex{}}, [&](const Vertex& v) { return region.contains(v); });
  std::int64_t best = kInf;
  for (std::int64_t i = 0; i < box.volume(); ++i) {
    const Vertex v = box.vertex(i);
    if (!region.contains(v)) continue;
    bool edge = false;
    for_neighbors(box, v, [&](const Vertex& u) { edge = edge || !region.contains(u); });
    if (edge) best = std::min(best, dist[static_cast<std::size_t>(i)]);
  }
  return best;
}

std::set<Vertex> ball(const Configuration& cfg, const Box& box, std::int32_t t) {
  const auto dist = dijkstra(cfg, box, {Vertex{}});
  std::set<Vertex> out;
  for (std::int64_t i = 0; i < box.volume(); ++i) {
    if (dist[static_cast<std::size_t>(i)] <= t) out.insert(box.vertex(i));
  }
  return out;
}

namespace {

struct Dfs {
  const Configuration& cfg;
  const fpp::Region& region;
  const Box& box;
  std::vector<std::int64_t> to_boundary;
  std::vector<char> on_path;
  std::vector<std::pair<std::int64_t, int>> stack;
  Routes& out;
  std::int64_t budget;
  bool mark_min = false;

  bool boundary(const Vertex& v) const {
    bool edge = false;
    for_neighbors(box, v, [&](const Vertex& u) { edge = edge || !region.contains(u); });
    return edge;
  }

  void run(const Vertex& v, std::int64_t weight) {
    if (--budget < 0) {
      out.complete = false;
      return;
    }
    const auto vi = box.index(v);
    if (weight + to_boundary[static_cast<std::size_t>(vi)] > out.total) return;
    if (weight == out.total && boundary(v)) {
      const auto len = static_cast<std::int64_t>(stack.size());
      if (!mark_min) {
        ++out.paths;
        if (out.paths == 1 || len < out.n_min) out.n_min = len;
        if (out.paths == 1 || len > out.n_max) out.n_max = len;
        out.edges.insert(stack.begin(), stack.end());
      } else if (len == out.n_min) {
        out.min_edges.insert(stack.begin(), stack.end());
      }
    }
    on_path[static_cast<std::size_t>(vi)] = 1;
    for_neighbors(box, v, [&](const Vertex& u) {
      if (!region.contains(u)) return;
      const auto ui = box.index(u);
      if (on_path[static_cast<std::size_t>(ui)]) return;
      const auto e = fpp::edge_between(v, u, box.dim());
      stack.push_back({box.index(e.base), e.axis});
      run(u, weight + w(cfg, v, u));
      stack.pop_back();
    });
    on_path[static_cast<std::size_t>(vi)] = 0;
  }
};

}  // namespace

Routes enumerate_routes(const Configuration& cfg_in, const fpp::Region& region, std::int64_t step_budget) {
  const Configuration cfg = cfg_in.with_box(region.box());
  Routes out;
  const Box& box = region.box();
  out.total = restricted_time(cfg, region);
  std::vector<Vertex> bnd;
  for (std::int64_t i = 0; i < box.volume(); ++i) {
    const Vertex v = box.vertex(i);
    if (!region.contains(v)) continue;
    bool edge = false;
    for_neighbors(box, v, [&](const Vertex& u) { edge = edge || !region.contains(u); });
    if (edge) bnd.push_back(v);
  }
  Dfs dfs{cfg, region, box,
          dijkstra(cfg, box, bnd, [&](const Vertex& v) { return region.contains(v); }),
          std::vector<char>(static_cast<std::size_t>(box.volume()), 0),
          {}, out, step_budget};
  dfs.run(Vertex{}, 0);
  dfs.mark_min = true;
  dfs.run(Vertex{}, 0);
  return out;
}

}  // namespace oracle
