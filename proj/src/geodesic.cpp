#include "fpp/geodesic.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "fpp/edge_hash.hpp"
#include "fpp/zero_one_bfs.hpp"

namespace fpp {

namespace {

constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min() / 4;

void require_box(const WeightGrid& w, const Region& region) {
  if (!(w.box() == region.box())) throw InvalidArgument("geodesic: weights must cover the region box");
  if (region.boundary().empty()) throw EmptyBoundary("geodesic: region has an empty boundary");
}

// Compressed adjacency over local ids.
struct Csr {
  std::vector<std::int32_t> start;
  std::vector<std::int32_t> to;
  std::vector<std::int32_t> edge;

  void build(std::size_t n, const std::vector<std::pair<std::int32_t, std::int32_t>>& undirected) {
    start.assign(n + 1, 0);
    for (const auto& [a, b] : undirected) {
      ++start[static_cast<std::size_t>(a) + 1];
      ++start[static_cast<std::size_t>(b) + 1];
    }
    std::partial_sum(start.begin(), start.end(), start.begin());
    to.assign(start.back(), 0);
    edge.assign(start.back(), 0);
    std::vector<std::int32_t> fill(start.begin(), start.end() - 1);
    for (std::size_t e = 0; e < undirected.size(); ++e) {
      const auto [a, b] = undirected[e];
      to[static_cast<std::size_t>(fill[static_cast<std::size_t>(a)])] = b;
      edge[static_cast<std::size_t>(fill[static_cast<std::size_t>(a)]++)] = static_cast<std::int32_t>(e);
      to[static_cast<std::size_t>(fill[static_cast<std::size_t>(b)])] = a;
      edge[static_cast<std::size_t>(fill[static_cast<std::size_t>(b)]++)] = static_cast<std::int32_t>(e);
    }
  }
  std::size_t begin(std::int32_t v) const { return static_cast<std::size_t>(start[static_cast<std::size_t>(v)]); }
  std::size_t end(std::int32_t v) const { return static_cast<std::size_t>(start[static_cast<std::size_t>(v) + 1]); }
};

// Marks every edge that shares a biconnected block with a flagged edge.
// Iterative Tarjan with an edge stack.
std::vector<std::uint8_t> blocks_with_flagged(std::size_t n, const std::vector<std::pair<std::int32_t, std::int32_t>>& edges,
                                              const std::vector<std::uint8_t>& flagged) {
  Csr g;
  g.build(n, edges);
  std::vector<std::int32_t> disc(n, -1), low(n, 0);
  std::vector<std::uint8_t> keep(edges.size(), 0);
  std::vector<std::int32_t> estack;
  struct Frame {
    std::int32_t v;
    std::int32_t parent_edge;
    std::size_t pos;
  };
  std::vector<Frame> frames;
  std::int32_t timer = 0;
  std::vector<std::int32_t> block;
  for (std::size_t root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    disc[root] = low[root] = timer++;
    frames.push_back({static_cast<std::int32_t>(root), -1, g.begin(static_cast<std::int32_t>(root))});
    while (!frames.empty()) {
      Frame& fr = frames.back();
      const std::int32_t v = fr.v;
      if (fr.pos < g.end(v)) {
        const std::int32_t w = g.to[fr.pos];
        const std::int32_t e = g.edge[fr.pos];
        ++fr.pos;
        if (e == fr.parent_edge) continue;
        if (disc[static_cast<std::size_t>(w)] == -1) {
          estack.push_back(e);
          disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = timer++;
          frames.push_back({w, e, g.begin(w)});
        } else if (disc[static_cast<std::size_t>(w)] < disc[static_cast<std::size_t>(v)]) {
          estack.push_back(e);
          low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], disc[static_cast<std::size_t>(w)]);
        }
        continue;
      }
      const std::int32_t tree_edge = fr.parent_edge;
      frames.pop_back();
      if (frames.empty()) break;
      const std::int32_t u = frames.back().v;
      low[static_cast<std::size_t>(u)] = std::min(low[static_cast<std::size_t>(u)], low[static_cast<std::size_t>(v)]);
      if (low[static_cast<std::size_t>(v)] >= disc[static_cast<std::size_t>(u)]) {
        block.clear();
        bool hit = false;
        for (;;) {
          const std::int32_t e = estack.back();
          estack.pop_back();
          block.push_back(e);
          hit = hit || flagged[static_cast<std::size_t>(e)];
          if (e == tree_edge) break;
        }
        if (hit) {
          for (auto e : block) keep[static_cast<std::size_t>(e)] = 1;
        }
      }
    }
  }
  return keep;
}

// Longest simple path lengths from `src` to every vertex of a small
// component, by exhaustive DFS. Returns false when the step budget runs out.
bool longest_paths_exhaustive(const std::vector<std::vector<std::int32_t>>& adj, std::int32_t src,
                              std::vector<std::int64_t>& best, std::int64_t& budget) {
  std::vector<std::uint8_t> on(adj.size(), 0);
  struct Frame {
    std::int32_t v;
    std::size_t pos;
  };
  std::vector<Frame> st{{src, 0}};
  on[static_cast<std::size_t>(src)] = 1;
  best[static_cast<std::size_t>(src)] = std::max<std::int64_t>(best[static_cast<std::size_t>(src)], 0);
  while (!st.empty()) {
    if (--budget < 0) return false;
    Frame& fr = st.back();
    const auto& nb = adj[static_cast<std::size_t>(fr.v)];
    if (fr.pos == nb.size()) {
      on[static_cast<std::size_t>(fr.v)] = 0;
      st.pop_back();
      continue;
    }
    const std::int32_t w = nb[fr.pos++];
    if (on[static_cast<std::size_t>(w)]) continue;
    on[static_cast<std::size_t>(w)] = 1;
    const auto len = static_cast<std::int64_t>(st.size());
    best[static_cast<std::size_t>(w)] = std::max(best[static_cast<std::size_t>(w)], len);
    st.push_back({w, 0});
  }
  return true;
}

void hop_bfs(const std::vector<std::vector<std::int32_t>>& adj, std::int32_t src, std::vector<std::int64_t>& dist) {
  std::fill(dist.begin(), dist.end(), -1);
  std::vector<std::int32_t> q{src};
  dist[static_cast<std::size_t>(src)] = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const auto v = q[i];
    for (auto w : adj[static_cast<std::size_t>(v)]) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        q.push_back(w);
      }
    }
  }
}

constexpr std::size_t kExactComponentLimit = 20;
constexpr std::int64_t kExactStepBudget = 4'000'000;

}  // namespace

std::int64_t restricted_passage_time(const WeightGrid& weights, const Region& region) {
  require_box(weights, region);
  const Box& box = region.box();
  std::vector<std::int32_t> dist(static_cast<std::size_t>(box.volume()), kUnreached);
  const std::int64_t src[] = {region.origin_index()};
  std::int64_t result = -1;
  zero_one_bfs(box, std::span<std::int32_t>(dist), std::span<const std::int64_t>(src), kUnreached - 1, weights,
               MaskAllowed{region.mask()}, [&](std::int64_t i, const Vertex&, std::int32_t level) {
                 if (region.on_boundary_index(i)) {
                   result = level;
                   return false;
                 }
                 return true;
               });
  if (result < 0) throw EmptyBoundary("restricted_passage_time: boundary unreachable");
  return result;
}

std::int64_t restricted_passage_time(const Configuration& cfg, const Region& region) {
  return restricted_passage_time(WeightGrid::from_config(cfg, region.box()), region);
}

std::int64_t pivotal_count(const Configuration& cfg, const Region& region) {
  return geodesic_field(cfg, region).pivotal_count;
}

GeodesicField geodesic_field(const Configuration& cfg, const Region& region) {
  return geodesic_field(WeightGrid::from_config(cfg, region.box()), region);
}

GeodesicField geodesic_field(const WeightGrid& weights, const Region& region) {
  require_box(weights, region);
  const Box& box = region.box();
  const int d = box.dim();
  const auto vol = static_cast<std::size_t>(box.volume());
  const MaskAllowed allowed{region.mask()};
  auto keep_going = [](std::int64_t, const Vertex&, std::int32_t) { return true; };

  GeodesicField g;
  g.box = box;
  g.forward.assign(vol, kUnreached);
  g.backward.assign(vol, kUnreached);
  {
    const std::int64_t src[] = {region.origin_index()};
    zero_one_bfs(box, std::span<std::int32_t>(g.forward), std::span<const std::int64_t>(src), kUnreached - 1,
                 weights, allowed, keep_going);
    zero_one_bfs(box, std::span<std::int32_t>(g.backward), region.boundary(), kUnreached - 1, weights, allowed,
                 keep_going);
  }
  std::int64_t total = std::numeric_limits<std::int64_t>::max();
  for (auto i : region.boundary()) total = std::min<std::int64_t>(total, g.forward[static_cast<std::size_t>(i)]);
  if (total >= kUnreached) throw EmptyBoundary("geodesic_field: boundary unreachable");
  g.total = total;

  // Tight vertices: on some shortest walk from the origin to the boundary.
  auto tight = [&](std::int64_t i) {
    return region.contains_index(i) &&
           static_cast<std::int64_t>(g.forward[static_cast<std::size_t>(i)]) + g.backward[static_cast<std::size_t>(i)] == total;
  };
  std::vector<std::int32_t> local(vol, -1);
  std::vector<std::int64_t> verts;  // local id -> box index
  for (auto i : region.members()) {
    if (tight(i)) {
      local[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(verts.size());
      verts.push_back(i);
    }
  }
  const std::size_t nv = verts.size();
  auto level_of = [&](std::int32_t id) { return static_cast<std::int64_t>(g.forward[static_cast<std::size_t>(verts[static_cast<std::size_t>(id)])]); };

  // Candidate edges between tight vertices.
  std::vector<RouteEdge> unit_edges;
  std::vector<RouteEdge> zero_cand;
  std::vector<std::pair<std::int32_t, std::int32_t>> zero_pairs;
  std::vector<std::uint8_t> in_port(nv, 0), out_port(nv, 0);
  for (std::size_t id = 0; id < nv; ++id) {
    const std::int64_t i = verts[id];
    const Vertex v = box.vertex(i);
    for (int a = 0; a < d; ++a) {
      if (v[a] >= box.hi()[a]) continue;
      const std::int64_t n = i + box.stride(a);
      const std::int32_t nid = local[static_cast<std::size_t>(n)];
      if (nid < 0) continue;
      const int w = weights.weight(i, a);
      const std::int64_t fi = g.forward[static_cast<std::size_t>(i)], fn = g.forward[static_cast<std::size_t>(n)];
      if (w == 1 && (fn == fi + 1 || fi == fn + 1)) {
        unit_edges.push_back({i, a, 1, false});
        const auto lo = fn > fi ? static_cast<std::int32_t>(id) : nid;
        const auto hi = fn > fi ? nid : static_cast<std::int32_t>(id);
        out_port[static_cast<std::size_t>(lo)] = 1;
        in_port[static_cast<std::size_t>(hi)] = 1;
      } else if (w == 0) {
        zero_cand.push_back({i, a, 0, false});
        zero_pairs.emplace_back(static_cast<std::int32_t>(id), nid);
      }
    }
  }
  const std::int32_t origin_id = local[static_cast<std::size_t>(region.origin_index())];
  in_port[static_cast<std::size_t>(origin_id)] = 1;
  for (std::size_t id = 0; id < nv; ++id) {
    // b = 0 does not make a vertex a boundary vertex: zero paths reach it.
    if (level_of(static_cast<std::int32_t>(id)) == total && region.on_boundary_index(verts[id])) out_port[id] = 1;
  }

  // Per level: super source on entry ports, super sink on exit ports, and a
  // source-sink edge. A zero edge lies on a simple port-to-port path iff it
  // shares a biconnected block with that edge.
  std::vector<std::pair<std::int32_t, std::int32_t>> aug = zero_pairs;
  std::vector<std::uint8_t> flagged(aug.size(), 0);
  const auto levels = static_cast<std::size_t>(total + 1);
  const auto super = [&](std::int64_t level, int which) {
    return static_cast<std::int32_t>(nv + 2 * static_cast<std::size_t>(level) + static_cast<std::size_t>(which));
  };
  for (std::size_t id = 0; id < nv; ++id) {
    const auto lv = level_of(static_cast<std::int32_t>(id));
    if (in_port[id]) aug.emplace_back(super(lv, 0), static_cast<std::int32_t>(id));
    if (out_port[id]) aug.emplace_back(static_cast<std::int32_t>(id), super(lv, 1));
  }
  flagged.resize(aug.size(), 0);
  for (std::size_t lv = 0; lv < levels; ++lv) {
    aug.emplace_back(super(static_cast<std::int64_t>(lv), 0), super(static_cast<std::int64_t>(lv), 1));
    flagged.push_back(1);
  }
  const auto keep = blocks_with_flagged(nv + 2 * levels, aug, flagged);

  std::vector<RouteEdge> edges = unit_edges;
  std::vector<std::pair<std::int32_t, std::int32_t>> zero_route;
  for (std::size_t e = 0; e < zero_cand.size(); ++e) {
    if (keep[e]) {
      edges.push_back(zero_cand[e]);
      zero_route.push_back(zero_pairs[e]);
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const RouteEdge& x, const RouteEdge& y) { return x.base != y.base ? x.base < y.base : x.axis < y.axis; });

  g.route_vertex.assign(vol, 0);
  g.route_vertex[static_cast<std::size_t>(region.origin_index())] = 1;
  for (const auto& e : edges) {
    g.route_vertex[static_cast<std::size_t>(e.base)] = 1;
    g.route_vertex[static_cast<std::size_t>(e.base + box.stride(e.axis))] = 1;
    if (e.weight == 1) ++g.pivotal_count;
  }
  g.route_vertex_count = static_cast<std::size_t>(std::count(g.route_vertex.begin(), g.route_vertex.end(), 1));

  // Route graph: zero route edges both ways, unit route edges upward.
  std::vector<std::vector<std::int32_t>> zero_adj(nv), up(nv), down(nv);
  for (const auto& [a, b] : zero_route) {
    zero_adj[static_cast<std::size_t>(a)].push_back(b);
    zero_adj[static_cast<std::size_t>(b)].push_back(a);
  }
  for (const auto& e : unit_edges) {
    auto a = local[static_cast<std::size_t>(e.base)];
    auto b = local[static_cast<std::size_t>(e.base + box.stride(e.axis))];
    if (level_of(a) > level_of(b)) std::swap(a, b);
    up[static_cast<std::size_t>(a)].push_back(b);
    down[static_cast<std::size_t>(b)].push_back(a);
  }
  auto is_end = [&](std::int32_t id) {
    const auto i = verts[static_cast<std::size_t>(id)];
    return level_of(id) == total && region.on_boundary_index(i) && g.route_vertex[static_cast<std::size_t>(i)];
  };

  // Fewest edges: hop BFS forward from the origin and backward from the ends.
  std::vector<std::int64_t> hf(nv, -1), hb(nv, -1);
  {
    std::vector<std::int32_t> q{origin_id};
    hf[static_cast<std::size_t>(origin_id)] = 0;
    for (std::size_t qi = 0; qi < q.size(); ++qi) {
      const auto v = q[qi];
      for (const auto* nb : {&zero_adj[static_cast<std::size_t>(v)], &up[static_cast<std::size_t>(v)]}) {
        for (auto w : *nb) {
          if (hf[static_cast<std::size_t>(w)] < 0) {
            hf[static_cast<std::size_t>(w)] = hf[static_cast<std::size_t>(v)] + 1;
            q.push_back(w);
          }
        }
      }
    }
    q.clear();
    for (std::size_t id = 0; id < nv; ++id) {
      if (is_end(static_cast<std::int32_t>(id))) {
        hb[id] = 0;
        q.push_back(static_cast<std::int32_t>(id));
      }
    }
    for (std::size_t qi = 0; qi < q.size(); ++qi) {
      const auto v = q[qi];
      for (const auto* nb : {&zero_adj[static_cast<std::size_t>(v)], &down[static_cast<std::size_t>(v)]}) {
        for (auto w : *nb) {
          if (hb[static_cast<std::size_t>(w)] < 0) {
            hb[static_cast<std::size_t>(w)] = hb[static_cast<std::size_t>(v)] + 1;
            q.push_back(w);
          }
        }
      }
    }
    g.n_min = std::numeric_limits<std::int64_t>::max();
    for (std::size_t id = 0; id < nv; ++id) {
      if (is_end(static_cast<std::int32_t>(id)) && hf[id] >= 0) g.n_min = std::min(g.n_min, hf[id]);
    }
  }
  for (auto& e : edges) {
    const auto a = local[static_cast<std::size_t>(e.base)];
    const auto b = local[static_cast<std::size_t>(e.base + box.stride(e.axis))];
    auto fits = [&](std::int32_t x, std::int32_t y) {
      return hf[static_cast<std::size_t>(x)] >= 0 && hb[static_cast<std::size_t>(y)] >= 0 &&
             hf[static_cast<std::size_t>(x)] + 1 + hb[static_cast<std::size_t>(y)] == g.n_min;
    };
    if (e.weight == 1) {
      e.on_min_route = level_of(a) < level_of(b) ? fits(a, b) : fits(b, a);
    } else {
      e.on_min_route = fits(a, b) || fits(b, a);
    }
  }

  // Most edges: dynamic program over levels. Zero plateaus are the
  // connected components of the zero route edges; inside one, the segment
  // from an entry port a to a vertex c contributes L(a, c), the longest
  // simple path.
  std::vector<std::int32_t> comp(nv, -1);
  std::vector<std::vector<std::int32_t>> comps;
  for (std::size_t id = 0; id < nv; ++id) {
    if (comp[id] >= 0 || !g.route_vertex[static_cast<std::size_t>(verts[id])]) continue;
    const auto c = static_cast<std::int32_t>(comps.size());
    comps.emplace_back();
    std::vector<std::int32_t> q{static_cast<std::int32_t>(id)};
    comp[id] = c;
    for (std::size_t qi = 0; qi < q.size(); ++qi) {
      for (auto w : zero_adj[static_cast<std::size_t>(q[qi])]) {
        if (comp[static_cast<std::size_t>(w)] < 0) {
          comp[static_cast<std::size_t>(w)] = c;
          q.push_back(w);
        }
      }
    }
    comps.back() = std::move(q);
  }
  std::vector<std::int32_t> order(comps.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::int32_t x, std::int32_t y) {
    return level_of(comps[static_cast<std::size_t>(x)].front()) < level_of(comps[static_cast<std::size_t>(y)].front());
  });

  std::vector<std::int64_t> best_in(nv, kNegInf), best_out(nv, kNegInf);
  best_in[static_cast<std::size_t>(origin_id)] = 0;
  std::vector<std::int32_t> pos(nv, -1);
  for (auto c : order) {
    const auto& members = comps[static_cast<std::size_t>(c)];
    std::vector<std::int32_t> ports;
    for (auto v : members) {
      for (auto x : down[static_cast<std::size_t>(v)]) {
        if (best_out[static_cast<std::size_t>(x)] > kNegInf) {
          best_in[static_cast<std::size_t>(v)] = std::max(best_in[static_cast<std::size_t>(v)], best_out[static_cast<std::size_t>(x)] + 1);
        }
      }
      if (best_in[static_cast<std::size_t>(v)] > kNegInf) ports.push_back(v);
    }
    if (members.size() == 1) {
      best_out[static_cast<std::size_t>(members[0])] = best_in[static_cast<std::size_t>(members[0])];
      continue;
    }
    // Local adjacency.
    for (std::size_t k = 0; k < members.size(); ++k) pos[static_cast<std::size_t>(members[k])] = static_cast<std::int32_t>(k);
    std::vector<std::vector<std::int32_t>> adj(members.size());
    std::size_t degree_sum = 0;
    for (std::size_t k = 0; k < members.size(); ++k) {
      for (auto w : zero_adj[static_cast<std::size_t>(members[k])]) adj[k].push_back(pos[static_cast<std::size_t>(w)]);
      degree_sum += adj[k].size();
    }
    const bool tree = degree_sum / 2 + 1 == members.size();
    std::int64_t budget = kExactStepBudget;
    bool exact = tree || members.size() <= kExactComponentLimit;
    std::vector<std::int64_t> len(members.size());
    for (auto a : ports) {
      const auto pa = pos[static_cast<std::size_t>(a)];
      bool ok = true;
      if (tree) {
        hop_bfs(adj, pa, len);
      } else if (exact) {
        std::fill(len.begin(), len.end(), -1);
        ok = longest_paths_exhaustive(adj, pa, len, budget);
      }
      if (!exact || !ok) {
        exact = false;
        hop_bfs(adj, pa, len);
      }
      for (std::size_t k = 0; k < members.size(); ++k) {
        if (len[k] < 0) continue;
        auto& out = best_out[static_cast<std::size_t>(members[k])];
        out = std::max(out, best_in[static_cast<std::size_t>(a)] + len[k]);
      }
    }
    if (!exact) g.n_max_exact = false;
  }
  g.n_max = 0;
  for (std::size_t id = 0; id < nv; ++id) {
    if (is_end(static_cast<std::int32_t>(id))) g.n_max = std::max(g.n_max, best_out[id]);
  }
  g.route_edges = std::move(edges);
  return g;
}

namespace {

std::int32_t floor_div(std::int32_t a, std::int32_t k) {
  const std::int32_t q = a / k;
  return (a % k != 0 && (a < 0) != (k < 0)) ? q - 1 : q;
}

struct VertexHash {
  std::size_t operator()(const Vertex& v) const noexcept {
    std::uint64_t h = 0x51ED270B27A4F3C1ULL;
    for (auto c : v.x) h = hash::mix64(h + hash::kGolden * static_cast<std::uint32_t>(c));
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

BadCubeReport bad_cube_count(const GeodesicField& field, int k) {
  if (k < 1) throw InvalidArgument("bad_cube_count: k must be >= 1");
  const Box& box = field.box;
  const int d = box.dim();
  auto cube_of = [&](std::int64_t i) {
    Vertex v = box.vertex(i);
    for (int a = 0; a < d; ++a) v[a] = floor_div(v[a], k);
    return v;
  };
  std::unordered_set<Vertex, VertexHash> occupied, good;
  for (std::int64_t i = 0; i < box.volume(); ++i) {
    if (field.route_vertex[static_cast<std::size_t>(i)]) occupied.insert(cube_of(i));
  }
  // A unit route edge with endpoint cubes c1, c2 lies inside the 3^d block
  // of every cube within Chebyshev distance 1 of both.
  std::int64_t moore = 1;
  for (int a = 0; a < d; ++a) moore *= 3;
  for (const auto& e : field.route_edges) {
    if (e.weight != 1) continue;
    const Vertex c1 = cube_of(e.base);
    const Vertex c2 = cube_of(e.base + box.stride(e.axis));
    for (std::int64_t m = 0; m < moore; ++m) {
      Vertex u = c1;
      std::int64_t r = m;
      bool near = true;
      for (int a = 0; a < d; ++a) {
        u[a] += static_cast<std::int32_t>(r % 3) - 1;
        r /= 3;
        if (u[a] - c2[a] > 1 || c2[a] - u[a] > 1) near = false;
      }
      if (near && occupied.count(u)) good.insert(u);
    }
  }
  BadCubeReport rep;
  rep.k = k;
  rep.occupied = static_cast<std::int64_t>(occupied.size());
  rep.bad = rep.occupied - static_cast<std::int64_t>(good.size());
  return rep;
}

}  // namespace fpp
