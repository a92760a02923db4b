#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <vector>

#include "tbmfg/graph.hpp"
#include "tbmfg/types.hpp"

namespace tbmfg {

struct AbCoreResult {
  std::vector<Vertex> u_side;  // sorted survivors
  std::vector<Vertex> v_side;
};

/// (alpha,beta)-core of snapshot t: the maximal sub-snapshot where every
/// U vertex keeps degree >= alpha and every V vertex degree >= beta.
/// Iterative peeling, one pass per deleted vertex.
inline AbCoreResult ab_core(const TemporalBipartiteGraph& g, Timestamp t, std::uint32_t alpha,
                            std::uint32_t beta) {
  const std::size_t n_u = g.n_u(), n_v = g.n_v();
  std::vector<std::uint32_t> deg_u(n_u), deg_v(n_v);
  for (Vertex u = 0; u < n_u; ++u) deg_u[u] = g.u_m_degree(t, u);
  for (Vertex v = 0; v < n_v; ++v) deg_v[v] = g.v_m_degree(t, v);

  struct Item {
    Side side;
    Vertex w;
  };
  std::deque<Item> work;
  for (Vertex u = 0; u < n_u; ++u)
    if (deg_u[u] > 0 && deg_u[u] < alpha) {
      deg_u[u] = 0;
      work.push_back({Side::U, u});
    }
  for (Vertex v = 0; v < n_v; ++v)
    if (deg_v[v] > 0 && deg_v[v] < beta) {
      deg_v[v] = 0;
      work.push_back({Side::V, v});
    }
  while (!work.empty()) {
    auto [side, w] = work.front();
    work.pop_front();
    if (side == Side::U) {
      for (Vertex v : g.u_snap(t, w))
        if (deg_v[v] > 0 && --deg_v[v] < beta) {
          deg_v[v] = 0;
          work.push_back({Side::V, v});
        }
    } else {
      for (Vertex u : g.v_snap(t, w))
        if (deg_u[u] > 0 && --deg_u[u] < alpha) {
          deg_u[u] = 0;
          work.push_back({Side::U, u});
        }
    }
  }

  AbCoreResult out;
  for (Vertex u = 0; u < n_u; ++u)
    if (deg_u[u] > 0) out.u_side.push_back(u);
  for (Vertex v = 0; v < n_v; ++v)
    if (deg_v[v] > 0) out.v_side.push_back(v);
  return out;
}

/// Result of the temporal core reduction. The compacted graph keeps the
/// per-snapshot surviving structure; the maps translate its dense ids back
/// to the input graph.
struct CoreReduction {
  TemporalBipartiteGraph graph;
  std::vector<Vertex> u_map;     // reduced u id -> input u id
  std::vector<Vertex> v_map;     // reduced v id -> input v id
  std::vector<Timestamp> t_map;  // reduced t id -> input t id

  struct Stats {
    std::size_t u_before = 0, u_after = 0;
    std::size_t v_before = 0, v_after = 0;
    std::size_t t_before = 0, t_after = 0;
    std::uint64_t edges_before = 0, edges_after = 0;
    std::uint64_t edge_deletions = 0;  // each temporal edge deleted at most once

    double pruned_edge_percent() const {
      if (edges_before == 0) return 0.0;
      return 100.0 * static_cast<double>(edges_before - edges_after) /
             static_cast<double>(edges_before);
    }
  } stats;

  bool u_survives(Vertex input_u) const {
    return std::binary_search(u_map.begin(), u_map.end(), input_u);
  }
  bool v_survives(Vertex input_v) const {
    return std::binary_search(v_map.begin(), v_map.end(), input_v);
  }
};

/// Temporal core reduction: keeps, per snapshot, the structure where every
/// U vertex has m-degree >= tau_v and every V vertex m-degree >= tau_u, with
/// every surviving V vertex present in at least lambda surviving snapshots
/// (U vertices in at least one). Deletions cascade to a fixpoint; the
/// recursive formulation is run as an explicit FIFO worklist.
inline CoreReduction gf_core(const TemporalBipartiteGraph& g, const Params& p) {
  p.validate();
  const std::size_t n_u = g.n_u(), n_v = g.n_v(), n_t = g.n_t();

  // Working m-degrees (delta) and per-vertex surviving-snapshot counters (s).
  std::vector<std::uint32_t> delta_u(n_t * n_u), delta_v(n_t * n_v);
  std::vector<std::uint32_t> s_u(n_u, 0), s_v(n_v, 0);
  for (Timestamp t = 0; t < n_t; ++t) {
    for (Vertex u = 0; u < n_u; ++u) {
      std::uint32_t d = g.u_m_degree(t, u);
      delta_u[t * n_u + u] = d;
      if (d > 0) ++s_u[u];
    }
    for (Vertex v = 0; v < n_v; ++v) {
      std::uint32_t d = g.v_m_degree(t, v);
      delta_v[t * n_v + v] = d;
      if (d > 0) ++s_v[v];
    }
  }

  struct Item {
    Side side;
    Vertex w;
    Timestamp t;
  };
  std::deque<Item> work;
  std::vector<std::uint8_t> queued_u(n_t * n_u, 0), queued_v(n_t * n_v, 0);
  std::uint64_t deletions = 0;

  auto kill_u = [&](Vertex u, Timestamp t) {
    if (queued_u[t * n_u + u]) return;
    queued_u[t * n_u + u] = 1;
    work.push_back({Side::U, u, t});
  };
  auto kill_v = [&](Vertex v, Timestamp t) {
    if (queued_v[t * n_v + v]) return;
    queued_v[t * n_v + v] = 1;
    work.push_back({Side::V, v, t});
  };

  for (Timestamp t = 0; t < n_t; ++t) {
    for (Vertex u = 0; u < n_u; ++u) {
      std::uint32_t d = delta_u[t * n_u + u];
      if (d > 0 && d < p.tau_v) kill_u(u, t);
    }
    for (Vertex v = 0; v < n_v; ++v) {
      std::uint32_t d = delta_v[t * n_v + v];
      if (d > 0 && (d < p.tau_u || s_v[v] < p.lambda)) kill_v(v, t);
    }
  }

  while (!work.empty()) {
    auto [side, w, t] = work.front();
    work.pop_front();
    if (side == Side::U) {
      delta_u[t * n_u + w] = 0;
      for (Vertex v : g.u_snap(t, w)) {
        std::uint32_t& d = delta_v[t * n_v + v];
        if (d > 0) {
          --d;
          ++deletions;
          if (d < p.tau_u) kill_v(v, t);
        }
      }
      if (s_u[w] > 0) {
        --s_u[w];
        if (s_u[w] < 1) {
          s_u[w] = 0;
          for (Timestamp t2 = 0; t2 < n_t; ++t2)
            if (delta_u[t2 * n_u + w] > 0) kill_u(w, t2);
        }
      }
    } else {
      delta_v[t * n_v + w] = 0;
      for (Vertex u : g.v_snap(t, w)) {
        std::uint32_t& d = delta_u[t * n_u + u];
        if (d > 0) {
          --d;
          ++deletions;
          if (d < p.tau_v) kill_u(u, t);
        }
      }
      if (s_v[w] > 0) {
        --s_v[w];
        if (s_v[w] < p.lambda) {
          s_v[w] = 0;
          for (Timestamp t2 = 0; t2 < n_t; ++t2)
            if (delta_v[t2 * n_v + w] > 0) kill_v(w, t2);
        }
      }
    }
  }

  // Surviving temporal edges, expressed with input dense ids as labels so
  // the rebuilt graph's dictionaries double as the id maps.
  std::vector<TemporalEdge> kept;
  for (Timestamp t = 0; t < n_t; ++t)
    for (Vertex u = 0; u < n_u; ++u) {
      if (delta_u[t * n_u + u] == 0) continue;
      for (Vertex v : g.u_snap(t, u))
        if (delta_v[t * n_v + v] > 0) kept.push_back({u, v, t});
    }

  CoreReduction out;
  out.stats.u_before = n_u;
  out.stats.v_before = n_v;
  out.stats.t_before = n_t;
  out.stats.edges_before = g.temporal_edge_count();
  out.stats.edges_after = kept.size();
  out.stats.edge_deletions = deletions;
  out.graph = build_graph(std::move(kept));
  out.u_map.assign(out.graph.u_labels().begin(), out.graph.u_labels().end());
  out.v_map.assign(out.graph.v_labels().begin(), out.graph.v_labels().end());
  out.t_map.assign(out.graph.t_values().begin(), out.graph.t_values().end());
  out.stats.u_after = out.graph.n_u();
  out.stats.v_after = out.graph.n_v();
  out.stats.t_after = out.graph.n_t();
  return out;
}

}  // namespace tbmfg
