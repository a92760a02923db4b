#include <map>
#include <set>
#include <tuple>

#include "catch_amalgamated.hpp"
#include "fixtures.hpp"
#include "tbmfg/corefilter.hpp"
#include "tbmfg/oracle.hpp"

using namespace tbmfg;

namespace {

using EdgeTriple = std::tuple<Vertex, Vertex, Timestamp>;

std::set<EdgeTriple> reduction_edges(const CoreReduction& red) {
  std::set<EdgeTriple> out;
  for (const auto& e : red.graph.to_edges())
    out.insert({static_cast<Vertex>(e.u), static_cast<Vertex>(e.v), static_cast<Timestamp>(e.t)});
  return out;
}

/// Iterate-until-fixpoint reference for the temporal core: alternates
/// per-snapshot degree peeling with the frequency peel over V.
std::set<EdgeTriple> naive_gf_core(const TemporalBipartiteGraph& g, const Params& p) {
  std::set<EdgeTriple> alive;
  for (Timestamp t = 0; t < g.n_t(); ++t)
    for (Vertex u = 0; u < g.n_u(); ++u)
      for (Vertex v : g.u_snap(t, u)) alive.insert({u, v, t});

  bool changed = true;
  while (changed) {
    changed = false;
    // per-snapshot degree peel: U needs >= tau_v neighbors, V >= tau_u
    for (bool snap_changed = true; snap_changed;) {
      snap_changed = false;
      std::map<std::pair<Vertex, Timestamp>, int> du, dv;
      for (const auto& [u, v, t] : alive) {
        du[{u, t}]++;
        dv[{v, t}]++;
      }
      std::set<EdgeTriple> next;
      for (const auto& [u, v, t] : alive)
        if (du[{u, t}] >= static_cast<int>(p.tau_v) && dv[{v, t}] >= static_cast<int>(p.tau_u))
          next.insert({u, v, t});
      if (next != alive) {
        alive = std::move(next);
        snap_changed = true;
        changed = true;
      }
    }
    // frequency peel: V vertices must appear in >= lambda snapshots
    std::map<Vertex, std::set<Timestamp>> present;
    for (const auto& [u, v, t] : alive) present[v].insert(t);
    std::set<EdgeTriple> next;
    for (const auto& [u, v, t] : alive)
      if (present[v].size() >= p.lambda) next.insert({u, v, t});
    if (next != alive) {
      alive = std::move(next);
      changed = true;
    }
  }
  return alive;
}

}  // namespace

TEST_CASE("ab_core keeps a complete snapshot") {
  GenConfig cfg;
  cfg.n_u = 3;
  cfg.n_v = 3;
  cfg.n_t = 1;
  cfg.edge_prob = 1.0;
  auto g = build_graph(generate_edges(cfg));
  auto core = ab_core(g, 0, 2, 2);
  REQUIRE(core.u_side == std::vector<Vertex>{0, 1, 2});
  REQUIRE(core.v_side == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("ab_core drops a degree-deficient snapshot") {
  auto g = build_graph({{0, 0, 0}});
  auto core = ab_core(g, 0, 2, 1);
  REQUIRE(core.u_side.empty());
  REQUIRE(core.v_side.empty());
}

TEST_CASE("ab_core equals the delete-until-fixpoint oracle") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = fixtures::corpus_graph(seed, 0.5);
    for (Timestamp t = 0; t < g.n_t(); ++t) {
      auto core = ab_core(g, t, 2, 2);
      std::set<Vertex> us, vs;
      for (Vertex u = 0; u < g.n_u(); ++u)
        if (g.u_m_degree(t, u) > 0) us.insert(u);
      for (Vertex v = 0; v < g.n_v(); ++v)
        if (g.v_m_degree(t, v) > 0) vs.insert(v);
      bool changed = true;
      while (changed) {
        changed = false;
        for (auto it = us.begin(); it != us.end();) {
          int d = 0;
          for (Vertex v : g.u_snap(t, *it)) d += vs.count(v);
          if (d < 2) {
            it = us.erase(it);
            changed = true;
          } else {
            ++it;
          }
        }
        for (auto it = vs.begin(); it != vs.end();) {
          int d = 0;
          for (Vertex u : g.v_snap(t, *it)) d += us.count(u);
          if (d < 2) {
            it = vs.erase(it);
            changed = true;
          } else {
            ++it;
          }
        }
      }
      REQUIRE(core.u_side == std::vector<Vertex>(us.begin(), us.end()));
      REQUIRE(core.v_side == std::vector<Vertex>(vs.begin(), vs.end()));
    }
  }
}

TEST_CASE("infeasible frequency empties the graph") {
  auto g = fixtures::example_graph();
  auto red = gf_core(g, {2, 2, 7});  // lambda > |T|
  REQUIRE(red.graph.temporal_edge_count() == 0);
  REQUIRE(red.stats.pruned_edge_percent() == 100.0);
}

TEST_CASE("example-graph core retains every group vertex") {
  auto g = fixtures::example_graph();
  auto red = gf_core(g, {2, 2, 3});
  for (Vertex v = 0; v < 5; ++v) REQUIRE(red.v_survives(v));
  for (Vertex u = 0; u < 5; ++u) REQUIRE(red.u_survives(u));
}

TEST_CASE("gf_core equals the alternating fixpoint oracle") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto g = fixtures::corpus_graph(seed, seed % 2 ? 0.5 : 0.7);
    Params p{1 + static_cast<std::uint32_t>(seed % 3),
             1 + static_cast<std::uint32_t>((seed / 3) % 3),
             1 + static_cast<std::uint32_t>((seed / 9) % 3)};
    auto red = gf_core(g, p);
    REQUIRE(reduction_edges(red) == naive_gf_core(g, p));
  }
}

TEST_CASE("core safety: every brute-force group member survives") {
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    auto g = fixtures::corpus_graph(seed, 0.5);
    Params p{2, 2, 2};
    auto red = gf_core(g, p);
    for (const auto& grp : oracle::enumerate_bruteforce(g, p))
      for (Vertex v : grp.members) REQUIRE(red.v_survives(v));
  }
}

TEST_CASE("gf_core is idempotent") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = fixtures::corpus_graph(seed, 0.5);
    Params p{2, 2, 2};
    auto red = gf_core(g, p);
    auto red2 = gf_core(red.graph, p);
    REQUIRE(red2.stats.edges_after == red2.stats.edges_before);
    REQUIRE(red2.stats.edge_deletions == 0);
  }
}

TEST_CASE("tightening any parameter never grows the core") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = fixtures::corpus_graph(seed, 0.7);
    auto base = reduction_edges(gf_core(g, {2, 2, 2}));
    for (Params p : {Params{3, 2, 2}, Params{2, 3, 2}, Params{2, 2, 3}}) {
      auto tighter = reduction_edges(gf_core(g, p));
      REQUIRE(std::includes(base.begin(), base.end(), tighter.begin(), tighter.end()));
    }
  }
}

TEST_CASE("each temporal edge is deleted at most once") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = fixtures::corpus_graph(seed, 0.5);
    auto red = gf_core(g, {2, 2, 2});
    REQUIRE(red.stats.edge_deletions <= red.stats.edges_before);
    REQUIRE(red.stats.edge_deletions == red.stats.edges_before - red.stats.edges_after);
  }
}

TEST_CASE("core survivors sit inside each snapshot's degree core") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = fixtures::corpus_graph(seed, 0.6);
    Params p{2, 2, 2};
    auto red = gf_core(g, p);
    for (Timestamp k = 0; k < red.graph.n_t(); ++k) {
      auto snap_core = ab_core(g, red.t_map[k], p.tau_v, p.tau_u);
      for (Vertex u = 0; u < red.graph.n_u(); ++u)
        if (red.graph.u_m_degree(k, u) > 0)
          REQUIRE(
              std::binary_search(snap_core.u_side.begin(), snap_core.u_side.end(), red.u_map[u]));
      for (Vertex v = 0; v < red.graph.n_v(); ++v)
        if (red.graph.v_m_degree(k, v) > 0)
          REQUIRE(
              std::binary_search(snap_core.v_side.begin(), snap_core.v_side.end(), red.v_map[v]));
    }
  }
}
