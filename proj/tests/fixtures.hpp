#pragma once

#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tbmfg/generator.hpp"
#include "tbmfg/graph.hpp"
#include "tbmfg/types.hpp"

namespace fixtures {

// The six-snapshot running example: 5 customers u1..u5, 5 products v1..v5.
// With (tau_u, tau_v, lambda) = (2,2,3) it has exactly three maximal groups:
//   {v1,v2,v3,v5} supported at {t1,t3,t4}
//   {v2,v3,v4}    supported at {t3,t5,t6}
//   {v3,v4,v5}    supported at {t2,t3,t5,t6}
inline const char* kExampleEdgeList =
    "1 3 1\n"
    "3 1 1\n3 2 1\n3 3 1\n3 5 1\n"
    "4 1 1\n4 2 1\n4 3 1\n4 4 1\n4 5 1\n"
    "1 1 2\n1 2 2\n1 3 2\n"
    "2 3 2\n2 4 2\n2 5 2\n"
    "3 1 2\n"
    "5 3 2\n5 4 2\n5 5 2\n"
    "1 4 3\n"
    "2 1 3\n2 2 3\n2 3 3\n2 4 3\n"
    "3 1 3\n3 2 3\n3 3 3\n3 4 3\n3 5 3\n"
    "4 1 3\n4 2 3\n4 3 3\n4 4 3\n4 5 3\n"
    "1 1 4\n1 2 4\n1 3 4\n1 5 4\n"
    "5 1 4\n5 2 4\n5 3 4\n5 5 4\n"
    "2 2 5\n2 3 5\n2 4 5\n2 5 5\n"
    "5 2 5\n5 3 5\n5 4 5\n5 5 5\n"
    "1 2 6\n1 3 6\n1 5 6\n"
    "2 2 6\n2 3 6\n2 4 6\n"
    "3 3 6\n3 4 6\n3 5 6\n"
    "4 1 6\n4 2 6\n4 3 6\n4 4 6\n4 5 6\n";

inline tbmfg::TemporalBipartiteGraph example_graph() {
  std::istringstream in(kExampleEdgeList);
  return tbmfg::load_edge_list(in);
}

// Labels 1..5 densify to ids 0..4 and timestamps 1..6 to 0..5, so v_k is
// dense id k-1 and t_k dense id k-1.
inline std::vector<tbmfg::Vertex> vs(std::initializer_list<int> ks) {
  std::vector<tbmfg::Vertex> out;
  for (int k : ks) out.push_back(static_cast<tbmfg::Vertex>(k - 1));
  return out;
}
inline std::vector<tbmfg::Timestamp> ts(std::initializer_list<int> ks) {
  std::vector<tbmfg::Timestamp> out;
  for (int k : ks) out.push_back(static_cast<tbmfg::Timestamp>(k - 1));
  return out;
}

inline std::vector<tbmfg::FrequencyGroup> example_mfgs() {
  return {
      {vs({1, 2, 3, 5}), ts({1, 3, 4})},
      {vs({2, 3, 4}), ts({3, 5, 6})},
      {vs({3, 4, 5}), ts({2, 3, 5, 6})},
  };
}

/// Common static neighborhood of a V-side set (all of U for the empty set).
inline std::vector<tbmfg::Vertex> common_s_neighbors(const tbmfg::TemporalBipartiteGraph& g,
                                                     const std::vector<tbmfg::Vertex>& v_set) {
  std::vector<tbmfg::Vertex> common(g.n_u());
  for (tbmfg::Vertex u = 0; u < g.n_u(); ++u) common[u] = u;
  for (tbmfg::Vertex v : v_set) {
    auto row = g.v_static(v);
    std::vector<tbmfg::Vertex> next;
    std::set_intersection(common.begin(), common.end(), row.begin(), row.end(),
                          std::back_inserter(next));
    common = std::move(next);
  }
  return common;
}

/// Small random graph for oracle sweeps; dimensions are derived from the
/// seed so a corpus covers many shapes.
inline tbmfg::TemporalBipartiteGraph corpus_graph(std::uint64_t seed, double edge_prob) {
  tbmfg::GenConfig cfg;
  cfg.n_u = 2 + static_cast<std::uint32_t>(seed % 7);        // 2..8
  cfg.n_v = 2 + static_cast<std::uint32_t>((seed / 7) % 7);  // 2..8
  cfg.n_t = 1 + static_cast<std::uint32_t>((seed / 49) % 5); // 1..5
  cfg.edge_prob = edge_prob;
  cfg.seed = seed * 0x9e3779b97f4a7c15ull + 1;
  return tbmfg::build_graph(tbmfg::generate_edges(cfg));
}

}  // namespace fixtures
