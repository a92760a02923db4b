#include <sstream>

#include "catch_amalgamated.hpp"
#include "fixtures.hpp"
#include "tbmfg/oracle.hpp"

using namespace tbmfg;

TEST_CASE("support timestamps of the example groups") {
  auto g = fixtures::example_graph();
  REQUIRE(oracle::support_timestamps(g, fixtures::vs({3, 4, 5}), 2) == fixtures::ts({2, 3, 5, 6}));
  REQUIRE(oracle::support_timestamps(g, fixtures::vs({1, 2, 3, 5}), 2) == fixtures::ts({1, 3, 4}));
  REQUIRE(oracle::support_timestamps(g, fixtures::vs({2, 3, 4}), 2) == fixtures::ts({3, 5, 6}));
}

TEST_CASE("singleton support is its snapshot presence") {
  auto g = fixtures::example_graph();
  for (Vertex v = 0; v < g.n_v(); ++v) {
    std::vector<Timestamp> expect;
    for (Timestamp t = 0; t < g.n_t(); ++t)
      if (g.v_m_degree(t, v) >= 1) expect.push_back(t);
    std::vector<Vertex> one{v};
    REQUIRE(oracle::support_timestamps(g, one, 1) == expect);
  }
}

TEST_CASE("is_frequency_group") {
  auto g = fixtures::example_graph();
  Params p{2, 2, 3};
  REQUIRE(oracle::is_frequency_group(g, fixtures::vs({1, 2, 3, 5}), p));
  // size gate: below tau_v is never a group
  REQUIRE_FALSE(oracle::is_frequency_group(g, fixtures::vs({3}), p));
  // {v1,v4} has a single support timestamp
  REQUIRE_FALSE(oracle::is_frequency_group(g, fixtures::vs({1, 4}), p));
}

TEST_CASE("brute force finds the three example groups") {
  auto g = fixtures::example_graph();
  auto got = oracle::enumerate_bruteforce(g, {2, 2, 3});
  REQUIRE(got == fixtures::example_mfgs());
}

TEST_CASE("brute force trivial cases") {
  auto empty = build_graph({});
  REQUIRE(oracle::enumerate_bruteforce(empty, {1, 1, 1}).empty());

  // complete bipartite graph present at every timestamp: V itself is the
  // single maximal group for lambda = |T|
  GenConfig cfg;
  cfg.n_u = 3;
  cfg.n_v = 4;
  cfg.n_t = 3;
  cfg.edge_prob = 1.0;
  cfg.seed = 0;
  auto g = build_graph(generate_edges(cfg));
  auto got = oracle::enumerate_bruteforce(g, {1, 1, 3});
  REQUIRE(got.size() == 1);
  REQUIRE(got[0].members == fixtures::vs({1, 2, 3, 4}));
  REQUIRE(got[0].support == fixtures::ts({1, 2, 3}));
}

TEST_CASE("size guard refuses wide graphs") {
  std::vector<TemporalEdge> edges;
  for (Label v = 0; v < 21; ++v) edges.push_back({v, v, 0});  // perfect matching
  auto g = build_graph(std::move(edges));
  REQUIRE_THROWS_AS(oracle::enumerate_bruteforce(g, {1, 1, 1}), oracle::SizeGuardError);
  auto got = oracle::enumerate_bruteforce(g, {1, 1, 1}, 21);  // raised guard
  REQUIRE(got.size() == 21);
}

TEST_CASE("oracle outputs are maximal frequency groups") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = fixtures::corpus_graph(seed, 0.5);
    Params p{1 + static_cast<std::uint32_t>(seed % 3), 1 + static_cast<std::uint32_t>(seed % 2),
             1 + static_cast<std::uint32_t>(seed % 3)};
    auto got = oracle::enumerate_bruteforce(g, p);
    // deterministic
    REQUIRE(got == oracle::enumerate_bruteforce(g, p));
    for (std::size_t i = 0; i < got.size(); ++i) {
      REQUIRE(oracle::is_frequency_group(g, got[i].members, p));
      REQUIRE(got[i].support == oracle::support_timestamps(g, got[i].members, p.tau_u));
      REQUIRE(got[i].support.size() >= p.lambda);
      // pairwise incomparable
      for (std::size_t j = 0; j < got.size(); ++j) {
        if (i == j) continue;
        REQUIRE_FALSE(std::includes(got[j].members.begin(), got[j].members.end(),
                                    got[i].members.begin(), got[i].members.end()));
      }
      // no single-vertex extension stays frequent
      for (Vertex v = 0; v < g.n_v(); ++v) {
        if (std::binary_search(got[i].members.begin(), got[i].members.end(), v)) continue;
        auto ext = got[i].members;
        ext.insert(std::upper_bound(ext.begin(), ext.end(), v), v);
        REQUIRE_FALSE(oracle::is_frequency_group(g, ext, p));
      }
    }
  }
}
