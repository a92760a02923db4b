#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "tbmfg/graph.hpp"

namespace tbmfg {

/// A complete U_B x V_B biclique stamped onto block_t distinct timestamps,
/// planted over the first block vertices of each side.
struct PlantedBlock {
  std::uint32_t n_u = 0;
  std::uint32_t n_v = 0;
  std::uint32_t n_t = 0;  // number of timestamps carrying the block
};

struct GenConfig {
  std::uint32_t n_u = 0;
  std::uint32_t n_v = 0;
  std::uint32_t n_t = 0;
  double edge_prob = 0.0;
  std::uint64_t seed = 0;
  std::optional<PlantedBlock> planted;
};

namespace detail {

// Explicit draws on mt19937_64 keep generated files identical across
// platforms (the std distributions are implementation-defined).
inline double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

}  // namespace detail

/// Samples each (u,v,t) triple independently with edge_prob, then overlays
/// the planted block on block.n_t seeded-random distinct timestamps.
/// Deterministic for a given config.
inline std::vector<TemporalEdge> generate_edges(const GenConfig& cfg) {
  if (cfg.edge_prob < 0.0 || cfg.edge_prob > 1.0)
    throw std::invalid_argument("edge_prob must be within [0,1]");
  if (cfg.planted) {
    const auto& b = *cfg.planted;
    if (b.n_u > cfg.n_u || b.n_v > cfg.n_v || b.n_t > cfg.n_t)
      throw std::invalid_argument("planted block exceeds graph dimensions");
  }
  std::mt19937_64 rng(cfg.seed);
  std::vector<TemporalEdge> edges;
  if (cfg.edge_prob > 0.0) {
    for (std::uint32_t u = 0; u < cfg.n_u; ++u)
      for (std::uint32_t v = 0; v < cfg.n_v; ++v)
        for (std::uint32_t t = 0; t < cfg.n_t; ++t)
          if (detail::unit_draw(rng) < cfg.edge_prob) edges.push_back({u, v, t});
  }
  if (cfg.planted && cfg.planted->n_u > 0 && cfg.planted->n_v > 0 && cfg.planted->n_t > 0) {
    const auto& b = *cfg.planted;
    std::vector<std::uint32_t> ts(cfg.n_t);
    for (std::uint32_t t = 0; t < cfg.n_t; ++t) ts[t] = t;
    for (std::uint32_t i = 0; i < b.n_t; ++i) {
      std::uint64_t j = i + detail::uniform_below(rng, cfg.n_t - i);
      std::swap(ts[i], ts[j]);
    }
    for (std::uint32_t i = 0; i < b.n_t; ++i)
      for (std::uint32_t u = 0; u < b.n_u; ++u)
        for (std::uint32_t v = 0; v < b.n_v; ++v) edges.push_back({u, v, ts[i]});
  }
  return edges;
}

}  // namespace tbmfg
