#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "tbmfg/graph.hpp"
#include "tbmfg/types.hpp"

// Brute-force reference implementations, kept deliberately naive: every
// value is computed by direct set arithmetic over the snapshots so the
// optimized enumerators have an independent yardstick.

namespace tbmfg::oracle {

struct SizeGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// All t where the members of v_set have at least tau_u common m-neighbors,
/// i.e. where v_set sits in a (tau_u, |v_set|)-biclique of the snapshot.
inline std::vector<Timestamp> support_timestamps(const TemporalBipartiteGraph& g,
                                                 std::span<const Vertex> v_set,
                                                 std::uint32_t tau_u) {
  std::vector<Timestamp> out;
  std::vector<Vertex> common, next;
  for (Timestamp t = 0; t < g.n_t(); ++t) {
    common.assign(g.v_snap(t, v_set[0]).begin(), g.v_snap(t, v_set[0]).end());
    for (std::size_t i = 1; i < v_set.size() && common.size() >= tau_u; ++i) {
      auto row = g.v_snap(t, v_set[i]);
      next.clear();
      std::set_intersection(common.begin(), common.end(), row.begin(), row.end(),
                            std::back_inserter(next));
      common.swap(next);
    }
    if (common.size() >= tau_u) out.push_back(t);
  }
  return out;
}

inline bool is_frequency_group(const TemporalBipartiteGraph& g, std::span<const Vertex> v_set,
                               const Params& p) {
  if (v_set.size() < p.tau_v) return false;
  return support_timestamps(g, v_set, p.tau_u).size() >= p.lambda;
}

/// Enumerates every maximal frequency group by checking all subsets of V.
/// Refuses graphs with more than max_v V-side vertices.
inline std::vector<FrequencyGroup> enumerate_bruteforce(const TemporalBipartiteGraph& g,
                                                        const Params& p,
                                                        std::uint32_t max_v = 20) {
  p.validate();
  const std::size_t n_v = g.n_v();
  if (n_v > max_v)
    throw SizeGuardError("brute-force oracle limited to |V| <= " + std::to_string(max_v) +
                         ", got " + std::to_string(n_v));

  std::vector<std::uint32_t> frequent;  // bitmasks over V
  std::vector<Vertex> members;
  for (std::uint32_t mask = 1; mask < (1u << n_v); ++mask) {
    if (static_cast<std::uint32_t>(__builtin_popcount(mask)) < p.tau_v) continue;
    members.clear();
    for (std::size_t v = 0; v < n_v; ++v)
      if (mask & (1u << v)) members.push_back(static_cast<Vertex>(v));
    if (is_frequency_group(g, members, p)) frequent.push_back(mask);
  }

  std::vector<FrequencyGroup> out;
  for (std::uint32_t mask : frequent) {
    bool maximal = true;
    for (std::uint32_t other : frequent)
      if (other != mask && (mask & other) == mask) {
        maximal = false;
        break;
      }
    if (!maximal) continue;
    FrequencyGroup grp;
    for (std::size_t v = 0; v < n_v; ++v)
      if (mask & (1u << v)) grp.members.push_back(static_cast<Vertex>(v));
    grp.support = support_timestamps(g, grp.members, p.tau_u);
    out.push_back(std::move(grp));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tbmfg::oracle
