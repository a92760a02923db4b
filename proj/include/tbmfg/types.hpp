#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tbmfg/graph.hpp"

namespace tbmfg {

/// The query triple: minimum U-side biclique size, minimum group size,
/// and minimum number of support timestamps. All strictly positive.
struct Params {
  std::uint32_t tau_u = 1;
  std::uint32_t tau_v = 1;
  std::uint32_t lambda = 1;

  void validate() const {
    if (tau_u < 1 || tau_v < 1 || lambda < 1)
      throw std::invalid_argument("tau_u, tau_v and lambda must be >= 1");
  }
};

/// A V-side vertex set together with its support timestamps.
/// Both lists are sorted ascending (dense ids of the queried graph).
struct FrequencyGroup {
  std::vector<Vertex> members;
  std::vector<Timestamp> support;

  friend bool operator==(const FrequencyGroup&, const FrequencyGroup&) = default;
  friend auto operator<=>(const FrequencyGroup& a, const FrequencyGroup& b) {
    if (auto c = a.members <=> b.members; c != 0) return c;
    return a.support <=> b.support;
  }
};

/// Work counters collected during an enumeration run.
struct EnumStats {
  std::uint64_t frames = 0;                // search-tree nodes visited
  std::uint64_t frequency_checks = 0;      // whole-set frequency verifications
  std::uint64_t candidates_checked = 0;    // candidates fed to a frequency check
  std::uint64_t subset_comparisons = 0;    // result-set containment tests (baseline)

  EnumStats& operator+=(const EnumStats& o) {
    frames += o.frames;
    frequency_checks += o.frequency_checks;
    candidates_checked += o.candidates_checked;
    subset_comparisons += o.subset_comparisons;
    return *this;
  }
};

struct EnumerationResult {
  std::vector<FrequencyGroup> groups;  // sorted lexicographically by members
  EnumStats stats;
};

}  // namespace tbmfg
