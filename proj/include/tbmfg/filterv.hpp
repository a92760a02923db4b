#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <memory>
#include <span>
#include <thread>
#include <vector>

#include "tbmfg/corefilter.hpp"
#include "tbmfg/graph.hpp"
#include "tbmfg/types.hpp"

namespace tbmfg {

/// Reusable counting arrays for frequency verification. ra[t] counts the
/// current U vertex's m-neighbors inside the checked set at t; ua[t] counts
/// U vertices adjacent to the whole set at t. Only touched positions are
/// dirtied and re-zeroed, so a scratch can be reused across calls.
struct FrequencyScratch {
  std::vector<std::uint32_t> ra, ua;
  std::vector<Timestamp> ra_touched, ua_touched;

  explicit FrequencyScratch(std::size_t n_t) : ra(n_t, 0), ua(n_t, 0) {}

  bool clean() const {
    return std::all_of(ra.begin(), ra.end(), [](auto x) { return x == 0; }) &&
           std::all_of(ua.begin(), ua.end(), [](auto x) { return x == 0; }) && ra_touched.empty() &&
           ua_touched.empty();
  }

  void reset_ra() {
    for (Timestamp t : ra_touched) ra[t] = 0;
    ra_touched.clear();
  }
  void reset_ua() {
    for (Timestamp t : ua_touched) ua[t] = 0;
    ua_touched.clear();
  }
};

namespace detail {

/// Adds u's per-timestamp m-neighbor counts within v_set into scratch.ra,
/// scanning the edge timestamp lists of u's static neighbors. v_set sorted.
inline void accumulate_reborn(const TemporalBipartiteGraph& g, Vertex u,
                              std::span<const Vertex> v_set, FrequencyScratch& scratch) {
  auto row = g.u_static(u);
  auto eids = g.u_edge_ids(u);
  std::size_t i = 0, j = 0;
  while (i < row.size() && j < v_set.size()) {
    if (row[i] < v_set[j]) {
      ++i;
    } else if (row[i] > v_set[j]) {
      ++j;
    } else {
      for (Timestamp t : g.edge_times(eids[i])) {
        if (scratch.ra[t]++ == 0) scratch.ra_touched.push_back(t);
      }
      ++i;
      ++j;
    }
  }
}

/// Fills scratch.ua with the number of common m-neighbors of v_set at each
/// timestamp, counting only vertices of u_set.
inline void build_update_array(const TemporalBipartiteGraph& g, std::span<const Vertex> u_set,
                               std::span<const Vertex> v_set, FrequencyScratch& scratch) {
  assert(scratch.clean());
  for (Vertex u : u_set) {
    accumulate_reborn(g, u, v_set, scratch);
    for (Timestamp t : scratch.ra_touched) {
      if (scratch.ra[t] == v_set.size()) {
        if (scratch.ua[t]++ == 0) scratch.ua_touched.push_back(t);
      }
    }
    scratch.reset_ra();
  }
}

}  // namespace detail

/// The per-timestamp m-neighbor counts of u within v_set (one full row).
inline std::vector<std::uint32_t> support_count_reborn(const TemporalBipartiteGraph& g, Vertex u,
                                                       std::span<const Vertex> v_set) {
  FrequencyScratch scratch(g.n_t());
  detail::accumulate_reborn(g, u, v_set, scratch);
  return scratch.ra;
}

/// The full common-m-neighbor histogram of v_set over all timestamps,
/// restricted to u_set.
inline std::vector<std::uint32_t> update_array(const TemporalBipartiteGraph& g,
                                               std::span<const Vertex> u_set,
                                               std::span<const Vertex> v_set) {
  FrequencyScratch scratch(g.n_t());
  detail::build_update_array(g, u_set, v_set, scratch);
  return scratch.ua;
}

/// True iff at least lambda timestamps have >= tau_u vertices of u_set
/// adjacent to all of v_set. u_set must be the common static neighborhood
/// of v_set; exits as soon as lambda support timestamps are counted.
inline bool check_fre(const TemporalBipartiteGraph& g, std::span<const Vertex> u_set,
                      std::span<const Vertex> v_set, const Params& p, FrequencyScratch& scratch) {
  detail::build_update_array(g, u_set, v_set, scratch);
  std::uint32_t found = 0;
  bool ok = false;
  for (Timestamp t = 0; t < g.n_t() && !ok; ++t) {
    if (scratch.ua[t] >= p.tau_u) {
      if (++found == p.lambda) ok = true;
    }
  }
  scratch.reset_ua();
  return ok;
}

inline bool check_fre(const TemporalBipartiteGraph& g, std::span<const Vertex> u_set,
                      std::span<const Vertex> v_set, const Params& p) {
  FrequencyScratch scratch(g.n_t());
  return check_fre(g, u_set, v_set, p, scratch);
}

/// All support timestamps of v_set, by a full update-array pass.
inline std::vector<Timestamp> biclique_support(const TemporalBipartiteGraph& g,
                                               std::span<const Vertex> u_set,
                                               std::span<const Vertex> v_set, std::uint32_t tau_u,
                                               FrequencyScratch& scratch) {
  detail::build_update_array(g, u_set, v_set, scratch);
  std::vector<Timestamp> out;
  for (Timestamp t = 0; t < g.n_t(); ++t)
    if (scratch.ua[t] >= tau_u) out.push_back(t);
  scratch.reset_ua();
  return out;
}

/// For each V vertex, the sorted timestamps where its m-degree reaches
/// tau_u. A candidate can only gain support at such timestamps.
struct TimestampIndex {
  Csr t_of_v;
  std::uint32_t tau_u = 0;

  static TimestampIndex build(const TemporalBipartiteGraph& g, std::uint32_t tau_u) {
    TimestampIndex idx;
    idx.tau_u = tau_u;
    idx.t_of_v.offsets.assign(g.n_v() + 1, 0);
    for (Vertex v = 0; v < g.n_v(); ++v) {
      for (Timestamp t = 0; t < g.n_t(); ++t)
        if (g.v_m_degree(t, v) >= tau_u) idx.t_of_v.values.push_back(t);
      idx.t_of_v.offsets[v + 1] = static_cast<std::uint32_t>(idx.t_of_v.values.size());
    }
    return idx;
  }

  std::span<const Timestamp> times(Vertex v) const { return t_of_v.row(v); }
};

/// Drops every candidate whose eligible-timestamp intersection with v_set
/// cannot reach lambda. The base intersection over v_set is computed once.
/// Never removes a candidate that would pass the frequency check.
inline std::vector<Vertex> candidate_filter(const TimestampIndex& idx,
                                            std::span<const Vertex> v_set,
                                            std::span<const Vertex> cands, std::uint32_t lambda,
                                            std::size_t n_t) {
  std::vector<std::uint8_t> base(n_t, 0);
  std::size_t base_count = 0;
  if (v_set.empty()) {
    std::fill(base.begin(), base.end(), 1);
    base_count = n_t;
  } else {
    std::vector<std::uint32_t> cnt(n_t, 0);
    for (Vertex v : v_set)
      for (Timestamp t : idx.times(v)) ++cnt[t];
    for (Timestamp t = 0; t < n_t; ++t)
      if (cnt[t] == v_set.size()) {
        base[t] = 1;
        ++base_count;
      }
  }
  std::vector<Vertex> out;
  if (base_count < lambda) return out;
  for (Vertex c : cands) {
    std::uint32_t hits = 0;
    for (Timestamp t : idx.times(c))
      if (base[t] && ++hits == lambda) break;
    if (hits >= lambda) out.push_back(c);
  }
  return out;
}

namespace detail {

inline std::vector<Vertex> intersect_sorted(std::span<const Vertex> a, std::span<const Vertex> b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::vector<Vertex> sorted_insert(std::span<const Vertex> xs, Vertex x) {
  std::vector<Vertex> out(xs.begin(), xs.end());
  out.insert(std::upper_bound(out.begin(), out.end(), x), x);
  return out;
}

}  // namespace detail

/// Candidates of c_v whose individual addition to v_s keeps the group
/// frequent. u_s must be the common static neighborhood of v_s.
inline std::vector<Vertex> valid_candidate_set(const TemporalBipartiteGraph& g,
                                               std::span<const Vertex> u_s,
                                               std::span<const Vertex> v_s,
                                               std::span<const Vertex> c_v, const Params& p) {
  TimestampIndex idx = TimestampIndex::build(g, p.tau_u);
  FrequencyScratch scratch(g.n_t());
  std::vector<Vertex> out;
  for (Vertex v : candidate_filter(idx, v_s, c_v, p.lambda, g.n_t())) {
    auto u_child = detail::intersect_sorted(u_s, g.v_static(v));
    auto v_child = detail::sorted_insert(v_s, v);
    if (check_fre(g, u_child, v_child, p, scratch)) out.push_back(v);
  }
  return out;
}

/// Maximality test against the previously-processed vertices x_v: v_s is
/// maximal iff none of them forms a frequent group with it. The caller
/// guarantees v_s is frequent and its valid candidate set is empty.
inline bool check_maximality(const TemporalBipartiteGraph& g, std::span<const Vertex> u_s,
                             std::span<const Vertex> v_s, std::span<const Vertex> x_v,
                             const Params& p) {
  TimestampIndex idx = TimestampIndex::build(g, p.tau_u);
  FrequencyScratch scratch(g.n_t());
  for (Vertex x : candidate_filter(idx, v_s, x_v, p.lambda, g.n_t())) {
    auto u_x = detail::intersect_sorted(u_s, g.v_static(x));
    auto v_x = detail::sorted_insert(v_s, x);
    if (check_fre(g, u_x, v_x, p, scratch)) return false;
  }
  return true;
}

namespace detail {

/// Depth-first enumeration with per-branch valid-candidate precomputation.
/// Works on the (already core-reduced) graph it is given.
class FilterVEngine {
 public:
  FilterVEngine(const TemporalBipartiteGraph& g, const Params& p)
      : g_(g), p_(p), idx_(TimestampIndex::build(g, p.tau_u)), scratch_(g.n_t()) {}

  std::vector<FrequencyGroup> out;
  EnumStats stats;

  std::vector<Vertex> compute_valid(std::span<const Vertex> u_s, std::span<const Vertex> v_s,
                                    std::span<const Vertex> c_v) {
    std::vector<Vertex> c_star;
    for (Vertex v : candidate_filter(idx_, v_s, c_v, p_.lambda, g_.n_t())) {
      auto u_child = intersect_sorted(u_s, g_.v_static(v));
      auto v_child = sorted_insert(v_s, v);
      ++stats.frequency_checks;
      ++stats.candidates_checked;
      if (check_fre(g_, u_child, v_child, p_, scratch_)) c_star.push_back(v);
    }
    return c_star;
  }

  void enum_mfg(std::span<const Vertex> u_s, std::span<const Vertex> v_s,
                std::span<const Vertex> c_v) {
    ++stats.frames;
    std::vector<Vertex> c_star = compute_valid(u_s, v_s, c_v);
    if (u_s.size() < p_.tau_u || v_s.size() + c_star.size() < p_.tau_v) return;
    if (c_star.empty()) {
      if (is_maximal(u_s, v_s)) {
        FrequencyGroup grp;
        grp.members.assign(v_s.begin(), v_s.end());
        grp.support = biclique_support(g_, u_s, v_s, p_.tau_u, scratch_);
        out.push_back(std::move(grp));
      }
      return;
    }
    const std::size_t x_entry = x_v_.size();
    for (std::size_t i = 0; i < c_star.size(); ++i) {
      Vertex v = c_star[i];
      auto u_child = intersect_sorted(u_s, g_.v_static(v));
      auto v_child = sorted_insert(v_s, v);
      enum_mfg(u_child, v_child, std::span<const Vertex>(c_star).subspan(i + 1));
      x_v_.push_back(v);  // v joins the processed set for the later siblings
    }
    x_v_.resize(x_entry);
  }

  void set_processed_prefix(std::span<const Vertex> xs) { x_v_.assign(xs.begin(), xs.end()); }

 private:
  bool is_maximal(std::span<const Vertex> u_s, std::span<const Vertex> v_s) {
    for (Vertex x : candidate_filter(idx_, v_s, x_v_, p_.lambda, g_.n_t())) {
      auto u_x = intersect_sorted(u_s, g_.v_static(x));
      auto v_x = sorted_insert(v_s, x);
      ++stats.frequency_checks;
      if (check_fre(g_, u_x, v_x, p_, scratch_)) return false;
    }
    return true;
  }

  const TemporalBipartiteGraph& g_;
  Params p_;
  TimestampIndex idx_;
  FrequencyScratch scratch_;
  std::vector<Vertex> x_v_;
};

inline std::vector<Vertex> iota_vertices(std::size_t n) {
  std::vector<Vertex> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Vertex>(i);
  return out;
}

inline std::vector<FrequencyGroup> map_back(std::vector<FrequencyGroup> groups,
                                            const CoreReduction& red) {
  for (auto& grp : groups) {
    for (auto& v : grp.members) v = red.v_map[v];
    for (auto& t : grp.support) t = red.t_map[t];
  }
  std::sort(groups.begin(), groups.end());
  return groups;
}

}  // namespace detail

struct EnumerateOptions {
  int workers = 1;
};

/// Filter-and-verification enumeration of all maximal frequency groups.
/// Branches spawned from distinct top-level candidates are independent, so
/// they may be spread over workers, each with private scratch state.
inline EnumerationResult enumerate_filterv(const TemporalBipartiteGraph& g, const Params& p,
                                           const EnumerateOptions& opt = {}) {
  p.validate();
  EnumerationResult result;
  CoreReduction red = gf_core(g, p);
  const TemporalBipartiteGraph& rg = red.graph;
  if (rg.n_v() == 0 || p.tau_v > rg.n_v() || p.lambda > rg.n_t()) return result;

  const std::vector<Vertex> all_u = detail::iota_vertices(rg.n_u());
  const std::vector<Vertex> all_v = detail::iota_vertices(rg.n_v());

  detail::FilterVEngine root(rg, p);
  ++root.stats.frames;
  std::vector<Vertex> c_star = root.compute_valid(all_u, {}, all_v);
  result.stats += root.stats;
  if (all_u.size() < p.tau_u || c_star.size() < p.tau_v || c_star.empty()) return result;

  auto run_branch = [&](detail::FilterVEngine& eng, std::size_t i) {
    Vertex v = c_star[i];
    eng.set_processed_prefix(std::span<const Vertex>(c_star).first(i));
    auto u_child = detail::intersect_sorted(all_u, rg.v_static(v));
    std::vector<Vertex> v_child{v};
    eng.enum_mfg(u_child, v_child, std::span<const Vertex>(c_star).subspan(i + 1));
  };

  std::vector<FrequencyGroup> groups;
  int workers = std::max(1, opt.workers);
  if (workers == 1) {
    detail::FilterVEngine eng(rg, p);
    for (std::size_t i = 0; i < c_star.size(); ++i) run_branch(eng, i);
    groups = std::move(eng.out);
    result.stats += eng.stats;
  } else {
    std::vector<std::unique_ptr<detail::FilterVEngine>> engines;
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) engines.push_back(std::make_unique<detail::FilterVEngine>(rg, p));
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        for (std::size_t i = w; i < c_star.size(); i += workers) run_branch(*engines[w], i);
      });
    }
    for (auto& th : threads) th.join();
    for (auto& eng : engines) {
      groups.insert(groups.end(), std::make_move_iterator(eng->out.begin()),
                    std::make_move_iterator(eng->out.end()));
      result.stats += eng->stats;
    }
  }
  result.groups = detail::map_back(std::move(groups), red);
  return result;
}

namespace detail {

/// Plain depth-first baseline: every candidate is appended first and its
/// frequency checked by per-timestamp neighborhood intersection; maximality
/// falls back to containment tests against the found results.
class BkEngine {
 public:
  BkEngine(const TemporalBipartiteGraph& g, const Params& p) : g_(g), p_(p) {}

  EnumStats stats;

  void run() {
    std::vector<Vertex> all_u = iota_vertices(g_.n_u());
    std::vector<Vertex> v_s;
    bk(all_u, v_s, iota_vertices(g_.n_v()));
  }

  std::vector<FrequencyGroup> finish() {
    std::vector<FrequencyGroup> out;
    for (auto& members : results_) {
      FrequencyGroup grp;
      grp.support = support_naive(members);
      grp.members = std::move(members);
      out.push_back(std::move(grp));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::uint32_t common_m_neighbor_count(std::span<const Vertex> v_set, Timestamp t) {
    common_.assign(g_.v_snap(t, v_set[0]).begin(), g_.v_snap(t, v_set[0]).end());
    for (std::size_t i = 1; i < v_set.size() && common_.size() >= p_.tau_u; ++i) {
      auto row = g_.v_snap(t, v_set[i]);
      next_.clear();
      std::set_intersection(common_.begin(), common_.end(), row.begin(), row.end(),
                            std::back_inserter(next_));
      common_.swap(next_);
    }
    return static_cast<std::uint32_t>(common_.size());
  }

  bool frequent_naive(std::span<const Vertex> v_set) {
    ++stats.frequency_checks;
    std::uint32_t found = 0;
    for (Timestamp t = 0; t < g_.n_t(); ++t)
      if (common_m_neighbor_count(v_set, t) >= p_.tau_u && ++found == p_.lambda) return true;
    return false;
  }

  std::vector<Timestamp> support_naive(std::span<const Vertex> v_set) {
    std::vector<Timestamp> out;
    for (Timestamp t = 0; t < g_.n_t(); ++t)
      if (common_m_neighbor_count(v_set, t) >= p_.tau_u) out.push_back(t);
    return out;
  }

  void bk(const std::vector<Vertex>& u_s, std::vector<Vertex>& v_s, std::span<const Vertex> c_v) {
    ++stats.frames;
    bool extended = false;
    for (std::size_t i = 0; i < c_v.size(); ++i) {
      Vertex v = c_v[i];
      auto u_child = intersect_sorted(u_s, g_.v_static(v));
      v_s.push_back(v);
      ++stats.candidates_checked;
      if (frequent_naive(v_s)) {
        extended = true;
        bk(u_child, v_s, c_v.subspan(i + 1));
      }
      v_s.pop_back();
    }
    if (!extended && v_s.size() >= p_.tau_v) insert_maximal(v_s);
  }

  static bool is_subset(std::span<const Vertex> a, std::span<const Vertex> b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }

  void insert_maximal(const std::vector<Vertex>& v_s) {
    for (const auto& r : results_) {
      ++stats.subset_comparisons;
      if (is_subset(v_s, r)) return;
    }
    std::erase_if(results_, [&](const std::vector<Vertex>& r) {
      ++stats.subset_comparisons;
      return is_subset(r, v_s);
    });
    results_.push_back(v_s);
  }

  const TemporalBipartiteGraph& g_;
  Params p_;
  std::vector<std::vector<Vertex>> results_;
  std::vector<Vertex> common_, next_;
};

}  // namespace detail

/// Bron-Kerbosch style baseline with graph filtering only. Output is
/// identical to enumerate_filterv; it exists as the reference point the
/// optimized enumerators are measured against.
inline EnumerationResult enumerate_bk_baseline(const TemporalBipartiteGraph& g, const Params& p) {
  p.validate();
  EnumerationResult result;
  CoreReduction red = gf_core(g, p);
  const TemporalBipartiteGraph& rg = red.graph;
  if (rg.n_v() == 0 || p.tau_v > rg.n_v() || p.lambda > rg.n_t()) return result;

  detail::BkEngine eng(rg, p);
  eng.run();
  result.stats = eng.stats;
  result.groups = detail::map_back(eng.finish(), red);
  return result;
}

}  // namespace tbmfg
