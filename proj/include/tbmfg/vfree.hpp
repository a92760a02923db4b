#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "tbmfg/corefilter.hpp"
#include "tbmfg/graph.hpp"
#include "tbmfg/types.hpp"

namespace tbmfg {

/// Processing order over V: order[k] is the vertex handled k-th.
struct IdOrder {
  std::vector<Vertex> order;
};

/// Ascending structural degree, ties broken by vertex id. Any permutation
/// yields the same result set; this one keeps runs reproducible.
inline IdOrder degree_reorder(const TemporalBipartiteGraph& g) {
  IdOrder out;
  out.order.resize(g.n_v());
  for (Vertex v = 0; v < g.n_v(); ++v) out.order[v] = v;
  std::stable_sort(out.order.begin(), out.order.end(), [&](Vertex a, Vertex b) {
    auto da = g.v_static(a).size(), db = g.v_static(b).size();
    return da != db ? da < db : a < b;
  });
  return out;
}

/// Snapshot of one expansion, handed to the test observer.
struct VFreeFrameTrace {
  std::vector<Vertex> group;             // V'_S, sorted by vertex id
  std::vector<Vertex> accepted;          // every v' whose survived count reached lambda
  std::vector<Timestamp> survived;       // C'_T
  std::vector<Timestamp> parent_survived;
};

using VFreeObserver = std::function<void(const VFreeFrameTrace&)>;

struct VFreeOptions {
  int workers = 1;
  bool validate = false;                     // re-derive counting state after every retract
  const std::vector<Vertex>* id_order = nullptr;  // processing-order override
  VFreeObserver observer;                    // forces single-worker execution
};

/// Timestamp-oriented enumeration state. cnt_u is maintained incrementally
/// along the recursion (incremented on expansion, decremented on retract);
/// cnt_v rows are never cleared, their validity is gated by a stamp that
/// changes for every (candidate, timestamp) step; cnt_t is zeroed by the
/// same pass that consumes it.
class VFreeEngine {
 public:
  VFreeEngine(const TemporalBipartiteGraph& g, const Params& p, std::vector<Vertex> order)
      : g_(g),
        p_(p),
        n_u_(g.n_u()),
        n_v_(g.n_v()),
        rank_(g.n_v()),
        in_vs_(g.n_v(), 0),
        cnt_u_(g.n_t() * g.n_u(), 0),
        cnt_v_(g.n_t() * g.n_v(), 0),
        cnt_t_(g.n_v(), 0),
        stamp_(g.n_t() * g.n_v(), 0) {
    if (order.size() != g.n_v()) throw std::invalid_argument("id order must cover all of V");
    for (std::size_t k = 0; k < order.size(); ++k) rank_[order[k]] = static_cast<Vertex>(k);
    order_ = std::move(order);
  }

  std::vector<FrequencyGroup> out;
  EnumStats stats;
  VFreeObserver observer;
  bool validate = false;

  struct ExpandResult {
    std::vector<Timestamp> survived;  // C'_T for V_S + v
    std::vector<Vertex> valid;        // candidates ranked after v, frequent with V_S + v
    std::vector<Vertex> registered;   // every vertex that reached tau_u at some timestamp
    std::vector<Vertex> accepted;     // registered vertices whose survived count >= lambda
    bool not_repeat = true;
  };

  /// Adds v to the processing set: bumps cnt_u over the frame's surviving
  /// timestamps, collects the snapshot-wise common neighborhood, and counts
  /// survived timestamps per reachable candidate. cnt_u keeps the
  /// increments until retract_candidate undoes them.
  ExpandResult expand_candidate(Vertex v, std::span<const Timestamp> c_t) {
    v_s_.push_back(v);
    in_vs_[v] = 1;
    const std::uint32_t vs_size = static_cast<std::uint32_t>(v_s_.size());
    ExpandResult ex;
    for (Timestamp t : c_t) {
      ++epoch_;
      cand_u_.clear();
      for (Vertex u : g_.v_snap(t, v)) {
        if (++cnt_u_[std::size_t{t} * n_u_ + u] == vs_size) cand_u_.push_back(u);
      }
      if (cand_u_.size() < p_.tau_u) continue;
      ex.survived.push_back(t);
      for (Vertex uu : cand_u_) {
        for (Vertex v2 : g_.u_snap(t, uu)) {
          if (in_vs_[v2]) continue;
          const std::size_t at = std::size_t{t} * n_v_ + v2;
          std::uint32_t c;
          if (stamp_[at] != epoch_) {
            stamp_[at] = epoch_;
            cnt_v_[at] = 1;
            c = 1;
          } else {
            c = ++cnt_v_[at];
          }
          if (c == p_.tau_u) {
            if (cnt_t_[v2] == 0) ex.registered.push_back(v2);
            ++cnt_t_[v2];
          }
        }
      }
    }
    for (Vertex v2 : ex.registered) {
      const std::uint32_t k = cnt_t_[v2];
      cnt_t_[v2] = 0;
      if (k < p_.lambda) continue;
      ex.accepted.push_back(v2);
      if (rank_[v2] < rank_[v])
        ex.not_repeat = false;
      else
        ex.valid.push_back(v2);
    }
    return ex;
  }

  /// Inverse of expand_candidate over the same frame timestamps.
  void retract_candidate(Vertex v, std::span<const Timestamp> c_t) {
    for (Timestamp t : c_t)
      for (Vertex u : g_.v_snap(t, v)) --cnt_u_[std::size_t{t} * n_u_ + u];
    in_vs_[v] = 0;
    v_s_.pop_back();
    if (validate) check_restored(v, c_t);
  }

  void recurse(std::span<const Vertex> c_v, std::span<const Timestamp> c_t) {
    for (Vertex v : c_v) {
      ++stats.frames;
      ExpandResult ex = expand_candidate(v, c_t);
      if (observer) notify(ex, c_t);
      if (v_s_.size() + ex.valid.size() >= p_.tau_v && ex.survived.size() >= p_.lambda) {
        std::sort(ex.valid.begin(), ex.valid.end(),
                  [&](Vertex a, Vertex b) { return rank_[a] < rank_[b]; });
        if (!ex.valid.empty()) recurse(ex.valid, ex.survived);
        if (ex.valid.empty() && ex.not_repeat) {
          FrequencyGroup grp;
          grp.members = v_s_;
          std::sort(grp.members.begin(), grp.members.end());
          grp.support = ex.survived;
          out.push_back(std::move(grp));
        }
      }
      retract_candidate(v, c_t);
    }
  }

  void run_root(std::span<const Vertex> root_candidates) {
    std::vector<Timestamp> all_t(g_.n_t());
    for (Timestamp t = 0; t < g_.n_t(); ++t) all_t[t] = t;
    recurse(root_candidates, all_t);
  }

  const std::vector<Vertex>& order() const { return order_; }

  bool counting_state_zero() const {
    return std::all_of(cnt_u_.begin(), cnt_u_.end(), [](auto x) { return x == 0; }) &&
           std::all_of(cnt_t_.begin(), cnt_t_.end(), [](auto x) { return x == 0; }) && v_s_.empty();
  }

 private:
  void notify(const ExpandResult& ex, std::span<const Timestamp> c_t) {
    VFreeFrameTrace tr;
    tr.group = v_s_;
    std::sort(tr.group.begin(), tr.group.end());
    tr.accepted = ex.accepted;
    std::sort(tr.accepted.begin(), tr.accepted.end());
    tr.survived = ex.survived;
    tr.parent_survived.assign(c_t.begin(), c_t.end());
    observer(tr);
  }

  // Shadow recomputation: cnt_u must again count m-neighbors within the
  // current set, and cnt_t must be fully zeroed.
  void check_restored(Vertex v, std::span<const Timestamp> c_t) const {
    for (Timestamp t : c_t) {
      for (Vertex u : g_.v_snap(t, v)) {
        std::uint32_t expect = 0;
        for (Vertex v2 : g_.u_snap(t, u)) expect += in_vs_[v2];
        if (cnt_u_[std::size_t{t} * n_u_ + u] != expect)
          throw std::logic_error("counting state not restored after retract");
      }
    }
    for (std::uint32_t c : cnt_t_)
      if (c != 0) throw std::logic_error("survived-timestamp counters leaked");
  }

  const TemporalBipartiteGraph& g_;
  Params p_;
  std::size_t n_u_, n_v_;
  std::vector<Vertex> order_;
  std::vector<Vertex> rank_;
  std::vector<std::uint8_t> in_vs_;
  std::vector<Vertex> v_s_;
  std::vector<Vertex> cand_u_;
  std::vector<std::uint32_t> cnt_u_, cnt_v_, cnt_t_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 0;
};

/// Verification-free enumeration on an already-reduced graph. Groups come
/// back in the given graph's id space.
inline EnumerationResult enumerate_vfree_core(const TemporalBipartiteGraph& g, const Params& p,
                                              const VFreeOptions& opt = {}) {
  p.validate();
  EnumerationResult result;
  if (g.n_v() == 0 || p.tau_v > g.n_v() || p.lambda > g.n_t()) return result;

  std::vector<Vertex> order = opt.id_order ? *opt.id_order : degree_reorder(g).order;

  int workers = std::max(1, opt.workers);
  if (opt.observer || opt.validate) workers = 1;
  if (workers == 1) {
    VFreeEngine eng(g, p, order);
    eng.observer = opt.observer;
    eng.validate = opt.validate;
    eng.run_root(eng.order());
    if (opt.validate && !eng.counting_state_zero())
      throw std::logic_error("counting state dirty after enumeration");
    result.groups = std::move(eng.out);
    result.stats = eng.stats;
  } else {
    // Top-level candidates are state-independent (the counting state is
    // all-zero between them), so they can be partitioned across workers.
    std::vector<std::unique_ptr<VFreeEngine>> engines;
    for (int w = 0; w < workers; ++w)
      engines.push_back(std::make_unique<VFreeEngine>(g, p, order));
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        std::vector<Vertex> mine;
        for (std::size_t i = w; i < order.size(); i += workers) mine.push_back(order[i]);
        engines[w]->run_root(mine);
      });
    }
    for (auto& th : threads) th.join();
    for (auto& eng : engines) {
      result.groups.insert(result.groups.end(), std::make_move_iterator(eng->out.begin()),
                           std::make_move_iterator(eng->out.end()));
      result.stats += eng->stats;
    }
  }
  std::sort(result.groups.begin(), result.groups.end());
  return result;
}

/// Verification-free enumeration: graph filtering, degree-ordered ids, then
/// the timestamp-oriented search. No per-candidate frequency verification
/// and no containment checks are performed anywhere on this path.
inline EnumerationResult enumerate_vfree(const TemporalBipartiteGraph& g, const Params& p,
                                         const VFreeOptions& opt = {}) {
  p.validate();
  EnumerationResult result;
  CoreReduction red = gf_core(g, p);
  const TemporalBipartiteGraph& rg = red.graph;
  if (rg.n_v() == 0 || p.tau_v > rg.n_v() || p.lambda > rg.n_t()) return result;

  VFreeOptions inner = opt;
  inner.id_order = nullptr;  // order recomputed on the reduced graph
  result = enumerate_vfree_core(rg, p, inner);
  for (auto& grp : result.groups) {
    for (auto& v : grp.members) v = red.v_map[v];
    for (auto& t : grp.support) t = red.t_map[t];
  }
  std::sort(result.groups.begin(), result.groups.end());
  return result;
}

}  // namespace tbmfg
