#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tbmfg {

using Vertex = std::uint32_t;     // dense per-side vertex index
using Timestamp = std::uint32_t;  // dense timestamp index
using Label = std::uint64_t;      // original integer label from the input

enum class Side : std::uint8_t { U, V };

/// A side-qualified vertex reference, used by the public accessors.
struct VertexId {
  Side side;
  Vertex index;
};

inline VertexId u_vertex(Vertex i) { return {Side::U, i}; }
inline VertexId v_vertex(Vertex i) { return {Side::V, i}; }

/// One temporal edge in original-label space.
struct TemporalEdge {
  Label u = 0;
  Label v = 0;
  Label t = 0;
  friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
  friend auto operator<=>(const TemporalEdge&, const TemporalEdge&) = default;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Compressed adjacency rows: offsets[i]..offsets[i+1] indexes into values.
struct Csr {
  std::vector<std::uint32_t> offsets;  // size rows()+1
  std::vector<std::uint32_t> values;

  std::size_t rows() const { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::span<const std::uint32_t> row(std::size_t i) const {
    return {values.data() + offsets[i], values.data() + offsets[i + 1]};
  }
  std::uint32_t degree(std::size_t i) const { return offsets[i + 1] - offsets[i]; }
};

/// Immutable temporal bipartite graph.
///
/// Vertices of both sides and timestamps are densified at construction;
/// the original labels are kept for output. Adjacency is materialized
/// twice: once statically (per-edge sorted timestamp lists) and once per
/// snapshot, so both edge-timestamp scans and per-snapshot walks are
/// index-addressable. All rows are sorted ascending and duplicate-free.
class TemporalBipartiteGraph {
 public:
  TemporalBipartiteGraph() = default;

  std::size_t n_u() const { return u_labels_.size(); }
  std::size_t n_v() const { return v_labels_.size(); }
  std::size_t n_t() const { return t_values_.size(); }
  std::uint64_t temporal_edge_count() const { return edge_times_.values.size(); }
  std::uint64_t static_edge_count() const { return static_u_.values.size(); }

  Label u_label(Vertex u) const { return u_labels_[u]; }
  Label v_label(Vertex v) const { return v_labels_[v]; }
  Label t_value(Timestamp t) const { return t_values_[t]; }
  const std::vector<Label>& u_labels() const { return u_labels_; }
  const std::vector<Label>& v_labels() const { return v_labels_; }
  const std::vector<Label>& t_values() const { return t_values_; }

  /// N(w,G): static neighbors on the opposite side, sorted.
  std::span<const Vertex> s_neighbors(VertexId w) const {
    check_vertex(w);
    return w.side == Side::U ? static_u_.row(w.index) : static_v_.row(w.index);
  }

  std::uint32_t s_degree(VertexId w) const { return static_cast<std::uint32_t>(s_neighbors(w).size()); }

  /// Gamma(w,t): neighbors within snapshot t, sorted.
  std::span<const Vertex> m_neighbors(VertexId w, Timestamp t) const {
    check_vertex(w);
    if (t >= n_t()) throw std::out_of_range("timestamp index out of range");
    return w.side == Side::U ? snap_u_[t].row(w.index) : snap_v_[t].row(w.index);
  }

  std::uint32_t m_degree(VertexId w, Timestamp t) const {
    return static_cast<std::uint32_t>(m_neighbors(w, t).size());
  }

  /// T_(u,v): timestamps carried by the static edge (u,v); empty if absent.
  std::span<const Timestamp> edge_timestamps(VertexId u, VertexId v) const {
    if (u.side != Side::U || v.side != Side::V)
      throw std::invalid_argument("edge_timestamps expects (U-side, V-side)");
    check_vertex(u);
    check_vertex(v);
    auto nbrs = static_u_.row(u.index);
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v.index);
    if (it == nbrs.end() || *it != v.index) return {};
    std::uint32_t e = static_u_edge_[static_u_.offsets[u.index] + (it - nbrs.begin())];
    return edge_times(e);
  }

  // Unchecked fast-path accessors used by the algorithms.
  std::span<const Vertex> u_static(Vertex u) const { return static_u_.row(u); }
  std::span<const Vertex> v_static(Vertex v) const { return static_v_.row(v); }
  std::span<const Vertex> u_snap(Timestamp t, Vertex u) const { return snap_u_[t].row(u); }
  std::span<const Vertex> v_snap(Timestamp t, Vertex v) const { return snap_v_[t].row(v); }
  std::uint32_t u_m_degree(Timestamp t, Vertex u) const { return snap_u_[t].degree(u); }
  std::uint32_t v_m_degree(Timestamp t, Vertex v) const { return snap_v_[t].degree(v); }
  /// Edge ids parallel to u_static(u).
  std::span<const std::uint32_t> u_edge_ids(Vertex u) const {
    return {static_u_edge_.data() + static_u_.offsets[u], static_u_edge_.data() + static_u_.offsets[u + 1]};
  }
  std::span<const Timestamp> edge_times(std::uint32_t e) const {
    return {edge_times_.values.data() + edge_times_.offsets[e],
            edge_times_.values.data() + edge_times_.offsets[e + 1]};
  }

  /// All temporal edges in original labels, sorted (u,v,t).
  std::vector<TemporalEdge> to_edges() const {
    std::vector<TemporalEdge> out;
    out.reserve(temporal_edge_count());
    for (Vertex u = 0; u < n_u(); ++u) {
      auto nbrs = static_u_.row(u);
      auto eids = u_edge_ids(u);
      for (std::size_t i = 0; i < nbrs.size(); ++i)
        for (Timestamp t : edge_times(eids[i]))
          out.push_back({u_labels_[u], v_labels_[nbrs[i]], t_values_[t]});
    }
    return out;
  }

  friend TemporalBipartiteGraph build_graph(std::vector<TemporalEdge> edges);

 private:
  void check_vertex(VertexId w) const {
    std::size_t n = w.side == Side::U ? n_u() : n_v();
    if (w.index >= n) throw std::out_of_range("vertex index out of range");
  }

  std::vector<Label> u_labels_, v_labels_, t_values_;
  Csr static_u_;                             // u -> sorted v neighbors
  Csr static_v_;                             // v -> sorted u neighbors
  std::vector<std::uint32_t> static_u_edge_; // parallel to static_u_.values
  Csr edge_times_;                           // static edge id -> sorted dense timestamps
  std::vector<Csr> snap_u_, snap_v_;         // per timestamp
};

namespace detail {

inline std::vector<Label> sorted_unique(std::vector<Label> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

inline std::uint32_t dense_index(const std::vector<Label>& dict, Label x) {
  return static_cast<std::uint32_t>(std::lower_bound(dict.begin(), dict.end(), x) - dict.begin());
}

}  // namespace detail

/// Builds the densified graph from temporal edges. Duplicate (u,v,t)
/// triples collapse to one edge; label order is preserved by the dense ids.
inline TemporalBipartiteGraph build_graph(std::vector<TemporalEdge> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  TemporalBipartiteGraph g;
  {
    std::vector<Label> us, vs, ts;
    us.reserve(edges.size());
    vs.reserve(edges.size());
    ts.reserve(edges.size());
    for (const auto& e : edges) {
      us.push_back(e.u);
      vs.push_back(e.v);
      ts.push_back(e.t);
    }
    g.u_labels_ = detail::sorted_unique(std::move(us));
    g.v_labels_ = detail::sorted_unique(std::move(vs));
    g.t_values_ = detail::sorted_unique(std::move(ts));
  }
  const std::size_t n_u = g.u_labels_.size();
  const std::size_t n_v = g.v_labels_.size();
  const std::size_t n_t = g.t_values_.size();

  struct DenseEdge {
    Vertex u, v;
    Timestamp t;
  };
  std::vector<DenseEdge> de;
  de.reserve(edges.size());
  for (const auto& e : edges)
    de.push_back({detail::dense_index(g.u_labels_, e.u), detail::dense_index(g.v_labels_, e.v),
                  detail::dense_index(g.t_values_, e.t)});
  // de stays sorted by (u,v,t) because dense ids preserve label order.

  // Static adjacency with per-edge timestamp lists.
  g.static_u_.offsets.assign(n_u + 1, 0);
  g.edge_times_.offsets.assign(1, 0);
  for (std::size_t i = 0; i < de.size();) {
    std::size_t j = i;
    while (j < de.size() && de[j].u == de[i].u && de[j].v == de[i].v) ++j;
    g.static_u_.values.push_back(de[i].v);
    g.static_u_.offsets[de[i].u + 1]++;
    for (std::size_t k = i; k < j; ++k) g.edge_times_.values.push_back(de[k].t);
    g.edge_times_.offsets.push_back(static_cast<std::uint32_t>(g.edge_times_.values.size()));
    i = j;
  }
  for (std::size_t u = 0; u < n_u; ++u) g.static_u_.offsets[u + 1] += g.static_u_.offsets[u];
  g.static_u_edge_.resize(g.static_u_.values.size());
  for (std::uint32_t e = 0; e < g.static_u_edge_.size(); ++e) g.static_u_edge_[e] = e;

  // Reverse static adjacency.
  g.static_v_.offsets.assign(n_v + 1, 0);
  for (Vertex v : g.static_u_.values) g.static_v_.offsets[v + 1]++;
  for (std::size_t v = 0; v < n_v; ++v) g.static_v_.offsets[v + 1] += g.static_v_.offsets[v];
  g.static_v_.values.resize(g.static_u_.values.size());
  {
    std::vector<std::uint32_t> fill(g.static_v_.offsets.begin(), g.static_v_.offsets.end() - 1);
    for (Vertex u = 0; u < n_u; ++u)
      for (Vertex v : g.static_u_.row(u)) g.static_v_.values[fill[v]++] = u;
  }

  // Per-snapshot adjacency, both directions.
  g.snap_u_.assign(n_t, Csr{});
  g.snap_v_.assign(n_t, Csr{});
  for (Timestamp t = 0; t < n_t; ++t) {
    g.snap_u_[t].offsets.assign(n_u + 1, 0);
    g.snap_v_[t].offsets.assign(n_v + 1, 0);
  }
  for (const auto& e : de) {
    g.snap_u_[e.t].offsets[e.u + 1]++;
    g.snap_v_[e.t].offsets[e.v + 1]++;
  }
  for (Timestamp t = 0; t < n_t; ++t) {
    for (std::size_t u = 0; u < n_u; ++u) g.snap_u_[t].offsets[u + 1] += g.snap_u_[t].offsets[u];
    for (std::size_t v = 0; v < n_v; ++v) g.snap_v_[t].offsets[v + 1] += g.snap_v_[t].offsets[v];
    g.snap_u_[t].values.resize(g.snap_u_[t].offsets[n_u]);
    g.snap_v_[t].values.resize(g.snap_v_[t].offsets[n_v]);
  }
  {
    std::vector<std::vector<std::uint32_t>> fill_u(n_t), fill_v(n_t);
    for (Timestamp t = 0; t < n_t; ++t) {
      fill_u[t].assign(g.snap_u_[t].offsets.begin(), g.snap_u_[t].offsets.end() - 1);
      fill_v[t].assign(g.snap_v_[t].offsets.begin(), g.snap_v_[t].offsets.end() - 1);
    }
    // Iterating in (u,v,t) order keeps every snapshot row sorted.
    for (const auto& e : de) {
      g.snap_u_[e.t].values[fill_u[e.t][e.u]++] = e.v;
      g.snap_v_[e.t].values[fill_v[e.t][e.v]++] = e.u;
    }
  }
  return g;
}

namespace detail {

inline Label parse_label(std::string_view tok, std::size_t line_no) {
  Label out = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(line_no) + ": expected non-negative integer, got '" +
                     std::string(tok) + "'");
  return out;
}

}  // namespace detail

/// Reads "u v t" lines. Lines starting with '#' and blank lines are skipped.
/// Duplicate temporal edges collapse; empty input yields the empty graph.
inline TemporalBipartiteGraph load_edge_list(std::istream& in) {
  std::vector<TemporalEdge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t pos = line.find_first_not_of(" \t");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::string_view rest(line);
    std::string_view tok[4];
    int n_tok = 0;
    while (true) {
      std::size_t b = rest.find_first_not_of(" \t");
      if (b == std::string_view::npos) break;
      std::size_t e = rest.find_first_of(" \t", b);
      if (e == std::string_view::npos) e = rest.size();
      if (n_tok < 4) tok[n_tok] = rest.substr(b, e - b);
      ++n_tok;
      rest = rest.substr(e);
    }
    if (n_tok != 3)
      throw ParseError("line " + std::to_string(line_no) + ": expected 3 fields 'u v t', got " +
                       std::to_string(n_tok));
    edges.push_back({detail::parse_label(tok[0], line_no), detail::parse_label(tok[1], line_no),
                     detail::parse_label(tok[2], line_no)});
  }
  return build_graph(std::move(edges));
}

inline void write_edge_list(const TemporalBipartiteGraph& g, std::ostream& out) {
  for (const auto& e : g.to_edges()) out << e.u << ' ' << e.v << ' ' << e.t << '\n';
}

}  // namespace tbmfg
