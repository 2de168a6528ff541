#pragma once

// k-uniform hypergraphs whose hyperedges are multisets of vertices.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace rigidcheck {

using VertexId = std::uint32_t;

/// Sorted list of vertex indices with repetition.
using Multiset = std::vector<VertexId>;

/// A hyperedge. Equality and ordering use the sorted entries; the input order
/// is kept for sign conventions of antisymmetric maps.
class MultisetEdge {
 public:
  MultisetEdge() = default;
  explicit MultisetEdge(std::vector<VertexId> ordered);

  const Multiset& entries() const { return entries_; }
  const std::vector<VertexId>& ordered() const { return ordered_; }
  std::size_t order() const { return entries_.size(); }

  /// The same multiset with the input order replaced by the sorted order.
  MultisetEdge canonical() const { return MultisetEdge(entries_); }

  friend bool operator==(const MultisetEdge& a, const MultisetEdge& b) { return a.entries_ == b.entries_; }
  friend auto operator<=>(const MultisetEdge& a, const MultisetEdge& b) { return a.entries_ <=> b.entries_; }

 private:
  Multiset entries_;
  std::vector<VertexId> ordered_;
};

using EdgeSet = std::vector<MultisetEdge>;

std::vector<VertexId> support(const MultisetEdge& e);
int multiplicity(const MultisetEdge& e, VertexId v);
int multiplicity(const Multiset& m, VertexId v);

/// e - u + v. Throws std::invalid_argument("vertex not in edge") if u is absent.
MultisetEdge replace(const MultisetEdge& e, VertexId u, VertexId v);

/// +1 if the first occurrence of v in the ordered view sits at an odd
/// (1-based) position, -1 if even.
int sign_of(const MultisetEdge& e, VertexId v);

class Hypergraph {
 public:
  Hypergraph() = default;
  /// Edges are canonicalized and sorted; duplicates and out-of-range vertices
  /// are rejected.
  Hypergraph(std::vector<std::string> vertex_names, int k, EdgeSet edges);

  static Hypergraph from_names(std::vector<std::string> vertex_names, int k,
                               const std::vector<std::vector<std::string>>& edges);

  std::size_t num_vertices() const { return names_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  int k() const { return k_; }
  const EdgeSet& edges() const { return edges_; }
  const std::vector<std::string>& vertex_names() const { return names_; }

  VertexId index_of(const std::string& name) const;
  std::optional<std::size_t> edge_index(const MultisetEdge& e) const;
  bool contains(const MultisetEdge& e) const { return edge_index(e).has_value(); }

  /// Same vertex set, different edges.
  Hypergraph with_edges(EdgeSet edges) const { return Hypergraph(names_, k_, std::move(edges)); }

  std::string label(const Multiset& m) const;
  std::string label(const MultisetEdge& e) const { return label(e.entries()); }
  std::vector<std::string> edge_labels() const;

 private:
  std::vector<std::string> names_;
  std::map<std::string, VertexId> index_;
  int k_ = 0;
  EdgeSet edges_;
};

/// Shorthand for single-character vertex names: compact_hypergraph("abcd",
/// "aaa aab abc bcd"). k is the length of the edge words.
Hypergraph compact_hypergraph(const std::string& vertices, const std::string& edges);

/// Edges whose support lies in `subset`.
EdgeSet induced_edges(const Hypergraph& g, const std::vector<VertexId>& subset);

/// G[X] as a hypergraph on the vertices of X (reindexed in increasing order).
Hypergraph induced_subhypergraph(const Hypergraph& g, const std::vector<VertexId>& subset);

/// { e - u + v : e in edges, u in e, v in V } intersected with E(G).
EdgeSet closed_neighbor_set(const Hypergraph& g, const EdgeSet& edges);

/// (k-1)-multisets contained in some hyperedge, lexicographically ordered.
std::vector<Multiset> shadow(const Hypergraph& g);

inline constexpr std::size_t kMaxCompleteEdges = 500000;

/// All k-multisets on n vertices, named a, b, c, ... (or v1, v2, ... past 26).
Hypergraph complete_hypergraph(std::size_t n, int k);
Hypergraph complete_hypergraph(std::vector<std::string> vertex_names, int k);

/// {"k": int, "vertices": [...], "edges": [[...], ...]}
Hypergraph hypergraph_from_json(const nlohmann::json& j);
Hypergraph load_hypergraph(const std::string& path);
nlohmann::json to_json(const Hypergraph& g);

}  // namespace rigidcheck
