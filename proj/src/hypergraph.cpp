#include "rigidcheck/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rigidcheck/error.hpp"

namespace rigidcheck {

MultisetEdge::MultisetEdge(std::vector<VertexId> ordered) : entries_(ordered), ordered_(std::move(ordered)) {
  std::sort(entries_.begin(), entries_.end());
}

std::vector<VertexId> support(const MultisetEdge& e) {
  std::vector<VertexId> out = e.entries();
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int multiplicity(const Multiset& m, VertexId v) {
  return static_cast<int>(std::count(m.begin(), m.end(), v));
}

int multiplicity(const MultisetEdge& e, VertexId v) { return multiplicity(e.entries(), v); }

MultisetEdge replace(const MultisetEdge& e, VertexId u, VertexId v) {
  std::vector<VertexId> ordered = e.ordered();
  auto it = std::find(ordered.begin(), ordered.end(), u);
  if (it == ordered.end()) throw std::invalid_argument("vertex not in edge");
  *it = v;
  return MultisetEdge(std::move(ordered));
}

int sign_of(const MultisetEdge& e, VertexId v) {
  const auto& ordered = e.ordered();
  auto it = std::find(ordered.begin(), ordered.end(), v);
  if (it == ordered.end()) throw std::invalid_argument("vertex not in edge");
  const auto position = (it - ordered.begin()) + 1;
  return position % 2 == 1 ? 1 : -1;
}

Hypergraph::Hypergraph(std::vector<std::string> vertex_names, int k, EdgeSet edges)
    : names_(std::move(vertex_names)), k_(k), edges_(std::move(edges)) {
  if (k_ < 1) throw InputError("hypergraph order k must be positive");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], static_cast<VertexId>(i)).second)
      throw InputError("duplicate vertex '" + names_[i] + "'");
  }
  for (const auto& e : edges_) {
    if (static_cast<int>(e.order()) != k_)
      throw InputError("edge of size " + std::to_string(e.order()) + " in a " + std::to_string(k_) + "-uniform hypergraph");
    for (VertexId v : e.entries())
      if (v >= names_.size()) throw InputError("edge refers to an unknown vertex");
  }
  std::stable_sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw InputError("duplicate edge " + label(*std::adjacent_find(edges_.begin(), edges_.end())));
}

Hypergraph Hypergraph::from_names(std::vector<std::string> vertex_names, int k,
                                  const std::vector<std::vector<std::string>>& edges) {
  std::map<std::string, VertexId> lookup;
  for (std::size_t i = 0; i < vertex_names.size(); ++i) lookup.emplace(vertex_names[i], static_cast<VertexId>(i));
  EdgeSet out;
  out.reserve(edges.size());
  for (const auto& names : edges) {
    std::vector<VertexId> ids;
    for (const auto& name : names) {
      auto it = lookup.find(name);
      if (it == lookup.end()) throw InputError("edge refers to unknown vertex '" + name + "'");
      ids.push_back(it->second);
    }
    out.emplace_back(std::move(ids));
  }
  return Hypergraph(std::move(vertex_names), k, std::move(out));
}

Hypergraph compact_hypergraph(const std::string& vertices, const std::string& edges) {
  std::vector<std::string> names;
  for (char c : vertices) names.emplace_back(1, c);
  std::vector<std::vector<std::string>> edge_names;
  std::istringstream words(edges);
  std::size_t k = 0;
  for (std::string word; words >> word;) {
    if (k == 0) k = word.size();
    std::vector<std::string> edge;
    for (char c : word) edge.emplace_back(1, c);
    edge_names.push_back(std::move(edge));
  }
  return Hypergraph::from_names(std::move(names), static_cast<int>(k), edge_names);
}


VertexId Hypergraph::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw InputError("unknown vertex '" + name + "'");
  return it->second;
}

std::optional<std::size_t> Hypergraph::edge_index(const MultisetEdge& e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || !(*it == e)) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

std::string Hypergraph::label(const Multiset& m) const {
  const bool compact = std::all_of(names_.begin(), names_.end(), [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += names_[m[i]];
  }
  return out;
}

std::vector<std::string> Hypergraph::edge_labels() const {
  std::vector<std::string> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.push_back(label(e));
  return out;
}

namespace {

void check_subset(const Hypergraph& g, const std::vector<VertexId>& subset) {
  for (VertexId v : subset)
    if (v >= g.num_vertices()) throw std::invalid_argument("vertex subset is not contained in the vertex set");
}

}  // namespace

EdgeSet induced_edges(const Hypergraph& g, const std::vector<VertexId>& subset) {
  check_subset(g, subset);
  const std::set<VertexId> allowed(subset.begin(), subset.end());
  EdgeSet out;
  for (const auto& e : g.edges()) {
    const auto& entries = e.entries();
    if (std::all_of(entries.begin(), entries.end(), [&](VertexId v) { return allowed.count(v) != 0; })) out.push_back(e);
  }
  return out;
}

Hypergraph induced_subhypergraph(const Hypergraph& g, const std::vector<VertexId>& subset) {
  std::vector<VertexId> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::map<VertexId, VertexId> remap;
  std::vector<std::string> names;
  for (VertexId v : sorted) {
    remap.emplace(v, static_cast<VertexId>(names.size()));
    names.push_back(g.vertex_names()[v]);
  }
  EdgeSet edges;
  for (const auto& e : induced_edges(g, sorted)) {
    std::vector<VertexId> ordered;
    for (VertexId v : e.ordered()) ordered.push_back(remap.at(v));
    edges.emplace_back(std::move(ordered));
  }
  return Hypergraph(std::move(names), g.k(), std::move(edges));
}

EdgeSet closed_neighbor_set(const Hypergraph& g, const EdgeSet& edges) {
  for (const auto& e : edges)
    if (!g.contains(e)) throw std::invalid_argument("closed_neighbor_set: edge not in hypergraph");
  std::set<MultisetEdge> reached;
  for (const auto& e : edges) {
    for (VertexId u : support(e)) {
      for (VertexId v = 0; v < g.num_vertices(); ++v) {
        MultisetEdge candidate = replace(e.canonical(), u, v);
        if (auto idx = g.edge_index(candidate)) reached.insert(g.edges()[*idx]);
      }
    }
  }
  return {reached.begin(), reached.end()};
}

std::vector<Multiset> shadow(const Hypergraph& g) {
  if (g.k() < 2) throw std::invalid_argument("shadow requires k >= 2");
  std::set<Multiset> sigmas;
  for (const auto& e : g.edges()) {
    const auto& entries = e.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i > 0 && entries[i] == entries[i - 1]) continue;
      Multiset sigma = entries;
      sigma.erase(sigma.begin() + static_cast<std::ptrdiff_t>(i));
      sigmas.insert(std::move(sigma));
    }
  }
  return {sigmas.begin(), sigmas.end()};
}

Hypergraph complete_hypergraph(std::size_t n, int k) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    names.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i)) : "v" + std::to_string(i + 1));
  return complete_hypergraph(std::move(names), k);
}

Hypergraph complete_hypergraph(std::vector<std::string> vertex_names, int k) {
  const std::size_t n = vertex_names.size();
  if (n < 1 || k < 1) throw std::invalid_argument("complete_hypergraph requires n >= 1 and k >= 1");
  // C(n+k-1, k) computed incrementally with an overflow guard.
  double count = 1;
  for (int i = 1; i <= k; ++i) count = count * static_cast<double>(n - 1 + static_cast<std::size_t>(i)) / i;
  if (count > static_cast<double>(kMaxCompleteEdges)) throw std::length_error("instance too large");

  EdgeSet edges;
  std::vector<VertexId> current(static_cast<std::size_t>(k), 0);
  for (;;) {
    edges.emplace_back(current);
    int pos = k - 1;
    while (pos >= 0 && current[static_cast<std::size_t>(pos)] == n - 1) --pos;
    if (pos < 0) break;
    const VertexId next = current[static_cast<std::size_t>(pos)] + 1;
    for (int i = pos; i < k; ++i) current[static_cast<std::size_t>(i)] = next;
  }
  return Hypergraph(std::move(vertex_names), k, std::move(edges));
}

Hypergraph hypergraph_from_json(const nlohmann::json& j) {
  try {
    const int k = j.at("k").get<int>();
    auto vertices = j.at("vertices").get<std::vector<std::string>>();
    auto edges = j.at("edges").get<std::vector<std::vector<std::string>>>();
    return Hypergraph::from_names(std::move(vertices), k, edges);
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("invalid hypergraph JSON: ") + ex.what());
  }
}

Hypergraph load_hypergraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& ex) {
    throw InputError(std::string("malformed JSON in '") + path + "': " + ex.what(), static_cast<long>(ex.byte));
  }
  return hypergraph_from_json(j);
}

nlohmann::json to_json(const Hypergraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    nlohmann::json names = nlohmann::json::array();
    for (VertexId v : e.ordered()) names.push_back(g.vertex_names()[v]);
    edges.push_back(std::move(names));
  }
  return {{"k", g.k()}, {"vertices", g.vertex_names()}, {"edges", std::move(edges)}};
}

}  // namespace rigidcheck
