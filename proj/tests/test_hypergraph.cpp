#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "rigidcheck/error.hpp"
#include "rigidcheck/hypergraph.hpp"

using namespace rigidcheck;

namespace {

MultisetEdge edge(const Hypergraph& G, const std::string& word) {
  std::vector<VertexId> ids;
  for (char c : word) ids.push_back(G.index_of(std::string(1, c)));
  return MultisetEdge(ids);
}

std::set<std::string> labels(const Hypergraph& G, const EdgeSet& edges) {
  std::set<std::string> out;
  for (const auto& e : edges) out.insert(G.label(e));
  return out;
}

std::vector<std::string> shadow_labels(const Hypergraph& G) {
  std::vector<std::string> out;
  for (const auto& s : shadow(G)) out.push_back(G.label(s));
  return out;
}

unsigned long long binomial(unsigned n, unsigned k) {
  unsigned long long r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("edges are canonical multisets") {
  const Hypergraph G = compact_hypergraph("abc", "aab");
  CHECK(edge(G, "aba") == edge(G, "aab"));
  CHECK(edge(G, "baa").entries() == Multiset{0, 0, 1});
  CHECK(edge(G, "baa").ordered() == std::vector<VertexId>{1, 0, 0});
  CHECK(edge(G, "baa").canonical().canonical().ordered() == edge(G, "baa").canonical().ordered());
}

TEST_CASE("support and multiplicity") {
  const Hypergraph G = compact_hypergraph("abcd", "aaab");
  CHECK(support(edge(G, "aaab")) == std::vector<VertexId>{0, 1});
  CHECK(support(edge(G, "abc")) == std::vector<VertexId>{0, 1, 2});
  CHECK(support(edge(G, "aaaa")) == std::vector<VertexId>{0});
  CHECK(multiplicity(edge(G, "aaab"), 0) == 3);
  CHECK(multiplicity(edge(G, "aaab"), 2) == 0);
  CHECK(multiplicity(edge(G, "aaaa"), 0) == 4);
}

TEST_CASE("replace moves one copy") {
  const Hypergraph G = compact_hypergraph("abc", "abc");
  CHECK(replace(edge(G, "aaab"), 0, 1) == edge(G, "aabb"));
  CHECK(replace(edge(G, "abc"), 2, 0) == edge(G, "aab"));
  CHECK(replace(edge(G, "aaaa"), 0, 0) == edge(G, "aaaa"));
  CHECK_THROWS_WITH_AS(replace(edge(G, "aab"), 2, 0), "vertex not in edge", std::invalid_argument);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<VertexId> ids(4);
    for (auto& v : ids) v = static_cast<VertexId>(rng() % 3);
    const MultisetEdge e(ids);
    const VertexId u = ids[rng() % 4];
    const auto v = static_cast<VertexId>(rng() % 3);
    const MultisetEdge r = replace(e, u, v);
    if (u != v) {
      CHECK(multiplicity(r, v) == multiplicity(e, v) + 1);
      CHECK(multiplicity(r, u) == multiplicity(e, u) - 1);
    } else {
      CHECK(r == e);
    }
  }
}

TEST_CASE("sign follows the position in the ordered edge") {
  const MultisetEdge e(std::vector<VertexId>{0, 1, 2});
  CHECK(sign_of(e, 0) == 1);
  CHECK(sign_of(e, 1) == -1);
  CHECK(sign_of(e, 2) == 1);
  CHECK_THROWS(sign_of(e, 3));
}

TEST_CASE("construction rejects malformed input") {
  CHECK_THROWS_AS(compact_hypergraph("ab", "aab aba"), InputError);
  CHECK_THROWS_AS(compact_hypergraph("ab", "aab ab"), InputError);
  CHECK_THROWS_AS(compact_hypergraph("ab", "aac"), InputError);
  CHECK_THROWS_AS(hypergraph_from_json(nlohmann::json::parse(R"({"k":2,"vertices":["x","x"],"edges":[]})")), InputError);
}

TEST_CASE("json round trip canonicalizes edges") {
  const auto j = nlohmann::json::parse(R"({"k":3,"vertices":["p","q","r"],"edges":[["q","p","p"],["r","q","p"]]})");
  const Hypergraph G = hypergraph_from_json(j);
  CHECK(G.num_edges() == 2);
  CHECK(G.edges()[0].entries() == Multiset{0, 0, 1});
  const Hypergraph H = hypergraph_from_json(to_json(G));
  CHECK(H.edges() == G.edges());
  CHECK(H.vertex_names() == G.vertex_names());
}

TEST_CASE("induced edges") {
  const Hypergraph G = compact_hypergraph("abcd", "aaa aab abc bcd");
  CHECK(labels(G, induced_edges(G, {0, 1})) == std::set<std::string>{"aaa", "aab"});
  CHECK(induced_edges(G, {0, 1, 2, 3}).size() == 4);
  CHECK(induced_edges(G, {3}).empty());
  CHECK(induced_edges(G, {}).empty());
  CHECK_THROWS(induced_edges(G, {7}));
  const Hypergraph sub = induced_subhypergraph(G, {1, 2, 3});
  CHECK(sub.num_vertices() == 3);
  CHECK(sub.num_edges() == 1);
}

TEST_CASE("closed neighbour set matches brute force") {
  const Hypergraph G = compact_hypergraph("abcd", "aaa aab abc bcd");
  CHECK(labels(G, closed_neighbor_set(G, {edge(G, "aab")})) == std::set<std::string>{"aaa", "aab", "abc"});
  CHECK(closed_neighbor_set(G, {}).empty());
  CHECK_THROWS(closed_neighbor_set(G, {edge(G, "bbb")}));

  // Oracle: enumerate every k-multiset and test "differs by one swap".
  const Hypergraph H = compact_hypergraph("abcde", "aab abd bce cde aee bbd");
  for (const auto& start : H.edges()) {
    std::set<std::string> expected;
    for (const auto& e : H.edges()) {
      std::vector<VertexId> a = start.entries(), b = e.entries();
      std::vector<VertexId> only_a, only_b;
      std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
      std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
      if (only_a.size() <= 1 && only_b.size() <= 1) expected.insert(H.label(e));
    }
    CHECK(labels(H, closed_neighbor_set(H, {start})) == expected);
  }
}

TEST_CASE("shadow") {
  CHECK(shadow_labels(compact_hypergraph("ab", "aaaa aaab bbbb")) == std::vector<std::string>{"aaa", "aab", "bbb"});
  CHECK(shadow_labels(compact_hypergraph("ab", "aaaa abbb aaab")) == std::vector<std::string>{"aaa", "aab", "abb", "bbb"});
  CHECK(shadow_labels(compact_hypergraph("abc", "abc")) == std::vector<std::string>{"ab", "ac", "bc"});
  CHECK_THROWS(shadow(compact_hypergraph("ab", "a b")));
  for (unsigned n = 1; n <= 5; ++n)
    for (unsigned k = 2; k <= 4; ++k) CHECK(shadow(complete_hypergraph(n, static_cast<int>(k))).size() == binomial(n + k - 2, k - 1));
}

TEST_CASE("complete hypergraph") {
  const Hypergraph G = complete_hypergraph(2, 4);
  CHECK(G.edge_labels() == std::vector<std::string>{"aaaa", "aaab", "aabb", "abbb", "bbbb"});
  CHECK(complete_hypergraph(3, 2).num_edges() == 6);
  CHECK(complete_hypergraph(4, 1).num_edges() == 4);
  for (unsigned n = 1; n <= 6; ++n)
    for (unsigned k = 1; k <= 4; ++k) CHECK(complete_hypergraph(n, static_cast<int>(k)).num_edges() == binomial(n + k - 1, k));
  CHECK_THROWS_WITH(complete_hypergraph(200, 6), doctest::Contains("instance too large"));
}
