#include "graphon_dyn/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "graphon_dyn/error.hpp"

namespace graphon_dyn {

namespace {

std::string pair_string(Vertex i, Vertex j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

SimpleGraph SimpleGraph::make(int n, std::vector<Edge> edges) {
  if (n < 1) throw InvalidInput("graph order must be positive, got " + std::to_string(n));
  for (auto& [i, j] : edges) {
    if (i < 1 || i > n || j < 1 || j > n) {
      throw InvalidInput("edge " + pair_string(i, j) + " has an endpoint outside [1, " +
                         std::to_string(n) + "]");
    }
    if (i == j) throw InvalidInput("self-loop " + pair_string(i, j) + " is not allowed");
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return SimpleGraph(n, std::move(edges));
}

bool SimpleGraph::has_edge(Vertex i, Vertex j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{i, j});
}

std::vector<int> SimpleGraph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n_), 0);
  for (const auto& [i, j] : edges_) {
    ++deg[static_cast<std::size_t>(i - 1)];
    ++deg[static_cast<std::size_t>(j - 1)];
  }
  return deg;
}

std::vector<std::vector<Vertex>> SimpleGraph::adjacency() const {
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n_));
  for (const auto& [i, j] : edges_) {
    adj[static_cast<std::size_t>(i - 1)].push_back(j);
    adj[static_cast<std::size_t>(j - 1)].push_back(i);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  return adj;
}

SimpleGraph empty_graph(int n) { return SimpleGraph::make(n, {}); }

SimpleGraph complete_graph(int n) {
  std::vector<Edge> edges;
  for (Vertex i = 1; i <= n; ++i)
    for (Vertex j = i + 1; j <= n; ++j) edges.emplace_back(i, j);
  return SimpleGraph::make(n, std::move(edges));
}

SimpleGraph path_graph(int n) {
  std::vector<Edge> edges;
  for (Vertex i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
  return SimpleGraph::make(n, std::move(edges));
}

SimpleGraph cycle_graph(int n) {
  if (n < 3) throw InvalidInput("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(1, n);
  return SimpleGraph::make(n, std::move(edges));
}

SimpleGraph star_graph(int n, Vertex center) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= n; ++v)
    if (v != center) edges.emplace_back(center, v);
  return SimpleGraph::make(n, std::move(edges));
}

SimpleGraph disjoint_union(const SimpleGraph& a, const SimpleGraph& b) {
  std::vector<Edge> edges = a.edges();
  const int offset = a.order();
  for (const auto& [i, j] : b.edges()) edges.emplace_back(i + offset, j + offset);
  return SimpleGraph::make(a.order() + b.order(), std::move(edges));
}

SimpleGraph induced_subgraph(const SimpleGraph& g, std::span<const Vertex> vertices) {
  const int k = static_cast<int>(vertices.size());
  for (Vertex v : vertices) {
    if (v < 1 || v > g.order())
      throw InvalidInput("vertex " + std::to_string(v) + " outside the graph");
  }
  std::vector<Edge> edges;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (g.has_edge(vertices[static_cast<std::size_t>(a)], vertices[static_cast<std::size_t>(b)]))
        edges.emplace_back(a + 1, b + 1);
  return SimpleGraph::make(k, std::move(edges));
}

VertexPermutation VertexPermutation::make(std::vector<Vertex> images) {
  const int n = static_cast<int>(images.size());
  if (n < 1) throw InvalidInput("permutation must act on at least one vertex");
  std::vector<bool> seen(images.size(), false);
  for (Vertex v : images) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)]) {
      throw InvalidInput("images do not form a permutation of [1, " + std::to_string(n) + "]");
    }
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
  return VertexPermutation(std::move(images));
}

VertexPermutation VertexPermutation::identity(int n) {
  std::vector<Vertex> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  return make(std::move(images));
}

VertexPermutation VertexPermutation::inverse() const {
  std::vector<Vertex> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    inv[static_cast<std::size_t>(images_[i] - 1)] = static_cast<Vertex>(i + 1);
  return VertexPermutation(std::move(inv));
}

SimpleGraph permute(const SimpleGraph& g, const VertexPermutation& p) {
  if (p.size() != g.order()) {
    throw InvalidInput("permutation size " + std::to_string(p.size()) +
                       " does not match graph order " + std::to_string(g.order()));
  }
  std::vector<Edge> edges;
  edges.reserve(g.size());
  for (const auto& [i, j] : g.edges()) edges.emplace_back(p(i), p(j));
  return SimpleGraph::make(g.order(), std::move(edges));
}

bool is_isomorphic(const SimpleGraph& g1, const SimpleGraph& g2) {
  if (g1.order() > kMaxIsomorphismOrder || g2.order() > kMaxIsomorphismOrder) {
    throw UnsupportedSize("isomorphism test supports at most " +
                          std::to_string(kMaxIsomorphismOrder) + " vertices");
  }
  if (g1.order() != g2.order() || g1.size() != g2.size()) return false;

  const auto d1 = g1.degrees();
  const auto d2 = g2.degrees();
  {
    auto s1 = d1, s2 = d2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return false;
  }

  // images[v-1] = image of v; only degree-preserving maps can succeed.
  std::vector<Vertex> images(static_cast<std::size_t>(g1.order()));
  std::iota(images.begin(), images.end(), 1);
  do {
    bool ok = true;
    for (std::size_t v = 0; v < images.size() && ok; ++v)
      ok = d1[v] == d2[static_cast<std::size_t>(images[v] - 1)];
    for (auto it = g1.edges().begin(); ok && it != g1.edges().end(); ++it)
      ok = g2.has_edge(images[static_cast<std::size_t>(it->first - 1)],
                       images[static_cast<std::size_t>(it->second - 1)]);
    if (ok) return true;
  } while (std::next_permutation(images.begin(), images.end()));
  return false;
}

std::size_t pair_index(int n, Vertex i, Vertex j) {
  if (i > j) std::swap(i, j);
  // pairs (a, b) with a < i come first: sum_{a<i} (n - a)
  const auto ni = static_cast<std::size_t>(n);
  const auto a = static_cast<std::size_t>(i - 1);
  return a * ni - a * (a + 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

std::uint64_t labeled_code(const SimpleGraph& g) {
  const auto n = static_cast<std::size_t>(g.order());
  if (n * (n - 1) / 2 > 63) throw UnsupportedSize("labeled code needs n(n-1)/2 <= 63");
  std::uint64_t code = 0;
  for (const auto& [i, j] : g.edges()) code |= std::uint64_t{1} << pair_index(g.order(), i, j);
  return code;
}

SimpleGraph graph_from_code(int n, std::uint64_t code) {
  std::vector<Edge> edges;
  for (Vertex i = 1; i <= n; ++i)
    for (Vertex j = i + 1; j <= n; ++j)
      if (code >> pair_index(n, i, j) & 1U) edges.emplace_back(i, j);
  return SimpleGraph::make(n, std::move(edges));
}

std::vector<SimpleGraph> all_labeled_graphs(int n) {
  if (n < 1 || n > 6) throw UnsupportedSize("labeled graph enumeration supports 1 <= n <= 6");
  const std::size_t pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  std::vector<SimpleGraph> out;
  out.reserve(std::size_t{1} << pairs);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << pairs); ++code)
    out.push_back(graph_from_code(n, code));
  return out;
}

}  // namespace graphon_dyn
