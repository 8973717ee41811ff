#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace graphon_dyn {

/// Vertices are 1-indexed: a graph of order n lives on {1, ..., n}.
using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Finite labeled simple graph. Edges are stored smaller endpoint first and
/// sorted lexicographically, so graph equality is representation equality.
class SimpleGraph {
 public:
  /// Validates and canonicalizes. Throws InvalidInput on n < 1, self-loops or
  /// endpoints outside [1, n]. Duplicate pairs collapse.
  static SimpleGraph make(int n, std::vector<Edge> edges);

  int order() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  bool has_edge(Vertex i, Vertex j) const;
  std::vector<int> degrees() const;
  /// adjacency()[v - 1] is the sorted neighbor list of v.
  std::vector<std::vector<Vertex>> adjacency() const;

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  SimpleGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {}

  int n_ = 1;
  std::vector<Edge> edges_;
};

inline SimpleGraph make_graph(int n, std::vector<Edge> edges) {
  return SimpleGraph::make(n, std::move(edges));
}

SimpleGraph empty_graph(int n);
SimpleGraph complete_graph(int n);
SimpleGraph path_graph(int n);
SimpleGraph cycle_graph(int n);
SimpleGraph star_graph(int n, Vertex center = 1);

/// Vertices of b are shifted by a.order().
SimpleGraph disjoint_union(const SimpleGraph& a, const SimpleGraph& b);

/// Subgraph induced on `vertices`, relabeled 1..k in the given order.
SimpleGraph induced_subgraph(const SimpleGraph& g, std::span<const Vertex> vertices);

/// Bijection on [n], stored as the image of each vertex.
class VertexPermutation {
 public:
  /// images[i - 1] is the image of vertex i. Throws InvalidInput unless the
  /// images are exactly {1, ..., n}.
  static VertexPermutation make(std::vector<Vertex> images);
  static VertexPermutation identity(int n);

  int size() const noexcept { return static_cast<int>(images_.size()); }
  Vertex operator()(Vertex v) const { return images_[static_cast<std::size_t>(v - 1)]; }
  const std::vector<Vertex>& images() const noexcept { return images_; }
  VertexPermutation inverse() const;

  friend bool operator==(const VertexPermutation&, const VertexPermutation&) = default;

 private:
  explicit VertexPermutation(std::vector<Vertex> images) : images_(std::move(images)) {}

  std::vector<Vertex> images_;
};

/// Edge set {(p(i), p(j))}. Throws InvalidInput on a size mismatch.
SimpleGraph permute(const SimpleGraph& g, const VertexPermutation& p);

inline constexpr int kMaxIsomorphismOrder = 8;

/// Exhaustive search over vertex permutations with a degree-sequence
/// pre-filter. Throws UnsupportedSize above kMaxIsomorphismOrder vertices.
bool is_isomorphic(const SimpleGraph& g1, const SimpleGraph& g2);

/// Bit index of pair (i, j), i < j, in lexicographic pair order on [n].
std::size_t pair_index(int n, Vertex i, Vertex j);

/// Encodes the edge set as a bitmask over pair_index. Requires n(n-1)/2 <= 63.
std::uint64_t labeled_code(const SimpleGraph& g);
SimpleGraph graph_from_code(int n, std::uint64_t code);

/// All 2^(n(n-1)/2) labeled graphs on [n], ordered by labeled_code. n <= 6.
std::vector<SimpleGraph> all_labeled_graphs(int n);

}  // namespace graphon_dyn
