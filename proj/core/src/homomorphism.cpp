#include "graphon_dyn/homomorphism.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <string>

#include "graphon_dyn/error.hpp"

namespace graphon_dyn {

namespace {

/// Edge lookup on the target graph; dense bit rows while they fit in memory.
class TargetAdjacency {
 public:
  explicit TargetAdjacency(const SimpleGraph& g) : n_(g.order()), neighbors_(g.adjacency()) {
    if (n_ <= kDenseLimit) {
      dense_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0);
      for (const auto& [i, j] : g.edges()) {
        dense_[index(i, j)] = 1;
        dense_[index(j, i)] = 1;
      }
    }
  }

  int order() const { return n_; }
  const std::vector<Vertex>& neighbors(Vertex v) const {
    return neighbors_[static_cast<std::size_t>(v - 1)];
  }
  bool adjacent(Vertex i, Vertex j) const {
    if (!dense_.empty()) return dense_[index(i, j)] != 0;
    const auto& nb = neighbors(i);
    return std::binary_search(nb.begin(), nb.end(), j);
  }

 private:
  static constexpr int kDenseLimit = 4096;

  std::size_t index(Vertex i, Vertex j) const {
    return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(j - 1);
  }

  int n_;
  std::vector<std::vector<Vertex>> neighbors_;
  std::vector<std::uint8_t> dense_;
};

/// One connected component of the pattern in BFS order. Every vertex after
/// the root has an anchor (its BFS parent) plus further earlier neighbors
/// that must also be respected.
struct ComponentPlan {
  std::vector<int> anchor;                  // position of the parent, -1 for root
  std::vector<std::vector<int>> back_edges;  // positions of other earlier neighbors
};

std::vector<ComponentPlan> plan_components(const SimpleGraph& f) {
  const auto adj = f.adjacency();
  const auto n = static_cast<std::size_t>(f.order());
  std::vector<int> position(n, -1);
  std::vector<ComponentPlan> plans;

  for (std::size_t root = 0; root < n; ++root) {
    if (position[root] != -1) continue;
    ComponentPlan plan;
    std::vector<std::size_t> order;
    std::queue<std::size_t> queue;
    queue.push(root);
    position[root] = 0;
    std::vector<int> parent_of(n, -1);
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop();
      const int pos = static_cast<int>(order.size());
      position[v] = pos;
      order.push_back(v);
      plan.anchor.push_back(parent_of[v] < 0 ? -1 : position[static_cast<std::size_t>(parent_of[v])]);
      std::vector<int> back;
      for (Vertex u : adj[v]) {
        const auto ui = static_cast<std::size_t>(u - 1);
        if (position[ui] >= 0 && position[ui] < pos && static_cast<int>(ui) != parent_of[v])
          back.push_back(position[ui]);
      }
      plan.back_edges.push_back(std::move(back));
      for (Vertex u : adj[v]) {
        const auto ui = static_cast<std::size_t>(u - 1);
        if (position[ui] == -1) {
          position[ui] = -2;  // queued
          parent_of[ui] = static_cast<int>(v);
          queue.push(ui);
        }
      }
    }
    plans.push_back(std::move(plan));
  }
  return plans;
}

class ComponentCounter {
 public:
  ComponentCounter(const ComponentPlan& plan, const TargetAdjacency& target)
      : plan_(plan), target_(target), images_(plan.anchor.size(), 0) {}

  std::uint64_t count() {
    if (plan_.anchor.size() == 1) return static_cast<std::uint64_t>(target_.order());
    std::uint64_t total = 0;
    for (Vertex v = 1; v <= target_.order(); ++v) {
      images_[0] = v;
      total += extend(1);
    }
    return total;
  }

 private:
  bool consistent(std::size_t pos, Vertex candidate) const {
    for (int back : plan_.back_edges[pos])
      if (!target_.adjacent(images_[static_cast<std::size_t>(back)], candidate)) return false;
    return true;
  }

  std::uint64_t extend(std::size_t pos) {
    const Vertex anchor_image = images_[static_cast<std::size_t>(plan_.anchor[pos])];
    const auto& candidates = target_.neighbors(anchor_image);
    const bool last = pos + 1 == plan_.anchor.size();
    std::uint64_t total = 0;
    for (Vertex c : candidates) {
      if (!consistent(pos, c)) continue;
      if (last) {
        ++total;
      } else {
        images_[pos] = c;
        total += extend(pos + 1);
      }
    }
    return total;
  }

  const ComponentPlan& plan_;
  const TargetAdjacency& target_;
  std::vector<Vertex> images_;
};

BigCount power(std::uint64_t base, int exponent) {
  BigCount out = 1;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

}  // namespace

std::string to_string(const BigCount& value) { return value.str(); }

std::string HomDensity::to_string() const {
  return graphon_dyn::to_string(numerator) + "/" + graphon_dyn::to_string(denominator);
}

bool same_ratio(const HomDensity& lhs, const HomDensity& rhs) {
  using boost::multiprecision::cpp_int;
  return cpp_int(lhs.numerator) * cpp_int(rhs.denominator) ==
         cpp_int(rhs.numerator) * cpp_int(lhs.denominator);
}

HomCount hom_count(const SimpleGraph& f, const SimpleGraph& g) {
  if (f.order() > kMaxPatternOrder) {
    throw UnsupportedSize("homomorphism counting supports patterns of at most " +
                          std::to_string(kMaxPatternOrder) + " vertices, got " +
                          std::to_string(f.order()));
  }
  const TargetAdjacency target(g);
  BigCount count = 1;
  for (const auto& plan : plan_components(f)) {
    ComponentCounter counter(plan, target);
    count *= counter.count();
    if (count == 0) break;
  }
  return {count, power(static_cast<std::uint64_t>(g.order()), f.order())};
}

HomDensity hom_density_graphs(const SimpleGraph& f, const SimpleGraph& g) {
  const HomCount hc = hom_count(f, g);
  HomDensity d{hc.count, hc.total_maps, 0.0};
  d.value = hc.count.convert_to<double>() / hc.total_maps.convert_to<double>();
  return d;
}

}  // namespace graphon_dyn
