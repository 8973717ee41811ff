#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "graphon_dyn/graph.hpp"

namespace graphon_dyn {

/// Wide enough for |V(G)|^|V(F)| at every supported size (10^4 ^ 8 < 2^128).
using BigCount = boost::multiprecision::uint128_t;

inline constexpr int kMaxPatternOrder = 8;

struct HomCount {
  BigCount count;       // |hom(F, G)|
  BigCount total_maps;  // |V(G)|^|V(F)|
};

/// Exact homomorphism density count / total_maps, kept unreduced so that
/// products of densities stay products of counts.
struct HomDensity {
  BigCount numerator;
  BigCount denominator;
  double value = 0.0;

  /// "numerator/denominator", e.g. "6/64".
  std::string to_string() const;
};

/// True iff a/b == c/d, compared by exact cross multiplication.
bool same_ratio(const HomDensity& lhs, const HomDensity& rhs);

/// Counts maps V(F) -> V(G) sending every edge of F onto an edge of G
/// (non-edges unconstrained). Backtracking over a BFS order of F, so each
/// non-root vertex draws candidates from the neighborhood of an already
/// placed neighbor. Throws UnsupportedSize if f.order() > kMaxPatternOrder.
HomCount hom_count(const SimpleGraph& f, const SimpleGraph& g);

HomDensity hom_density_graphs(const SimpleGraph& f, const SimpleGraph& g);

std::string to_string(const BigCount& value);

}  // namespace graphon_dyn
