#pragma once

#include <cstddef>
#include <functional>
#include <variant>
#include <vector>

#include "graphon_dyn/graph.hpp"
#include "graphon_dyn/graphon.hpp"
#include "graphon_dyn/state_process.hpp"

namespace graphon_dyn {

/// Symmetric edge-generating function e(x, y) in [0,1].
class EdgeKernel {
 public:
  struct Constant {
    double p;
  };
  /// Values over pairs of finite states.
  struct Block {
    Matrix values;
  };
  /// Values over an r x r uniform grid on [0,1]^2, right-open cells.
  struct Grid {
    Matrix values;
  };

  static EdgeKernel constant(double p);
  static EdgeKernel block(Matrix values);
  static EdgeKernel block(const std::vector<std::vector<double>>& values);
  static EdgeKernel grid(Matrix values);
  static EdgeKernel grid(const std::vector<std::vector<double>>& values);

  const std::variant<Constant, Block, Grid>& variant() const noexcept { return kernel_; }
  bool is_constant() const noexcept { return std::holds_alternative<Constant>(kernel_); }
  bool is_block() const noexcept { return std::holds_alternative<Block>(kernel_); }
  bool is_grid() const noexcept { return std::holds_alternative<Grid>(kernel_); }
  /// Block dimension or grid resolution; 1 for constants.
  std::size_t dimension() const noexcept;

  /// Throws InvalidInput if a state lies outside the kernel's domain.
  double operator()(const State& x, const State& y) const;

  /// Throws InvalidInput if the kernel cannot be evaluated on `space`.
  void check_compatible(const StateSpace& space) const;

 private:
  explicit EdgeKernel(std::variant<Constant, Block, Grid> k) : kernel_(std::move(k)) {}

  std::variant<Constant, Block, Grid> kernel_;
};

inline double eval(const EdgeKernel& k, const State& x, const State& y) { return k(x, y); }

using KernelFunction = std::function<double(const State&, const State&)>;

/// Max |e(x,y) - e(y,x)| over `samples` pairs drawn i.i.d. from dist.
double check_symmetry(const KernelFunction& e, const Distribution& dist,
                      std::size_t samples, Seed seed);
double check_symmetry(const EdgeKernel& k, const Distribution& dist,
                      std::size_t samples, Seed seed);

/// Finite-support probability measure on edge kernels.
class KernelMixture {
 public:
  struct Component {
    double weight;
    EdgeKernel kernel;
  };

  static KernelMixture make(std::vector<Component> components);
  static KernelMixture single(EdgeKernel kernel);

  const std::vector<Component>& components() const noexcept { return components_; }

 private:
  explicit KernelMixture(std::vector<Component> c) : components_(std::move(c)) {}

  std::vector<Component> components_;
};

/// One component drawn with probability equal to its weight, from the single
/// uniform unit_from_seed(derive_seed(seed, "kernel")).
const EdgeKernel& sample_kernel(const KernelMixture& m, Seed seed);
std::size_t sample_component(const KernelMixture& m, Seed seed);

/// Step graphon whose densities are the model's limiting subgraph
/// frequencies: blocks weighted by dist (zero-mass states dropped) with
/// W_ab = e(s_a, s_b); for grid kernels under uniform states, the grid cells.
/// Constant kernels collapse to a single block.
StepGraphon induced_graphon(const EdgeKernel& k, const Distribution& dist);

/// sum_c weight_c * t(f, induced_graphon(kernel_c, dist)).
double mixture_density(const KernelMixture& m, const Distribution& dist,
                       const SimpleGraph& f);

}  // namespace graphon_dyn
