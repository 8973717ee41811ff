#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "graphon_dyn/graph.hpp"
#include "graphon_dyn/matrix.hpp"
#include "graphon_dyn/rng.hpp"

namespace graphon_dyn {

/// Tolerance for identities evaluated in floating point.
inline constexpr double kFloatTolerance = 1e-10;
/// Tolerance for probability vectors summing to one.
inline constexpr double kMassTolerance = 1e-12;

/// Graphon constant on the cells of a partition of [0,1] into intervals of
/// lengths block_measures[0..k). Values are symmetric and lie in [0,1].
/// Diagonal blocks may be nonzero.
class StepGraphon {
 public:
  static StepGraphon make(std::vector<double> block_measures, Matrix values);
  static StepGraphon make(std::vector<double> block_measures,
                          const std::vector<std::vector<double>>& values);
  /// k equal blocks of measure 1/k.
  static StepGraphon equal_blocks(const Matrix& values);
  static StepGraphon constant(double p);

  std::size_t blocks() const noexcept { return measures_.size(); }
  const std::vector<double>& block_measures() const noexcept { return measures_; }
  const Matrix& values() const noexcept { return values_; }
  double value(std::size_t a, std::size_t b) const { return values_(a, b); }

  /// Cell containing x in [0,1]; cells are right-open, the last one closed.
  std::size_t block_of(double x) const;
  bool has_equal_blocks(double tol = kFloatTolerance) const;

 private:
  StepGraphon(std::vector<double> measures, Matrix values)
      : measures_(std::move(measures)), values_(std::move(values)) {}

  std::vector<double> measures_;
  Matrix values_;
};

/// Symmetric step kernel with values in [-1,1]; the difference of two graphons.
class SignedStepKernel {
 public:
  static SignedStepKernel make(std::vector<double> block_measures, Matrix values);
  static SignedStepKernel make(std::vector<double> block_measures,
                               const std::vector<std::vector<double>>& values);

  std::size_t blocks() const noexcept { return measures_.size(); }
  const std::vector<double>& block_measures() const noexcept { return measures_; }
  const Matrix& values() const noexcept { return values_; }
  double value(std::size_t a, std::size_t b) const { return values_(a, b); }

  SignedStepKernel negated() const;

 private:
  SignedStepKernel(std::vector<double> measures, Matrix values)
      : measures_(std::move(measures)), values_(std::move(values)) {}

  std::vector<double> measures_;
  Matrix values_;
};

/// Row-stochastic k x k matrix.
class TransitionMatrix {
 public:
  static TransitionMatrix make(Matrix p);
  static TransitionMatrix make(const std::vector<std::vector<double>>& rows);
  static TransitionMatrix identity(std::size_t k);
  static TransitionMatrix uniform(std::size_t k);

  std::size_t size() const noexcept { return p_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return p_(i, j); }
  const Matrix& matrix() const noexcept { return p_; }
  bool is_doubly_stochastic(double tol = kMassTolerance) const;

 private:
  explicit TransitionMatrix(Matrix p) : p_(std::move(p)) {}

  Matrix p_;
};

/// w1 - w2; both must share the same block measures.
SignedStepKernel difference(const StepGraphon& w1, const StepGraphon& w2);

/// n equal blocks with W_ab = 1 iff (a,b) is an edge of g.
StepGraphon graphon_from_graph(const SimpleGraph& g);

inline constexpr double kMaxStepAssignments = 1e8;

/// Exact t(F, w): sum over all block assignments c : V(F) -> [k] of
/// prod_{edges} W_{c(i)c(j)} * prod_i pi_{c(i)}. Throws UnsupportedSize when
/// k^|V(F)| exceeds kMaxStepAssignments (use hom_density_mc instead).
double hom_density_step(const SimpleGraph& f, const StepGraphon& w);

/// t(K2, w) = sum_ab pi_a pi_b W_ab.
double edge_density(const StepGraphon& w);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(samples)
  std::size_t samples = 0;
};

/// Replicates are grouped in fixed chunks, each with its own stream
/// derive_seed(seed, "hom_mc", {chunk}), so the estimate does not depend on
/// the worker count.
MonteCarloEstimate hom_density_mc(const SimpleGraph& f, const StepGraphon& w,
                                  std::size_t samples, Seed seed);

inline constexpr std::size_t kMaxExactCutNormBlocks = 10;

struct CutNormOptions {
  std::size_t restarts = 50;
  Seed seed = 0x5eed;
};

struct CutNormResult {
  double value = 0.0;
  std::vector<std::size_t> rows;  // S, 0-based block indices
  std::vector<std::size_t> cols;  // T
  bool exact = true;              // false: lower bound from local search
};

/// sup over block unions S, T of |sum_{a in S, b in T} pi_a pi_b U_ab|.
/// Exact for k <= kMaxExactCutNormBlocks; otherwise alternating maximization
/// with seeded restarts, reported as a lower bound.
CutNormResult cut_norm(const SignedStepKernel& u, const CutNormOptions& options = {});

inline constexpr std::size_t kMaxCutDistanceGrid = 8;

struct CutDistanceResult {
  double value = 0.0;
  std::size_t grid = 1;                    // m, size of the common refinement
  std::vector<std::size_t> permutation;    // phi on grid cells, 0-based
  bool restricted = true;                  // infimum over block permutations only
};

/// Smallest m <= kMaxCutDistanceGrid such that every block measure of w is a
/// multiple of 1/m, or 0 if none exists.
std::size_t equal_grid_size(const StepGraphon& w);
/// Refines w onto m equal cells. Throws InvalidInput if w does not align.
StepGraphon refine_to_grid(const StepGraphon& w, std::size_t m);

/// min over permutations phi of the common equal grid of
/// cut_norm(w1 - w2 o phi). An upper bound on the cut distance.
CutDistanceResult cut_distance(const StepGraphon& w1, const StepGraphon& w2);

/// W' = P^T W P on the same equal blocks: the discretized chain
/// w'(x,y) = int w(s,t) p(s,dx) p(t,dy). Edge density is preserved.
/// P must be doubly stochastic so that W' stays inside [0,1].
StepGraphon kernel_smooth(const StepGraphon& w, const TransitionMatrix& p);

/// Sinkhorn-Knopp scaling of a positive matrix to a doubly stochastic one.
TransitionMatrix sinkhorn_normalize(const Matrix& positive, std::size_t max_iterations = 10000,
                                    double tol = 1e-14);

}  // namespace graphon_dyn
