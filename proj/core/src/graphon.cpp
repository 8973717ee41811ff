#include "graphon_dyn/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "graphon_dyn/error.hpp"
#include "graphon_dyn/parallel.hpp"

namespace graphon_dyn {

namespace {

void check_measures(const std::vector<double>& measures, std::size_t k) {
  if (measures.empty()) throw InvalidInput("step kernel needs at least one block");
  if (measures.size() != k) {
    throw InvalidInput("block_measures has " + std::to_string(measures.size()) +
                       " entries but values is " + std::to_string(k) + "x" + std::to_string(k));
  }
  double total = 0.0;
  for (std::size_t a = 0; a < measures.size(); ++a) {
    if (!(measures[a] > 0.0) || !std::isfinite(measures[a])) {
      throw InvalidInput("block measure " + std::to_string(a + 1) + " must be positive");
    }
    total += measures[a];
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw InvalidInput("block measures sum to " + std::to_string(total) + ", expected 1");
  }
}

void check_values(const Matrix& values, double lo, double hi) {
  if (!values.is_symmetric()) throw InvalidInput("kernel values must be symmetric");
  for (std::size_t a = 0; a < values.size(); ++a)
    for (std::size_t b = 0; b < values.size(); ++b) {
      const double v = values(a, b);
      if (!(v >= lo && v <= hi)) {
        throw InvalidInput("kernel value at (" + std::to_string(a + 1) + "," +
                           std::to_string(b + 1) + ") = " + std::to_string(v) +
                           " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
      }
    }
}

/// BFS vertex order so that edges to already placed vertices appear early.
struct PatternOrder {
  std::vector<std::size_t> order;                  // 0-based vertices
  std::vector<std::vector<std::size_t>> earlier;   // positions of earlier neighbors
};

PatternOrder pattern_order(const SimpleGraph& f) {
  const auto adj = f.adjacency();
  const auto n = static_cast<std::size_t>(f.order());
  std::vector<int> pos(n, -1);
  std::vector<bool> queued(n, false);
  PatternOrder out;
  for (std::size_t root = 0; root < n; ++root) {
    if (queued[root]) continue;
    std::queue<std::size_t> q;
    q.push(root);
    queued[root] = true;
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      pos[v] = static_cast<int>(out.order.size());
      out.order.push_back(v);
      std::vector<std::size_t> earlier;
      for (Vertex u : adj[v]) {
        const auto ui = static_cast<std::size_t>(u - 1);
        if (pos[ui] >= 0 && ui != v) earlier.push_back(static_cast<std::size_t>(pos[ui]));
        if (!queued[ui]) {
          queued[ui] = true;
          q.push(ui);
        }
      }
      out.earlier.push_back(std::move(earlier));
    }
  }
  return out;
}

double step_sum(const PatternOrder& plan, const StepGraphon& w, std::vector<std::size_t>& blocks,
                std::size_t pos, double weight) {
  if (pos == plan.order.size()) return weight;
  double total = 0.0;
  for (std::size_t a = 0; a < w.blocks(); ++a) {
    double term = weight * w.block_measures()[a];
    for (std::size_t e : plan.earlier[pos]) term *= w.value(blocks[e], a);
    if (term == 0.0) continue;
    blocks[pos] = a;
    total += step_sum(plan, w, blocks, pos + 1, term);
  }
  return total;
}

/// Exact cut norm by enumerating S; for fixed S the best T takes every column
/// whose marginal has the sign being maximized.
CutNormResult exact_cut_norm(const SignedStepKernel& u) {
  const std::size_t k = u.blocks();
  const auto& pi = u.block_measures();
  CutNormResult best;
  std::vector<double> r(k);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
    std::fill(r.begin(), r.end(), 0.0);
    for (std::size_t a = 0; a < k; ++a) {
      if (!(mask >> a & 1U)) continue;
      for (std::size_t b = 0; b < k; ++b) r[b] += pi[a] * u.value(a, b);
    }
    double pos = 0.0, neg = 0.0;
    for (std::size_t b = 0; b < k; ++b) {
      const double c = pi[b] * r[b];
      if (c > 0.0) pos += c;
      if (c < 0.0) neg += c;
    }
    for (int sign : {1, -1}) {
      const double v = sign > 0 ? pos : -neg;
      if (v > best.value) {
        best.value = v;
        best.rows.clear();
        best.cols.clear();
        for (std::size_t a = 0; a < k; ++a)
          if (mask >> a & 1U) best.rows.push_back(a);
        for (std::size_t b = 0; b < k; ++b)
          if (sign * pi[b] * r[b] > 0.0) best.cols.push_back(b);
      }
    }
  }
  return best;
}

CutNormResult local_cut_norm(const SignedStepKernel& u, const CutNormOptions& options) {
  const std::size_t k = u.blocks();
  const auto& pi = u.block_measures();
  CutNormResult best;
  best.exact = false;

  const std::size_t restarts = std::max<std::size_t>(1, options.restarts);
  for (std::size_t restart = 0; restart < restarts; ++restart) {
    Engine engine = make_engine(derive_seed(options.seed, "cut_norm", {restart}));
    const double sign = restart % 2 == 0 ? 1.0 : -1.0;
    std::vector<bool> in_s(k), in_t(k, false);
    for (std::size_t a = 0; a < k; ++a) in_s[a] = uniform01(engine) < 0.5;

    double value = 0.0;
    for (int iter = 0; iter < 1000; ++iter) {
      // best T for S
      std::vector<bool> next_t(k);
      for (std::size_t b = 0; b < k; ++b) {
        double c = 0.0;
        for (std::size_t a = 0; a < k; ++a)
          if (in_s[a]) c += pi[a] * u.value(a, b);
        next_t[b] = sign * c > 0.0;
      }
      // best S for T
      std::vector<bool> next_s(k);
      value = 0.0;
      for (std::size_t a = 0; a < k; ++a) {
        double c = 0.0;
        for (std::size_t b = 0; b < k; ++b)
          if (next_t[b]) c += pi[b] * u.value(a, b);
        next_s[a] = sign * c > 0.0;
        if (next_s[a]) value += sign * pi[a] * c;
      }
      const bool fixed = next_s == in_s && next_t == in_t;
      in_s = std::move(next_s);
      in_t = std::move(next_t);
      if (fixed) break;
    }
    if (value > best.value) {
      best.value = value;
      best.rows.clear();
      best.cols.clear();
      for (std::size_t a = 0; a < k; ++a)
        if (in_s[a]) best.rows.push_back(a);
      for (std::size_t b = 0; b < k; ++b)
        if (in_t[b]) best.cols.push_back(b);
    }
  }
  return best;
}

bool aligned(const StepGraphon& w, std::size_t m) {
  for (double pi : w.block_measures()) {
    const double cells = pi * static_cast<double>(m);
    if (std::abs(cells - std::round(cells)) > 1e-9 || std::round(cells) < 1.0) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------

StepGraphon StepGraphon::make(std::vector<double> block_measures, Matrix values) {
  check_measures(block_measures, values.size());
  check_values(values, 0.0, 1.0);
  return StepGraphon(std::move(block_measures), std::move(values));
}

StepGraphon StepGraphon::make(std::vector<double> block_measures,
                              const std::vector<std::vector<double>>& values) {
  return make(std::move(block_measures), Matrix::from_rows(values));
}

StepGraphon StepGraphon::equal_blocks(const Matrix& values) {
  const std::size_t k = values.size();
  return make(std::vector<double>(k, 1.0 / static_cast<double>(k)), values);
}

StepGraphon StepGraphon::constant(double p) { return make({1.0}, Matrix(1, p)); }

std::size_t StepGraphon::block_of(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidInput("point outside [0,1]");
  double cumulative = 0.0;
  for (std::size_t a = 0; a + 1 < measures_.size(); ++a) {
    cumulative += measures_[a];
    if (x < cumulative) return a;
  }
  return measures_.size() - 1;
}

bool StepGraphon::has_equal_blocks(double tol) const {
  const double target = 1.0 / static_cast<double>(measures_.size());
  return std::all_of(measures_.begin(), measures_.end(),
                     [&](double pi) { return std::abs(pi - target) <= tol; });
}

SignedStepKernel SignedStepKernel::make(std::vector<double> block_measures, Matrix values) {
  check_measures(block_measures, values.size());
  check_values(values, -1.0, 1.0);
  return SignedStepKernel(std::move(block_measures), std::move(values));
}

SignedStepKernel SignedStepKernel::make(std::vector<double> block_measures,
                                        const std::vector<std::vector<double>>& values) {
  return make(std::move(block_measures), Matrix::from_rows(values));
}

SignedStepKernel SignedStepKernel::negated() const {
  Matrix neg(values_.size());
  for (std::size_t a = 0; a < values_.size(); ++a)
    for (std::size_t b = 0; b < values_.size(); ++b) neg(a, b) = -values_(a, b);
  return SignedStepKernel(measures_, std::move(neg));
}

TransitionMatrix TransitionMatrix::make(Matrix p) {
  if (p.size() == 0) throw InvalidInput("transition matrix must be non-empty");
  for (std::size_t i = 0; i < p.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (!(p(i, j) >= 0.0) || !std::isfinite(p(i, j))) {
        throw InvalidInput("transition entry (" + std::to_string(i + 1) + "," +
                           std::to_string(j + 1) + ") must be a non-negative number");
      }
      row += p(i, j);
    }
    if (std::abs(row - 1.0) > kMassTolerance) {
      throw InvalidInput("transition row " + std::to_string(i + 1) + " sums to " +
                         std::to_string(row) + ", expected 1");
    }
  }
  return TransitionMatrix(std::move(p));
}

TransitionMatrix TransitionMatrix::make(const std::vector<std::vector<double>>& rows) {
  return make(Matrix::from_rows(rows));
}

TransitionMatrix TransitionMatrix::identity(std::size_t k) { return make(Matrix::identity(k)); }

TransitionMatrix TransitionMatrix::uniform(std::size_t k) {
  return make(Matrix(k, 1.0 / static_cast<double>(k)));
}

bool TransitionMatrix::is_doubly_stochastic(double tol) const {
  for (std::size_t j = 0; j < p_.size(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < p_.size(); ++i) col += p_(i, j);
    if (std::abs(col - 1.0) > tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

SignedStepKernel difference(const StepGraphon& w1, const StepGraphon& w2) {
  if (w1.block_measures() != w2.block_measures()) {
    throw InvalidInput("difference needs identical block measures (refine first)");
  }
  const std::size_t k = w1.blocks();
  Matrix d(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) d(a, b) = w1.value(a, b) - w2.value(a, b);
  return SignedStepKernel::make(w1.block_measures(), std::move(d));
}

StepGraphon graphon_from_graph(const SimpleGraph& g) {
  const auto n = static_cast<std::size_t>(g.order());
  Matrix w(n);
  for (const auto& [i, j] : g.edges()) {
    w(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = 1.0;
    w(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(i - 1)) = 1.0;
  }
  return StepGraphon::equal_blocks(w);
}

double hom_density_step(const SimpleGraph& f, const StepGraphon& w) {
  const double assignments =
      std::pow(static_cast<double>(w.blocks()), static_cast<double>(f.order()));
  if (assignments > kMaxStepAssignments) {
    throw UnsupportedSize("exact step density needs " + std::to_string(assignments) +
                          " block assignments (limit 1e8); use the Monte Carlo estimator");
  }
  const PatternOrder plan = pattern_order(f);
  std::vector<std::size_t> blocks(plan.order.size(), 0);
  return step_sum(plan, w, blocks, 0, 1.0);
}

double edge_density(const StepGraphon& w) {
  double t = 0.0;
  const auto& pi = w.block_measures();
  for (std::size_t a = 0; a < w.blocks(); ++a)
    for (std::size_t b = 0; b < w.blocks(); ++b) t += pi[a] * pi[b] * w.value(a, b);
  return t;
}

MonteCarloEstimate hom_density_mc(const SimpleGraph& f, const StepGraphon& w,
                                  std::size_t samples, Seed seed) {
  if (samples == 0) throw InvalidInput("Monte Carlo estimate needs at least one sample");
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  const auto n = static_cast<std::size_t>(f.order());

  struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
  };
  std::vector<Moments> partial(chunks);
  parallel_for(chunks, [&](std::size_t chunk) {
    Engine engine = make_engine(derive_seed(seed, "hom_mc", {chunk}));
    std::vector<std::size_t> blocks(n);
    const std::size_t begin = chunk * kChunk;
    const std::size_t end = std::min(samples, begin + kChunk);
    Moments m;
    for (std::size_t r = begin; r < end; ++r) {
      for (auto& b : blocks) b = w.block_of(uniform01(engine));
      double x = 1.0;
      for (const auto& [i, j] : f.edges())
        x *= w.value(blocks[static_cast<std::size_t>(i - 1)], blocks[static_cast<std::size_t>(j - 1)]);
      m.sum += x;
      m.sum_sq += x * x;
    }
    partial[chunk] = m;
  });

  Moments total;
  for (const auto& m : partial) {
    total.sum += m.sum;
    total.sum_sq += m.sum_sq;
  }
  const double count = static_cast<double>(samples);
  MonteCarloEstimate est;
  est.samples = samples;
  est.estimate = total.sum / count;
  if (samples > 1) {
    const double var = std::max(0.0, (total.sum_sq - count * est.estimate * est.estimate) / (count - 1.0));
    est.std_error = std::sqrt(var / count);
  }
  return est;
}

CutNormResult cut_norm(const SignedStepKernel& u, const CutNormOptions& options) {
  if (u.blocks() <= kMaxExactCutNormBlocks) return exact_cut_norm(u);
  return local_cut_norm(u, options);
}

std::size_t equal_grid_size(const StepGraphon& w) {
  for (std::size_t m = 1; m <= kMaxCutDistanceGrid; ++m)
    if (aligned(w, m)) return m;
  return 0;
}

StepGraphon refine_to_grid(const StepGraphon& w, std::size_t m) {
  if (m == 0 || !aligned(w, m)) {
    throw InvalidInput("graphon blocks do not align with a grid of " + std::to_string(m) + " cells");
  }
  std::vector<std::size_t> cell_block;
  for (std::size_t a = 0; a < w.blocks(); ++a) {
    const auto cells = static_cast<std::size_t>(std::llround(w.block_measures()[a] * static_cast<double>(m)));
    cell_block.insert(cell_block.end(), cells, a);
  }
  Matrix values(m);
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t d = 0; d < m; ++d) values(c, d) = w.value(cell_block[c], cell_block[d]);
  return StepGraphon::equal_blocks(values);
}

CutDistanceResult cut_distance(const StepGraphon& w1, const StepGraphon& w2) {
  std::size_t m = 0;
  for (std::size_t cand = 1; cand <= kMaxCutDistanceGrid && m == 0; ++cand)
    if (aligned(w1, cand) && aligned(w2, cand)) m = cand;
  if (m == 0) {
    throw UnsupportedSize("no common equal-measure refinement with at most " +
                          std::to_string(kMaxCutDistanceGrid) + " cells");
  }
  const StepGraphon a = refine_to_grid(w1, m);
  const StepGraphon b = refine_to_grid(w2, m);

  CutDistanceResult best;
  best.grid = m;
  best.value = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> phi(m);
  std::iota(phi.begin(), phi.end(), 0);
  const std::vector<double> measures(m, 1.0 / static_cast<double>(m));
  Matrix diff(m);
  do {
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t d = 0; d < m; ++d) diff(c, d) = a.value(c, d) - b.value(phi[c], phi[d]);
    const double v = exact_cut_norm(SignedStepKernel::make(measures, diff)).value;
    if (v < best.value) {
      best.value = v;
      best.permutation = phi;
    }
  } while (std::next_permutation(phi.begin(), phi.end()));
  return best;
}

StepGraphon kernel_smooth(const StepGraphon& w, const TransitionMatrix& p) {
  if (!w.has_equal_blocks()) throw InvalidInput("kernel smoothing needs equal blocks");
  if (p.size() != w.blocks()) {
    throw InvalidInput("transition matrix is " + std::to_string(p.size()) + "x" +
                       std::to_string(p.size()) + " but the graphon has " +
                       std::to_string(w.blocks()) + " blocks");
  }
  if (!p.is_doubly_stochastic()) {
    throw InvalidInput("kernel smoothing needs a doubly stochastic transition matrix");
  }
  const Matrix smoothed = p.matrix().transposed() * w.values() * p.matrix();
  const std::size_t k = w.blocks();
  Matrix out(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b) {
      const double v = std::clamp(0.5 * (smoothed(a, b) + smoothed(b, a)), 0.0, 1.0);
      out(a, b) = v;
      out(b, a) = v;
    }
  return StepGraphon::make(w.block_measures(), std::move(out));
}

TransitionMatrix sinkhorn_normalize(const Matrix& positive, std::size_t max_iterations, double tol) {
  const std::size_t k = positive.size();
  Matrix m = positive;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (!(m(i, j) > 0.0)) throw InvalidInput("Sinkhorn scaling needs a strictly positive matrix");

  auto normalize_rows = [&] {
    for (std::size_t i = 0; i < k; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < k; ++j) s += m(i, j);
      for (std::size_t j = 0; j < k; ++j) m(i, j) /= s;
    }
  };
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < k; ++i) s += m(i, j);
      for (std::size_t i = 0; i < k; ++i) m(i, j) /= s;
    }
    normalize_rows();
    double worst = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < k; ++i) s += m(i, j);
      worst = std::max(worst, std::abs(s - 1.0));
    }
    if (worst <= tol) break;
  }
  return TransitionMatrix::make(std::move(m));
}

}  // namespace graphon_dyn
