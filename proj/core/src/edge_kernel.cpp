#include "graphon_dyn/edge_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphon_dyn/error.hpp"
#include "graphon_dyn/homomorphism.hpp"

namespace graphon_dyn {

namespace {

void check_unit_range(const Matrix& values, const char* what) {
  if (values.size() == 0) throw InvalidInput(std::string(what) + " kernel must be non-empty");
  if (!values.is_symmetric()) throw InvalidInput(std::string(what) + " kernel must be symmetric");
  for (std::size_t a = 0; a < values.size(); ++a)
    for (std::size_t b = 0; b < values.size(); ++b)
      if (!(values(a, b) >= 0.0 && values(a, b) <= 1.0)) {
        throw InvalidInput(std::string(what) + " kernel value at (" + std::to_string(a + 1) + "," +
                           std::to_string(b + 1) + ") outside [0,1]");
      }
}

std::size_t finite_index(const State& s, std::size_t dim) {
  const auto* i = std::get_if<std::size_t>(&s);
  if (i == nullptr) throw InvalidInput("block kernel evaluated at a continuous state");
  if (*i >= dim) {
    throw InvalidInput("state index " + std::to_string(*i) + " outside a block kernel of dimension " +
                       std::to_string(dim));
  }
  return *i;
}

std::size_t grid_cell(const State& s, std::size_t r) {
  const auto* x = std::get_if<double>(&s);
  if (x == nullptr) throw InvalidInput("grid kernel evaluated at a finite state");
  if (!(*x >= 0.0 && *x <= 1.0)) throw InvalidInput("grid kernel evaluated outside [0,1]");
  // right-open cells, the last one closed at 1
  return std::min(r - 1, static_cast<std::size_t>(*x * static_cast<double>(r)));
}

}  // namespace

EdgeKernel EdgeKernel::constant(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("constant kernel value must lie in [0,1]");
  return EdgeKernel(Constant{p});
}

EdgeKernel EdgeKernel::block(Matrix values) {
  check_unit_range(values, "block");
  return EdgeKernel(Block{std::move(values)});
}

EdgeKernel EdgeKernel::block(const std::vector<std::vector<double>>& values) {
  return block(Matrix::from_rows(values));
}

EdgeKernel EdgeKernel::grid(Matrix values) {
  check_unit_range(values, "grid");
  return EdgeKernel(Grid{std::move(values)});
}

EdgeKernel EdgeKernel::grid(const std::vector<std::vector<double>>& values) {
  return grid(Matrix::from_rows(values));
}

std::size_t EdgeKernel::dimension() const noexcept {
  if (const auto* b = std::get_if<Block>(&kernel_)) return b->values.size();
  if (const auto* g = std::get_if<Grid>(&kernel_)) return g->values.size();
  return 1;
}

double EdgeKernel::operator()(const State& x, const State& y) const {
  if (const auto* c = std::get_if<Constant>(&kernel_)) return c->p;
  if (const auto* b = std::get_if<Block>(&kernel_)) {
    const std::size_t d = b->values.size();
    return b->values(finite_index(x, d), finite_index(y, d));
  }
  const auto& g = std::get<Grid>(kernel_);
  const std::size_t r = g.values.size();
  return g.values(grid_cell(x, r), grid_cell(y, r));
}

void EdgeKernel::check_compatible(const StateSpace& space) const {
  if (is_block()) {
    if (!space.is_finite()) {
      throw InvalidInput("block kernel needs a finite state space, got the unit interval");
    }
    if (dimension() != space.size()) {
      throw InvalidInput("block kernel is " + std::to_string(dimension()) + "x" +
                         std::to_string(dimension()) + " but the state space has " +
                         std::to_string(space.size()) + " states");
    }
  } else if (is_grid() && space.is_finite()) {
    throw InvalidInput("grid kernel needs the unit-interval state space, got " +
                       std::to_string(space.size()) + " finite states");
  }
}

double check_symmetry(const KernelFunction& e, const Distribution& dist, std::size_t samples,
                      Seed seed) {
  if (samples == 0) throw InvalidInput("symmetry check needs at least one sample");
  Engine engine = make_engine(derive_seed(seed, "symmetry"));
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const State x = dist.draw(engine);
    const State y = dist.draw(engine);
    worst = std::max(worst, std::abs(e(x, y) - e(y, x)));
  }
  return worst;
}

double check_symmetry(const EdgeKernel& k, const Distribution& dist, std::size_t samples,
                      Seed seed) {
  return check_symmetry([&k](const State& x, const State& y) { return k(x, y); }, dist, samples,
                        seed);
}

KernelMixture KernelMixture::make(std::vector<Component> components) {
  if (components.empty()) throw InvalidInput("kernel mixture needs at least one component");
  double total = 0.0;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const double w = components[c].weight;
    if (!(w >= 0.0 && w <= 1.0)) {
      throw InvalidInput("mixture weight " + std::to_string(c + 1) + " outside [0,1]");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw InvalidInput("mixture weights sum to " + std::to_string(total) + ", expected 1");
  }
  return KernelMixture(std::move(components));
}

KernelMixture KernelMixture::single(EdgeKernel kernel) {
  return make({Component{1.0, std::move(kernel)}});
}

std::size_t sample_component(const KernelMixture& m, Seed seed) {
  const double u = unit_from_seed(derive_seed(seed, "kernel"));
  const auto& comps = m.components();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (comps[c].weight <= 0.0) continue;
    last_positive = c;
    cumulative += comps[c].weight;
    if (u < cumulative) return c;
  }
  return last_positive;
}

const EdgeKernel& sample_kernel(const KernelMixture& m, Seed seed) {
  return m.components()[sample_component(m, seed)].kernel;
}

StepGraphon induced_graphon(const EdgeKernel& k, const Distribution& dist) {
  if (const auto* c = std::get_if<EdgeKernel::Constant>(&k.variant())) {
    return StepGraphon::constant(c->p);
  }
  if (const auto* g = std::get_if<EdgeKernel::Grid>(&k.variant())) {
    if (dist.is_finite()) {
      throw InvalidInput("grid kernel needs uniform states on [0,1], got a finite distribution");
    }
    return StepGraphon::equal_blocks(g->values);
  }

  const auto& b = std::get<EdgeKernel::Block>(k.variant());
  if (!dist.is_finite()) {
    throw UnsupportedSize(
        "block kernel with continuous states is unsupported; map states through an inverse CDF "
        "onto a finite space first");
  }
  if (dist.size() != b.values.size()) {
    throw InvalidInput("block kernel is " + std::to_string(b.values.size()) + "x" +
                       std::to_string(b.values.size()) + " but the distribution has " +
                       std::to_string(dist.size()) + " states");
  }
  std::vector<std::size_t> support;
  std::vector<double> measures;
  for (std::size_t s = 0; s < dist.size(); ++s) {
    if (dist.masses()[s] > 0.0) {
      support.push_back(s);
      measures.push_back(dist.masses()[s]);
    }
  }
  Matrix values(support.size());
  for (std::size_t a = 0; a < support.size(); ++a)
    for (std::size_t c = 0; c < support.size(); ++c) values(a, c) = b.values(support[a], support[c]);
  return StepGraphon::make(std::move(measures), std::move(values));
}

double mixture_density(const KernelMixture& m, const Distribution& dist, const SimpleGraph& f) {
  if (f.order() > kMaxPatternOrder) {
    throw UnsupportedSize("pattern has more than " + std::to_string(kMaxPatternOrder) + " vertices");
  }
  double total = 0.0;
  for (const auto& comp : m.components()) {
    if (comp.weight == 0.0) continue;
    total += comp.weight * hom_density_step(f, induced_graphon(comp.kernel, dist));
  }
  return total;
}

}  // namespace graphon_dyn
