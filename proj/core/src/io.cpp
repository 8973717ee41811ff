#include "graphon_dyn/io.hpp"

#include <optional>
#include <string>
#include <vector>

#include "graphon_dyn/error.hpp"

namespace graphon_dyn {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw InvalidInput(path + ": " + message);
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<double>> rows_of(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(numbers(j[i], path + "[" + std::to_string(i) + "]"));
    if (rows.back().size() != j.size()) {
      fail(path, "expected a square matrix: row " + std::to_string(i + 1) + " has " +
                     std::to_string(rows.back().size()) + " entries, expected " +
                     std::to_string(j.size()));
    }
  }
  return rows;
}

/// Runs a constructor and re-labels its InvalidInput with the field path.
template <class F>
auto at_path(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const InvalidInput& e) {
    fail(path, e.what());
  }
}

std::string single_key(const json& j, const std::string& path) {
  if (!j.is_object() || j.size() != 1) fail(path, "expected an object with exactly one key");
  return j.begin().key();
}

}  // namespace

void to_json(json& j, const SimpleGraph& g) {
  json edges = json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
  j = json{{"n", g.order()}, {"edges", std::move(edges)}};
}

void to_json(json& j, const StepGraphon& w) {
  j = json{{"block_measures", w.block_measures()}, {"values", w.values().to_rows()}};
}

void to_json(json& j, const SignedStepKernel& u) {
  j = json{{"block_measures", u.block_measures()}, {"values", u.values().to_rows()}};
}

void to_json(json& j, const TransitionMatrix& p) { j = p.matrix().to_rows(); }

void to_json(json& j, const StateSpace& space) {
  if (space.is_finite()) {
    j = json{{"finite", space.labels()}};
  } else {
    j = "unit_interval";
  }
}

void to_json(json& j, const Distribution& dist) {
  if (dist.is_finite()) {
    j = dist.masses();
  } else {
    j = "uniform";
  }
}

void to_json(json& j, const StateProcess& process) {
  json kind;
  if (const auto* iid = std::get_if<IidProcess>(&process.kind())) {
    kind = json{{"iid", {{"marginal", json(iid->marginal)}}}};
  } else {
    const auto& m = std::get<MarkovProcess>(process.kind());
    kind = json{{"markov", {{"P", json(m.transition)}, {"init", json(m.initial)}}}};
  }
  j = json{{"space", json(process.space())}, {"kind", std::move(kind)}};
}

void to_json(json& j, const EdgeKernel& k) {
  if (const auto* c = std::get_if<EdgeKernel::Constant>(&k.variant())) {
    j = json{{"constant", c->p}};
  } else if (const auto* b = std::get_if<EdgeKernel::Block>(&k.variant())) {
    j = json{{"block", b->values.to_rows()}};
  } else {
    j = json{{"grid", std::get<EdgeKernel::Grid>(k.variant()).values.to_rows()}};
  }
}

void to_json(json& j, const KernelMixture& m) {
  if (m.components().size() == 1) {
    to_json(j, m.components().front().kernel);
    return;
  }
  json comps = json::array();
  for (const auto& c : m.components()) comps.push_back({{"weight", c.weight}, {"kernel", json(c.kernel)}});
  j = json{{"mixture", std::move(comps)}};
}

SimpleGraph graph_from_json(const json& j, const std::string& path) {
  const json& n = field(j, "n", path);
  if (!n.is_number_integer()) fail(path + ".n", "expected an integer");
  const json& edges = field(j, "edges", path);
  if (!edges.is_array()) fail(path + ".edges", "expected an array of pairs");
  std::vector<Edge> pairs;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const json& e = edges[i];
    const std::string ep = path + ".edges[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      fail(ep, "expected a pair of integers");
    pairs.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return at_path(path, [&] { return SimpleGraph::make(n.get<int>(), std::move(pairs)); });
}

StepGraphon graphon_from_json(const json& j, const std::string& path) {
  auto measures = numbers(field(j, "block_measures", path), path + ".block_measures");
  auto rows = rows_of(field(j, "values", path), path + ".values");
  return at_path(path, [&] { return StepGraphon::make(std::move(measures), rows); });
}

SignedStepKernel signed_kernel_from_json(const json& j, const std::string& path) {
  auto measures = numbers(field(j, "block_measures", path), path + ".block_measures");
  auto rows = rows_of(field(j, "values", path), path + ".values");
  return at_path(path, [&] { return SignedStepKernel::make(std::move(measures), rows); });
}

TransitionMatrix transition_from_json(const json& j, const std::string& path) {
  if (j.is_object()) return transition_from_json(field(j, "P", path), path + ".P");
  const auto rows = rows_of(j, path);
  return at_path(path, [&] { return TransitionMatrix::make(rows); });
}

namespace {

Distribution distribution_from_json(const json& j, const StateSpace& space, const std::string& path) {
  if (j.is_string()) {
    if (j.get<std::string>() != "uniform") fail(path, "unknown distribution '" + j.get<std::string>() + "'");
    if (space.is_finite()) {
      return Distribution::finite(std::vector<double>(space.size(), 1.0 / static_cast<double>(space.size())));
    }
    return Distribution::uniform_unit();
  }
  if (!space.is_finite()) fail(path, "the unit-interval space only supports \"uniform\"");
  auto masses = numbers(j, path);
  if (masses.size() != space.size()) {
    fail(path, "has " + std::to_string(masses.size()) + " entries but the state space has " +
                   std::to_string(space.size()) + " states");
  }
  return at_path(path, [&] { return Distribution::finite(std::move(masses)); });
}

std::optional<StateSpace> space_from_json(const json& j, const std::string& path) {
  const auto it = j.find("space");
  if (it == j.end()) return std::nullopt;
  const std::string sp = path + ".space";
  if (it->is_string()) {
    const auto s = it->get<std::string>();
    if (s == "unit_interval" || s == "unit") return StateSpace::unit_interval();
    fail(sp, "unknown state space '" + s + "'");
  }
  const std::string key = single_key(*it, sp);
  const json& v = it->at(key);
  if (key == "finite") {
    if (v.is_number_unsigned()) return at_path(sp, [&] { return StateSpace::finite(v.get<std::size_t>()); });
    if (!v.is_array()) fail(sp + ".finite", "expected a list of state labels");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string()) fail(sp + ".finite[" + std::to_string(i) + "]", "expected a string");
      labels.push_back(v[i].get<std::string>());
    }
    return at_path(sp, [&] { return StateSpace::finite(std::move(labels)); });
  }
  if (key == "unit_interval") return StateSpace::unit_interval();
  fail(sp, "unknown state space kind '" + key + "'");
}

}  // namespace

StateProcess process_from_json(const json& j, const std::string& path) {
  const std::optional<StateSpace> declared = space_from_json(j, path);
  const json& kind = field(j, "kind", path);
  const std::string kp = path + ".kind";
  const std::string key = single_key(kind, kp);
  const json& body = kind.at(key);

  if (key == "iid") {
    const json& marginal = field(body, "marginal", kp + ".iid");
    if (!declared && !marginal.is_array() && marginal != "uniform") {
      fail(kp + ".iid.marginal", "expected a probability vector or \"uniform\"");
    }
    // without a declared space, a vector means s0..s{m-1} and "uniform" the unit interval
    const StateSpace space = declared            ? *declared
                             : marginal.is_array() ? StateSpace::finite(marginal.size())
                                                   : StateSpace::unit_interval();
    Distribution dist = distribution_from_json(marginal, space, kp + ".iid.marginal");
    return at_path(path, [&] { return make_iid(space, dist); });
  }
  if (key == "markov") {
    TransitionMatrix p = transition_from_json(field(body, "P", kp + ".markov"), kp + ".markov.P");
    StateSpace space = declared ? *declared : StateSpace::finite(p.size());
    if (space.is_finite() && space.size() != p.size()) {
      fail(kp + ".markov.P", "is " + std::to_string(p.size()) + "x" + std::to_string(p.size()) +
                                 " but the state space has " + std::to_string(space.size()) + " states");
    }
    Distribution init = distribution_from_json(field(body, "init", kp + ".markov"), space, kp + ".markov.init");
    return at_path(path, [&] { return make_markov(space, p, init); });
  }
  fail(kp, "unknown process kind '" + key + "' (expected iid or markov)");
}

EdgeKernel kernel_from_json(const json& j, const std::string& path) {
  const std::string key = single_key(j, path);
  const json& v = j.at(key);
  if (key == "constant") {
    const double p = number(v, path + ".constant");
    return at_path(path, [&] { return EdgeKernel::constant(p); });
  }
  if (key == "block") {
    const auto rows = rows_of(v, path + ".block");
    return at_path(path, [&] { return EdgeKernel::block(rows); });
  }
  if (key == "grid") {
    const auto rows = rows_of(v, path + ".grid");
    return at_path(path, [&] { return EdgeKernel::grid(rows); });
  }
  fail(path, "unknown kernel kind '" + key + "' (expected constant, block, grid or mixture)");
}

KernelMixture mixture_from_json(const json& j, const std::string& path) {
  if (j.is_object() && j.contains("mixture")) {
    const json& comps = j.at("mixture");
    const std::string mp = path + ".mixture";
    if (!comps.is_array() || comps.empty()) fail(mp, "expected a non-empty array of components");
    std::vector<KernelMixture::Component> out;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const std::string cp = mp + "[" + std::to_string(c) + "]";
      const double w = number(field(comps[c], "weight", cp), cp + ".weight");
      out.push_back({w, kernel_from_json(field(comps[c], "kernel", cp), cp + ".kernel")});
    }
    return at_path(path, [&] { return KernelMixture::make(std::move(out)); });
  }
  return KernelMixture::single(kernel_from_json(j, path));
}

}  // namespace graphon_dyn
