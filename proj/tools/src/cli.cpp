#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <boost/crc.hpp>
#include <nlohmann/json.hpp>

#include "graphon_dyn/dynamics.hpp"
#include "graphon_dyn/ergodics.hpp"
#include "graphon_dyn/error.hpp"
#include "graphon_dyn/homomorphism.hpp"
#include "graphon_dyn/io.hpp"
#include "graphon_dyn/version.hpp"

namespace graphon_dyn::cli {

namespace {

namespace fs = std::filesystem;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json read_json(const std::string& file, const std::string& role) {
  std::ifstream in(file);
  if (!in) throw InvalidInput(role + ": cannot read '" + file + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(role + ": '" + file + "' is not valid JSON (" + e.what() + ")");
  }
}

/// Everything a run produces. Nothing touches the disk until the whole
/// computation has succeeded.
struct Run {
  std::string subcommand;
  std::vector<std::string> arguments;
  json inputs = json::object();
  std::optional<Seed> seed;
  json extra = json::object();
  std::vector<std::pair<std::string, std::string>> files;
  std::string stdout_text;

  void add(std::string name, std::string content) { files.emplace_back(std::move(name), std::move(content)); }
};

std::string crc32_hex(const std::string& bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(crc.checksum()));
  return buf;
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void commit(const Run& run, const fs::path& dir) {
  fs::create_directories(dir);
  json outputs = json::array();
  for (const auto& [name, content] : run.files) {
    std::ofstream f(dir / name, std::ios::binary);
    f << content;
    if (!f) throw Error(ErrorKind::runtime, "failed to write " + (dir / name).string());
    outputs.push_back({{"file", name}, {"bytes", content.size()}, {"crc32", crc32_hex(content)}});
  }
  json manifest = {
      {"tool", "graphon_dyn"},
      {"version", kVersion},
      {"subcommand", run.subcommand},
      {"arguments", run.arguments},
      {"config", run.inputs},
      {"seed_root", run.seed ? json(*run.seed) : json(nullptr)},
      {"outputs", std::move(outputs)},
      // not covered by any checksum
      {"created_utc", utc_now()},
  };
  for (const auto& [key, value] : run.extra.items()) manifest[key] = value;
  std::ofstream f(dir / "manifest.json", std::ios::binary);
  f << manifest.dump(2) << '\n';
  if (!f) throw Error(ErrorKind::runtime, "failed to write " + (dir / "manifest.json").string());
}

json count_json(const BigCount& c) {
  if (c <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(c);
  return to_string(c);
}

std::string csv_header() { return "quantity,value,exact,stderr\n"; }

std::vector<std::size_t> one_based(const std::vector<std::size_t>& xs) {
  std::vector<std::size_t> out;
  for (auto x : xs) out.push_back(x + 1);
  return out;
}

// ---- run configuration ------------------------------------------------------

struct RunConfig {
  json raw;
  StateProcess process;
  KernelMixture kernel;

  const json& section(const char* name) const {
    if (!raw.contains(name) || !raw.at(name).is_object()) {
      throw InvalidInput(std::string("config: missing section '") + name + "'");
    }
    return raw.at(name);
  }

  std::size_t count(const char* sec, const char* key, std::size_t min) const {
    const json& s = section(sec);
    const std::string path = std::string(sec) + "." + key;
    if (!s.contains(key)) throw InvalidInput("config: missing field '" + path + "'");
    const json& v = s.at(key);
    if (!v.is_number_unsigned() || v.get<std::size_t>() < min) {
      throw InvalidInput(path + ": expected an integer >= " + std::to_string(min));
    }
    return v.get<std::size_t>();
  }

  std::size_t n_nodes() const { return count("sim", "n_nodes", 2); }
  std::size_t steps() const { return count("sim", "T", 1); }
  std::size_t n_steps() const { return count("analysis", "n_steps", 1); }

  Seed seed() const {
    const json& s = section("sim");
    if (!s.contains("seed")) throw InvalidInput("config: missing field 'sim.seed'");
    if (!s.at("seed").is_number_unsigned()) throw InvalidInput("sim.seed: expected a 64-bit unsigned integer");
    return s.at("seed").get<Seed>();
  }

  SimpleGraph pattern() const {
    const json& a = section("analysis");
    if (!a.contains("patterns") || !a.at("patterns").is_array() || a.at("patterns").empty()) {
      throw InvalidInput("analysis.patterns: expected a non-empty array of graph literals");
    }
    return graph_from_json(a.at("patterns")[0], "analysis.patterns[0]");
  }

  std::vector<Vertex> watched(const SimpleGraph& pattern, std::size_t n) const {
    const json& a = section("analysis");
    if (!a.contains("watched_nodes") || !a.at("watched_nodes").is_array()) {
      throw InvalidInput("analysis.watched_nodes: expected an array of node indices");
    }
    const json& w = a.at("watched_nodes");
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::string path = "analysis.watched_nodes[" + std::to_string(i) + "]";
      if (!w[i].is_number_unsigned() || w[i].get<std::size_t>() < 1 || w[i].get<std::size_t>() > n) {
        throw InvalidInput(path + ": expected a node index in [1, " + std::to_string(n) + "]");
      }
      out.push_back(w[i].get<Vertex>());
    }
    if (out.size() != static_cast<std::size_t>(pattern.order())) {
      throw InvalidInput("analysis.watched_nodes has " + std::to_string(out.size()) +
                         " nodes but analysis.patterns[0] has " + std::to_string(pattern.order()) + " vertices");
    }
    return out;
  }
};

RunConfig load_config(const std::string& file) {
  json raw = read_json(file, "config");
  if (!raw.is_object()) throw InvalidInput("config: expected an object");
  if (!raw.contains("model") || !raw.at("model").is_object()) throw InvalidInput("config: missing section 'model'");
  const json& model = raw.at("model");
  if (!model.contains("process")) throw InvalidInput("config: missing field 'model.process'");
  if (!model.contains("kernel")) throw InvalidInput("config: missing field 'model.kernel'");
  StateProcess process = process_from_json(model.at("process"), "model.process");
  KernelMixture kernel = mixture_from_json(model.at("kernel"), "model.kernel");
  for (std::size_t c = 0; c < kernel.components().size(); ++c) {
    try {
      kernel.components()[c].kernel.check_compatible(process.space());
    } catch (const InvalidInput& e) {
      const std::string where =
          kernel.components().size() == 1 ? "model.kernel" : "model.kernel.mixture[" + std::to_string(c) + "]";
      throw InvalidInput(where + ": " + e.what());
    }
  }
  return RunConfig{std::move(raw), std::move(process), std::move(kernel)};
}

/// The kernel a trajectory with this seed uses.
const EdgeKernel& kernel_for(const RunConfig& cfg, Seed seed) { return sample_kernel(cfg.kernel, seed); }

std::string state_label(const StateProcess& p, const State& s) {
  if (const auto* i = std::get_if<std::size_t>(&s)) return p.space().labels()[*i];
  return num(std::get<double>(s));
}

// ---- subcommands --------------------------------------------------------------

struct DensityArgs {
  std::string pattern, graph, graphon;
  std::size_t samples = 0;
  Seed seed = 0;
};

void density(const DensityArgs& a, Run& run) {
  if (a.graph.empty() == a.graphon.empty()) throw InvalidInput("density: give exactly one of --graph or --graphon");
  const json fj = read_json(a.pattern, "pattern");
  const SimpleGraph f = graph_from_json(fj, "pattern");
  run.inputs["pattern"] = fj;

  if (!a.graph.empty()) {
    const json gj = read_json(a.graph, "graph");
    const SimpleGraph g = graph_from_json(gj, "graph");
    run.inputs["graph"] = gj;
    const HomDensity t = hom_density_graphs(f, g);
    const json result = {{"count", count_json(t.numerator)},
                         {"total", count_json(t.denominator)},
                         {"density", t.value},
                         {"rational", t.to_string()}};
    run.add("density.json", result.dump(2) + "\n");
    run.stdout_text = t.to_string() + "\n";
    return;
  }

  const json wj = read_json(a.graphon, "graphon");
  const StepGraphon w = graphon_from_json(wj, "graphon");
  run.inputs["graphon"] = wj;
  std::string csv = csv_header();
  try {
    csv += "t_exact," + num(hom_density_step(f, w)) + ",1,0\n";
  } catch (const UnsupportedSize&) {
    if (a.samples == 0) throw;
  }
  if (a.samples > 0) {
    run.seed = a.seed;
    const auto mc = hom_density_mc(f, w, a.samples, a.seed);
    csv += "t_mc," + num(mc.estimate) + ",0," + num(mc.std_error) + "\n";
  }
  run.add("density.csv", csv);
  run.stdout_text = csv;
}

struct CutArgs {
  std::string kernel, left, right;
  std::size_t restarts = 50;
  Seed seed = 0x5eed;
};

void cutnorm(const CutArgs& a, Run& run) {
  const bool pair = !a.left.empty() || !a.right.empty();
  if (!a.kernel.empty() == pair) throw InvalidInput("cutnorm: give --kernel, or both --left and --right");
  std::optional<SignedStepKernel> u;
  if (!a.kernel.empty()) {
    const json kj = read_json(a.kernel, "kernel");
    run.inputs["kernel"] = kj;
    u = signed_kernel_from_json(kj, "kernel");
  } else {
    if (a.left.empty() || a.right.empty()) throw InvalidInput("cutnorm: --left and --right go together");
    const json lj = read_json(a.left, "left");
    const json rj = read_json(a.right, "right");
    run.inputs["left"] = lj;
    run.inputs["right"] = rj;
    u = difference(graphon_from_json(lj, "left"), graphon_from_json(rj, "right"));
  }
  run.seed = a.seed;
  const auto r = cut_norm(*u, CutNormOptions{a.restarts, a.seed});
  const std::string csv = csv_header() + "cut_norm," + num(r.value) + "," + (r.exact ? "1" : "0") + ",\n";
  const json result = {{"value", r.value}, {"exact", r.exact}, {"rows", one_based(r.rows)}, {"cols", one_based(r.cols)}};
  run.add("cutnorm.csv", csv);
  run.add("cutnorm.json", result.dump(2) + "\n");
  run.stdout_text = csv;
}

void cutdist(const CutArgs& a, Run& run) {
  if (a.left.empty() || a.right.empty()) throw InvalidInput("cutdist: --left and --right are required");
  const json lj = read_json(a.left, "left");
  const json rj = read_json(a.right, "right");
  run.inputs["left"] = lj;
  run.inputs["right"] = rj;
  const auto r = cut_distance(graphon_from_json(lj, "left"), graphon_from_json(rj, "right"));
  const std::string csv = csv_header() + "cut_distance," + num(r.value) + ",1,\n";
  const json result = {{"value", r.value},
                       {"grid", r.grid},
                       {"permutation", one_based(r.permutation)},
                       {"restricted_to_block_permutations", r.restricted}};
  run.add("cutdist.csv", csv);
  run.add("cutdist.json", result.dump(2) + "\n");
  run.stdout_text = csv;
}

void sample(const std::string& config, Run& run) {
  const RunConfig cfg = load_config(config);
  run.inputs["config"] = cfg.raw;
  const std::size_t n = cfg.n_nodes();
  const Seed seed = cfg.seed();
  run.seed = seed;
  const auto traj = simulate_trajectory(cfg.process, kernel_for(cfg, seed), n, 1, seed);
  json states = json::array();
  for (const auto& s : traj.states.slice(0)) states.push_back(state_label(cfg.process, s));
  const json result = {{"graph", traj.snapshots[0]}, {"states", std::move(states)}, {"kernel_used", traj.kernel_used}};
  run.extra["kernel_used"] = traj.kernel_used;
  run.add("sample.json", result.dump(2) + "\n");
  run.stdout_text = json(traj.snapshots[0]).dump() + "\n";
}

void simulate(const std::string& config, Run& run) {
  const RunConfig cfg = load_config(config);
  run.inputs["config"] = cfg.raw;
  const std::size_t n = cfg.n_nodes();
  const std::size_t steps = cfg.steps();
  const Seed seed = cfg.seed();
  run.seed = seed;
  const auto traj = simulate_trajectory(cfg.process, kernel_for(cfg, seed), n, steps, seed);
  const int width = std::max<int>(4, static_cast<int>(std::to_string(steps - 1).size()));
  for (std::size_t t = 0; t < steps; ++t) {
    std::string index = std::to_string(t);
    index.insert(0, static_cast<std::size_t>(width) - std::min<std::size_t>(width, index.size()), '0');
    run.add("step_" + index + ".json", json(traj.snapshots[t]).dump() + "\n");
  }
  run.extra["kernel_used"] = traj.kernel_used;
  run.extra["process"] = cfg.process;
  run.extra["process_stationary"] = traj.process_stationary;
  run.extra["process_weakly_mixing"] = traj.process_weakly_mixing;
  run.stdout_text = "wrote " + std::to_string(steps) + " snapshots on " + std::to_string(n) + " nodes\n";
}

void ergodic(const std::string& config, Run& run, std::ostream& err) {
  const RunConfig cfg = load_config(config);
  run.inputs["config"] = cfg.raw;
  const SimpleGraph pattern = cfg.pattern();
  const std::size_t n_steps = cfg.n_steps();
  const Seed seed = cfg.seed();
  run.seed = seed;
  const EdgeKernel& k = kernel_for(cfg, seed);
  const auto series = birkhoff_average(cfg.process, k, pattern, n_steps, seed);
  if (series.hypothesis_unmet) err << "warning: the state process is not weakly mixing; the time average need not converge to the target\n";
  std::string csv = "n,partial_average,target\n";
  const std::string target = num(series.target);
  for (std::size_t i = 0; i < series.partial_averages.size(); ++i) {
    csv += std::to_string(i + 1) + "," + num(series.partial_averages[i]) + "," + target + "\n";
  }
  run.extra["kernel_used"] = k;
  run.extra["hypothesis_unmet"] = series.hypothesis_unmet;
  run.add("ergodic.csv", csv);
  const json summary = {{"final_average", series.partial_averages.back()},
                        {"target", series.target},
                        {"horizon", series.horizon},
                        {"hypothesis_unmet", series.hypothesis_unmet}};
  run.stdout_text = summary.dump() + "\n";
}

void recurrence(const std::string& config, bool labeled, Run& run, std::ostream& err) {
  const RunConfig cfg = load_config(config);
  run.inputs["config"] = cfg.raw;
  const std::size_t n = cfg.n_nodes();
  const std::size_t steps = cfg.steps();
  const Seed seed = cfg.seed();
  const SimpleGraph pattern = cfg.pattern();
  const auto watched = cfg.watched(pattern, n);
  run.seed = seed;
  const auto traj = simulate_trajectory(cfg.process, kernel_for(cfg, seed), n, steps, seed);
  const auto report =
      recurrence_count(traj, pattern, watched, labeled ? MatchMode::labeled : MatchMode::isomorphic);
  if (report.hypothesis_unmet) err << "warning: the state process is not stationary; recurrence is not guaranteed\n";
  std::string csv = "t,matched\n";
  std::size_t next = 0;
  for (std::size_t t = 0; t < steps; ++t) {
    const bool hit = next < report.return_times.size() && report.return_times[next] == t;
    next += hit;
    csv += std::to_string(t) + "," + (hit ? "1" : "0") + "\n";
  }
  run.extra["kernel_used"] = traj.kernel_used;
  run.extra["hypothesis_unmet"] = report.hypothesis_unmet;
  run.add("recurrence.csv", csv);
  const json summary = {{"returns", report.return_times.size()},
                        {"horizon", report.horizon},
                        {"match", labeled ? "labeled" : "isomorphic"},
                        {"hypothesis_unmet", report.hypothesis_unmet}};
  run.stdout_text = summary.dump() + "\n";
}

void invariance(const std::string& graphon, const std::string& transition, Run& run) {
  const json wj = read_json(graphon, "graphon");
  const json pj = read_json(transition, "transition");
  run.inputs["graphon"] = wj;
  run.inputs["transition"] = pj;
  const StepGraphon w = graphon_from_json(wj, "graphon");
  const TransitionMatrix p = transition_from_json(pj, "transition");
  const StepGraphon smoothed = kernel_smooth(w, p);
  const double before = edge_density(w);
  const double after = edge_density(smoothed);
  const std::string csv = csv_header() + "edge_density_before," + num(before) + ",1,0\n" + "edge_density_after," +
                          num(after) + ",1,0\n" + "abs_difference," + num(std::abs(after - before)) + ",1,0\n";
  run.add("invariance.csv", csv);
  run.add("smoothed.json", json(smoothed).dump(2) + "\n");
  run.stdout_text = csv;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dynamic graphon toolkit: densities, cut metrics and state-driven random graph dynamics",
               "graphon_dyn"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string out_dir = ".";
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "Directory for result files and manifest.json")->capture_default_str();
  };

  DensityArgs dens;
  auto* density_cmd = app.add_subcommand("density", "Homomorphism density t(F,G) or t(F,W)");
  density_cmd->add_option("--pattern", dens.pattern, "Pattern graph F (JSON)")->required();
  density_cmd->add_option("--graph", dens.graph, "Host graph G (JSON)");
  density_cmd->add_option("--graphon", dens.graphon, "Host step graphon W (JSON)");
  density_cmd->add_option("--samples", dens.samples, "Monte Carlo samples for --graphon (0: exact only)");
  density_cmd->add_option("--seed", dens.seed, "Monte Carlo seed");
  add_out(density_cmd);

  CutArgs cut;
  auto* cutnorm_cmd = app.add_subcommand("cutnorm", "Cut norm of a signed step kernel or of W1 - W2");
  cutnorm_cmd->add_option("--kernel", cut.kernel, "Signed step kernel (JSON)");
  cutnorm_cmd->add_option("--left", cut.left, "Step graphon W1 (JSON)");
  cutnorm_cmd->add_option("--right", cut.right, "Step graphon W2 (JSON)");
  cutnorm_cmd->add_option("--restarts", cut.restarts, "Restarts of the local search beyond 10 blocks")
      ->capture_default_str();
  cutnorm_cmd->add_option("--seed", cut.seed, "Seed of the local search")->capture_default_str();
  add_out(cutnorm_cmd);

  auto* cutdist_cmd = app.add_subcommand("cutdist", "Cut distance over block permutations of a common grid");
  cutdist_cmd->add_option("--left", cut.left, "Step graphon W1 (JSON)")->required();
  cutdist_cmd->add_option("--right", cut.right, "Step graphon W2 (JSON)")->required();
  add_out(cutdist_cmd);

  std::string config;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config, "Run configuration (JSON)")->required();
    add_out(sub);
  };
  auto* sample_cmd = app.add_subcommand("sample", "Sample one snapshot G_e(V)");
  add_config(sample_cmd);
  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate a dynamic graph trajectory");
  add_config(simulate_cmd);
  auto* ergodic_cmd = app.add_subcommand("ergodic", "Birkhoff time averages along state paths");
  add_config(ergodic_cmd);
  bool labeled = false;
  auto* recurrence_cmd = app.add_subcommand("recurrence", "Return times of a pattern on watched nodes");
  add_config(recurrence_cmd);
  recurrence_cmd->add_flag("--labeled", labeled, "Match labeled graphs instead of isomorphism classes");

  std::string inv_graphon, inv_transition;
  auto* invariance_cmd = app.add_subcommand("invariance", "Edge density before and after kernel smoothing");
  invariance_cmd->add_option("--graphon", inv_graphon, "Equal-block step graphon (JSON)")->required();
  invariance_cmd->add_option("--transition", inv_transition, "Doubly stochastic matrix (JSON)")->required();
  add_out(invariance_cmd);

  std::vector<std::string> argv_store{"graphon_dyn"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  Run result;
  result.arguments = args;
  try {
    CLI::App* sub = app.get_subcommands().front();
    result.subcommand = sub->get_name();
    if (sub == density_cmd) {
      density(dens, result);
    } else if (sub == cutnorm_cmd) {
      cutnorm(cut, result);
    } else if (sub == cutdist_cmd) {
      cutdist(cut, result);
    } else if (sub == sample_cmd) {
      sample(config, result);
    } else if (sub == simulate_cmd) {
      simulate(config, result);
    } else if (sub == ergodic_cmd) {
      ergodic(config, result, err);
    } else if (sub == recurrence_cmd) {
      recurrence(config, labeled, result, err);
    } else {
      invariance(inv_graphon, inv_transition, result);
    }
    commit(result, out_dir);
  } catch (const UnsupportedSize& e) {
    err << "error: " << e.what() << '\n';
    return kUnsupportedSize;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  out << result.stdout_text;
  return kOk;
}

}  // namespace graphon_dyn::cli
