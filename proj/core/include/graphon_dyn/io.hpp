#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "graphon_dyn/dynamics.hpp"
#include "graphon_dyn/edge_kernel.hpp"
#include "graphon_dyn/graph.hpp"
#include "graphon_dyn/graphon.hpp"
#include "graphon_dyn/state_process.hpp"

// JSON literals shared by the library and the command line tool.
//
//   graph       {"n": 4, "edges": [[1,2],[1,3]]}
//   graphon     {"block_measures": [..], "values": [[..],..]}
//   process     {"space": {"finite": ["s0","s1"]},
//                "kind": {"markov": {"P": [[..]], "init": [..]}}}
//               {"kind": {"iid": {"marginal": [..]}}}
//               {"space": "unit_interval", "kind": {"iid": {"marginal": "uniform"}}}
//   kernel      {"constant": 0.3} | {"block": [[..]]} | {"grid": [[..]]}
//               | {"mixture": [{"weight": .., "kernel": {..}}, ..]}
//
// Parsers throw InvalidInput with the offending field path in the message.

namespace graphon_dyn {

using nlohmann::json;

void to_json(json& j, const SimpleGraph& g);
void to_json(json& j, const StepGraphon& w);
void to_json(json& j, const SignedStepKernel& u);
void to_json(json& j, const TransitionMatrix& p);
void to_json(json& j, const StateSpace& space);
void to_json(json& j, const Distribution& dist);
void to_json(json& j, const StateProcess& process);
void to_json(json& j, const EdgeKernel& k);
void to_json(json& j, const KernelMixture& m);

SimpleGraph graph_from_json(const json& j, const std::string& path = "graph");
StepGraphon graphon_from_json(const json& j, const std::string& path = "graphon");
SignedStepKernel signed_kernel_from_json(const json& j, const std::string& path = "kernel");
/// Accepts a bare array of rows or {"P": rows}.
TransitionMatrix transition_from_json(const json& j, const std::string& path = "transition");
StateProcess process_from_json(const json& j, const std::string& path = "process");
/// Plain kernel variants only.
EdgeKernel kernel_from_json(const json& j, const std::string& path = "kernel");
/// Any kernel literal; plain kernels become single-component mixtures.
KernelMixture mixture_from_json(const json& j, const std::string& path = "kernel");

}  // namespace graphon_dyn
