#pragma once

#include "snn/neuron.hpp"
#include "snn/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace snn {

struct InputSpec {
  long long id = 0;
  long long value = 0;
  // Optional periodic extension: when nonempty, the signal cycles through
  // these values during simulation. Exact analysis requires it constant.
  std::vector<long long> pattern;

  bool operator==(const InputSpec&) const = default;
};

struct SourceRef {
  enum class Kind { input, neuron };
  Kind kind = Kind::input;
  long long id = 0;

  bool operator==(const SourceRef&) const = default;
};

struct EdgeSpec {
  SourceRef from;
  long long to = 0;  // always a neuron id
  long long weight = 0;

  bool operator==(const EdgeSpec&) const = default;
};

struct NeuronDecl {
  long long id = 0;
  NeuronParams params;

  bool operator==(const NeuronDecl&) const = default;
};

struct NetworkSpec {
  std::string name;
  long long steps = 0;    // default simulation horizon
  Rat dt = Rat(1, 1000);  // trace metadata only
  std::vector<InputSpec> inputs;
  std::vector<NeuronDecl> neurons;
  std::vector<EdgeSpec> edges;
  std::vector<std::string> properties;

  bool operator==(const NetworkSpec&) const = default;
};

// Global state: one NeuronState per neuron, in ascending-id order.
using NetworkState = std::vector<NeuronState>;

// Spec resolved for stepping: neurons sorted by id, incoming edges indexed.
struct CompiledNetwork {
  std::vector<NeuronDecl> neurons;  // ascending id
  // Per neuron: constant part of the weighted input (input edges).
  std::vector<Rat> const_input;
  // Per neuron: (presynaptic neuron index, weight) pairs.
  std::vector<std::vector<std::pair<int, long long>>> synapses;
  // Per neuron: (input spec, weight) pairs; only consulted for patterns.
  std::vector<std::vector<std::pair<InputSpec, long long>>> input_edges;
  bool time_varying = false;  // any input with a non-constant pattern

  int size() const { return static_cast<int>(neurons.size()); }
  int index_of(long long neuron_id) const;  // -1 when absent
};

// Requires a spec that passed validation (ids unique, endpoints exist).
CompiledNetwork compile(const NetworkSpec& spec);

NetworkState initial_state(const CompiledNetwork& net);

// Sum of weight * source signal over incoming edges of neuron `idx`.
// Neuron sources contribute prev.y (one-step delay); inputs contribute their
// value at time t (constant unless a pattern is set).
Rat weighted_input(const CompiledNetwork& net, int idx,
                   const NetworkState& prev, long long t = 0);

// Cartesian product of per-neuron branch distributions, canonically ordered
// (neuron 0 is the most significant digit). Probabilities sum to exactly 1.
std::vector<std::pair<Rat, NetworkState>> network_branches(
    const CompiledNetwork& net, const NetworkState& prev, long long t = 0);

}  // namespace snn
