#include "snn/network.hpp"

#include <algorithm>
#include <stdexcept>

namespace snn {

namespace {

bool pattern_is_constant(const InputSpec& in) {
  return std::all_of(in.pattern.begin(), in.pattern.end(),
                     [&](long long v) { return v == in.value; });
}

long long input_value_at(const InputSpec& in, long long t) {
  if (in.pattern.empty()) return in.value;
  return in.pattern[static_cast<std::size_t>(
      t % static_cast<long long>(in.pattern.size()))];
}

}  // namespace

int CompiledNetwork::index_of(long long neuron_id) const {
  auto it = std::lower_bound(
      neurons.begin(), neurons.end(), neuron_id,
      [](const NeuronDecl& d, long long id) { return d.id < id; });
  if (it == neurons.end() || it->id != neuron_id) return -1;
  return static_cast<int>(it - neurons.begin());
}

CompiledNetwork compile(const NetworkSpec& spec) {
  CompiledNetwork net;
  net.neurons = spec.neurons;
  std::sort(net.neurons.begin(), net.neurons.end(),
            [](const NeuronDecl& a, const NeuronDecl& b) { return a.id < b.id; });
  const int n = net.size();
  net.const_input.assign(n, Rat(0));
  net.synapses.resize(n);
  net.input_edges.resize(n);
  for (const auto& e : spec.edges) {
    int dst = net.index_of(e.to);
    if (dst < 0) throw std::invalid_argument("edge to unknown neuron");
    if (e.from.kind == SourceRef::Kind::neuron) {
      int src = net.index_of(e.from.id);
      if (src < 0) throw std::invalid_argument("edge from unknown neuron");
      net.synapses[dst].emplace_back(src, e.weight);
    } else {
      auto it = std::find_if(spec.inputs.begin(), spec.inputs.end(),
                             [&](const InputSpec& in) { return in.id == e.from.id; });
      if (it == spec.inputs.end())
        throw std::invalid_argument("edge from unknown input");
      net.input_edges[dst].emplace_back(*it, e.weight);
      net.const_input[dst] += Rat(e.weight) * it->value;
      if (!pattern_is_constant(*it)) net.time_varying = true;
    }
  }
  return net;
}

NetworkState initial_state(const CompiledNetwork& net) {
  NetworkState st;
  st.reserve(net.neurons.size());
  for (const auto& d : net.neurons) st.push_back(initial_neuron_state(d.params));
  return st;
}

Rat weighted_input(const CompiledNetwork& net, int idx, const NetworkState& prev,
                   long long t) {
  Rat sum(0);
  if (!net.time_varying) {
    sum = net.const_input[idx];
  } else {
    for (const auto& [in, w] : net.input_edges[idx])
      sum += Rat(w) * input_value_at(in, t);
  }
  for (const auto& [src, w] : net.synapses[idx])
    if (prev[src].y) sum += w;
  return sum;
}

std::vector<std::pair<Rat, NetworkState>> network_branches(
    const CompiledNetwork& net, const NetworkState& prev, long long t) {
  const int n = net.size();
  std::vector<BranchDistribution> per(n);
  for (int i = 0; i < n; ++i)
    per[i] = neuron_branches(prev[i], weighted_input(net, i, prev, t),
                             net.neurons[i].params);

  std::vector<std::pair<Rat, NetworkState>> out;
  std::vector<std::size_t> pick(n, 0);
  for (;;) {
    Rat prob(1);
    NetworkState next(n);
    for (int i = 0; i < n; ++i) {
      const auto& br = per[i][pick[i]];
      prob *= br.prob;
      next[i] = br.next;
    }
    out.emplace_back(std::move(prob), std::move(next));
    int i = n - 1;
    while (i >= 0 && pick[i] + 1 == per[i].size()) pick[i--] = 0;
    if (i < 0) break;
    ++pick[i];
  }
  return out;
}

}  // namespace snn
