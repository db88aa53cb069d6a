#include "snn/neuron.hpp"

#include <stdexcept>

namespace snn {

SpikeProbabilityTable SpikeProbabilityTable::defaults_for(long long tau) {
  SpikeProbabilityTable t;
  long long unit = tau > 0 ? (tau + 4) / 5 : 1;
  if (unit < 1) unit = 1;
  for (int i = 1; i <= 5; ++i) t.boundaries.push_back(i * unit);
  t.probs = {Rat(5, 100),  Rat(10, 100), Rat(20, 100), Rat(30, 100),
             Rat(40, 100), Rat(50, 100), Rat(65, 100), Rat(80, 100),
             Rat(90, 100), Rat(95, 100)};
  return t;
}

NeuronState initial_neuron_state(const NeuronParams& prm) {
  return NeuronState{0, 0, prm.p_rest, 0, 0};
}

long long clip_potential(const Rat& raw, const NeuronParams& prm) {
  Int f = floor_rat(raw);
  if (f > prm.p_max) return prm.p_max;
  if (f < prm.p_min) return prm.p_min;
  return f.convert_to<long long>();
}

long long integrate(const NeuronState& prev, const Rat& weighted_input,
                    const NeuronParams& prm) {
  if (prev.s == 1)
    throw std::invalid_argument(
        "integrate called on absolute-refractory state");
  if (prev.y == 1) return clip_potential(weighted_input, prm);
  return clip_potential(weighted_input + prm.r * prev.p, prm);
}

Rat base_spike_prob(long long p, const NeuronParams& prm) {
  const auto& t = prm.table;
  const int k = t.k();
  const long long delta = p - prm.tau;
  if (delta >= t.boundaries[k - 1]) return Rat(1);
  if (delta < -t.boundaries[k - 1]) return Rat(0);
  if (delta >= 0) {
    for (int j = 1; j <= k; ++j)
      if (delta < t.boundaries[j - 1]) return t.probs[k + j - 1];
  } else {
    for (int j = 1; j <= k; ++j)
      if (-t.boundaries[j - 1] <= delta) return t.probs[k - j];
  }
  throw std::logic_error("spike probability table lookup fell through");
}

Rat effective_spike_prob(const NeuronState& state, const Rat& base,
                         const NeuronParams& prm) {
  if (state.s == 1) return Rat(0);
  if (state.s == 2) return prm.alpha * base;
  return base;
}

BranchDistribution neuron_branches(const NeuronState& prev,
                                   const Rat& weighted_input,
                                   const NeuronParams& prm) {
  BranchDistribution out;
  if (prev.s == 1) {
    if (prev.aref > 0) {
      out.push_back({Rat(1), NeuronState{1, 0, 0, prev.aref - 1, prev.rref}});
    } else {
      out.push_back({Rat(1), NeuronState{2, 0, 0, 0, prm.rrp}});
    }
    return out;
  }
  const long long pp = integrate(prev, weighted_input, prm);
  const Rat q = effective_spike_prob(prev, base_spike_prob(pp, prm), prm);

  NeuronState no_spike;
  if (prev.s == 2 && prev.rref > 0) {
    no_spike = NeuronState{2, 0, pp, 0, prev.rref - 1};
  } else {
    no_spike = NeuronState{0, 0, pp, 0, 0};
  }
  NeuronState spike;
  if (prm.arp > 0) {
    spike = NeuronState{1, 1, prm.p_rest, prm.arp, 0};
  } else if (prm.rrp > 0) {
    spike = NeuronState{2, 1, prm.p_rest, 0, prm.rrp};
  } else {
    spike = NeuronState{0, 1, prm.p_rest, 0, 0};
  }

  if (q < 1) out.push_back({Rat(1) - q, no_spike});
  if (q > 0) out.push_back({q, spike});
  return out;
}

}  // namespace snn
