#pragma once

#include "snn/rational.hpp"

#include <compare>
#include <cstdint>
#include <vector>

namespace snn {

// Piecewise-constant spike probability law around the threshold.
// k boundaries per side, 2k probabilities; delta = p - tau selects:
//   delta >= l_k            -> 1
//   delta <  -l_k           -> 0
//   l_{j-1} <= delta < l_j  -> probs[k+j-1]   (l_0 = 0)
//   -l_j <= delta < -l_{j-1}-> probs[k-j]
struct SpikeProbabilityTable {
  std::vector<long long> boundaries;  // l_1 < ... < l_k, all positive
  std::vector<Rat> probs;             // p_1 .. p_{2k}, each in [0,1]

  int k() const { return static_cast<int>(boundaries.size()); }
  bool operator==(const SpikeProbabilityTable&) const = default;

  // Default law: k=5, boundaries i*max(1, ceil(tau/5)), probabilities
  // 0.05 0.10 0.20 0.30 0.40 | 0.50 0.65 0.80 0.90 0.95, so the first
  // nonnegative-delta interval fires with probability one half.
  static SpikeProbabilityTable defaults_for(long long tau);
};

struct NeuronParams {
  long long tau = 10;       // firing threshold
  Rat r = Rat(7, 10);       // leak factor, in [0,1]
  Rat alpha = Rat(2, 25);   // relative-refractory shrink, in [0,1]
  int arp = 2;              // absolute refractory period, steps
  int rrp = 5;              // relative refractory period, steps
  long long p_rest = 0;     // resting potential
  long long p_min = -500;   // potential clip bounds
  long long p_max = 500;
  SpikeProbabilityTable table = SpikeProbabilityTable::defaults_for(10);
  bool allow_non_monotone = false;

  bool operator==(const NeuronParams&) const = default;
};

// Dynamic per-neuron tuple. s: 0 normal, 1 absolute refractory, 2 relative
// refractory. y is the spike bit of the step that produced this state.
struct NeuronState {
  std::uint8_t s = 0;
  std::uint8_t y = 0;
  long long p = 0;
  int aref = 0;
  int rref = 0;

  auto operator<=>(const NeuronState&) const = default;
};

struct NeuronBranch {
  Rat prob;
  NeuronState next;
};

// At most two branches; probabilities sum to exactly 1.
using BranchDistribution = std::vector<NeuronBranch>;

NeuronState initial_neuron_state(const NeuronParams& prm);

// max(min(floor(raw), p_max), p_min)
long long clip_potential(const Rat& raw, const NeuronParams& prm);

// Next potential before the spike decision. The leak term is dropped when the
// previous step spiked. Throws std::invalid_argument if prev.s == 1: the
// potential is identically 0 there and integration must not be asked for.
long long integrate(const NeuronState& prev, const Rat& weighted_input,
                    const NeuronParams& prm);

Rat base_spike_prob(long long p, const NeuronParams& prm);

// 0 in absolute refractory, alpha-scaled in relative refractory.
Rat effective_spike_prob(const NeuronState& state, const Rat& base,
                         const NeuronParams& prm);

// Full one-step distribution from prev under the given weighted input.
// Branch order is canonical: no-spike (y=0) first, spike (y=1) second;
// degenerate probabilities collapse to a single branch.
BranchDistribution neuron_branches(const NeuronState& prev,
                                   const Rat& weighted_input,
                                   const NeuronParams& prm);

}  // namespace snn
