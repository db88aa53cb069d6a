#pragma once

#include "snn/network.hpp"
#include "snn/pctl.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace snn {

// Deterministic 64-bit generator. The number of draws per step is fixed by
// the state layout (one draw per non-ARP neuron), so a seed pins the trace
// bit for bit on every platform.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

struct Trace {
  Rat dt = Rat(1, 1000);  // label only, the chain itself is unitless
  std::uint64_t seed = 0;
  std::vector<NetworkState> states;  // states[t] is the state after t steps

  long long steps() const { return static_cast<long long>(states.size()) - 1; }
};

// Sampling stepper. All arithmetic is integral (128-bit intermediates); the
// constructor rejects parameter denominators the fast path cannot carry.
// Branch semantics match network_branches exactly.
class Simulator {
 public:
  explicit Simulator(const CompiledNetwork& net);

  // One transition. `t` is the time index of `prev` (patterns cycle on it).
  void step(const NetworkState& prev, NetworkState& next, long long t,
            SplitMix64& rng) const;

  Trace run(long long steps, std::uint64_t seed) const;

  const CompiledNetwork& net() const { return *net_; }

 private:
  struct NeuronSim {
    long long leak_num = 0, leak_den = 1;
    long long tau = 0, p_rest = 0, p_min = 0, p_max = 0;
    int rrp = 0;
    std::vector<long long> bounds;
    // Spike probability per table slot (0 and 2k+1 are the saturated ends),
    // for the normal and the relative-refractory regime.
    std::vector<std::uint64_t> num0, den0, num2, den2;
    NeuronState spike_next;  // state entered on a spike
  };

  int slot_of(const NeuronSim& ns, long long delta) const;

  const CompiledNetwork* net_;
  std::vector<NeuronSim> sims_;
  std::vector<long long> const_input_;  // valid when !net->time_varying
};

Trace simulate(const CompiledNetwork& net, long long steps, std::uint64_t seed,
               const Rat& dt = Rat(1, 1000));

// Header `t,n<id>.y,n<id>.p,n<id>.s,n<id>.aref,n<id>.rref,...`, one row per
// recorded step.
void export_trace_csv(const Trace& trace, const CompiledNetwork& net,
                      std::ostream& os);

// Spike raster, one lane per neuron, one tick per spike.
void export_spike_svg(const Trace& trace, const CompiledNetwork& net,
                      std::ostream& os);

struct EstimateOptions {
  long long runs = 0;  // explicit count; 0 derives it from epsilon/delta
  double epsilon = 0.01;
  double delta = 0.01;
  std::uint64_t seed = 0;
  double ci_confidence = 0.95;
};

struct Estimate {
  long long runs = 0;
  long long hits = 0;
  long long horizon = 0;
  double point = 0;
  double ci_low = 0;
  double ci_high = 0;
};

// Smallest n with 2 exp(-2 n eps^2) <= delta.
long long hoeffding_runs(double epsilon, double delta);

// Monte Carlo estimate of a bounded path formula from the initial state.
// Wilson interval at the requested confidence, widened to the point if
// rounding ever pushes it off. Throws CheckError when the formula has no
// finite horizon.
Estimate estimate_bounded(const CompiledNetwork& net, const Formula& path,
                          const EstimateOptions& opts);

}  // namespace snn
