#pragma once

#include "snn/network.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace snn {

class OverflowError : public std::runtime_error {
 public:
  OverflowError(std::size_t max_states, std::size_t frontier)
      : std::runtime_error("state space exceeds " + std::to_string(max_states) +
                           " states (frontier holds " +
                           std::to_string(frontier) +
                           " unexplored states); raise --max-states"),
        frontier_(frontier) {}
  std::size_t frontier() const { return frontier_; }

 private:
  std::size_t frontier_;
};

// Explicit reachable state space. States are numbered in BFS discovery order
// (index 0 is the initial state); the transition matrix is row-stochastic in
// exact rationals, stored CSR.
struct Dtmc {
  CompiledNetwork net;
  std::vector<NetworkState> states;
  int initial = 0;

  std::vector<std::size_t> row_start;  // size states+1
  std::vector<int> col;
  std::vector<Rat> val;

  // Reverse adjacency (column -> rows with a nonzero entry), deduplicated.
  std::vector<std::vector<int>> pre;

  // "spike<id>_count" -> per-state 0/1 reward.
  std::map<std::string, std::vector<Rat>> rewards;

  int size() const { return static_cast<int>(states.size()); }
};

inline constexpr std::size_t kDefaultMaxStates = 1000000;

// BFS from initial_state. Throws OverflowError past max_states and
// std::invalid_argument for time-varying input patterns (the chain is
// time-homogeneous by construction).
Dtmc build_dtmc(const CompiledNetwork& net,
                std::size_t max_states = kDefaultMaxStates);

// Exact forward distributions. Internally the distribution is kept as integer
// numerators over one common denominator L^t (L = lcm of all transition
// denominators), so stepping is pure integer arithmetic.
class TransientStepper {
 public:
  explicit TransientStepper(const Dtmc& d);

  void step();
  void advance_to(long long t);  // no-op if already past t
  long long t() const { return t_; }

  const std::vector<Int>& numerators() const { return num_; }
  const Int& denominator() const { return den_; }
  bool sums_to_one() const;
  std::vector<Rat> distribution() const;
  Rat mass(const std::vector<char>& members) const;
  // Σ_s dist(s) * weight(s)
  Rat weighted_sum(const std::vector<Rat>& weight) const;

 private:
  const Dtmc* d_;
  Int den_;
  Int step_scale_;  // L
  std::vector<Int> scaled_val_;  // val[k] * (L / den(val[k]))
  std::vector<Int> num_;
  long long t_ = 0;
};

std::vector<Rat> transient_distribution(const Dtmc& d, long long t);

struct BsccPartition {
  std::vector<std::vector<int>> bsccs;  // each sorted ascending
  std::vector<int> transient;           // states outside every BSCC
  std::vector<int> bscc_of;             // per state: BSCC index or -1
};

BsccPartition bscc_decompose(const Dtmc& d);

// Debug dump: states section (full variable tuples), transition triples,
// reward sections. Line-oriented, deterministic.
std::string dump_explicit(const Dtmc& d);

}  // namespace snn
