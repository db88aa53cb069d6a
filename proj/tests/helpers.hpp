#pragma once

// Shared test plumbing: fixture loading plus brute-force reference
// implementations. The reference code here is deliberately naive and avoids
// the library's checker machinery, so agreement is meaningful.

#include "snn/network.hpp"
#include "snn/pctl.hpp"
#include "snn/snnrf.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testutil {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

inline std::string fixture_path(const std::string& name) {
  return std::string(SNN_FIXTURE_DIR) + "/" + name;
}

inline std::string golden_path(const std::string& name) {
  return std::string(SNN_GOLDEN_DIR) + "/" + name;
}

// Byte-exact comparison against tests/goldens/<name>. Running with
// SNN_REGEN_GOLDENS=1 rewrites the file instead; inspect the diff before
// committing a regenerated golden.
inline bool golden_matches(const std::string& name, const std::string& actual,
                           std::string* message) {
  const std::string path = golden_path(name);
  if (std::getenv("SNN_REGEN_GOLDENS")) {
    write_file(path, actual);
    *message = "regenerated " + path;
    return true;
  }
  std::string expected;
  try {
    expected = read_file(path);
  } catch (const std::exception&) {
    *message = "missing golden " + path +
               " (run with SNN_REGEN_GOLDENS=1 to create it)";
    return false;
  }
  if (expected == actual) {
    *message = "";
    return true;
  }
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(expected.size(), actual.size()); ++i) {
    if (expected[i] != actual[i]) break;
    if (expected[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  *message = "differs from " + path + " near line " + std::to_string(line) +
             ", column " + std::to_string(col);
  return false;
}

inline snn::NetworkSpec load_fixture(const std::string& name) {
  return snn::parse_snnrf(read_file(fixture_path(name)));
}

// ---------------------------------------------------------------------------
// Path enumeration oracle
// ---------------------------------------------------------------------------

using PathSink =
    std::function<void(const std::vector<snn::NetworkState>&, const snn::Rat&)>;

inline void enum_paths_rec(const snn::CompiledNetwork& net,
                           std::vector<snn::NetworkState>& trace,
                           const snn::Rat& prob, long long remaining,
                           const PathSink& sink) {
  if (remaining == 0) {
    sink(trace, prob);
    return;
  }
  auto branches = snn::network_branches(
      net, trace.back(), static_cast<long long>(trace.size()) - 1);
  for (const auto& [q, nx] : branches) {
    trace.push_back(nx);
    enum_paths_rec(net, trace, prob * q, remaining - 1, sink);
    trace.pop_back();
  }
}

// Visits every trace prefix of the given length with its exact probability.
inline void for_each_path(const snn::CompiledNetwork& net, long long steps,
                          const PathSink& sink) {
  std::vector<snn::NetworkState> trace{snn::initial_state(net)};
  enum_paths_rec(net, trace, snn::Rat(1), steps, sink);
}

// Plain recursive formula evaluation on a concrete trace; no sat-set caching,
// no resolution tables.
inline long long oracle_atom_rhs(const snn::Formula& f,
                                 const snn::CompiledNetwork& net, int idx) {
  if (f.sym.empty()) return f.cval;
  if (f.sym == "ARP") return net.neurons[idx].params.arp;
  if (f.sym == "RRP") return net.neurons[idx].params.rrp;
  throw std::runtime_error("oracle: unknown symbol " + f.sym);
}

inline bool oracle_eval(const snn::Formula& f, const snn::CompiledNetwork& net,
                        const std::vector<snn::NetworkState>& tr,
                        long long pos) {
  using K = snn::Formula::Kind;
  switch (f.kind) {
    case K::atom: {
      std::size_t split = 0;
      while (split < f.var.size() && !std::isdigit(static_cast<unsigned char>(
                                         f.var[split])))
        ++split;
      std::string prefix = f.var.substr(0, split);
      int idx = net.index_of(std::stoll(f.var.substr(split)));
      if (idx < 0) throw std::runtime_error("oracle: unknown neuron");
      const snn::NeuronState& st = tr[pos][idx];
      long long lhs;
      if (prefix == "s") lhs = st.s;
      else if (prefix == "y") lhs = st.y;
      else if (prefix == "p") lhs = st.p;
      else if (prefix == "aref") lhs = st.aref;
      else if (prefix == "rref") lhs = st.rref;
      else throw std::runtime_error("oracle: unknown field " + prefix);
      long long rhs = oracle_atom_rhs(f, net, idx);
      switch (f.cmp) {
        case snn::CmpOp::eq: return lhs == rhs;
        case snn::CmpOp::ne: return lhs != rhs;
        case snn::CmpOp::lt: return lhs < rhs;
        case snn::CmpOp::le: return lhs <= rhs;
        case snn::CmpOp::gt: return lhs > rhs;
        case snn::CmpOp::ge: return lhs >= rhs;
      }
      return false;
    }
    case K::lnot:
      return !oracle_eval(*f.a, net, tr, pos);
    case K::land:
      return oracle_eval(*f.a, net, tr, pos) &&
             oracle_eval(*f.b, net, tr, pos);
    case K::lor:
      return oracle_eval(*f.a, net, tr, pos) ||
             oracle_eval(*f.b, net, tr, pos);
    case K::implies:
      return !oracle_eval(*f.a, net, tr, pos) ||
             oracle_eval(*f.b, net, tr, pos);
    case K::next:
      return oracle_eval(*f.a, net, tr, pos + 1);
    case K::evt:
      for (long long i = 0; i <= f.tval; ++i)
        if (oracle_eval(*f.a, net, tr, pos + i)) return true;
      return false;
    case K::alw:
      for (long long i = 0; i <= f.tval; ++i)
        if (!oracle_eval(*f.a, net, tr, pos + i)) return false;
      return true;
    case K::until:
      for (long long i = 0; i <= f.tval; ++i) {
        if (oracle_eval(*f.b, net, tr, pos + i)) return true;
        if (!oracle_eval(*f.a, net, tr, pos + i)) return false;
      }
      return false;
    default:
      throw std::runtime_error("oracle: unbounded operator");
  }
}

// Exact probability of a bounded path formula by full path enumeration.
inline snn::Rat oracle_probability(const snn::CompiledNetwork& net,
                                   const snn::Formula& f) {
  auto horizon = snn::bounded_horizon(f);
  if (!horizon) throw std::runtime_error("oracle: formula not bounded");
  snn::Rat total(0);
  for_each_path(net, *horizon,
                [&](const std::vector<snn::NetworkState>& tr,
                    const snn::Rat& p) {
                  if (oracle_eval(f, net, tr, 0)) total += p;
                });
  return total;
}

// Expected number of spikes of one neuron over steps 0..t, by enumeration.
inline snn::Rat oracle_expected_spikes(const snn::CompiledNetwork& net,
                                       long long neuron_id, long long t) {
  int idx = net.index_of(neuron_id);
  if (idx < 0) throw std::runtime_error("oracle: unknown neuron");
  snn::Rat total(0);
  for_each_path(net, t,
                [&](const std::vector<snn::NetworkState>& tr,
                    const snn::Rat& p) {
                  long long count = 0;
                  for (const auto& st : tr) count += st[idx].y;
                  total += p * count;
                });
  return total;
}

}  // namespace testutil
