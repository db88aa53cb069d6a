#pragma once

#include "snn/network.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace snn {

// Parse failure: syntax error, type mismatch or (in strict mode) unknown key.
// `path` points at the offending node, e.g. "network.n_neurons[1].leak".
class SnnrfError : public std::runtime_error {
 public:
  SnnrfError(std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct ParseOptions {
  bool strict = true;  // reject unknown keys; lax mode downgrades to warnings
};

struct Finding {
  std::string path;
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> errors;
  std::vector<Finding> warnings;
  bool ok() const { return errors.empty(); }
};

// Parses an SNN-RF document. Missing neuron parameters take the defaults
// (threshold 10, leak 0.7, alpha 0.08, arp 2, rrp 5, p_rest 0, bounds +-500,
// default probability table). In lax mode unknown keys are collected into
// *lax_warnings (if given) instead of failing.
NetworkSpec parse_snnrf(const std::string& text, const ParseOptions& opts = {},
                        std::vector<Finding>* lax_warnings = nullptr);

ValidationReport validate(const NetworkSpec& spec);

// Canonical form: all parameters explicit, decimal notation, stable order.
// parse_snnrf(serialize(s)) is structurally equal to s for any valid s.
std::string serialize(const NetworkSpec& spec);

}  // namespace snn
