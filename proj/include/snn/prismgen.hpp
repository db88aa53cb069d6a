#pragma once

#include "snn/network.hpp"

#include <string>
#include <vector>

namespace snn {

// PRISM model text for the network: a dtmc with a constants block, an Input
// module holding the constant input variables, one Neuron<i> module per
// neuron, one Transfer module per synapse and one spike-count reward
// structure per neuron, all synchronized on a single action label.
// Throws std::invalid_argument for time-varying inputs or magnitudes that do
// not fit PRISM's integer variables. Emission is deterministic.
std::string emit_model(const NetworkSpec& spec);

// One property per line, translated to PRISM syntax (=> for implication,
// G>t rendered as G>=t+1). Throws ParseError for malformed formulas and
// CheckError for formulas naming unknown neurons.
std::string emit_properties(const NetworkSpec& spec,
                            const std::vector<std::string>& formulas);

// Filesystem-safe stem for `<name>.pm` / `<name>.props`.
std::string sanitize_filename(const std::string& name);

// Minimal structural checks: returns one message per violation, empty when
// the text looks like a well-formed PRISM dtmc / properties file. Not a full
// parser; a safety net for generator regressions.
std::vector<std::string> lint_prism_model(const std::string& text);
std::vector<std::string> lint_prism_properties(const std::string& text);

}  // namespace snn
