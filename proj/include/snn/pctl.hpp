#pragma once

#include "snn/dtmc.hpp"
#include "snn/network.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace snn {

enum class CmpOp { eq, ne, lt, le, gt, ge };

// One AST node type for the whole property language. Path operators appear
// only under `prob`; the checker validates the shapes it supports.
struct Formula {
  enum class Kind {
    atom,     // var cmp (cval | sym)
    lnot,     // !a
    land,     // a & b
    lor,      // a | b
    implies,  // a -> b
    next,     // X a
    evt,      // F a            (bound: none or <=t)
    alw,      // G a            (bound: none, <=t or >t)
    until,    // a U b          (bound: none or <=t)
    prob,     // P bound [ a ]
    reward    // R{"rname"}=? [ C<=rupto ]
  };
  enum class TimeBound { none, upto, after };
  enum class ProbBound { ge, le, query };

  Kind kind = Kind::atom;

  std::string var;
  CmpOp cmp = CmpOp::eq;
  long long cval = 0;
  std::string sym;  // symbolic RHS (ARP / RRP), resolved per neuron at check

  TimeBound tbound = TimeBound::none;
  long long tval = 0;

  ProbBound pbound = ProbBound::query;
  Rat pval;

  std::string rname;
  long long rupto = 0;

  std::shared_ptr<const Formula> a, b;
};

using FormulaPtr = std::shared_ptr<const Formula>;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " +
                           std::to_string(position + 1)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class CheckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

FormulaPtr parse_formula(const std::string& text);

struct CheckResult {
  enum class Kind { verdict, probability, reward };
  Kind kind = Kind::verdict;
  bool verdict = false;
  Rat value;                 // probability or expected reward
  bool approximate = false;  // floating-point fallback was used
  std::string method;  // graph-qualitative | bounded-iteration | linear-solve | bscc
  double elapsed_ms = 0;
};

// Exact model check against the built chain. Throws CheckError for formulas
// outside the supported fragment, unknown variables or unknown rewards.
CheckResult check(const Dtmc& d, const Formula& f);

// Σ_{k=0..t} Σ_s Pr(state s at step k) * reward(s).
Rat expected_cumulative_reward(const Dtmc& d, const std::string& reward_name,
                               long long t);

// Number of steps after which a bounded path formula is decided; nullopt for
// formulas with an unbounded suffix (F, G, U without <=t, G>T).
std::optional<long long> bounded_horizon(const Formula& f);

// Path formula pre-bound to a network, for cheap repeated evaluation on
// sampled traces.
struct ResolvedFormula;
using ResolvedPtr = std::shared_ptr<const ResolvedFormula>;
ResolvedPtr resolve_path_formula(const Formula& f, const CompiledNetwork& net);
bool eval_resolved(const ResolvedFormula& f,
                   const std::vector<NetworkState>& trace, long long pos);

}  // namespace snn
