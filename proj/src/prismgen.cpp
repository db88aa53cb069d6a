#include "snn/prismgen.hpp"

#include "snn/pctl.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace snn {

namespace {

constexpr long long kPrismIntMax = 2147483647;

void check_int32(long long v, const std::string& what) {
  if (v > kPrismIntMax || v < -kPrismIntMax)
    throw std::invalid_argument(what + " does not fit PRISM's integer range");
}

std::string dec(const Rat& q, const std::string& what) {
  auto s = to_exact_decimal(q);
  if (!s)
    throw std::invalid_argument(what +
                                " has no finite decimal expansion; PRISM "
                                "emission needs decimal parameters");
  return *s;
}

std::string prob_str(const Rat& q, const std::string& what) {
  if (q == 1) return "1.0";
  return dec(q, what);
}

// Probability law slots in ascending newp order. Open endpoints are absent.
struct Slot {
  bool has_lo = false, has_hi = false;
  long long lo = 0, hi = 0;
  Rat q;
};

std::vector<Slot> law_slots(const NeuronParams& prm) {
  const auto& t = prm.table;
  const int k = t.k();
  std::vector<Slot> slots;
  auto at = [&](int j) { return t.boundaries[j]; };  // l_{j+1}
  Slot low;
  low.has_hi = true;
  low.hi = prm.tau - at(k - 1);
  low.q = 0;
  slots.push_back(low);
  for (int j = k; j >= 1; --j) {
    Slot s;
    s.has_lo = s.has_hi = true;
    s.lo = prm.tau - at(j - 1);
    s.hi = j == 1 ? prm.tau : prm.tau - at(j - 2);
    s.q = t.probs[k - j];
    slots.push_back(s);
  }
  for (int j = 1; j <= k; ++j) {
    Slot s;
    s.has_lo = s.has_hi = true;
    s.lo = j == 1 ? prm.tau : prm.tau + at(j - 2);
    s.hi = prm.tau + at(j - 1);
    s.q = t.probs[k + j - 1];
    slots.push_back(s);
  }
  Slot high;
  high.has_lo = true;
  high.lo = prm.tau + at(k - 1);
  high.q = 1;
  slots.push_back(high);
  return slots;
}

struct AtomRef {
  std::string prefix;
  long long id = 0;
};

AtomRef split_var(const std::string& var) {
  std::size_t i = 0;
  while (i < var.size() && !std::isdigit(static_cast<unsigned char>(var[i])))
    ++i;
  if (i == 0 || i == var.size())
    throw CheckError("malformed variable '" + var + "'");
  AtomRef ref;
  ref.prefix = var.substr(0, i);
  try {
    ref.id = std::stoll(var.substr(i));
  } catch (const std::exception&) {
    throw CheckError("malformed variable '" + var + "'");
  }
  if (ref.prefix != "s" && ref.prefix != "y" && ref.prefix != "p" &&
      ref.prefix != "aref" && ref.prefix != "rref")
    throw CheckError("unknown variable '" + var + "'");
  return ref;
}

void check_atoms(const Formula& f, const NetworkSpec& spec) {
  if (f.kind == Formula::Kind::atom) {
    AtomRef ref = split_var(f.var);
    for (const auto& d : spec.neurons)
      if (d.id == ref.id) return;
    throw CheckError("variable '" + f.var + "' refers to unknown neuron " +
                     std::to_string(ref.id));
  }
  if (f.a) check_atoms(*f.a, spec);
  if (f.b) check_atoms(*f.b, spec);
}

const char* cmp_str(CmpOp c) {
  switch (c) {
    case CmpOp::eq: return "=";
    case CmpOp::ne: return "!=";
    case CmpOp::lt: return "<";
    case CmpOp::le: return "<=";
    case CmpOp::gt: return ">";
    case CmpOp::ge: return ">=";
  }
  return "=";
}

std::string print_formula(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::atom: {
      std::string rhs;
      if (f.sym.empty()) {
        rhs = std::to_string(f.cval);
      } else {
        rhs = f.sym + std::to_string(split_var(f.var).id);
      }
      return f.var + cmp_str(f.cmp) + rhs;
    }
    case Formula::Kind::lnot:
      return "!(" + print_formula(*f.a) + ")";
    case Formula::Kind::land:
      return "(" + print_formula(*f.a) + ") & (" + print_formula(*f.b) + ")";
    case Formula::Kind::lor:
      return "(" + print_formula(*f.a) + ") | (" + print_formula(*f.b) + ")";
    case Formula::Kind::implies:
      return "(" + print_formula(*f.a) + ") => (" + print_formula(*f.b) + ")";
    case Formula::Kind::next:
      return "X (" + print_formula(*f.a) + ")";
    case Formula::Kind::evt: {
      std::string op = "F";
      if (f.tbound == Formula::TimeBound::upto)
        op += "<=" + std::to_string(f.tval);
      return op + " (" + print_formula(*f.a) + ")";
    }
    case Formula::Kind::alw: {
      std::string op = "G";
      if (f.tbound == Formula::TimeBound::upto)
        op += "<=" + std::to_string(f.tval);
      else if (f.tbound == Formula::TimeBound::after)
        op += ">=" + std::to_string(f.tval + 1);
      return op + " (" + print_formula(*f.a) + ")";
    }
    case Formula::Kind::until: {
      std::string op = "U";
      if (f.tbound == Formula::TimeBound::upto)
        op += "<=" + std::to_string(f.tval);
      return "(" + print_formula(*f.a) + ") " + op + " (" +
             print_formula(*f.b) + ")";
    }
    case Formula::Kind::prob: {
      std::string head = "P";
      if (f.pbound == Formula::ProbBound::ge)
        head += ">=" + dec(f.pval, "probability bound");
      else if (f.pbound == Formula::ProbBound::le)
        head += "<=" + dec(f.pval, "probability bound");
      else
        head += "=?";
      return head + " [ " + print_formula(*f.a) + " ]";
    }
    case Formula::Kind::reward:
      return "R{\"" + f.rname + "\"}=? [ C<=" + std::to_string(f.rupto) +
             " ]";
  }
  return "";
}

}  // namespace

std::string emit_model(const NetworkSpec& spec) {
  CompiledNetwork net = compile(spec);
  if (net.time_varying)
    throw std::invalid_argument(
        "time-varying input patterns have no static PRISM encoding");

  std::ostringstream os;
  os << "// model: " << spec.name << "\n";
  os << "// one synchronized step per time step; every module moves on [to]\n";
  os << "dtmc\n\n";

  for (const auto& d : net.neurons) {
    const auto& prm = d.params;
    const std::string i = std::to_string(d.id);
    check_int32(prm.tau, "threshold of neuron " + i);
    check_int32(prm.p_rest, "resting potential of neuron " + i);
    check_int32(prm.p_min, "potential bound of neuron " + i);
    check_int32(prm.p_max, "potential bound of neuron " + i);
    os << "const int tau" << i << " = " << prm.tau << ";\n";
    os << "const int ARP" << i << " = " << prm.arp << ";\n";
    os << "const int RRP" << i << " = " << prm.rrp << ";\n";
    os << "const int P_rest" << i << " = " << prm.p_rest << ";\n";
    os << "const int P_min" << i << " = " << prm.p_min << ";\n";
    os << "const int P_max" << i << " = " << prm.p_max << ";\n";
    os << "const double r" << i << " = " << dec(prm.r, "leak factor") << ";\n";
    os << "const double alpha" << i << " = "
       << dec(prm.alpha, "refractory shrink factor") << ";\n";
    os << "\n";
  }

  // Weighted input and clipped next potential, per neuron. The synchronized
  // update reads presynaptic y before it changes, which is the one-step
  // transmission delay.
  for (int idx = 0; idx < net.size(); ++idx) {
    const std::string i = std::to_string(net.neurons[idx].id);
    std::ostringstream in;
    bool first = true;
    auto term = [&](long long w, const std::string& sig) {
      if (w == 0) return;
      check_int32(w, "weight into neuron " + i);
      if (first) {
        if (w < 0) in << "-";
        first = false;
      } else {
        in << (w < 0 ? " - " : " + ");
      }
      long long a = w < 0 ? -w : w;
      if (a == 1)
        in << sig;
      else
        in << a << "*" << sig;
    };
    for (const auto& [src, w] : net.input_edges[idx])
      term(w, "x" + std::to_string(src.id));
    for (const auto& [src, w] : net.synapses[idx])
      term(w, "y" + std::to_string(net.neurons[src].id));
    std::string expr = first ? "0" : in.str();
    os << "formula in" << i << " = " << expr << ";\n";
    os << "formula newp" << i << " = max(min(floor(in" << i << " + r" << i
       << "*(1-y" << i << ")*p" << i << "), P_max" << i << "), P_min" << i
       << ");\n";
  }
  os << "\n";

  os << "module Input\n";
  bool any_input = false;
  for (const auto& in : spec.inputs) {
    check_int32(in.value, "value of input " + std::to_string(in.id));
    os << "  x" << in.id << " : [" << in.value << ".." << in.value
       << "] init " << in.value << ";\n";
    any_input = true;
  }
  if (any_input) os << "\n";
  os << "  [to] true -> 1.0: true;\n";
  os << "endmodule\n\n";

  for (int idx = 0; idx < net.size(); ++idx) {
    const auto& prm = net.neurons[idx].params;
    const std::string i = std::to_string(net.neurons[idx].id);
    os << "module Neuron" << i << "\n";
    os << "  aref" << i << " : [0..ARP" << i << "] init 0;\n";
    os << "  rref" << i << " : [0..RRP" << i << "] init 0;\n";
    os << "  s" << i << " : [0..2] init 0;\n";
    os << "  y" << i << " : [0..1] init 0;\n";
    os << "  p" << i << " : [P_min" << i << "..P_max" << i << "] init P_rest"
       << i << ";\n\n";

    std::string spike;
    if (prm.arp > 0) {
      spike = "(s" + i + "'=1) & (y" + i + "'=1) & (p" + i + "'=P_rest" + i +
              ") & (aref" + i + "'=ARP" + i + ") & (rref" + i + "'=0)";
    } else if (prm.rrp > 0) {
      spike = "(s" + i + "'=2) & (y" + i + "'=1) & (p" + i + "'=P_rest" + i +
              ") & (aref" + i + "'=0) & (rref" + i + "'=RRP" + i + ")";
    } else {
      spike = "(s" + i + "'=0) & (y" + i + "'=1) & (p" + i + "'=P_rest" + i +
              ") & (aref" + i + "'=0) & (rref" + i + "'=0)";
    }

    if (prm.arp > 0) {
      os << "  // absolute refractory countdown\n";
      os << "  [to] s" << i << "=1 & aref" << i << ">0 -> 1.0: (s" << i
         << "'=1) & (y" << i << "'=0) & (p" << i << "'=0) & (aref" << i
         << "'=aref" << i << "-1) & (rref" << i << "'=rref" << i << ");\n";
      os << "  [to] s" << i << "=1 & aref" << i << "=0 -> 1.0: (s" << i
         << "'=2) & (y" << i << "'=0) & (p" << i << "'=0) & (aref" << i
         << "'=0) & (rref" << i << "'=RRP" << i << ");\n\n";
    }

    struct Regime {
      std::string guard, nospike;
      bool scaled;
      bool live;
    };
    std::vector<Regime> regimes;
    regimes.push_back(
        {"s" + i + "=0",
         "(s" + i + "'=0) & (y" + i + "'=0) & (p" + i + "'=newp" + i +
             ") & (aref" + i + "'=0) & (rref" + i + "'=0)",
         false, true});
    regimes.push_back(
        {"s" + i + "=2 & rref" + i + ">0",
         "(s" + i + "'=2) & (y" + i + "'=0) & (p" + i + "'=newp" + i +
             ") & (aref" + i + "'=0) & (rref" + i + "'=rref" + i + "-1)",
         true, prm.rrp > 0});
    regimes.push_back(
        {"s" + i + "=2 & rref" + i + "=0",
         "(s" + i + "'=0) & (y" + i + "'=0) & (p" + i + "'=newp" + i +
             ") & (aref" + i + "'=0) & (rref" + i + "'=0)",
         true, prm.arp > 0 || prm.rrp > 0});

    const std::vector<Slot> slots = law_slots(prm);
    for (const auto& reg : regimes) {
      if (!reg.live) continue;
      for (const auto& slot : slots) {
        if (slot.has_lo) check_int32(slot.lo, "law boundary of neuron " + i);
        if (slot.has_hi) check_int32(slot.hi, "law boundary of neuron " + i);
        std::ostringstream guard;
        guard << reg.guard;
        if (slot.has_lo) guard << " & newp" << i << " >= " << slot.lo;
        if (slot.has_hi) guard << " & newp" << i << " < " << slot.hi;
        Rat q = reg.scaled ? prm.alpha * slot.q : slot.q;
        os << "  [to] " << guard.str() << " -> ";
        if (q == 0) {
          os << "1.0: " << reg.nospike;
        } else if (q == 1) {
          os << "1.0: " << spike;
        } else {
          os << prob_str(Rat(1) - q, "spike probability") << ": "
             << reg.nospike << " + " << prob_str(q, "spike probability")
             << ": " << spike;
        }
        os << ";\n";
      }
      os << "\n";
    }
    os << "endmodule\n\n";
  }

  for (int idx = 0; idx < net.size(); ++idx) {
    const std::string to = std::to_string(net.neurons[idx].id);
    for (const auto& [src, w] : net.synapses[idx]) {
      const std::string from = std::to_string(net.neurons[src].id);
      os << "// synapse n" << from << " -> n" << to
         << ": delay lives in the synchronized read of y" << from << "\n";
      os << "module Transfer_n" << from << "_n" << to << "\n";
      os << "  [to] true -> 1.0: true;\n";
      os << "endmodule\n\n";
    }
  }

  for (const auto& d : net.neurons) {
    const std::string i = std::to_string(d.id);
    os << "rewards \"spike" << i << "_count\"\n";
    os << "  y" << i << " = 1 : 1;\n";
    os << "endrewards\n\n";
  }

  std::string out = os.str();
  if (out.size() >= 2 && out[out.size() - 1] == '\n' &&
      out[out.size() - 2] == '\n')
    out.pop_back();
  return out;
}

std::string emit_properties(const NetworkSpec& spec,
                            const std::vector<std::string>& formulas) {
  std::ostringstream os;
  for (const auto& text : formulas) {
    FormulaPtr f = parse_formula(text);
    check_atoms(*f, spec);
    os << print_formula(*f) << "\n";
  }
  return os.str();
}

std::string sanitize_filename(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
        c == '.')
      out.push_back(c);
    else
      out.push_back('_');
  }
  if (out.empty()) out = "model";
  return out;
}

// ---------------------------------------------------------------------------
// Minimal PRISM surface-syntax checks
// ---------------------------------------------------------------------------

namespace {

struct LTok {
  std::string s;
  int line = 0;
};

std::vector<LTok> lex(const std::string& text, std::vector<std::string>* errs) {
  std::vector<LTok> out;
  int line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(
                                     text[j])) ||
                                 text[j] == '_'))
        ++j;
      out.push_back({text.substr(i, j - i), line});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      bool dot = false;
      while (j < text.size()) {
        if (std::isdigit(static_cast<unsigned char>(text[j]))) {
          ++j;
        } else if (text[j] == '.' && !dot && j + 1 < text.size() &&
                   std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
          dot = true;
          ++j;
        } else {
          break;
        }
      }
      out.push_back({text.substr(i, j - i), line});
      i = j;
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
      if (j == text.size() || text[j] == '\n') {
        errs->push_back("line " + std::to_string(line) +
                        ": unterminated string");
        i = j;
        continue;
      }
      out.push_back({text.substr(i, j - i + 1), line});
      i = j + 1;
      continue;
    }
    static const char* two[] = {"..", "->", "=>", "<=", ">=", "!=", "=?"};
    bool matched = false;
    for (const char* t : two) {
      if (text.compare(i, 2, t) == 0) {
        out.push_back({t, line});
        i += 2;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    static const std::string one = "()[]{}<>=!&|+-*/:;,'?";
    if (one.find(c) != std::string::npos) {
      out.push_back({std::string(1, c), line});
      ++i;
      continue;
    }
    errs->push_back("line " + std::to_string(line) +
                    ": unexpected character '" + std::string(1, c) + "'");
    ++i;
  }
  return out;
}

bool is_ident(const std::string& s) {
  return !s.empty() &&
         (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_');
}

bool is_number(const std::string& s) {
  return !s.empty() && std::isdigit(static_cast<unsigned char>(s[0]));
}

// Balanced-paren expression made of identifiers, numbers and operators.
bool check_expr(const std::vector<LTok>& toks, std::size_t lo, std::size_t hi,
                std::vector<std::string>* errs) {
  if (lo >= hi) {
    int line = lo < toks.size() ? toks[lo].line
                                : (toks.empty() ? 1 : toks.back().line);
    errs->push_back("line " + std::to_string(line) + ": empty expression");
    return false;
  }
  int depth = 0;
  bool ok = true;
  static const std::string ops = "()+-*/<>=!&|,'?";
  for (std::size_t i = lo; i < hi; ++i) {
    const std::string& s = toks[i].s;
    if (s == "(") ++depth;
    if (s == ")") --depth;
    if (depth < 0) {
      errs->push_back("line " + std::to_string(toks[i].line) +
                      ": unbalanced ')'");
      return false;
    }
    bool fine = is_ident(s) || is_number(s) || s == "<=" || s == ">=" ||
                s == "!=" || s == "=>" ||
                (s.size() == 1 && ops.find(s[0]) != std::string::npos);
    if (!fine) {
      errs->push_back("line " + std::to_string(toks[i].line) +
                      ": token '" + s + "' not allowed in an expression");
      ok = false;
    }
  }
  if (depth != 0) {
    errs->push_back("line " + std::to_string(toks[hi - 1].line) +
                    ": unbalanced '('");
    ok = false;
  }
  return ok;
}

// Finds the next token equal to `what` at paren depth 0 in [lo, hi).
std::size_t find_top(const std::vector<LTok>& toks, std::size_t lo,
                     std::size_t hi, const std::string& what) {
  int depth = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    if (toks[i].s == "(") ++depth;
    else if (toks[i].s == ")") --depth;
    else if (depth == 0 && toks[i].s == what) return i;
  }
  return hi;
}

void check_update(const std::vector<LTok>& toks, std::size_t lo,
                  std::size_t hi, std::vector<std::string>* errs) {
  if (hi - lo == 1 && toks[lo].s == "true") return;
  // (x'=expr) & (y'=expr) & ...
  std::size_t i = lo;
  while (i < hi) {
    if (toks[i].s != "(" || i + 2 >= hi || !is_ident(toks[i + 1].s) ||
        toks[i + 2].s != "'") {
      errs->push_back("line " + std::to_string(toks[i].line) +
                      ": expected (var'=expr) update");
      return;
    }
    if (toks[i + 3].s != "=") {
      errs->push_back("line " + std::to_string(toks[i + 3].line) +
                      ": expected '=' in update");
      return;
    }
    int depth = 1;
    std::size_t j = i + 4;
    while (j < hi && depth > 0) {
      if (toks[j].s == "(") ++depth;
      if (toks[j].s == ")") --depth;
      ++j;
    }
    if (depth != 0) {
      errs->push_back("line " + std::to_string(toks[i].line) +
                      ": unbalanced update parentheses");
      return;
    }
    check_expr(toks, i + 4, j - 1, errs);
    i = j;
    if (i < hi) {
      if (toks[i].s != "&") {
        errs->push_back("line " + std::to_string(toks[i].line) +
                        ": expected '&' between updates");
        return;
      }
      ++i;
    }
  }
}

void check_command(const std::vector<LTok>& toks, std::size_t lo,
                   std::size_t hi, std::vector<std::string>* errs) {
  // [label] guard -> p1: upd1 + p2: upd2 ... (label and probs optional)
  std::size_t i = lo;
  if (toks[i].s != "[") {
    errs->push_back("line " + std::to_string(toks[i].line) +
                    ": command must start with '['");
    return;
  }
  ++i;
  if (i < hi && is_ident(toks[i].s)) ++i;
  if (i >= hi || toks[i].s != "]") {
    errs->push_back("line " + std::to_string(toks[lo].line) +
                    ": malformed action label");
    return;
  }
  ++i;
  std::size_t arrow = find_top(toks, i, hi, "->");
  if (arrow == hi) {
    errs->push_back("line " + std::to_string(toks[lo].line) +
                    ": command without '->'");
    return;
  }
  check_expr(toks, i, arrow, errs);
  std::size_t pos = arrow + 1;
  while (pos < hi) {
    std::size_t plus = find_top(toks, pos, hi, "+");
    std::size_t colon = find_top(toks, pos, plus, ":");
    if (colon < plus) {
      check_expr(toks, pos, colon, errs);
      check_update(toks, colon + 1, plus, errs);
    } else {
      check_update(toks, pos, plus, errs);
    }
    pos = plus + 1;
  }
}

}  // namespace

std::vector<std::string> lint_prism_model(const std::string& text) {
  std::vector<std::string> errs;
  std::vector<LTok> toks = lex(text, &errs);
  std::size_t i = 0;
  auto line_of = [&](std::size_t k) {
    return k < toks.size() ? toks[k].line
                           : (toks.empty() ? 1 : toks.back().line);
  };
  auto until_semi = [&](std::size_t from) {
    std::size_t j = from;
    while (j < toks.size() && toks[j].s != ";") ++j;
    return j;
  };

  if (toks.empty() || (toks[0].s != "dtmc" && toks[0].s != "probabilistic")) {
    errs.push_back("line 1: model must start with 'dtmc'");
  } else {
    ++i;
  }

  while (i < toks.size()) {
    const std::string& s = toks[i].s;
    if (s == "const" || s == "formula") {
      std::size_t semi = until_semi(i);
      std::size_t j = i + 1;
      if (s == "const" && j < semi &&
          (toks[j].s == "int" || toks[j].s == "double" || toks[j].s == "bool"))
        ++j;
      if (j >= semi || !is_ident(toks[j].s)) {
        errs.push_back("line " + std::to_string(line_of(i)) +
                       ": malformed " + s + " declaration");
      } else if (j + 1 >= semi || toks[j + 1].s != "=") {
        errs.push_back("line " + std::to_string(line_of(i)) +
                       ": expected '=' in " + s + " declaration");
      } else {
        check_expr(toks, j + 2, semi, &errs);
      }
      if (semi == toks.size()) {
        errs.push_back("line " + std::to_string(line_of(i)) +
                       ": missing ';'");
        return errs;
      }
      i = semi + 1;
    } else if (s == "module") {
      if (i + 1 >= toks.size() || !is_ident(toks[i + 1].s)) {
        errs.push_back("line " + std::to_string(line_of(i)) +
                       ": module needs a name");
        ++i;
        continue;
      }
      i += 2;
      while (i < toks.size() && toks[i].s != "endmodule") {
        if (toks[i].s == "[") {
          std::size_t semi = until_semi(i);
          if (semi == toks.size()) {
            errs.push_back("line " + std::to_string(line_of(i)) +
                           ": command missing ';'");
            return errs;
          }
          check_command(toks, i, semi, &errs);
          i = semi + 1;
        } else if (is_ident(toks[i].s)) {
          // var : [lo..hi] init e;  |  var : bool init e;
          std::size_t semi = until_semi(i);
          if (semi == toks.size()) {
            errs.push_back("line " + std::to_string(line_of(i)) +
                           ": declaration missing ';'");
            return errs;
          }
          std::size_t j = i + 1;
          bool ok = j < semi && toks[j].s == ":";
          ++j;
          if (ok && j < semi && toks[j].s == "bool") {
            ++j;
          } else if (ok && j < semi && toks[j].s == "[") {
            std::size_t dots = find_top(toks, j + 1, semi, "..");
            std::size_t close = find_top(toks, j + 1, semi, "]");
            ok = dots < close && close < semi &&
                 check_expr(toks, j + 1, dots, &errs) &&
                 check_expr(toks, dots + 1, close, &errs);
            j = close + 1;
          } else {
            ok = false;
          }
          if (ok && j < semi && toks[j].s == "init") {
            ok = check_expr(toks, j + 1, semi, &errs);
          } else {
            ok = false;
          }
          if (!ok)
            errs.push_back("line " + std::to_string(line_of(i)) +
                           ": malformed variable declaration");
          i = semi + 1;
        } else {
          errs.push_back("line " + std::to_string(line_of(i)) +
                         ": unexpected token '" + toks[i].s +
                         "' inside module");
          ++i;
        }
      }
      if (i == toks.size()) {
        errs.push_back("module without endmodule");
        return errs;
      }
      ++i;  // endmodule
    } else if (s == "rewards") {
      ++i;
      if (i < toks.size() && !toks[i].s.empty() && toks[i].s[0] == '"') ++i;
      while (i < toks.size() && toks[i].s != "endrewards") {
        std::size_t semi = until_semi(i);
        if (semi == toks.size()) {
          errs.push_back("line " + std::to_string(line_of(i)) +
                         ": reward item missing ';'");
          return errs;
        }
        std::size_t lo = i;
        if (toks[lo].s == "[") {
          while (lo < semi && toks[lo].s != "]") ++lo;
          ++lo;
        }
        std::size_t colon = find_top(toks, lo, semi, ":");
        if (colon == semi) {
          errs.push_back("line " + std::to_string(line_of(i)) +
                         ": reward item needs 'guard : value'");
        } else {
          check_expr(toks, lo, colon, &errs);
          check_expr(toks, colon + 1, semi, &errs);
        }
        i = semi + 1;
      }
      if (i == toks.size()) {
        errs.push_back("rewards without endrewards");
        return errs;
      }
      ++i;
    } else {
      errs.push_back("line " + std::to_string(line_of(i)) +
                     ": unexpected top-level token '" + s + "'");
      ++i;
    }
  }
  return errs;
}

std::vector<std::string> lint_prism_properties(const std::string& text) {
  std::vector<std::string> errs;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    std::string stripped = raw.substr(0, raw.find("//"));
    bool blank = true;
    for (char c : stripped)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) continue;
    std::vector<std::string> lexerrs;
    std::vector<LTok> toks = lex(stripped, &lexerrs);
    for (auto& e : lexerrs)
      errs.push_back("line " + std::to_string(line) + ": " +
                     e.substr(e.find(": ") + 2));
    if (toks.empty()) continue;
    if (toks[0].s != "P" && toks[0].s != "R") {
      errs.push_back("line " + std::to_string(line) +
                     ": property must start with P or R");
      continue;
    }
    int paren = 0, bracket = 0;
    bool sawq = false;
    for (const auto& t : toks) {
      if (t.s == "(") ++paren;
      if (t.s == ")") --paren;
      if (t.s == "[") ++bracket;
      if (t.s == "]") --bracket;
      if (t.s == "=?" || t.s == ">=" || t.s == "<=") sawq = true;
    }
    if (paren != 0)
      errs.push_back("line " + std::to_string(line) +
                     ": unbalanced parentheses");
    if (bracket != 0)
      errs.push_back("line " + std::to_string(line) +
                     ": unbalanced brackets");
    if (!sawq)
      errs.push_back("line " + std::to_string(line) +
                     ": query needs a bound or =?");
  }
  return errs;
}

}  // namespace snn
