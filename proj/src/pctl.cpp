#include "snn/pctl.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <vector>

namespace snn {

// ---------------------------------------------------------------------------
// Tokenizer / parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
  enum class T {
    ident, number, string, lparen, rparen, lbracket, rbracket, lbrace, rbrace,
    bang, amp, pipe, arrow, eq, ne, lt, le, gt, ge, eq_query, minus, end
  };
  T t = T::end;
  std::string text;
  std::size_t pos = 0;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Token::T t, std::size_t pos, std::string text = "") {
    out.push_back({t, std::move(text), pos});
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                              s[j] == '_'))
        ++j;
      push(Token::T::ident, start, s.substr(i, j - i));
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      bool dot = false;
      while (j < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[j])) ||
              (s[j] == '.' && !dot && (dot = true))))
        ++j;
      push(Token::T::number, start, s.substr(i, j - i));
      i = j;
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < s.size() && s[j] != '"') ++j;
      if (j == s.size()) throw ParseError("unterminated string", start);
      push(Token::T::string, start, s.substr(i + 1, j - i - 1));
      i = j + 1;
    } else {
      switch (c) {
        case '(': push(Token::T::lparen, start); ++i; break;
        case ')': push(Token::T::rparen, start); ++i; break;
        case '[': push(Token::T::lbracket, start); ++i; break;
        case ']': push(Token::T::rbracket, start); ++i; break;
        case '{': push(Token::T::lbrace, start); ++i; break;
        case '}': push(Token::T::rbrace, start); ++i; break;
        case '&': push(Token::T::amp, start); ++i; break;
        case '|': push(Token::T::pipe, start); ++i; break;
        case '!':
          if (i + 1 < s.size() && s[i + 1] == '=') {
            push(Token::T::ne, start);
            i += 2;
          } else {
            push(Token::T::bang, start);
            ++i;
          }
          break;
        case '-':
          if (i + 1 < s.size() && s[i + 1] == '>') {
            push(Token::T::arrow, start);
            i += 2;
          } else {
            push(Token::T::minus, start);
            ++i;
          }
          break;
        case '=':
          if (i + 1 < s.size() && s[i + 1] == '?') {
            push(Token::T::eq_query, start);
            i += 2;
          } else {
            push(Token::T::eq, start);
            ++i;
          }
          break;
        case '<':
          if (i + 1 < s.size() && s[i + 1] == '=') {
            push(Token::T::le, start);
            i += 2;
          } else {
            push(Token::T::lt, start);
            ++i;
          }
          break;
        case '>':
          if (i + 1 < s.size() && s[i + 1] == '=') {
            push(Token::T::ge, start);
            i += 2;
          } else {
            push(Token::T::gt, start);
            ++i;
          }
          break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'",
                           start);
      }
    }
  }
  push(Token::T::end, s.size());
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  FormulaPtr parse_query() {
    FormulaPtr f = top_implies();
    expect_end();
    return f;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;

  const Token& cur() const { return toks_[at_]; }
  bool is(Token::T t) const { return cur().t == t; }
  bool is_kw(const char* kw) const {
    return cur().t == Token::T::ident && cur().text == kw;
  }
  Token take() { return toks_[at_++]; }
  void expect(Token::T t, const char* what) {
    if (!is(t)) throw ParseError(std::string("expected ") + what, cur().pos);
    ++at_;
  }
  void expect_end() {
    if (!is(Token::T::end))
      throw ParseError("trailing input after formula", cur().pos);
  }

  static std::shared_ptr<Formula> node(Formula::Kind k) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    return f;
  }

  long long parse_int_tok() {
    bool neg = false;
    if (is(Token::T::minus)) {
      neg = true;
      ++at_;
    }
    if (!is(Token::T::number))
      throw ParseError("expected an integer", cur().pos);
    Token t = take();
    auto q = parse_decimal(t.text);
    if (!q || boost::multiprecision::denominator(*q) != 1)
      throw ParseError("expected an integer", t.pos);
    long long v =
        boost::multiprecision::numerator(*q).convert_to<long long>();
    return neg ? -v : v;
  }

  Rat parse_number_tok() {
    if (!is(Token::T::number)) throw ParseError("expected a number", cur().pos);
    Token t = take();
    auto q = parse_decimal(t.text);
    if (!q) throw ParseError("malformed number", t.pos);
    return *q;
  }

  // --- top level: boolean combinations of P/R queries ---

  FormulaPtr top_implies() {
    FormulaPtr lhs = top_or();
    if (is(Token::T::arrow)) {
      ++at_;
      auto f = node(Formula::Kind::implies);
      f->a = lhs;
      f->b = top_implies();
      return f;
    }
    return lhs;
  }

  FormulaPtr top_or() {
    FormulaPtr lhs = top_and();
    while (is(Token::T::pipe)) {
      ++at_;
      auto f = node(Formula::Kind::lor);
      f->a = lhs;
      f->b = top_and();
      lhs = f;
    }
    return lhs;
  }

  FormulaPtr top_and() {
    FormulaPtr lhs = top_unary();
    while (is(Token::T::amp)) {
      ++at_;
      auto f = node(Formula::Kind::land);
      f->a = lhs;
      f->b = top_unary();
      lhs = f;
    }
    return lhs;
  }

  FormulaPtr top_unary() {
    if (is(Token::T::bang)) {
      ++at_;
      auto f = node(Formula::Kind::lnot);
      f->a = top_unary();
      return f;
    }
    if (is(Token::T::lparen)) {
      ++at_;
      FormulaPtr f = top_implies();
      expect(Token::T::rparen, "')'");
      return f;
    }
    if (is_kw("P")) return parse_prob();
    if (is_kw("R")) return parse_reward();
    throw ParseError("expected a P or R query", cur().pos);
  }

  FormulaPtr parse_prob() {
    ++at_;  // P
    auto f = node(Formula::Kind::prob);
    if (is(Token::T::ge)) {
      ++at_;
      f->pbound = Formula::ProbBound::ge;
      f->pval = parse_number_tok();
    } else if (is(Token::T::le)) {
      ++at_;
      f->pbound = Formula::ProbBound::le;
      f->pval = parse_number_tok();
    } else if (is(Token::T::eq_query)) {
      ++at_;
      f->pbound = Formula::ProbBound::query;
    } else {
      throw ParseError("expected >=, <= or =? after P", cur().pos);
    }
    expect(Token::T::lbracket, "'['");
    f->a = path_implies();
    expect(Token::T::rbracket, "']'");
    return f;
  }

  FormulaPtr parse_reward() {
    ++at_;  // R
    auto f = node(Formula::Kind::reward);
    expect(Token::T::lbrace, "'{'");
    if (!is(Token::T::string))
      throw ParseError("expected a quoted reward name", cur().pos);
    f->rname = take().text;
    expect(Token::T::rbrace, "'}'");
    expect(Token::T::eq_query, "'=?'");
    expect(Token::T::lbracket, "'['");
    if (!is_kw("C")) throw ParseError("expected C", cur().pos);
    ++at_;
    expect(Token::T::le, "'<='");
    f->rupto = parse_int_tok();
    expect(Token::T::rbracket, "']'");
    return f;
  }

  // --- inside P [ ... ]: boolean structure over temporal subformulas ---

  FormulaPtr path_implies() {
    FormulaPtr lhs = path_or();
    if (is(Token::T::arrow)) {
      ++at_;
      auto f = node(Formula::Kind::implies);
      f->a = lhs;
      f->b = path_implies();
      return f;
    }
    return lhs;
  }

  FormulaPtr path_or() {
    FormulaPtr lhs = path_and();
    while (is(Token::T::pipe)) {
      ++at_;
      auto f = node(Formula::Kind::lor);
      f->a = lhs;
      f->b = path_and();
      lhs = f;
    }
    return lhs;
  }

  FormulaPtr path_and() {
    FormulaPtr lhs = path_until();
    while (is(Token::T::amp)) {
      ++at_;
      auto f = node(Formula::Kind::land);
      f->a = lhs;
      f->b = path_until();
      lhs = f;
    }
    return lhs;
  }

  FormulaPtr path_until() {
    FormulaPtr lhs = path_unary();
    if (is_kw("U")) {
      ++at_;
      auto f = node(Formula::Kind::until);
      if (is(Token::T::le)) {
        ++at_;
        f->tbound = Formula::TimeBound::upto;
        f->tval = parse_int_tok();
      }
      f->a = lhs;
      f->b = path_unary();
      return f;
    }
    return lhs;
  }

  FormulaPtr path_unary() {
    if (is(Token::T::bang)) {
      ++at_;
      auto f = node(Formula::Kind::lnot);
      f->a = path_unary();
      return f;
    }
    if (is_kw("X")) {
      ++at_;
      auto f = node(Formula::Kind::next);
      f->a = path_unary();
      return f;
    }
    if (is_kw("F")) {
      ++at_;
      auto f = node(Formula::Kind::evt);
      if (is(Token::T::le)) {
        ++at_;
        f->tbound = Formula::TimeBound::upto;
        f->tval = parse_int_tok();
      }
      f->a = path_unary();
      return f;
    }
    if (is_kw("G")) {
      ++at_;
      auto f = node(Formula::Kind::alw);
      if (is(Token::T::le)) {
        ++at_;
        f->tbound = Formula::TimeBound::upto;
        f->tval = parse_int_tok();
      } else if (is(Token::T::gt)) {
        ++at_;
        f->tbound = Formula::TimeBound::after;
        f->tval = parse_int_tok();
      }
      f->a = path_unary();
      return f;
    }
    if (is(Token::T::lparen)) {
      ++at_;
      FormulaPtr f = path_implies();
      expect(Token::T::rparen, "')'");
      return f;
    }
    return parse_atom();
  }

  FormulaPtr parse_atom() {
    if (!is(Token::T::ident))
      throw ParseError("expected an atomic proposition", cur().pos);
    auto f = node(Formula::Kind::atom);
    f->var = take().text;
    if (is(Token::T::eq))
      f->cmp = CmpOp::eq;
    else if (is(Token::T::ne))
      f->cmp = CmpOp::ne;
    else if (is(Token::T::lt))
      f->cmp = CmpOp::lt;
    else if (is(Token::T::le))
      f->cmp = CmpOp::le;
    else if (is(Token::T::gt))
      f->cmp = CmpOp::gt;
    else if (is(Token::T::ge))
      f->cmp = CmpOp::ge;
    else
      throw ParseError("expected a comparison operator", cur().pos);
    ++at_;
    if (is(Token::T::ident)) {
      f->sym = take().text;
    } else {
      f->cval = parse_int_tok();
    }
    return f;
  }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
  Parser p(text);
  return p.parse_query();
}

// ---------------------------------------------------------------------------
// Atom resolution and trace evaluation
// ---------------------------------------------------------------------------

namespace {

enum class Field { s, y, p, aref, rref };

struct ResolvedAtom {
  Field field = Field::y;
  int idx = 0;
  CmpOp cmp = CmpOp::eq;
  long long value = 0;
};

ResolvedAtom resolve_atom(const Formula& f, const CompiledNetwork& net) {
  std::size_t split = 0;
  while (split < f.var.size() &&
         !std::isdigit(static_cast<unsigned char>(f.var[split])))
    ++split;
  std::string prefix = f.var.substr(0, split);
  std::string digits = f.var.substr(split);
  if (digits.empty())
    throw CheckError("malformed variable '" + f.var +
                     "' (expected e.g. y1, p2, aref1)");
  ResolvedAtom ra;
  if (prefix == "s")
    ra.field = Field::s;
  else if (prefix == "y")
    ra.field = Field::y;
  else if (prefix == "p")
    ra.field = Field::p;
  else if (prefix == "aref")
    ra.field = Field::aref;
  else if (prefix == "rref")
    ra.field = Field::rref;
  else
    throw CheckError("unknown variable '" + f.var + "'");
  long long id = 0;
  try {
    id = std::stoll(digits);
  } catch (const std::exception&) {
    throw CheckError("malformed variable '" + f.var + "'");
  }
  ra.idx = net.index_of(id);
  if (ra.idx < 0)
    throw CheckError("variable '" + f.var + "' refers to unknown neuron " +
                     std::to_string(id));
  ra.cmp = f.cmp;
  if (f.sym.empty()) {
    ra.value = f.cval;
  } else if (f.sym == "ARP") {
    ra.value = net.neurons[ra.idx].params.arp;
  } else if (f.sym == "RRP") {
    ra.value = net.neurons[ra.idx].params.rrp;
  } else {
    throw CheckError("unknown symbolic constant '" + f.sym + "'");
  }
  return ra;
}

long long field_value(const ResolvedAtom& ra, const NeuronState& st) {
  switch (ra.field) {
    case Field::s: return st.s;
    case Field::y: return st.y;
    case Field::p: return st.p;
    case Field::aref: return st.aref;
    case Field::rref: return st.rref;
  }
  return 0;
}

bool atom_holds(const ResolvedAtom& ra, const NetworkState& st) {
  long long v = field_value(ra, st[ra.idx]);
  switch (ra.cmp) {
    case CmpOp::eq: return v == ra.value;
    case CmpOp::ne: return v != ra.value;
    case CmpOp::lt: return v < ra.value;
    case CmpOp::le: return v <= ra.value;
    case CmpOp::gt: return v > ra.value;
    case CmpOp::ge: return v >= ra.value;
  }
  return false;
}

bool is_propositional(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::atom: return true;
    case Formula::Kind::lnot: return is_propositional(*f.a);
    case Formula::Kind::land:
    case Formula::Kind::lor:
    case Formula::Kind::implies:
      return is_propositional(*f.a) && is_propositional(*f.b);
    default: return false;
  }
}

}  // namespace

struct ResolvedFormula {
  Formula::Kind kind;
  ResolvedAtom atom;
  Formula::TimeBound tbound = Formula::TimeBound::none;
  long long tval = 0;
  ResolvedPtr a, b;
};

ResolvedPtr resolve_path_formula(const Formula& f, const CompiledNetwork& net) {
  auto r = std::make_shared<ResolvedFormula>();
  r->kind = f.kind;
  r->tbound = f.tbound;
  r->tval = f.tval;
  switch (f.kind) {
    case Formula::Kind::atom:
      r->atom = resolve_atom(f, net);
      break;
    case Formula::Kind::lnot:
    case Formula::Kind::next:
    case Formula::Kind::evt:
    case Formula::Kind::alw:
      r->a = resolve_path_formula(*f.a, net);
      break;
    case Formula::Kind::land:
    case Formula::Kind::lor:
    case Formula::Kind::implies:
    case Formula::Kind::until:
      r->a = resolve_path_formula(*f.a, net);
      r->b = resolve_path_formula(*f.b, net);
      break;
    default:
      throw CheckError("P/R operators cannot be nested inside a path formula");
  }
  return r;
}

bool eval_resolved(const ResolvedFormula& f,
                   const std::vector<NetworkState>& trace, long long pos) {
  switch (f.kind) {
    case Formula::Kind::atom:
      return atom_holds(f.atom, trace[pos]);
    case Formula::Kind::lnot:
      return !eval_resolved(*f.a, trace, pos);
    case Formula::Kind::land:
      return eval_resolved(*f.a, trace, pos) && eval_resolved(*f.b, trace, pos);
    case Formula::Kind::lor:
      return eval_resolved(*f.a, trace, pos) || eval_resolved(*f.b, trace, pos);
    case Formula::Kind::implies:
      return !eval_resolved(*f.a, trace, pos) ||
             eval_resolved(*f.b, trace, pos);
    case Formula::Kind::next:
      return eval_resolved(*f.a, trace, pos + 1);
    case Formula::Kind::evt: {
      for (long long i = 0; i <= f.tval; ++i)
        if (eval_resolved(*f.a, trace, pos + i)) return true;
      return false;
    }
    case Formula::Kind::alw: {
      for (long long i = 0; i <= f.tval; ++i)
        if (!eval_resolved(*f.a, trace, pos + i)) return false;
      return true;
    }
    case Formula::Kind::until: {
      for (long long i = 0; i <= f.tval; ++i) {
        if (eval_resolved(*f.b, trace, pos + i)) return true;
        if (!eval_resolved(*f.a, trace, pos + i)) return false;
      }
      return false;
    }
    default:
      throw CheckError("unexpected operator in bounded path formula");
  }
}

std::optional<long long> bounded_horizon(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::atom:
      return 0;
    case Formula::Kind::lnot:
      return bounded_horizon(*f.a);
    case Formula::Kind::land:
    case Formula::Kind::lor:
    case Formula::Kind::implies: {
      auto ha = bounded_horizon(*f.a), hb = bounded_horizon(*f.b);
      if (!ha || !hb) return std::nullopt;
      return std::max(*ha, *hb);
    }
    case Formula::Kind::next: {
      auto h = bounded_horizon(*f.a);
      if (!h) return std::nullopt;
      return 1 + *h;
    }
    case Formula::Kind::evt:
    case Formula::Kind::alw: {
      if (f.tbound != Formula::TimeBound::upto) return std::nullopt;
      auto h = bounded_horizon(*f.a);
      if (!h) return std::nullopt;
      return f.tval + *h;
    }
    case Formula::Kind::until: {
      if (f.tbound != Formula::TimeBound::upto) return std::nullopt;
      auto ha = bounded_horizon(*f.a), hb = bounded_horizon(*f.b);
      if (!ha || !hb) return std::nullopt;
      return f.tval + std::max(*ha, *hb);
    }
    default:
      return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Checker
// ---------------------------------------------------------------------------

namespace {

using SatSet = std::vector<char>;

SatSet sat_of(const Dtmc& d, const Formula& f);

bool holds_in(const Dtmc& d, const Formula& f, const NetworkState& st) {
  switch (f.kind) {
    case Formula::Kind::atom:
      return atom_holds(resolve_atom(f, d.net), st);
    case Formula::Kind::lnot:
      return !holds_in(d, *f.a, st);
    case Formula::Kind::land:
      return holds_in(d, *f.a, st) && holds_in(d, *f.b, st);
    case Formula::Kind::lor:
      return holds_in(d, *f.a, st) || holds_in(d, *f.b, st);
    case Formula::Kind::implies:
      return !holds_in(d, *f.a, st) || holds_in(d, *f.b, st);
    default:
      throw CheckError("expected a propositional subformula");
  }
}

SatSet sat_of(const Dtmc& d, const Formula& f) {
  // Resolve atoms once, then evaluate per state.
  struct Ev {
    const Formula* f;
    ResolvedAtom ra;
    std::vector<Ev> kids;
  };
  std::function<Ev(const Formula&)> build = [&](const Formula& g) -> Ev {
    Ev e;
    e.f = &g;
    switch (g.kind) {
      case Formula::Kind::atom:
        e.ra = resolve_atom(g, d.net);
        break;
      case Formula::Kind::lnot:
        e.kids.push_back(build(*g.a));
        break;
      case Formula::Kind::land:
      case Formula::Kind::lor:
      case Formula::Kind::implies:
        e.kids.push_back(build(*g.a));
        e.kids.push_back(build(*g.b));
        break;
      default:
        throw CheckError("expected a propositional subformula");
    }
    return e;
  };
  std::function<bool(const Ev&, const NetworkState&)> run =
      [&](const Ev& e, const NetworkState& st) -> bool {
    switch (e.f->kind) {
      case Formula::Kind::atom: return atom_holds(e.ra, st);
      case Formula::Kind::lnot: return !run(e.kids[0], st);
      case Formula::Kind::land: return run(e.kids[0], st) && run(e.kids[1], st);
      case Formula::Kind::lor: return run(e.kids[0], st) || run(e.kids[1], st);
      case Formula::Kind::implies:
        return !run(e.kids[0], st) || run(e.kids[1], st);
      default: return false;
    }
  };
  Ev root = build(f);
  SatSet out(d.states.size(), 0);
  for (int s = 0; s < d.size(); ++s)
    out[s] = run(root, d.states[s]) ? 1 : 0;
  return out;
}

SatSet complement(const SatSet& s) {
  SatSet out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = !s[i];
  return out;
}

// States with a path to `target`, optionally moving only through `through`
// (target states are included regardless).
SatSet backward_reach(const Dtmc& d, const SatSet& target,
                      const SatSet* through = nullptr) {
  SatSet seen(target);
  std::deque<int> queue;
  for (int s = 0; s < d.size(); ++s)
    if (seen[s]) queue.push_back(s);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int u : d.pre[v]) {
      if (seen[u]) continue;
      if (through && !(*through)[u]) continue;
      seen[u] = 1;
      queue.push_back(u);
    }
  }
  return seen;
}

SatSet forward_closure(const Dtmc& d, const SatSet& from) {
  SatSet seen(from);
  std::deque<int> queue;
  for (int s = 0; s < d.size(); ++s)
    if (seen[s]) queue.push_back(s);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (std::size_t k = d.row_start[v]; k < d.row_start[v + 1]; ++k) {
      int u = d.col[k];
      if (!seen[u]) {
        seen[u] = 1;
        queue.push_back(u);
      }
    }
  }
  return seen;
}

// Support of the distribution after exactly t steps.
SatSet support_at(const Dtmc& d, long long t) {
  SatSet cur(d.states.size(), 0);
  cur[d.initial] = 1;
  for (long long k = 0; k < t; ++k) {
    SatSet next(d.states.size(), 0);
    for (int s = 0; s < d.size(); ++s)
      if (cur[s])
        for (std::size_t e = d.row_start[s]; e < d.row_start[s + 1]; ++e)
          next[d.col[e]] = 1;
    cur = std::move(next);
  }
  return cur;
}

constexpr std::size_t kExactSolveLimit = 10000;

// Solves x = A x + b on the unknown block with sparse rational Gaussian
// elimination (min-size-row pivoting).
std::vector<Rat> solve_linear(std::vector<std::map<int, Rat>> rows,
                              std::vector<Rat> rhs) {
  const int m = static_cast<int>(rows.size());
  std::vector<std::vector<int>> col_rows(m);
  for (int r = 0; r < m; ++r)
    for (const auto& [c, v] : rows[r]) col_rows[c].push_back(r);

  std::vector<char> row_done(m, 0), col_done(m, 0);
  std::vector<std::pair<int, int>> order;  // (row, pivot col)
  order.reserve(m);

  for (int step = 0; step < m; ++step) {
    int best = -1;
    std::size_t best_size = 0;
    for (int r = 0; r < m; ++r) {
      if (row_done[r] || rows[r].empty()) continue;
      if (best == -1 || rows[r].size() < best_size) {
        best = r;
        best_size = rows[r].size();
      }
    }
    if (best == -1) throw CheckError("singular reachability system");
    int pivot_col = -1;
    for (const auto& [c, v] : rows[best]) {
      if (!col_done[c] && v != 0) {
        pivot_col = c;
        break;
      }
    }
    if (pivot_col == -1) throw CheckError("singular reachability system");
    Rat pivot_val = rows[best][pivot_col];

    // Eliminate pivot_col from every other active row that carries it.
    std::vector<int> carriers;
    carriers.swap(col_rows[pivot_col]);
    std::sort(carriers.begin(), carriers.end());
    carriers.erase(std::unique(carriers.begin(), carriers.end()),
                   carriers.end());
    for (int r : carriers) {
      if (r == best || row_done[r]) continue;
      auto it = rows[r].find(pivot_col);
      if (it == rows[r].end() || it->second == 0) continue;
      Rat factor = it->second / pivot_val;
      rows[r].erase(it);
      for (const auto& [c, v] : rows[best]) {
        if (c == pivot_col) continue;
        Rat& slot = rows[r][c];
        bool fresh = slot == 0;
        slot -= factor * v;
        if (slot == 0)
          rows[r].erase(c);
        else if (fresh)
          col_rows[c].push_back(r);
      }
      rhs[r] -= factor * rhs[best];
    }
    row_done[best] = 1;
    col_done[pivot_col] = 1;
    order.emplace_back(best, pivot_col);
  }

  std::vector<Rat> x(m, Rat(0));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto [r, c] = *it;
    Rat acc = rhs[r];
    for (const auto& [cc, v] : rows[r])
      if (cc != c) acc -= v * x[cc];
    x[c] = acc / rows[r][c];
  }
  return x;
}

struct ReachOut {
  std::vector<Rat> value;  // per state
  std::string method = "graph-qualitative";
  bool approximate = false;
};

// P(phi U target) per state; phi = everything when `through` is null.
ReachOut until_probability(const Dtmc& d, const SatSet& target,
                           const SatSet* through) {
  const int n = d.size();
  SatSet all(n, 1);
  const SatSet& C = through ? *through : all;

  // can-reach: positive probability of satisfying the until.
  SatSet can = backward_reach(d, target, through);
  // less-than-one: can slip into a state with zero probability.
  SatSet zero = complement(can);
  SatSet slip_through(n, 0);
  for (int s = 0; s < n; ++s) slip_through[s] = C[s] && !target[s];
  SatSet lt1 = backward_reach(d, zero, &slip_through);

  ReachOut out;
  out.value.assign(n, Rat(0));
  std::vector<int> unknowns;
  for (int s = 0; s < n; ++s) {
    if (!can[s]) continue;           // value 0
    if (!lt1[s]) {
      out.value[s] = 1;              // value 1
    } else {
      unknowns.push_back(s);
    }
  }
  if (unknowns.empty()) return out;

  if (unknowns.size() <= kExactSolveLimit) {
    std::vector<int> pos(n, -1);
    for (std::size_t i = 0; i < unknowns.size(); ++i) pos[unknowns[i]] = i;
    std::vector<std::map<int, Rat>> rows(unknowns.size());
    std::vector<Rat> rhs(unknowns.size(), Rat(0));
    for (std::size_t i = 0; i < unknowns.size(); ++i) {
      int s = unknowns[i];
      rows[i][static_cast<int>(i)] = 1;
      for (std::size_t k = d.row_start[s]; k < d.row_start[s + 1]; ++k) {
        int v = d.col[k];
        if (pos[v] >= 0) {
          Rat& slot = rows[i][pos[v]];
          slot -= d.val[k];
          if (slot == 0) rows[i].erase(pos[v]);
        } else {
          rhs[i] += d.val[k] * out.value[v];
        }
      }
    }
    std::vector<Rat> x = solve_linear(std::move(rows), std::move(rhs));
    for (std::size_t i = 0; i < unknowns.size(); ++i)
      out.value[unknowns[i]] = x[i];
    out.method = "linear-solve";
    return out;
  }

  // Too large for exact elimination: floating-point value iteration.
  std::vector<double> x(n, 0.0);
  for (int s = 0; s < n; ++s)
    if (out.value[s] == 1) x[s] = 1.0;
  std::vector<double> pv(d.val.size());
  for (std::size_t k = 0; k < d.val.size(); ++k) pv[k] = to_double(d.val[k]);
  double delta = 1.0;
  for (long long iter = 0; delta > 1e-10 && iter < 10000000; ++iter) {
    delta = 0.0;
    for (int s : unknowns) {
      double acc = 0.0;
      for (std::size_t k = d.row_start[s]; k < d.row_start[s + 1]; ++k)
        acc += pv[k] * x[d.col[k]];
      delta = std::max(delta, std::abs(acc - x[s]));
      x[s] = acc;
    }
  }
  for (int s : unknowns) out.value[s] = Rat(x[s]);
  out.method = "bounded-iteration";
  out.approximate = true;
  return out;
}

ReachOut reach_probability(const Dtmc& d, const SatSet& target) {
  return until_probability(d, target, nullptr);
}

// Bounded backward value iteration.
enum class BoundedKind { evt, alw, until };

Rat bounded_value(const Dtmc& d, BoundedKind kind, const SatSet& B,
                  const SatSet* C, long long t) {
  const int n = d.size();
  std::vector<Rat> x(n);
  for (int s = 0; s < n; ++s) x[s] = B[s] ? Rat(1) : Rat(0);
  for (long long k = 0; k < t; ++k) {
    std::vector<Rat> nx(n, Rat(0));
    for (int s = 0; s < n; ++s) {
      if (kind != BoundedKind::alw && B[s]) {
        nx[s] = 1;
        continue;
      }
      if (kind == BoundedKind::alw && !B[s]) continue;     // stays 0
      if (kind == BoundedKind::until && !(*C)[s]) continue;
      Rat acc(0);
      for (std::size_t e = d.row_start[s]; e < d.row_start[s + 1]; ++e)
        if (x[d.col[e]] != 0) acc += d.val[e] * x[d.col[e]];
      nx[s] = std::move(acc);
    }
    x = std::move(nx);
  }
  return x[d.initial];
}

// --- step formulas: G over boolean combinations of atoms and X(prop) ---

bool is_step_formula(const Formula& f, bool* has_next) {
  switch (f.kind) {
    case Formula::Kind::atom:
      return true;
    case Formula::Kind::next:
      *has_next = true;
      return is_propositional(*f.a);
    case Formula::Kind::lnot:
      return is_step_formula(*f.a, has_next);
    case Formula::Kind::land:
    case Formula::Kind::lor:
    case Formula::Kind::implies:
      return is_step_formula(*f.a, has_next) &&
             is_step_formula(*f.b, has_next);
    default:
      return false;
  }
}

bool eval_step(const Dtmc& d, const Formula& f, const NetworkState& u,
               const NetworkState& v) {
  switch (f.kind) {
    case Formula::Kind::atom:
      return holds_in(d, f, u);
    case Formula::Kind::next:
      return holds_in(d, *f.a, v);
    case Formula::Kind::lnot:
      return !eval_step(d, *f.a, u, v);
    case Formula::Kind::land:
      return eval_step(d, *f.a, u, v) && eval_step(d, *f.b, u, v);
    case Formula::Kind::lor:
      return eval_step(d, *f.a, u, v) || eval_step(d, *f.b, u, v);
    case Formula::Kind::implies:
      return !eval_step(d, *f.a, u, v) || eval_step(d, *f.b, u, v);
    default:
      throw CheckError("unsupported operator in step formula");
  }
}

bool all_edges_satisfy(const Dtmc& d, const Formula& step) {
  for (int s = 0; s < d.size(); ++s)
    for (std::size_t k = d.row_start[s]; k < d.row_start[s + 1]; ++k)
      if (!eval_step(d, step, d.states[s], d.states[d.col[k]])) return false;
  return true;
}

// --- long-run (BSCC) patterns ---

struct LongRunPattern {
  std::vector<const Formula*> always;   // propositional, must hold throughout
  std::vector<const Formula*> infinitely;  // propositional, witnesses needed
};

// Decomposes the conjunction under F G ( ... ): propositional conjuncts plus
// F prop / G F prop conjuncts.
bool decompose_fg_body(const Formula& f, LongRunPattern* out) {
  if (f.kind == Formula::Kind::land)
    return decompose_fg_body(*f.a, out) && decompose_fg_body(*f.b, out);
  if (is_propositional(f)) {
    out->always.push_back(&f);
    return true;
  }
  if (f.kind == Formula::Kind::evt && f.tbound == Formula::TimeBound::none &&
      is_propositional(*f.a)) {
    out->infinitely.push_back(f.a.get());
    return true;
  }
  if (f.kind == Formula::Kind::alw && f.tbound == Formula::TimeBound::none &&
      f.a->kind == Formula::Kind::evt &&
      f.a->tbound == Formula::TimeBound::none && is_propositional(*f.a->a)) {
    out->infinitely.push_back(f.a->a.get());
    return true;
  }
  return false;
}

SatSet good_bscc_union(const Dtmc& d, const LongRunPattern& pat) {
  BsccPartition part = bscc_decompose(d);
  std::vector<SatSet> always_sets, inf_sets;
  for (const Formula* f : pat.always) always_sets.push_back(sat_of(d, *f));
  for (const Formula* f : pat.infinitely) inf_sets.push_back(sat_of(d, *f));
  SatSet out(d.states.size(), 0);
  for (const auto& bscc : part.bsccs) {
    bool good = true;
    for (const auto& set : always_sets) {
      for (int s : bscc)
        if (!set[s]) {
          good = false;
          break;
        }
      if (!good) break;
    }
    for (const auto& set : inf_sets) {
      if (!good) break;
      bool witness = false;
      for (int s : bscc)
        if (set[s]) {
          witness = true;
          break;
        }
      if (!witness) good = false;
    }
    if (good)
      for (int s : bscc) out[s] = 1;
  }
  return out;
}

// --- positivity of  /\ G a_i  /\ F b_j  /\ c_l  (c_l at time 0) ---

struct PositivityQuery {
  std::vector<FormulaPtr> always;
  std::vector<FormulaPtr> eventually;
  std::vector<FormulaPtr> now;
};

FormulaPtr mk_not(FormulaPtr a) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::lnot;
  f->a = std::move(a);
  return f;
}

// Negation normal form good enough for the supported patterns; returns null
// on until/bounded operators under negation.
FormulaPtr nnf(const Formula& f, bool neg) {
  auto mk = [&](Formula::Kind k) {
    auto g = std::make_shared<Formula>();
    g->kind = k;
    return g;
  };
  switch (f.kind) {
    case Formula::Kind::atom: {
      auto g = std::make_shared<Formula>(f);
      if (neg) {
        switch (f.cmp) {
          case CmpOp::eq: g->cmp = CmpOp::ne; break;
          case CmpOp::ne: g->cmp = CmpOp::eq; break;
          case CmpOp::lt: g->cmp = CmpOp::ge; break;
          case CmpOp::le: g->cmp = CmpOp::gt; break;
          case CmpOp::gt: g->cmp = CmpOp::le; break;
          case CmpOp::ge: g->cmp = CmpOp::lt; break;
        }
      }
      return FormulaPtr(g);
    }
    case Formula::Kind::lnot:
      return nnf(*f.a, !neg);
    case Formula::Kind::land:
    case Formula::Kind::lor: {
      bool is_and = (f.kind == Formula::Kind::land) != neg;
      auto g = mk(is_and ? Formula::Kind::land : Formula::Kind::lor);
      g->a = nnf(*f.a, neg);
      g->b = nnf(*f.b, neg);
      if (!g->a || !g->b) return nullptr;
      return g;
    }
    case Formula::Kind::implies: {
      // a -> b == !a | b
      auto g = mk(neg ? Formula::Kind::land : Formula::Kind::lor);
      g->a = nnf(*f.a, !neg);
      g->b = nnf(*f.b, neg);
      if (!g->a || !g->b) return nullptr;
      return g;
    }
    case Formula::Kind::evt:
    case Formula::Kind::alw: {
      if (f.tbound != Formula::TimeBound::none) return nullptr;
      bool is_alw = (f.kind == Formula::Kind::alw) != neg;
      auto g = mk(is_alw ? Formula::Kind::alw : Formula::Kind::evt);
      g->a = nnf(*f.a, neg);
      if (!g->a) return nullptr;
      return g;
    }
    default:
      return nullptr;  // next/until under qualitative negation: unsupported
  }
}

bool collect_positivity(const FormulaPtr& f, PositivityQuery* q) {
  if (f->kind == Formula::Kind::land)
    return collect_positivity(f->a, q) && collect_positivity(f->b, q);
  if (is_propositional(*f)) {
    q->now.push_back(f);
    return true;
  }
  if (f->kind == Formula::Kind::alw && f->tbound == Formula::TimeBound::none &&
      is_propositional(*f->a)) {
    q->always.push_back(f->a);
    return true;
  }
  if (f->kind == Formula::Kind::evt && f->tbound == Formula::TimeBound::none &&
      is_propositional(*f->a)) {
    q->eventually.push_back(f->a);
    return true;
  }
  return false;
}

// Is P(/\ G a_i /\ F b_j /\ c_l) > 0 from the initial state?
bool positivity(const Dtmc& d, const PositivityQuery& q) {
  const int n = d.size();
  for (const auto& c : q.now)
    if (!holds_in(d, *c, d.states[d.initial])) return false;

  SatSet inside(n, 1);
  for (const auto& a : q.always) {
    SatSet s = sat_of(d, *a);
    for (int i = 0; i < n; ++i) inside[i] = inside[i] && s[i];
  }
  if (!inside[d.initial]) return false;

  const int m = static_cast<int>(q.eventually.size());
  if (m > 10)
    throw CheckError("too many F-conjuncts in qualitative check (max 10)");
  std::vector<SatSet> want;
  for (const auto& b : q.eventually) want.push_back(sat_of(d, *b));

  // Masks of needed witnesses still missing per qualifying BSCC.
  BsccPartition part = bscc_decompose(d);
  std::vector<unsigned> bscc_need(part.bsccs.size(), 0);
  std::vector<char> bscc_ok(part.bsccs.size(), 0);
  for (std::size_t b = 0; b < part.bsccs.size(); ++b) {
    bool ok = true;
    for (int s : part.bsccs[b])
      if (!inside[s]) {
        ok = false;
        break;
      }
    bscc_ok[b] = ok;
    if (!ok) continue;
    unsigned need = 0;
    for (int j = 0; j < m; ++j) {
      bool witness = false;
      for (int s : part.bsccs[b])
        if (want[j][s]) {
          witness = true;
          break;
        }
      if (!witness) need |= 1u << j;
    }
    bscc_need[b] = need;
  }

  auto state_mask = [&](int s) {
    unsigned mask = 0;
    for (int j = 0; j < m; ++j)
      if (want[j][s]) mask |= 1u << j;
    return mask;
  };

  const unsigned mask_count = 1u << m;
  std::vector<char> seen(static_cast<std::size_t>(n) * mask_count, 0);
  std::deque<std::pair<int, unsigned>> queue;
  unsigned m0 = state_mask(d.initial);
  seen[static_cast<std::size_t>(d.initial) * mask_count + m0] = 1;
  queue.emplace_back(d.initial, m0);
  while (!queue.empty()) {
    auto [s, mask] = queue.front();
    queue.pop_front();
    int b = part.bscc_of[s];
    if (b >= 0 && bscc_ok[b] && (bscc_need[b] & ~mask) == 0) return true;
    for (std::size_t k = d.row_start[s]; k < d.row_start[s + 1]; ++k) {
      int v = d.col[k];
      if (!inside[v]) continue;
      unsigned nm = mask | state_mask(v);
      if (!seen[static_cast<std::size_t>(v) * mask_count + nm]) {
        seen[static_cast<std::size_t>(v) * mask_count + nm] = 1;
        queue.emplace_back(v, nm);
      }
    }
  }
  return false;
}

struct Quant {
  Rat value;
  std::string method;
  bool approximate = false;
};

std::optional<Quant> quantitative_path_value(const Dtmc& d, const Formula& f);

// F G body and G F body long-run values.
std::optional<Quant> long_run_value(const Dtmc& d, const Formula& f) {
  LongRunPattern pat;
  if (f.kind == Formula::Kind::evt && f.tbound == Formula::TimeBound::none &&
      f.a->kind == Formula::Kind::alw &&
      f.a->tbound == Formula::TimeBound::none) {
    if (!decompose_fg_body(*f.a->a, &pat)) return std::nullopt;
  } else if (f.kind == Formula::Kind::alw &&
             f.tbound == Formula::TimeBound::none &&
             f.a->kind == Formula::Kind::evt &&
             f.a->tbound == Formula::TimeBound::none &&
             is_propositional(*f.a->a)) {
    // G F phi: almost-sure absorption makes this the probability of reaching
    // a BSCC containing a phi-state.
    pat.infinitely.push_back(f.a->a.get());
  } else {
    return std::nullopt;
  }
  SatSet target = good_bscc_union(d, pat);
  ReachOut r = reach_probability(d, target);
  return Quant{r.value[d.initial], "bscc", r.approximate};
}

std::optional<Quant> quantitative_path_value(const Dtmc& d, const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::next: {
      // A chain of k nexts asks for the state distribution at time k.
      int depth = 0;
      const Formula* inner = &f;
      while (inner->kind == Formula::Kind::next) {
        ++depth;
        inner = inner->a.get();
      }
      if (!is_propositional(*inner)) return std::nullopt;
      SatSet target = sat_of(d, *inner);
      TransientStepper stepper(d);
      stepper.advance_to(depth);
      return Quant{stepper.mass(target), "bounded-iteration", false};
    }
    case Formula::Kind::evt: {
      if (auto lr = long_run_value(d, f)) return lr;
      if (!is_propositional(*f.a)) return std::nullopt;
      SatSet target = sat_of(d, *f.a);
      if (f.tbound == Formula::TimeBound::upto)
        return Quant{bounded_value(d, BoundedKind::evt, target, nullptr,
                                   f.tval),
                     "bounded-iteration", false};
      if (f.tbound != Formula::TimeBound::none) return std::nullopt;
      ReachOut r = reach_probability(d, target);
      return Quant{r.value[d.initial], r.method, r.approximate};
    }
    case Formula::Kind::alw: {
      if (auto lr = long_run_value(d, f)) return lr;
      if (!is_propositional(*f.a)) return std::nullopt;
      SatSet good = sat_of(d, *f.a);
      if (f.tbound == Formula::TimeBound::upto)
        return Quant{bounded_value(d, BoundedKind::alw, good, nullptr, f.tval),
                     "bounded-iteration", false};
      if (f.tbound == Formula::TimeBound::after) {
        // Mix the step-(T+1) distribution with per-state G probabilities.
        ReachOut bad = reach_probability(d, complement(good));
        std::vector<Rat> g(d.states.size());
        for (int s = 0; s < d.size(); ++s) g[s] = Rat(1) - bad.value[s];
        TransientStepper stepper(d);
        stepper.advance_to(f.tval + 1);
        Rat v = stepper.weighted_sum(g);
        return Quant{v, bad.method, bad.approximate};
      }
      ReachOut bad = reach_probability(d, complement(good));
      return Quant{Rat(1) - bad.value[d.initial], bad.method, bad.approximate};
    }
    case Formula::Kind::until: {
      if (!is_propositional(*f.a) || !is_propositional(*f.b))
        return std::nullopt;
      SatSet hold = sat_of(d, *f.a);
      SatSet target = sat_of(d, *f.b);
      if (f.tbound == Formula::TimeBound::upto)
        return Quant{bounded_value(d, BoundedKind::until, target, &hold,
                                   f.tval),
                     "bounded-iteration", false};
      if (f.tbound != Formula::TimeBound::none) return std::nullopt;
      ReachOut r = until_probability(d, target, &hold);
      return Quant{r.value[d.initial], r.method, r.approximate};
    }
    default:
      return std::nullopt;
  }
}

CheckResult check_prob(const Dtmc& d, const Formula& f) {
  const Formula& body = *f.a;
  CheckResult res;

  // Conditional one-step form:  sf -> (X sf').  The unique answer over all
  // reachable antecedent states; ambiguity is an error, not an average.
  if (body.kind == Formula::Kind::implies && is_propositional(*body.a) &&
      body.b->kind == Formula::Kind::next && is_propositional(*body.b->a)) {
    SatSet ante = sat_of(d, *body.a);
    SatSet target = sat_of(d, *body.b->a);
    std::optional<Rat> value;
    for (int s = 0; s < d.size(); ++s) {
      if (!ante[s]) continue;
      Rat acc(0);
      for (std::size_t k = d.row_start[s]; k < d.row_start[s + 1]; ++k)
        if (target[d.col[k]]) acc += d.val[k];
      if (!value) {
        value = acc;
      } else if (*value != acc) {
        throw CheckError(
            "conditional one-step query is ambiguous: antecedent states "
            "disagree on the next-step probability");
      }
    }
    if (!value)
      throw CheckError("antecedent holds in no reachable state");
    res.method = "bounded-iteration";
    if (f.pbound == Formula::ProbBound::query) {
      res.kind = CheckResult::Kind::probability;
      res.value = *value;
    } else {
      res.kind = CheckResult::Kind::verdict;
      res.verdict = f.pbound == Formula::ProbBound::ge ? *value >= f.pval
                                                       : *value <= f.pval;
      res.value = *value;
    }
    return res;
  }

  // P5 shape, qualitative: from every state occupied at step T+1 the forward
  // closure must satisfy phi.
  if (f.pbound == Formula::ProbBound::ge && f.pval == 1 &&
      body.kind == Formula::Kind::alw &&
      body.tbound == Formula::TimeBound::after && is_propositional(*body.a)) {
    SatSet good = sat_of(d, *body.a);
    SatSet layer = support_at(d, body.tval + 1);
    SatSet closure = forward_closure(d, layer);
    bool ok = true;
    for (int s = 0; s < d.size() && ok; ++s)
      if (closure[s] && !good[s]) ok = false;
    res.kind = CheckResult::Kind::verdict;
    res.verdict = ok;
    res.method = "graph-qualitative";
    return res;
  }

  // Quantitative temporal bodies.
  if (auto q = quantitative_path_value(d, body)) {
    res.value = q->value;
    res.approximate = q->approximate;
    res.method = q->method;
    if (f.pbound == Formula::ProbBound::query) {
      res.kind = CheckResult::Kind::probability;
    } else {
      res.kind = CheckResult::Kind::verdict;
      res.verdict = f.pbound == Formula::ProbBound::ge ? q->value >= f.pval
                                                       : q->value <= f.pval;
    }
    return res;
  }

  // G over a step formula (atoms plus X of propositional), e.g.
  // G ((y1=1) -> (X (s1=1))): every reachable edge must satisfy it.
  if (body.kind == Formula::Kind::alw &&
      body.tbound == Formula::TimeBound::none) {
    bool has_next = false;
    if (is_step_formula(*body.a, &has_next) && has_next) {
      if (!(f.pbound == Formula::ProbBound::ge && f.pval == 1))
        throw CheckError(
            "G over a step formula with X is supported only under P>=1");
      res.kind = CheckResult::Kind::verdict;
      res.verdict = all_edges_satisfy(d, *body.a);
      res.method = "graph-qualitative";
      return res;
    }
  }

  // General qualitative fallback: P>=1 [ phi ]  iff  not positive(!phi);
  // P<=0 [ phi ]  iff  not positive(phi).
  bool want_ge1 = f.pbound == Formula::ProbBound::ge && f.pval == 1;
  bool want_le0 = f.pbound == Formula::ProbBound::le && f.pval == 0;
  if (want_ge1 || want_le0) {
    FormulaPtr norm = nnf(body, want_ge1);
    if (norm) {
      PositivityQuery q;
      if (collect_positivity(norm, &q)) {
        res.kind = CheckResult::Kind::verdict;
        res.verdict = !positivity(d, q);
        res.method = "graph-qualitative";
        return res;
      }
    }
    throw CheckError(
        "fragment unsupported: qualitative check needs a conjunction of G/F "
        "over propositional subformulas after negation");
  }
  throw CheckError("fragment unsupported for this path formula");
}

}  // namespace

Rat expected_cumulative_reward(const Dtmc& d, const std::string& reward_name,
                               long long t) {
  auto it = d.rewards.find(reward_name);
  if (it == d.rewards.end())
    throw CheckError("unknown reward '" + reward_name + "'");
  TransientStepper stepper(d);
  Rat total = stepper.weighted_sum(it->second);
  for (long long k = 1; k <= t; ++k) {
    stepper.step();
    total += stepper.weighted_sum(it->second);
  }
  return total;
}

CheckResult check(const Dtmc& d, const Formula& f) {
  auto t0 = std::chrono::steady_clock::now();
  CheckResult res;
  switch (f.kind) {
    case Formula::Kind::prob:
      res = check_prob(d, f);
      break;
    case Formula::Kind::reward:
      res.kind = CheckResult::Kind::reward;
      res.value = expected_cumulative_reward(d, f.rname, f.rupto);
      res.method = "bounded-iteration";
      break;
    case Formula::Kind::lnot: {
      CheckResult a = check(d, *f.a);
      if (a.kind != CheckResult::Kind::verdict)
        throw CheckError("! applies to boolean verdicts only");
      res = a;
      res.verdict = !a.verdict;
      break;
    }
    case Formula::Kind::land:
    case Formula::Kind::lor:
    case Formula::Kind::implies: {
      CheckResult a = check(d, *f.a);
      CheckResult b = check(d, *f.b);
      if (a.kind != CheckResult::Kind::verdict ||
          b.kind != CheckResult::Kind::verdict)
        throw CheckError(
            "boolean connectives combine boolean verdicts only");
      res.kind = CheckResult::Kind::verdict;
      if (f.kind == Formula::Kind::land)
        res.verdict = a.verdict && b.verdict;
      else if (f.kind == Formula::Kind::lor)
        res.verdict = a.verdict || b.verdict;
      else
        res.verdict = !a.verdict || b.verdict;
      res.approximate = a.approximate || b.approximate;
      res.method = a.elapsed_ms >= b.elapsed_ms ? a.method : b.method;
      break;
    }
    default:
      throw CheckError(
          "a property must be a P/R query or a boolean combination of them");
  }
  auto t1 = std::chrono::steady_clock::now();
  res.elapsed_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  return res;
}

}  // namespace snn
