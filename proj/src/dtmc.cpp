#include "snn/dtmc.hpp"

#include <deque>
#include <sstream>
#include <unordered_map>

namespace snn {

namespace {

void append_fixed(std::string& out, unsigned long long v, int bytes) {
  for (int b = bytes - 1; b >= 0; --b)
    out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

std::string encode(const NetworkState& st, const CompiledNetwork& net) {
  std::string key;
  key.reserve(st.size() * 18);
  for (std::size_t i = 0; i < st.size(); ++i) {
    const auto& s = st[i];
    key.push_back(static_cast<char>(s.s));
    key.push_back(static_cast<char>(s.y));
    append_fixed(key,
                 static_cast<unsigned long long>(
                     s.p - net.neurons[i].params.p_min),
                 8);
    append_fixed(key, static_cast<unsigned long long>(s.aref), 4);
    append_fixed(key, static_cast<unsigned long long>(s.rref), 4);
  }
  return key;
}

}  // namespace

Dtmc build_dtmc(const CompiledNetwork& net, std::size_t max_states) {
  if (net.time_varying)
    throw std::invalid_argument(
        "time-varying input patterns are not supported by exact analysis");
  Dtmc d;
  d.net = net;

  std::unordered_map<std::string, int> index;
  std::deque<int> frontier;
  d.states.push_back(initial_state(net));
  index.emplace(encode(d.states[0], net), 0);
  frontier.push_back(0);

  d.row_start.push_back(0);
  while (!frontier.empty()) {
    int cur = frontier.front();
    frontier.pop_front();
    // The states vector may reallocate while we expand, so copy first.
    NetworkState prev = d.states[cur];
    auto branches = network_branches(net, prev);
    Rat sum(0);
    for (auto& [prob, next] : branches) {
      sum += prob;
      std::string key = encode(next, net);
      auto [it, fresh] = index.emplace(std::move(key), d.size());
      if (fresh) {
        if (d.states.size() >= max_states) {
          throw OverflowError(max_states, frontier.size() + 1);
        }
        d.states.push_back(next);
        frontier.push_back(it->second);
      }
      d.col.push_back(it->second);
      d.val.push_back(std::move(prob));
    }
    if (sum != 1)
      throw std::logic_error("transition row does not sum to 1");
    d.row_start.push_back(d.col.size());
  }

  // row_start was appended per *processed* row in BFS order, which is exactly
  // state order; all states get processed, so sizes line up.
  d.pre.resize(d.states.size());
  for (int src = 0; src < d.size(); ++src)
    for (std::size_t k = d.row_start[src]; k < d.row_start[src + 1]; ++k) {
      auto& lst = d.pre[d.col[k]];
      if (lst.empty() || lst.back() != src) lst.push_back(src);
    }

  for (std::size_t i = 0; i < net.neurons.size(); ++i) {
    std::vector<Rat> rv(d.states.size(), Rat(0));
    for (int s = 0; s < d.size(); ++s)
      if (d.states[s][i].y) rv[s] = Rat(1);
    d.rewards.emplace("spike" + std::to_string(net.neurons[i].id) + "_count",
                      std::move(rv));
  }
  return d;
}

TransientStepper::TransientStepper(const Dtmc& d) : d_(&d), den_(1) {
  Int l(1);
  for (const auto& q : d.val) {
    Int den = boost::multiprecision::denominator(q);
    l = boost::multiprecision::lcm(l, den);
  }
  step_scale_ = l;
  scaled_val_.reserve(d.val.size());
  for (const auto& q : d.val)
    scaled_val_.push_back(boost::multiprecision::numerator(q) *
                          (l / boost::multiprecision::denominator(q)));
  num_.assign(d.states.size(), Int(0));
  num_[d.initial] = 1;
}

void TransientStepper::step() {
  std::vector<Int> next(num_.size(), Int(0));
  for (int src = 0; src < d_->size(); ++src) {
    if (num_[src] == 0) continue;
    for (std::size_t k = d_->row_start[src]; k < d_->row_start[src + 1]; ++k)
      next[d_->col[k]] += num_[src] * scaled_val_[k];
  }
  num_ = std::move(next);
  den_ *= step_scale_;
  ++t_;
}

void TransientStepper::advance_to(long long t) {
  while (t_ < t) step();
}

bool TransientStepper::sums_to_one() const {
  Int sum(0);
  for (const auto& n : num_) sum += n;
  return sum == den_;
}

std::vector<Rat> TransientStepper::distribution() const {
  std::vector<Rat> out;
  out.reserve(num_.size());
  for (const auto& n : num_) out.emplace_back(n, den_);
  return out;
}

Rat TransientStepper::mass(const std::vector<char>& members) const {
  Int sum(0);
  for (std::size_t i = 0; i < num_.size(); ++i)
    if (members[i]) sum += num_[i];
  return Rat(sum, den_);
}

Rat TransientStepper::weighted_sum(const std::vector<Rat>& weight) const {
  Rat out(0);
  for (std::size_t i = 0; i < num_.size(); ++i)
    if (num_[i] != 0 && weight[i] != 0) out += Rat(num_[i], den_) * weight[i];
  return out;
}

std::vector<Rat> transient_distribution(const Dtmc& d, long long t) {
  TransientStepper st(d);
  st.advance_to(t);
  return st.distribution();
}

BsccPartition bscc_decompose(const Dtmc& d) {
  const int n = d.size();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> comps;
  int counter = 0;

  // Iterative Tarjan; frame = (state, next edge offset).
  std::vector<std::pair<int, std::size_t>> work;
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    work.emplace_back(root, d.row_start[root]);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!work.empty()) {
      auto& [v, k] = work.back();
      if (k < d.row_start[v + 1]) {
        int w = d.col[k++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          work.emplace_back(w, d.row_start[w]);
        } else if (on_stack[w]) {
          if (index[w] < low[v]) low[v] = index[w];
        }
      } else {
        int v_done = v;
        if (low[v_done] == index[v_done]) {
          std::vector<int> c;
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = static_cast<int>(comps.size());
            c.push_back(w);
            if (w == v_done) break;
          }
          comps.push_back(std::move(c));
        }
        work.pop_back();
        if (!work.empty()) {
          int parent = work.back().first;
          if (low[v_done] < low[parent]) low[parent] = low[v_done];
        }
      }
    }
  }

  BsccPartition part;
  part.bscc_of.assign(n, -1);
  std::vector<char> closed(comps.size(), 1);
  for (int v = 0; v < n; ++v)
    for (std::size_t k = d.row_start[v]; k < d.row_start[v + 1]; ++k)
      if (comp[d.col[k]] != comp[v]) closed[comp[v]] = 0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (!closed[c]) continue;
    std::vector<int> members = comps[c];
    std::sort(members.begin(), members.end());
    for (int v : members)
      part.bscc_of[v] = static_cast<int>(part.bsccs.size());
    part.bsccs.push_back(std::move(members));
  }
  for (int v = 0; v < n; ++v)
    if (part.bscc_of[v] == -1) part.transient.push_back(v);
  return part;
}

std::string dump_explicit(const Dtmc& d) {
  std::ostringstream os;
  os << "states " << d.size() << "\n";
  os << "initial " << d.initial << "\n";
  for (int s = 0; s < d.size(); ++s) {
    os << "state " << s;
    for (std::size_t i = 0; i < d.net.neurons.size(); ++i) {
      long long id = d.net.neurons[i].id;
      const auto& ns = d.states[s][i];
      os << " s" << id << "=" << int(ns.s) << " y" << id << "=" << int(ns.y)
         << " p" << id << "=" << ns.p << " aref" << id << "=" << ns.aref
         << " rref" << id << "=" << ns.rref;
    }
    os << "\n";
  }
  os << "transitions " << d.col.size() << "\n";
  for (int src = 0; src < d.size(); ++src)
    for (std::size_t k = d.row_start[src]; k < d.row_start[src + 1]; ++k) {
      os << src << " " << d.col[k] << " ";
      if (auto dec = to_exact_decimal(d.val[k]))
        os << *dec;
      else
        os << boost::multiprecision::numerator(d.val[k]) << "/"
           << boost::multiprecision::denominator(d.val[k]);
      os << "\n";
    }
  for (const auto& [name, rv] : d.rewards) {
    os << "rewards " << name << "\n";
    for (int s = 0; s < d.size(); ++s)
      if (rv[s] != 0) os << s << " " << to_exact_decimal(rv[s]).value() << "\n";
  }
  return os.str();
}

}  // namespace snn
