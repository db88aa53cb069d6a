#include "snn/engine.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace snn {

namespace {

constexpr long long kMaxDen = 1000000000;        // 1e9
constexpr long long kMaxBound = 1000000000000000;  // 1e15

long long rat_ll(const Int& v, const char* what) {
  if (v > kMaxBound * 4 || v < -kMaxBound * 4)
    throw std::invalid_argument(std::string(what) +
                                " too large for the sampling engine");
  return v.convert_to<long long>();
}

// prob = num/den with den small enough that u * den fits 128 bits.
void split_prob(const Rat& q, std::uint64_t* num, std::uint64_t* den,
                const char* what) {
  Int n = boost::multiprecision::numerator(q);
  Int d = boost::multiprecision::denominator(q);
  if (n < 0 || n > d)
    throw std::invalid_argument(std::string(what) + " outside [0, 1]");
  if (d > Int(kMaxDen) * Int(kMaxDen))
    throw std::invalid_argument(std::string(what) +
                                " denominator too large for the sampling "
                                "engine (reduce to 1e9 or less)");
  *num = n.convert_to<std::uint64_t>();
  *den = d.convert_to<std::uint64_t>();
}

long long input_value_at(const InputSpec& in, long long t) {
  if (in.pattern.empty()) return in.value;
  return in.pattern[static_cast<std::size_t>(
      t % static_cast<long long>(in.pattern.size()))];
}

}  // namespace

Simulator::Simulator(const CompiledNetwork& net) : net_(&net) {
  const int n = net.size();
  sims_.resize(n);
  const_input_.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    const NeuronParams& prm = net.neurons[i].params;
    NeuronSim& ns = sims_[i];
    Int rn = boost::multiprecision::numerator(prm.r);
    Int rd = boost::multiprecision::denominator(prm.r);
    if (rd > kMaxDen)
      throw std::invalid_argument(
          "leak denominator too large for the sampling engine");
    ns.leak_num = rn.convert_to<long long>();
    ns.leak_den = rd.convert_to<long long>();
    if (prm.p_min < -kMaxBound || prm.p_max > kMaxBound)
      throw std::invalid_argument(
          "potential bounds too large for the sampling engine");
    ns.tau = prm.tau;
    ns.p_rest = prm.p_rest;
    ns.p_min = prm.p_min;
    ns.p_max = prm.p_max;
    ns.rrp = prm.rrp;
    ns.bounds = prm.table.boundaries;

    const int slots = 2 * prm.table.k() + 2;
    ns.num0.assign(slots, 0);
    ns.den0.assign(slots, 1);
    ns.num2.assign(slots, 0);
    ns.den2.assign(slots, 1);
    ns.num0[slots - 1] = 1;
    ns.num2[slots - 1] = 1;
    for (int j = 1; j <= 2 * prm.table.k(); ++j) {
      split_prob(prm.table.probs[j - 1], &ns.num0[j], &ns.den0[j],
                 "spike probability");
      Rat scaled = prm.alpha * prm.table.probs[j - 1];
      split_prob(scaled, &ns.num2[j], &ns.den2[j], "scaled spike probability");
    }
    // Saturated end under alpha: 1 scales to alpha itself.
    split_prob(prm.alpha, &ns.num2[slots - 1], &ns.den2[slots - 1],
               "refractory shrink factor");

    if (prm.arp > 0) {
      ns.spike_next = NeuronState{1, 1, prm.p_rest, prm.arp, 0};
    } else if (prm.rrp > 0) {
      ns.spike_next = NeuronState{2, 1, prm.p_rest, 0, prm.rrp};
    } else {
      ns.spike_next = NeuronState{0, 1, prm.p_rest, 0, 0};
    }

    if (!net.time_varying) {
      Rat c = net.const_input[i];
      if (boost::multiprecision::denominator(c) != 1)
        throw std::logic_error("weighted input should be integral");
      const_input_[i] =
          rat_ll(boost::multiprecision::numerator(c), "constant input");
    }
  }
}

int Simulator::slot_of(const NeuronSim& ns, long long delta) const {
  const int k = static_cast<int>(ns.bounds.size());
  if (delta >= ns.bounds[k - 1]) return 2 * k + 1;
  if (delta < -ns.bounds[k - 1]) return 0;
  if (delta >= 0) {
    for (int j = 1; j <= k; ++j)
      if (delta < ns.bounds[j - 1]) return k + j;
  } else {
    for (int j = 1; j <= k; ++j)
      if (-ns.bounds[j - 1] <= delta) return k - j + 1;
  }
  return 0;  // unreachable
}

void Simulator::step(const NetworkState& prev, NetworkState& next, long long t,
                     SplitMix64& rng) const {
  const int n = net_->size();
  next.resize(n);
  for (int i = 0; i < n; ++i) {
    const NeuronState& ps = prev[i];
    const NeuronSim& ns = sims_[i];
    if (ps.s == 1) {
      // Deterministic countdown; no draw, keeping streams aligned with the
      // per-decision layout.
      if (ps.aref > 0)
        next[i] = NeuronState{1, 0, 0, ps.aref - 1, ps.rref};
      else
        next[i] = NeuronState{2, 0, 0, 0, ns.rrp};
      continue;
    }

    __int128 w = net_->time_varying ? 0 : const_input_[i];
    if (net_->time_varying)
      for (const auto& [in, wt] : net_->input_edges[i])
        w += static_cast<__int128>(wt) * input_value_at(in, t);
    for (const auto& [src, wt] : net_->synapses[i])
      if (prev[src].y) w += wt;

    __int128 pp;
    if (ps.y) {
      pp = w;
    } else {
      __int128 num = static_cast<__int128>(ns.leak_num) * ps.p;
      __int128 q = num / ns.leak_den;
      if (num % ns.leak_den != 0 && num < 0) --q;
      pp = w + q;
    }
    long long pc = pp > ns.p_max   ? ns.p_max
                   : pp < ns.p_min ? ns.p_min
                                   : static_cast<long long>(pp);

    const int slot = slot_of(ns, pc - ns.tau);
    const std::uint64_t num = ps.s == 2 ? ns.num2[slot] : ns.num0[slot];
    const std::uint64_t den = ps.s == 2 ? ns.den2[slot] : ns.den0[slot];
    const std::uint64_t u = rng.next();
    const bool spike =
        static_cast<unsigned __int128>(u) * den <
        (static_cast<unsigned __int128>(num) << 64);
    if (spike) {
      next[i] = ns.spike_next;
    } else if (ps.s == 2 && ps.rref > 0) {
      next[i] = NeuronState{2, 0, pc, 0, ps.rref - 1};
    } else {
      next[i] = NeuronState{0, 0, pc, 0, 0};
    }
  }
}

Trace Simulator::run(long long steps, std::uint64_t seed) const {
  SplitMix64 rng(seed);
  Trace tr;
  tr.seed = seed;
  tr.states.reserve(steps + 1);
  tr.states.push_back(initial_state(*net_));
  NetworkState next;
  for (long long t = 0; t < steps; ++t) {
    step(tr.states.back(), next, t, rng);
    tr.states.push_back(next);
  }
  return tr;
}

Trace simulate(const CompiledNetwork& net, long long steps, std::uint64_t seed,
               const Rat& dt) {
  Simulator sim(net);
  Trace tr = sim.run(steps, seed);
  tr.dt = dt;
  return tr;
}

void export_trace_csv(const Trace& trace, const CompiledNetwork& net,
                      std::ostream& os) {
  os << 't';
  for (const auto& d : net.neurons) {
    os << ",n" << d.id << ".y"
       << ",n" << d.id << ".p"
       << ",n" << d.id << ".s"
       << ",n" << d.id << ".aref"
       << ",n" << d.id << ".rref";
  }
  os << '\n';
  for (std::size_t t = 0; t < trace.states.size(); ++t) {
    os << t;
    for (const auto& st : trace.states[t]) {
      os << ',' << int(st.y) << ',' << st.p << ',' << int(st.s) << ','
         << st.aref << ',' << st.rref;
    }
    os << '\n';
  }
}

void export_spike_svg(const Trace& trace, const CompiledNetwork& net,
                      std::ostream& os) {
  const int n = net.size();
  const long long steps = trace.steps();
  const int lane_h = 24, left = 56, top = 16, bottom = 28;
  const double px = steps > 0 ? std::max(2.0, std::min(12.0, 960.0 / steps))
                              : 12.0;
  const int width = left + static_cast<int>(px * std::max<long long>(steps, 1)) + 16;
  const int height = top + lane_h * n + bottom;

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
     << height << "\">\n";
  os << "  <rect width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";
  for (int i = 0; i < n; ++i) {
    const int y0 = top + lane_h * i;
    os << "  <text x=\"8\" y=\"" << (y0 + lane_h - 8)
       << "\" font-family=\"monospace\" font-size=\"12\">n"
       << net.neurons[i].id << "</text>\n";
    os << "  <line x1=\"" << left << "\" y1=\"" << (y0 + lane_h - 4)
       << "\" x2=\"" << (width - 8) << "\" y2=\"" << (y0 + lane_h - 4)
       << "\" stroke=\"#ccc\"/>\n";
    for (long long t = 0; t <= steps; ++t) {
      if (!trace.states[t][i].y) continue;
      const double x = left + px * t;
      os << "  <line x1=\"" << x << "\" y1=\"" << (y0 + 4) << "\" x2=\"" << x
         << "\" y2=\"" << (y0 + lane_h - 4)
         << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }
  }
  os << "  <text x=\"" << left << "\" y=\"" << (height - 8)
     << "\" font-family=\"monospace\" font-size=\"12\">t = 0 .. " << steps
     << "</text>\n";
  os << "</svg>\n";
}

long long hoeffding_runs(double epsilon, double delta) {
  if (epsilon <= 0 || delta <= 0 || delta >= 1)
    throw std::invalid_argument("need epsilon > 0 and delta in (0, 1)");
  return static_cast<long long>(
      std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon)));
}

Estimate estimate_bounded(const CompiledNetwork& net, const Formula& path,
                          const EstimateOptions& opts) {
  auto horizon = bounded_horizon(path);
  if (!horizon)
    throw CheckError(
        "unbounded property is not statistically checkable; use exact "
        "checker");
  ResolvedPtr rf = resolve_path_formula(path, net);
  Simulator sim(net);

  Estimate est;
  est.horizon = *horizon;
  est.runs = opts.runs > 0 ? opts.runs
                           : hoeffding_runs(opts.epsilon, opts.delta);

  std::vector<NetworkState> trace(est.horizon + 1);
  for (long long run = 0; run < est.runs; ++run) {
    SplitMix64 rng(opts.seed ^ static_cast<std::uint64_t>(run));
    trace[0] = initial_state(net);
    for (long long t = 0; t < est.horizon; ++t)
      sim.step(trace[t], trace[t + 1], t, rng);
    if (eval_resolved(*rf, trace, 0)) ++est.hits;
  }

  const double nn = static_cast<double>(est.runs);
  const double ph = est.hits / nn;
  est.point = ph;
  boost::math::normal_distribution<double> norm;
  const double z =
      boost::math::quantile(norm, 1.0 - (1.0 - opts.ci_confidence) / 2.0);
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (ph + z2 / (2.0 * nn)) / denom;
  const double half =
      (z / denom) * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn));
  est.ci_low = std::max(0.0, std::min(center - half, ph));
  est.ci_high = std::min(1.0, std::max(center + half, ph));
  return est;
}

}  // namespace snn
