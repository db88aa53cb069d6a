#include "snn/snnrf.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

namespace snn {

namespace {

constexpr long long kMaxAbsBound = 1000000000000000LL;  // 1e15
const Int kMaxProbDen = Int(1000000000);                // 9 decimal places

std::string at_mark(const YAML::Node& n) {
  std::ostringstream os;
  os << " (line " << n.Mark().line + 1 << ", column " << n.Mark().column + 1
     << ")";
  return os.str();
}

[[noreturn]] void fail(const std::string& path, const YAML::Node& n,
                       const std::string& msg) {
  throw SnnrfError(path, msg + at_mark(n));
}

void check_keys(const YAML::Node& map, const std::string& path,
                const std::set<std::string>& allowed, const ParseOptions& opts,
                std::vector<Finding>* lax_warnings) {
  if (!map.IsMap()) fail(path, map, "expected a mapping");
  for (const auto& kv : map) {
    std::string key = kv.first.Scalar();
    if (allowed.count(key)) continue;
    if (opts.strict) fail(path + "." + key, kv.first, "unknown key");
    if (lax_warnings)
      lax_warnings->push_back({path + "." + key, "unknown key (ignored)"});
  }
}

long long as_int(const YAML::Node& n, const std::string& path) {
  if (!n.IsScalar()) fail(path, n, "expected an integer");
  auto q = parse_decimal(n.Scalar());
  if (!q || boost::multiprecision::denominator(*q) != 1)
    fail(path, n, "expected an integer, got '" + n.Scalar() + "'");
  Int num = boost::multiprecision::numerator(*q);
  if (num > std::numeric_limits<long long>::max() ||
      num < std::numeric_limits<long long>::min())
    fail(path, n, "integer out of range");
  return num.convert_to<long long>();
}

Rat as_rat(const YAML::Node& n, const std::string& path) {
  if (!n.IsScalar()) fail(path, n, "expected a decimal number");
  auto q = parse_decimal(n.Scalar());
  if (!q) fail(path, n, "expected a decimal number, got '" + n.Scalar() + "'");
  return *q;
}

bool as_bool(const YAML::Node& n, const std::string& path) {
  if (n.IsScalar()) {
    const std::string& s = n.Scalar();
    if (s == "true") return true;
    if (s == "false") return false;
  }
  fail(path, n, "expected true or false");
}

std::string as_str(const YAML::Node& n, const std::string& path) {
  if (!n.IsScalar()) fail(path, n, "expected a string");
  return n.Scalar();
}

SourceRef parse_endpoint(const YAML::Node& n, const std::string& path,
                         bool allow_input, const ParseOptions& opts,
                         std::vector<Finding>* lax) {
  check_keys(n, path, {"type", "id"}, opts, lax);
  if (!n["type"]) fail(path, n, "missing key 'type'");
  if (!n["id"]) fail(path, n, "missing key 'id'");
  std::string type = as_str(n["type"], path + ".type");
  SourceRef ref;
  if (type == "input" && allow_input) {
    ref.kind = SourceRef::Kind::input;
  } else if (type == "neuron") {
    ref.kind = SourceRef::Kind::neuron;
  } else {
    fail(path + ".type", n["type"],
         allow_input ? "expected 'input' or 'neuron'" : "expected 'neuron'");
  }
  ref.id = as_int(n["id"], path + ".id");
  return ref;
}

NeuronDecl parse_neuron(const YAML::Node& n, const std::string& path,
                        const ParseOptions& opts, std::vector<Finding>* lax) {
  check_keys(n, path,
             {"id", "threshold", "leak", "alpha", "arp", "rrp", "p_rest",
              "p_min", "p_max", "prob_table", "allow_non_monotone"},
             opts, lax);
  if (!n["id"]) fail(path, n, "missing key 'id'");
  NeuronDecl d;
  d.id = as_int(n["id"], path + ".id");
  NeuronParams& p = d.params;
  if (n["threshold"]) p.tau = as_int(n["threshold"], path + ".threshold");
  if (n["leak"]) p.r = as_rat(n["leak"], path + ".leak");
  if (n["alpha"]) p.alpha = as_rat(n["alpha"], path + ".alpha");
  if (n["arp"])
    p.arp = static_cast<int>(as_int(n["arp"], path + ".arp"));
  if (n["rrp"])
    p.rrp = static_cast<int>(as_int(n["rrp"], path + ".rrp"));
  if (n["p_rest"]) p.p_rest = as_int(n["p_rest"], path + ".p_rest");
  if (n["p_min"]) p.p_min = as_int(n["p_min"], path + ".p_min");
  if (n["p_max"]) p.p_max = as_int(n["p_max"], path + ".p_max");
  if (n["allow_non_monotone"])
    p.allow_non_monotone =
        as_bool(n["allow_non_monotone"], path + ".allow_non_monotone");
  if (n["prob_table"]) {
    const YAML::Node& t = n["prob_table"];
    std::string tpath = path + ".prob_table";
    check_keys(t, tpath, {"boundaries", "probs"}, opts, lax);
    if (!t["boundaries"]) fail(tpath, t, "missing key 'boundaries'");
    if (!t["probs"]) fail(tpath, t, "missing key 'probs'");
    SpikeProbabilityTable tbl;
    if (!t["boundaries"].IsSequence())
      fail(tpath + ".boundaries", t["boundaries"], "expected a list");
    if (!t["probs"].IsSequence())
      fail(tpath + ".probs", t["probs"], "expected a list");
    int i = 0;
    for (const auto& b : t["boundaries"])
      tbl.boundaries.push_back(
          as_int(b, tpath + ".boundaries[" + std::to_string(i++) + "]"));
    i = 0;
    for (const auto& q : t["probs"])
      tbl.probs.push_back(
          as_rat(q, tpath + ".probs[" + std::to_string(i++) + "]"));
    p.table = std::move(tbl);
  } else {
    p.table = SpikeProbabilityTable::defaults_for(p.tau);
  }
  return d;
}

std::string dec(const Rat& q) {
  auto s = to_exact_decimal(q);
  if (!s)
    throw std::logic_error(
        "serialize: rational has no finite decimal expansion");
  return *s;
}

bool plain_scalar_ok(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-' || c == '.';
  });
}

std::string quoted(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    out.push_back(c);
    if (c == '\'') out.push_back('\'');
  }
  out.push_back('\'');
  return out;
}

}  // namespace

NetworkSpec parse_snnrf(const std::string& text, const ParseOptions& opts,
                        std::vector<Finding>* lax_warnings) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw SnnrfError("", std::string("YAML syntax error: ") + e.what());
  }
  try {
    if (!root.IsMap()) throw SnnrfError("", "document is not a mapping");
    check_keys(root, "", {"network"}, opts, lax_warnings);
    const YAML::Node& net = root["network"];
    if (!net) throw SnnrfError("network", "missing top-level 'network' key");
    check_keys(net, "network",
               {"name", "simulate", "inputs", "n_neurons", "edges",
                "properties"},
               opts, lax_warnings);

    NetworkSpec spec;
    if (!net["name"]) fail("network.name", net, "missing key 'name'");
    spec.name = as_str(net["name"], "network.name");

    if (net["simulate"]) {
      const YAML::Node& sim = net["simulate"];
      check_keys(sim, "network.simulate", {"steps", "dt"}, opts, lax_warnings);
      if (sim["steps"]) spec.steps = as_int(sim["steps"], "network.simulate.steps");
      if (sim["dt"]) spec.dt = as_rat(sim["dt"], "network.simulate.dt");
    }

    if (net["inputs"]) {
      if (!net["inputs"].IsSequence())
        fail("network.inputs", net["inputs"], "expected a list");
      int i = 0;
      for (const auto& item : net["inputs"]) {
        std::string path = "network.inputs[" + std::to_string(i++) + "]";
        check_keys(item, path, {"id", "value", "pattern"}, opts, lax_warnings);
        if (!item["id"]) fail(path, item, "missing key 'id'");
        if (!item["value"]) fail(path, item, "missing key 'value'");
        InputSpec in;
        in.id = as_int(item["id"], path + ".id");
        in.value = as_int(item["value"], path + ".value");
        if (item["pattern"]) {
          if (!item["pattern"].IsSequence())
            fail(path + ".pattern", item["pattern"], "expected a list");
          int j = 0;
          for (const auto& v : item["pattern"])
            in.pattern.push_back(
                as_int(v, path + ".pattern[" + std::to_string(j++) + "]"));
        }
        spec.inputs.push_back(std::move(in));
      }
    }

    if (!net["n_neurons"])
      fail("network.n_neurons", net, "missing key 'n_neurons'");
    if (!net["n_neurons"].IsSequence())
      fail("network.n_neurons", net["n_neurons"], "expected a list");
    int i = 0;
    for (const auto& item : net["n_neurons"])
      spec.neurons.push_back(parse_neuron(
          item, "network.n_neurons[" + std::to_string(i++) + "]", opts,
          lax_warnings));

    if (net["edges"]) {
      if (!net["edges"].IsSequence())
        fail("network.edges", net["edges"], "expected a list");
      i = 0;
      for (const auto& item : net["edges"]) {
        std::string path = "network.edges[" + std::to_string(i++) + "]";
        check_keys(item, path, {"from", "to", "weight"}, opts, lax_warnings);
        if (!item["from"]) fail(path, item, "missing key 'from'");
        if (!item["to"]) fail(path, item, "missing key 'to'");
        if (!item["weight"]) fail(path, item, "missing key 'weight'");
        EdgeSpec e;
        e.from = parse_endpoint(item["from"], path + ".from", true, opts,
                                lax_warnings);
        SourceRef to = parse_endpoint(item["to"], path + ".to", false, opts,
                                      lax_warnings);
        e.to = to.id;
        e.weight = as_int(item["weight"], path + ".weight");
        spec.edges.push_back(std::move(e));
      }
    }

    if (net["properties"]) {
      if (!net["properties"].IsSequence())
        fail("network.properties", net["properties"], "expected a list");
      i = 0;
      for (const auto& item : net["properties"])
        spec.properties.push_back(
            as_str(item, "network.properties[" + std::to_string(i++) + "]"));
    }
    return spec;
  } catch (const SnnrfError&) {
    throw;
  } catch (const YAML::Exception& e) {
    throw SnnrfError("", std::string("YAML error: ") + e.what());
  }
}

ValidationReport validate(const NetworkSpec& spec) {
  ValidationReport rep;
  auto err = [&](std::string path, std::string msg) {
    rep.errors.push_back({std::move(path), std::move(msg)});
  };
  auto warn = [&](std::string path, std::string msg) {
    rep.warnings.push_back({std::move(path), std::move(msg)});
  };

  if (spec.name.empty()) err("network.name", "empty network name");
  if (spec.steps < 0) err("network.simulate.steps", "negative step count");
  if (spec.dt <= 0) err("network.simulate.dt", "dt must be positive");
  if (kMaxProbDen % boost::multiprecision::denominator(spec.dt) != 0)
    err("network.simulate.dt", "more than 9 decimal places");

  std::set<long long> input_ids;
  for (std::size_t i = 0; i < spec.inputs.size(); ++i) {
    const auto& in = spec.inputs[i];
    std::string path = "network.inputs[" + std::to_string(i) + "]";
    if (!input_ids.insert(in.id).second)
      err(path + ".id", "duplicate input id " + std::to_string(in.id));
    bool constant = std::all_of(in.pattern.begin(), in.pattern.end(),
                                [&](long long v) { return v == in.value; });
    if (!constant)
      warn(path + ".pattern",
           "time-varying input pattern: exact analysis unavailable");
  }

  if (spec.neurons.empty()) err("network.n_neurons", "no neurons declared");
  std::set<long long> neuron_ids;
  for (std::size_t i = 0; i < spec.neurons.size(); ++i) {
    const auto& d = spec.neurons[i];
    const auto& p = d.params;
    std::string path = "network.n_neurons[" + std::to_string(i) + "]";
    if (!neuron_ids.insert(d.id).second)
      err(path + ".id", "duplicate neuron id " + std::to_string(d.id));
    if (!(p.p_min <= p.p_rest && p.p_rest <= p.p_max))
      err(path, "p_rest outside [p_min, p_max]");
    if (!(p.p_min <= p.tau && p.tau <= p.p_max))
      err(path, "threshold outside [p_min, p_max]");
    if (p.arp > 0 && (p.p_min > 0 || p.p_max < 0))
      err(path, "absolute refractory pins the potential at 0, so "
                "[p_min, p_max] must contain 0");
    if (p.r < 0 || p.r > 1) err(path + ".leak", "leak factor outside [0,1]");
    if (p.alpha < 0 || p.alpha > 1)
      err(path + ".alpha", "alpha outside [0,1]");
    if (p.arp < 0) err(path + ".arp", "negative arp");
    if (p.rrp < 0) err(path + ".rrp", "negative rrp");
    if (kMaxProbDen % boost::multiprecision::denominator(p.r) != 0)
      err(path + ".leak", "more than 9 decimal places");
    if (kMaxProbDen % boost::multiprecision::denominator(p.alpha) != 0)
      err(path + ".alpha", "more than 9 decimal places");
    if (std::llabs(p.p_min) > kMaxAbsBound || std::llabs(p.p_max) > kMaxAbsBound)
      err(path, "potential bounds beyond +-1e15");
    else if (p.p_max - p.p_min > 1000)
      warn(path, "potential range wider than 1000: state space may explode");

    const auto& t = p.table;
    std::string tpath = path + ".prob_table";
    if (t.boundaries.empty()) err(tpath + ".boundaries", "empty boundary list");
    for (std::size_t j = 0; j < t.boundaries.size(); ++j) {
      if (t.boundaries[j] <= 0) {
        err(tpath + ".boundaries", "boundaries must be positive");
        break;
      }
      if (j > 0 && t.boundaries[j] <= t.boundaries[j - 1]) {
        err(tpath + ".boundaries", "boundaries must be strictly increasing");
        break;
      }
    }
    if (t.probs.size() != 2 * t.boundaries.size())
      err(tpath + ".probs",
          "expected " + std::to_string(2 * t.boundaries.size()) +
              " probabilities, got " + std::to_string(t.probs.size()));
    bool in_range = true, monotone = true, fine_grained = false;
    for (std::size_t j = 0; j < t.probs.size(); ++j) {
      if (t.probs[j] < 0 || t.probs[j] > 1) in_range = false;
      if (j > 0 && t.probs[j] < t.probs[j - 1]) monotone = false;
      if (kMaxProbDen % boost::multiprecision::denominator(t.probs[j]) != 0)
        fine_grained = true;
    }
    if (!in_range) err(tpath + ".probs", "probability outside [0,1]");
    if (fine_grained) err(tpath + ".probs", "more than 9 decimal places");
    if (!monotone && !p.allow_non_monotone)
      err(tpath + ".probs",
          "non-monotone probability table (set allow_non_monotone to keep it)");
  }

  std::set<std::string> seen_edges;
  std::set<long long> has_incoming;
  for (std::size_t i = 0; i < spec.edges.size(); ++i) {
    const auto& e = spec.edges[i];
    std::string path = "network.edges[" + std::to_string(i) + "]";
    if (e.from.kind == SourceRef::Kind::input) {
      if (!input_ids.count(e.from.id))
        err(path + ".from", "unknown endpoint: input " + std::to_string(e.from.id));
    } else if (!neuron_ids.count(e.from.id)) {
      err(path + ".from", "unknown endpoint: neuron " + std::to_string(e.from.id));
    }
    if (!neuron_ids.count(e.to))
      err(path + ".to", "unknown endpoint: neuron " + std::to_string(e.to));
    std::string from_key =
        (e.from.kind == SourceRef::Kind::input ? "i" : "n") +
        std::to_string(e.from.id) + ">" + std::to_string(e.to);
    if (!seen_edges.insert(from_key).second) err(path, "duplicate edge");
    has_incoming.insert(e.to);
  }
  for (std::size_t i = 0; i < spec.neurons.size(); ++i)
    if (!has_incoming.count(spec.neurons[i].id))
      warn("network.n_neurons[" + std::to_string(i) + "]",
           "neuron " + std::to_string(spec.neurons[i].id) +
               " has no incoming edges");
  return rep;
}

std::string serialize(const NetworkSpec& spec) {
  std::ostringstream os;
  os << "network:\n";
  os << "  name: "
     << (plain_scalar_ok(spec.name) ? spec.name : quoted(spec.name)) << "\n";
  os << "  simulate:\n";
  os << "    steps: " << spec.steps << "\n";
  os << "    dt: " << dec(spec.dt) << "\n";
  if (!spec.inputs.empty()) {
    os << "  inputs:\n";
    for (const auto& in : spec.inputs) {
      os << "    - id: " << in.id << "\n";
      os << "      value: " << in.value << "\n";
      if (!in.pattern.empty()) {
        os << "      pattern: [";
        for (std::size_t j = 0; j < in.pattern.size(); ++j)
          os << (j ? ", " : "") << in.pattern[j];
        os << "]\n";
      }
    }
  }
  os << "  n_neurons:\n";
  for (const auto& d : spec.neurons) {
    const auto& p = d.params;
    os << "    - id: " << d.id << "\n";
    os << "      threshold: " << p.tau << "\n";
    os << "      leak: " << dec(p.r) << "\n";
    os << "      alpha: " << dec(p.alpha) << "\n";
    os << "      arp: " << p.arp << "\n";
    os << "      rrp: " << p.rrp << "\n";
    os << "      p_rest: " << p.p_rest << "\n";
    os << "      p_min: " << p.p_min << "\n";
    os << "      p_max: " << p.p_max << "\n";
    os << "      prob_table:\n";
    os << "        boundaries: [";
    for (std::size_t j = 0; j < p.table.boundaries.size(); ++j)
      os << (j ? ", " : "") << p.table.boundaries[j];
    os << "]\n";
    os << "        probs: [";
    for (std::size_t j = 0; j < p.table.probs.size(); ++j)
      os << (j ? ", " : "") << dec(p.table.probs[j]);
    os << "]\n";
    os << "      allow_non_monotone: "
       << (p.allow_non_monotone ? "true" : "false") << "\n";
  }
  if (!spec.edges.empty()) {
    os << "  edges:\n";
    for (const auto& e : spec.edges) {
      os << "    - from: {type: "
         << (e.from.kind == SourceRef::Kind::input ? "input" : "neuron")
         << ", id: " << e.from.id << "}\n";
      os << "      to: {type: neuron, id: " << e.to << "}\n";
      os << "      weight: " << e.weight << "\n";
    }
  }
  if (!spec.properties.empty()) {
    os << "  properties:\n";
    for (const auto& s : spec.properties) os << "    - " << quoted(s) << "\n";
  }
  return os.str();
}

}  // namespace snn
