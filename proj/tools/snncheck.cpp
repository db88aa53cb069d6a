// snncheck: validate / simulate / check / export-prism / plot for SNN-RF
// network files. Exit codes: 0 success, 1 domain failure, 2 I/O or usage.

#include "snn/dtmc.hpp"
#include "snn/engine.hpp"
#include "snn/network.hpp"
#include "snn/pctl.hpp"
#include "snn/prismgen.hpp"
#include "snn/snnrf.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kUsage = 2;

struct Loaded {
  snn::NetworkSpec spec;
  snn::ValidationReport report;
};

// Reads and parses; positioned errors go to stderr. Returns nullopt with
// `code` set on failure.
std::optional<Loaded> load(const std::string& path, bool lax, int* code) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    *code = kUsage;
    return std::nullopt;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  Loaded out;
  try {
    snn::ParseOptions opts;
    opts.strict = !lax;
    std::vector<snn::Finding> lax_warnings;
    out.spec = snn::parse_snnrf(buf.str(), opts, &lax_warnings);
    out.report = snn::validate(out.spec);
    out.report.warnings.insert(out.report.warnings.end(), lax_warnings.begin(),
                               lax_warnings.end());
  } catch (const snn::SnnrfError& e) {
    std::cerr << "error: " << e.what() << "\n";
    *code = kDomain;
    return std::nullopt;
  }
  return out;
}

void print_report(const snn::ValidationReport& report) {
  for (const auto& f : report.errors)
    std::cerr << "error: " << f.path << ": " << f.message << "\n";
  for (const auto& f : report.warnings)
    std::cerr << "warning: " << f.path << ": " << f.message << "\n";
}

int require_valid(const Loaded& loaded) {
  print_report(loaded.report);
  return loaded.report.ok() ? kOk : kDomain;
}

std::size_t max_states_default() {
  if (const char* env = std::getenv("SNNCHECK_MAX_STATES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    std::cerr << "warning: ignoring malformed SNNCHECK_MAX_STATES='" << env
              << "'\n";
  }
  return snn::kDefaultMaxStates;
}

int write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return kOk;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return kUsage;
  }
  out << text;
  return out ? kOk : kUsage;
}

int cmd_validate(const std::string& path, bool lax) {
  int code = kOk;
  auto loaded = load(path, lax, &code);
  if (!loaded) return code;
  int rc = require_valid(*loaded);
  if (rc == kOk) std::cerr << "ok: " << path << "\n";
  return rc;
}

int cmd_simulate(const std::string& path, bool lax, long long steps_flag,
                 std::uint64_t seed, long long runs, const std::string& out,
                 const std::string& svg) {
  int code = kOk;
  auto loaded = load(path, lax, &code);
  if (!loaded) return code;
  if (int rc = require_valid(*loaded); rc != kOk) return rc;
  const long long steps = steps_flag >= 0 ? steps_flag : loaded->spec.steps;
  if (steps < 0 || runs < 1) {
    std::cerr << "error: need steps >= 0 and runs >= 1\n";
    return kUsage;
  }

  snn::CompiledNetwork net = snn::compile(loaded->spec);
  snn::Simulator sim(net);
  if (runs == 1) {
    snn::Trace trace = sim.run(steps, seed);
    trace.dt = loaded->spec.dt;
    std::ostringstream csv;
    snn::export_trace_csv(trace, net, csv);
    if (int rc = write_text(out, csv.str()); rc != kOk) return rc;
    if (!svg.empty()) {
      std::ostringstream raster;
      snn::export_spike_svg(trace, net, raster);
      if (int rc = write_text(svg, raster.str()); rc != kOk) return rc;
    }
    return kOk;
  }

  // Ensemble: per-step spike frequency per neuron.
  std::vector<std::vector<long long>> counts(
      steps + 1, std::vector<long long>(net.size(), 0));
  for (long long r = 0; r < runs; ++r) {
    snn::Trace trace = sim.run(steps, seed ^ static_cast<std::uint64_t>(r));
    for (long long t = 0; t <= steps; ++t)
      for (int i = 0; i < net.size(); ++i)
        counts[t][i] += trace.states[t][i].y;
  }
  std::ostringstream csv;
  csv << 't';
  for (const auto& d : net.neurons) csv << ",n" << d.id << ".freq";
  csv << '\n';
  csv.precision(17);
  for (long long t = 0; t <= steps; ++t) {
    csv << t;
    for (int i = 0; i < net.size(); ++i)
      csv << ',' << static_cast<double>(counts[t][i]) / runs;
    csv << '\n';
  }
  return write_text(out, csv.str());
}

int cmd_plot(const std::string& path, bool lax, long long steps_flag,
             std::uint64_t seed, const std::string& out) {
  int code = kOk;
  auto loaded = load(path, lax, &code);
  if (!loaded) return code;
  if (int rc = require_valid(*loaded); rc != kOk) return rc;
  const long long steps = steps_flag >= 0 ? steps_flag : loaded->spec.steps;
  snn::CompiledNetwork net = snn::compile(loaded->spec);
  snn::Trace trace = snn::simulate(net, steps, seed, loaded->spec.dt);
  std::ostringstream raster;
  snn::export_spike_svg(trace, net, raster);
  return write_text(out, raster.str());
}

int cmd_check(const std::string& path, bool lax, const std::string& inline_prop,
              std::size_t max_states) {
  int code = kOk;
  auto loaded = load(path, lax, &code);
  if (!loaded) return code;
  if (int rc = require_valid(*loaded); rc != kOk) return rc;

  std::vector<std::string> props;
  if (!inline_prop.empty()) {
    props.push_back(inline_prop);  // inline wins over the file's list
  } else {
    props = loaded->spec.properties;
  }
  if (props.empty()) {
    std::cerr << "error: no properties (none in file, none inline)\n";
    return kUsage;
  }

  snn::CompiledNetwork net = snn::compile(loaded->spec);
  snn::Dtmc d;
  try {
    d = snn::build_dtmc(net, max_states);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }

  bool all_true = true;
  for (const auto& text : props) {
    nlohmann::json rec;
    rec["property"] = text;
    try {
      snn::FormulaPtr f = snn::parse_formula(text);
      snn::CheckResult res = snn::check(d, *f);
      switch (res.kind) {
        case snn::CheckResult::Kind::verdict:
          rec["kind"] = "verdict";
          rec["value"] = res.verdict;
          if (!res.verdict) all_true = false;
          break;
        case snn::CheckResult::Kind::probability:
          rec["kind"] = "probability";
          rec["value"] = snn::to_double(res.value);
          break;
        case snn::CheckResult::Kind::reward:
          rec["kind"] = "reward";
          rec["value"] = snn::to_double(res.value);
          break;
      }
      rec["method"] = res.method;
      rec["elapsed_ms"] = res.elapsed_ms;
      if (res.approximate) rec["approximate"] = true;
    } catch (const std::exception& e) {
      std::cerr << "error: " << text << ": " << e.what() << "\n";
      return kDomain;
    }
    std::cout << rec.dump() << "\n";
  }
  return all_true ? kOk : kDomain;
}

int cmd_export_prism(const std::string& path, bool lax,
                     const std::string& out_dir) {
  int code = kOk;
  auto loaded = load(path, lax, &code);
  if (!loaded) return code;
  if (int rc = require_valid(*loaded); rc != kOk) return rc;

  std::string model, props;
  try {
    model = snn::emit_model(loaded->spec);
    props = snn::emit_properties(loaded->spec, loaded->spec.properties);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }
  const std::string stem =
      out_dir + "/" + snn::sanitize_filename(loaded->spec.name);
  if (int rc = write_text(stem + ".pm", model); rc != kOk) return rc;
  if (int rc = write_text(stem + ".props", props); rc != kOk) return rc;
  std::cerr << "wrote " << stem << ".pm and " << stem << ".props\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification workbench for probabilistic spiking networks"};
  app.require_subcommand(1);

  std::string path, out = "-", svg, prop, out_dir = ".";
  bool lax = false, all = false;
  long long steps = -1, runs = 1;
  std::uint64_t seed = 0;
  std::size_t max_states = max_states_default();

  auto* validate = app.add_subcommand("validate", "parse and validate a file");
  validate->add_option("file", path)->required();
  validate->add_flag("--lax", lax, "downgrade unknown keys to warnings");

  auto* simulate = app.add_subcommand("simulate", "run the sampling engine");
  simulate->add_option("file", path)->required();
  simulate->add_option("--steps", steps, "steps (default: file's simulate.steps)");
  simulate->add_option("--seed", seed, "PRNG seed");
  simulate->add_option("--runs", runs, "runs; >1 writes per-step spike frequencies");
  simulate->add_option("--out", out, "CSV path, '-' for stdout");
  simulate->add_option("--svg", svg, "also write a spike raster SVG");
  simulate->add_flag("--lax", lax);

  auto* plot = app.add_subcommand("plot", "write a spike raster SVG");
  plot->add_option("file", path)->required();
  plot->add_option("--steps", steps);
  plot->add_option("--seed", seed);
  plot->add_option("--out", out, "SVG path, '-' for stdout");
  plot->add_flag("--lax", lax);

  auto* check = app.add_subcommand("check", "exact model checking");
  check->add_option("file", path)->required();
  check->add_option("--property", prop, "inline property (overrides the file's list)");
  check->add_flag("--all", all, "check the file's properties list (default)");
  check->add_option("--max-states", max_states,
                    "state cap (env SNNCHECK_MAX_STATES)");
  check->add_flag("--lax", lax);

  auto* exp = app.add_subcommand("export-prism", "emit PRISM model + properties");
  exp->add_option("file", path)->required();
  exp->add_option("--out", out_dir, "output directory");
  exp->add_flag("--lax", lax);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(path, lax);
    if (simulate->parsed())
      return cmd_simulate(path, lax, steps, seed, runs, out, svg);
    if (plot->parsed()) return cmd_plot(path, lax, steps, seed, out);
    if (check->parsed()) return cmd_check(path, lax, prop, max_states);
    if (exp->parsed()) return cmd_export_prism(path, lax, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kUsage;
}
