#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "snn/dtmc.hpp"
#include "snn/engine.hpp"
#include "snn/pctl.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace snn;
using testutil::load_fixture;

TEST_CASE("the generator reproduces the published splitmix64 stream") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFull);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ull);
  CHECK(rng.next() == 0x06C45D188009454Full);
  SplitMix64 rng2(1234567);
  CHECK(rng2.next() == 0x599ED017FB08FC85ull);
}

TEST_CASE("a seed pins the trace bit for bit") {
  auto net = compile(load_fixture("single_neuron.yaml"));
  Trace a = simulate(net, 200, 42);
  Trace b = simulate(net, 200, 42);
  CHECK(a.states == b.states);
  CHECK(a.seed == 42);
  CHECK(a.steps() == 200);
  CHECK(a.states.size() == 201);
  CHECK(a.dt == Rat(1, 1000));

  Trace c = simulate(net, 200, 43);
  CHECK(a.states != c.states);
}

TEST_CASE("sampled transitions always lie in the exact branch support") {
  for (const char* name : {"single_neuron.yaml", "ci.yaml", "bistable.yaml",
                           "deterministic.yaml", "pattern.yaml"}) {
    CAPTURE(name);
    auto net = compile(load_fixture(name));
    Trace tr = simulate(net, 400, 2026);
    for (long long t = 0; t < tr.steps(); ++t) {
      auto branches = network_branches(net, tr.states[t], t);
      bool found = false;
      for (const auto& [q, nx] : branches)
        if (nx == tr.states[t + 1]) found = true;
      if (!found) {
        CAPTURE(t);
        FAIL_CHECK("sampled state not in the exact support");
        break;
      }
    }
  }
}

TEST_CASE("the pacemaker fires on its fixed schedule under every seed") {
  auto net = compile(load_fixture("deterministic.yaml"));
  Trace first = simulate(net, 20, 1);
  for (std::uint64_t seed : {2ull, 99ull, 123456789ull}) {
    Trace tr = simulate(net, 20, seed);
    CHECK(tr.states == first.states);
  }
  for (long long t = 0; t <= 20; ++t) {
    bool expect_spike = t >= 1 && (t - 1) % 4 == 0;
    CHECK(first.states[t][0].y == (expect_spike ? 1 : 0));
  }
}

TEST_CASE("spike frequency tracks the exact one-step probability") {
  auto net = compile(load_fixture("single_neuron.yaml"));
  EstimateOptions opts;
  opts.runs = 20000;
  opts.seed = 7;
  auto est = estimate_bounded(net, *parse_formula("P=? [ X (y1=1) ]")->a, opts);
  CHECK(est.runs == 20000);
  CHECK(est.horizon == 1);
  // exact probability is 1/2; 3 sigma for 20000 draws is about 0.0106
  CHECK(std::abs(est.point - 0.5) < 0.0106);
}

TEST_CASE("hoeffding run counts match the closed form") {
  CHECK(hoeffding_runs(0.01, 0.01) == 26492);
  CHECK(hoeffding_runs(0.02, 0.01) == 6623);
  CHECK(hoeffding_runs(0.1, 0.05) == 185);
  CHECK_THROWS_AS(hoeffding_runs(0.0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(hoeffding_runs(0.01, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(hoeffding_runs(0.01, 1.0), std::invalid_argument);
}

TEST_CASE("estimates are reproducible and land near the exact value") {
  auto net = compile(load_fixture("single_neuron.yaml"));
  auto d = build_dtmc(net);
  auto f = parse_formula("P=? [ F<=6 (y1=1) ]");
  double exact = to_double(check(d, *f).value);

  EstimateOptions opts;
  opts.epsilon = 0.02;
  opts.delta = 0.01;
  opts.seed = 11;
  auto est = estimate_bounded(net, *f->a, opts);
  CHECK(est.runs == 6623);
  CHECK(est.horizon == 6);
  CHECK(std::abs(est.point - exact) < 0.02);
  CHECK(est.ci_low <= est.point);
  CHECK(est.point <= est.ci_high);
  CHECK(est.ci_low >= 0.0);
  CHECK(est.ci_high <= 1.0);
  // the exact answer should sit inside the 95% interval here
  CHECK(est.ci_low <= exact);
  CHECK(exact <= est.ci_high);

  auto again = estimate_bounded(net, *f->a, opts);
  CHECK(again.hits == est.hits);
}

TEST_CASE("degenerate estimates clamp their intervals") {
  auto net = compile(load_fixture("single_neuron.yaml"));
  EstimateOptions opts;
  opts.runs = 500;
  opts.seed = 3;

  auto never =
      estimate_bounded(net, *parse_formula("P=? [ F<=3 (p1=99) ]")->a, opts);
  CHECK(never.hits == 0);
  CHECK(never.point == 0.0);
  CHECK(never.ci_low == 0.0);
  CHECK(never.ci_high > 0.0);

  auto pace = compile(load_fixture("deterministic.yaml"));
  auto always =
      estimate_bounded(pace, *parse_formula("P=? [ F<=1 (y1=1) ]")->a, opts);
  CHECK(always.hits == 500);
  CHECK(always.point == 1.0);
  CHECK(always.ci_high == 1.0);
  CHECK(always.ci_low < 1.0);
}

TEST_CASE("unbounded formulas are refused by the estimator") {
  auto net = compile(load_fixture("single_neuron.yaml"));
  CHECK_THROWS_WITH_AS(
      estimate_bounded(net, *parse_formula("P=? [ F (y1=1) ]")->a, {}),
      "unbounded property is not statistically checkable; use exact checker",
      CheckError);
}

TEST_CASE("engine limits reject parameters the fast path cannot carry") {
  NetworkSpec spec = load_fixture("single_neuron.yaml");
  spec.neurons[0].params.r = Rat(1, 2000000001);
  CHECK_THROWS_AS(Simulator(compile(spec)), std::invalid_argument);

  spec = load_fixture("single_neuron.yaml");
  spec.neurons[0].params.p_min = -2000000000000000LL;
  CHECK_THROWS_AS(Simulator(compile(spec)), std::invalid_argument);

  spec = load_fixture("single_neuron.yaml");
  spec.neurons[0].params.table.probs[0] = Rat(3, 2);
  CHECK_THROWS_AS(Simulator(compile(spec)), std::invalid_argument);
}

TEST_CASE("trace csv matches the golden file") {
  auto net = compile(load_fixture("single_neuron.yaml"));
  Trace tr = simulate(net, 12, 42);
  std::ostringstream os;
  export_trace_csv(tr, net, os);
  const std::string text = os.str();
  CHECK(text.rfind("t,n1.y,n1.p,n1.s,n1.aref,n1.rref\n", 0) == 0);

  std::string msg;
  bool ok = testutil::golden_matches("single_neuron_s42.csv", text, &msg);
  INFO(msg);
  CHECK(ok);
}

TEST_CASE("csv interleaves per-neuron columns in id order") {
  auto net = compile(load_fixture("ci.yaml"));
  Trace tr = simulate(net, 3, 5);
  std::ostringstream os;
  export_trace_csv(tr, net, os);
  std::string text = os.str();
  CHECK(text.rfind("t,n1.y,n1.p,n1.s,n1.aref,n1.rref,"
                   "n2.y,n2.p,n2.s,n2.aref,n2.rref\n",
                   0) == 0);
  // 1 header + 4 state rows
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}

TEST_CASE("spike raster svg is deterministic and lists every spike") {
  auto net = compile(load_fixture("deterministic.yaml"));
  Trace tr = simulate(net, 12, 9);
  std::ostringstream os;
  export_spike_svg(tr, net, os);
  std::string svg = os.str();

  CHECK(svg.rfind("<svg xmlns", 0) == 0);
  CHECK(svg.find(">n1</text>") != std::string::npos);
  CHECK(svg.find("t = 0 .. 12") != std::string::npos);

  long long spikes = 0;
  for (const auto& st : tr.states) spikes += st[0].y;
  CHECK(spikes == 3);  // t = 1, 5, 9
  std::size_t lines = 0;
  for (std::size_t at = svg.find("<line"); at != std::string::npos;
       at = svg.find("<line", at + 1))
    ++lines;
  CHECK(lines == static_cast<std::size_t>(net.size()) + spikes);

  std::string msg;
  bool ok = testutil::golden_matches("deterministic_s9.svg", svg, &msg);
  INFO(msg);
  CHECK(ok);
}
