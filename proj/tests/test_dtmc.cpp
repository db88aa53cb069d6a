#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "snn/dtmc.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

using namespace snn;
using testutil::load_fixture;

TEST_CASE("single-neuron chain enumerates thirteen states") {
  auto d = build_dtmc(compile(load_fixture("single_neuron.yaml")));
  CHECK(d.size() == 13);
  CHECK(d.initial == 0);
  CHECK(d.states[0] == initial_state(d.net));
  REQUIRE(d.row_start.size() == 14);
  CHECK(d.row_start[0] == 0);
  CHECK(d.row_start.back() == d.col.size());
  CHECK(d.val.size() == d.col.size());

  // no duplicate states
  std::set<NetworkState> uniq(d.states.begin(), d.states.end());
  CHECK(uniq.size() == d.states.size());
}

TEST_CASE("rows are stochastic and columns in range") {
  for (const char* name : {"single_neuron.yaml", "ci.yaml", "absorbing.yaml",
                           "deterministic.yaml"}) {
    CAPTURE(name);
    auto d = build_dtmc(compile(load_fixture(name)));
    for (int s = 0; s < d.size(); ++s) {
      Rat sum(0);
      for (std::size_t k = d.row_start[s]; k < d.row_start[s + 1]; ++k) {
        REQUIRE(d.col[k] >= 0);
        REQUIRE(d.col[k] < d.size());
        CHECK(d.val[k] > 0);
        sum += d.val[k];
      }
      CHECK(sum == Rat(1));
    }
  }
}

TEST_CASE("reverse adjacency mirrors the forward matrix") {
  auto d = build_dtmc(compile(load_fixture("ci.yaml")));
  std::set<std::pair<int, int>> fwd;
  for (int s = 0; s < d.size(); ++s)
    for (std::size_t k = d.row_start[s]; k < d.row_start[s + 1]; ++k)
      fwd.emplace(s, d.col[k]);
  std::set<std::pair<int, int>> rev;
  REQUIRE(d.pre.size() == d.states.size());
  for (int c = 0; c < d.size(); ++c)
    for (int s : d.pre[c]) {
      // deduplicated: inserting twice would mean a repeat entry
      CHECK(rev.emplace(s, c).second);
    }
  CHECK(fwd == rev);
}

TEST_CASE("spike-count rewards mark exactly the spiking states") {
  auto d = build_dtmc(compile(load_fixture("ci.yaml")));
  REQUIRE(d.rewards.count("spike1_count") == 1);
  REQUIRE(d.rewards.count("spike2_count") == 1);
  const auto& r1 = d.rewards.at("spike1_count");
  for (int s = 0; s < d.size(); ++s)
    CHECK(r1[s] == (d.states[s][0].y ? Rat(1) : Rat(0)));
}

TEST_CASE("construction is deterministic") {
  auto net = compile(load_fixture("single_neuron.yaml"));
  auto a = build_dtmc(net);
  auto b = build_dtmc(net);
  CHECK(a.states == b.states);
  CHECK(a.col == b.col);
  CHECK(a.val == b.val);
}

TEST_CASE("a subthreshold quiet neuron is a one-state chain") {
  auto d = build_dtmc(compile(load_fixture("absorbing.yaml")));
  REQUIRE(d.size() == 1);
  REQUIRE(d.col.size() == 1);
  CHECK(d.col[0] == 0);
  CHECK(d.val[0] == Rat(1));
  CHECK(dump_explicit(d) ==
        "states 1\n"
        "initial 0\n"
        "state 0 s1=0 y1=0 p1=0 aref1=0 rref1=0\n"
        "transitions 1\n"
        "0 0 1\n"
        "rewards spike1_count\n");
}

TEST_CASE("state cap raises a descriptive overflow") {
  auto net = compile(load_fixture("ci.yaml"));
  CHECK_NOTHROW(build_dtmc(net, 20));  // exactly fits
  try {
    build_dtmc(net, 5);
    FAIL("expected OverflowError");
  } catch (const OverflowError& e) {
    CHECK(std::string(e.what()).find("state space exceeds 5 states") !=
          std::string::npos);
    CHECK(e.frontier() > 0);
  }
}

TEST_CASE("time-varying inputs are rejected") {
  auto net = compile(load_fixture("pattern.yaml"));
  CHECK_THROWS_AS(build_dtmc(net), std::invalid_argument);
}

TEST_CASE("transient distributions stay stochastic") {
  auto d = build_dtmc(compile(load_fixture("single_neuron.yaml")));
  TransientStepper st(d);
  CHECK(st.t() == 0);
  auto dist = st.distribution();
  CHECK(dist[0] == Rat(1));
  for (int t = 1; t <= 60; ++t) {
    st.step();
    CHECK(st.sums_to_one());
  }
  CHECK(st.t() == 60);
  Rat sum(0);
  for (const auto& q : st.distribution()) sum += q;
  CHECK(sum == Rat(1));

  st.advance_to(30);  // already past, no-op
  CHECK(st.t() == 60);
}

TEST_CASE("transient distribution equals brute-force path enumeration") {
  auto net = compile(load_fixture("single_neuron.yaml"));
  auto d = build_dtmc(net);
  const long long t = 4;

  std::map<NetworkState, Rat> by_state;
  testutil::for_each_path(net, t,
                          [&](const std::vector<NetworkState>& tr,
                              const Rat& p) { by_state[tr.back()] += p; });

  auto dist = transient_distribution(d, t);
  Rat covered(0);
  for (int s = 0; s < d.size(); ++s) {
    auto it = by_state.find(d.states[s]);
    Rat expect = it == by_state.end() ? Rat(0) : it->second;
    CHECK(dist[s] == expect);
    covered += dist[s];
  }
  CHECK(covered == Rat(1));
}

TEST_CASE("mass and weighted_sum agree with the distribution") {
  auto d = build_dtmc(compile(load_fixture("ci.yaml")));
  TransientStepper st(d);
  st.advance_to(7);
  auto dist = st.distribution();

  std::vector<char> members(d.size(), 0);
  for (int s = 0; s < d.size(); s += 2) members[s] = 1;
  Rat expect(0);
  for (int s = 0; s < d.size(); ++s)
    if (members[s]) expect += dist[s];
  CHECK(st.mass(members) == expect);

  const auto& rv = d.rewards.at("spike1_count");
  Rat wexpect(0);
  for (int s = 0; s < d.size(); ++s) wexpect += dist[s] * rv[s];
  CHECK(st.weighted_sum(rv) == wexpect);
}

namespace {

// Closedness and mutual reachability, checked with plain BFS.
void check_partition(const Dtmc& d, const BsccPartition& part) {
  std::vector<int> seen(d.size(), 0);
  for (const auto& c : part.bsccs) {
    REQUIRE(!c.empty());
    CHECK(std::is_sorted(c.begin(), c.end()));
    std::set<int> inside(c.begin(), c.end());
    for (int v : c) {
      CHECK(part.bscc_of[v] >= 0);
      ++seen[v];
      for (std::size_t k = d.row_start[v]; k < d.row_start[v + 1]; ++k)
        CHECK(inside.count(d.col[k]) == 1);
    }
    // strongly connected: BFS from the first member stays inside and covers
    std::set<int> reach{c[0]};
    std::vector<int> queue{c[0]};
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      for (std::size_t k = d.row_start[v]; k < d.row_start[v + 1]; ++k)
        if (reach.insert(d.col[k]).second) queue.push_back(d.col[k]);
    }
    CHECK(reach == inside);
  }
  for (int v : part.transient) {
    CHECK(part.bscc_of[v] == -1);
    ++seen[v];
  }
  for (int v = 0; v < d.size(); ++v) CHECK(seen[v] == 1);
}

}  // namespace

TEST_CASE("bottom components partition the chain") {
  for (const char* name :
       {"single_neuron.yaml", "ci.yaml", "deterministic.yaml"}) {
    CAPTURE(name);
    auto d = build_dtmc(compile(load_fixture(name)));
    auto part = bscc_decompose(d);
    REQUIRE(!part.bsccs.empty());
    check_partition(d, part);
  }
}

TEST_CASE("the pacemaker cycle is the single bottom component") {
  auto d = build_dtmc(compile(load_fixture("deterministic.yaml")));
  REQUIRE(d.size() == 5);
  auto part = bscc_decompose(d);
  REQUIRE(part.bsccs.size() == 1);
  CHECK(part.bsccs[0].size() == 4);
  CHECK(part.transient == std::vector<int>{0});  // the resting start state
}

TEST_CASE("dump lists every state and transition") {
  auto d = build_dtmc(compile(load_fixture("single_neuron.yaml")));
  std::string text = dump_explicit(d);
  CHECK(text.find("states 13\n") == 0);
  CHECK(text.find("initial 0\n") != std::string::npos);
  CHECK(text.find("transitions " + std::to_string(d.col.size()) + "\n") !=
        std::string::npos);
  CHECK(text.find("rewards spike1_count\n") != std::string::npos);
  // transition probabilities print as exact decimals here
  CHECK(text.find(" 0.5\n") != std::string::npos);
}
