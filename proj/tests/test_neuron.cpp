#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "snn/neuron.hpp"

#include <stdexcept>
#include <vector>

using namespace snn;

namespace {

// Independent table lookup used to cross-check base_spike_prob: walk the
// slots from the most negative side instead of branching on the sign.
Rat naive_table_prob(long long delta, const SpikeProbabilityTable& t) {
  const int k = t.k();
  std::vector<long long> lo, hi;  // slot j covers [lo[j], hi[j])
  std::vector<Rat> pr;
  for (int j = k; j >= 1; --j) {
    lo.push_back(-t.boundaries[j - 1]);
    hi.push_back(j == 1 ? 0 : -t.boundaries[j - 2]);
    pr.push_back(t.probs[k - j]);
  }
  for (int j = 1; j <= k; ++j) {
    lo.push_back(j == 1 ? 0 : t.boundaries[j - 2]);
    hi.push_back(t.boundaries[j - 1]);
    pr.push_back(t.probs[k + j - 1]);
  }
  if (delta < lo.front()) return Rat(0);
  if (delta >= hi.back()) return Rat(1);
  for (std::size_t i = 0; i < pr.size(); ++i)
    if (lo[i] <= delta && delta < hi[i]) return pr[i];
  FAIL("slot cover has a hole at delta=" << delta);
  return Rat(0);
}

}  // namespace

TEST_CASE("default table boundaries scale with the threshold") {
  auto t10 = SpikeProbabilityTable::defaults_for(10);
  CHECK(t10.boundaries == std::vector<long long>{2, 4, 6, 8, 10});
  CHECK(t10.k() == 5);
  CHECK(t10.probs.size() == 10);
  CHECK(t10.probs[5] == Rat(1, 2));
  CHECK(t10.probs[0] == Rat(1, 20));
  CHECK(t10.probs[9] == Rat(19, 20));

  // ceil(3/5) = 1, floor would collapse the slots
  auto t3 = SpikeProbabilityTable::defaults_for(3);
  CHECK(t3.boundaries == std::vector<long long>{1, 2, 3, 4, 5});

  auto t11 = SpikeProbabilityTable::defaults_for(11);
  CHECK(t11.boundaries == std::vector<long long>{3, 6, 9, 12, 15});

  auto t100 = SpikeProbabilityTable::defaults_for(100);
  CHECK(t100.boundaries == std::vector<long long>{20, 40, 60, 80, 100});
}

TEST_CASE("base spike probability pins the documented slots") {
  NeuronParams prm;  // tau=10, default table
  CHECK(base_spike_prob(20, prm) == Rat(1));
  CHECK(base_spike_prob(21, prm) == Rat(1));
  CHECK(base_spike_prob(18, prm) == Rat(19, 20));   // delta 8
  CHECK(base_spike_prob(19, prm) == Rat(19, 20));   // delta 9
  CHECK(base_spike_prob(10, prm) == Rat(1, 2));     // delta 0
  CHECK(base_spike_prob(11, prm) == Rat(1, 2));     // delta 1
  CHECK(base_spike_prob(12, prm) == Rat(13, 20));   // delta 2
  CHECK(base_spike_prob(9, prm) == Rat(2, 5));      // delta -1
  CHECK(base_spike_prob(8, prm) == Rat(2, 5));      // delta -2
  CHECK(base_spike_prob(7, prm) == Rat(3, 10));     // delta -3
  CHECK(base_spike_prob(1, prm) == Rat(1, 20));     // delta -9
  CHECK(base_spike_prob(0, prm) == Rat(1, 20));     // delta -10
  CHECK(base_spike_prob(-1, prm) == Rat(0));        // delta -11
}

TEST_CASE("base spike probability matches a naive interval walk") {
  NeuronParams prm;
  for (long long tau : {1, 3, 10, 11, 37}) {
    prm.tau = tau;
    prm.table = SpikeProbabilityTable::defaults_for(tau);
    long long span = prm.table.boundaries.back() + 3;
    for (long long p = tau - span; p <= tau + span; ++p) {
      CAPTURE(tau);
      CAPTURE(p);
      CHECK(base_spike_prob(p, prm) == naive_table_prob(p - tau, prm.table));
    }
  }
}

TEST_CASE("integration applies the leak unless the neuron just spiked") {
  NeuronParams prm;  // r = 7/10
  CHECK(integrate(NeuronState{0, 0, 10, 0, 0}, Rat(0), prm) == 7);
  CHECK(integrate(NeuronState{0, 0, 10, 0, 0}, Rat(11), prm) == 18);
  // floor(-3.5) = -4, not trunc
  CHECK(integrate(NeuronState{0, 0, -5, 0, 0}, Rat(0), prm) == -4);
  CHECK(integrate(NeuronState{0, 0, 5, 0, 0}, Rat(0), prm) == 3);
  // y=1 drops the whole leak term, even though p is nonzero
  CHECK(integrate(NeuronState{0, 1, 300, 0, 0}, Rat(11), prm) == 11);
  CHECK(integrate(NeuronState{2, 0, 10, 0, 3}, Rat(0), prm) == 7);
}

TEST_CASE("integration clips into the configured potential band") {
  NeuronParams prm;
  CHECK(integrate(NeuronState{0, 0, 0, 0, 0}, Rat(10000), prm) == 500);
  CHECK(integrate(NeuronState{0, 0, 0, 0, 0}, Rat(-10000), prm) == -500);
  prm.p_min = -3;
  prm.p_max = 3;
  CHECK(integrate(NeuronState{0, 0, 0, 0, 0}, Rat(4), prm) == 3);
  CHECK(integrate(NeuronState{0, 0, 0, 0, 0}, Rat(-4), prm) == -3);
}

TEST_CASE("integration refuses absolute-refractory states") {
  NeuronParams prm;
  CHECK_THROWS_AS(integrate(NeuronState{1, 0, 0, 1, 0}, Rat(0), prm),
                  std::invalid_argument);
}

TEST_CASE("effective spike probability per regime") {
  NeuronParams prm;  // alpha = 2/25
  Rat base(1, 2);
  CHECK(effective_spike_prob(NeuronState{0, 0, 0, 0, 0}, base, prm) ==
        Rat(1, 2));
  CHECK(effective_spike_prob(NeuronState{1, 0, 0, 2, 0}, base, prm) == Rat(0));
  CHECK(effective_spike_prob(NeuronState{2, 0, 0, 0, 3}, base, prm) ==
        Rat(1, 25));
  // the shrink still applies in the last relative-refractory step (rref=0)
  CHECK(effective_spike_prob(NeuronState{2, 0, 0, 0, 0}, base, prm) ==
        Rat(1, 25));
}

TEST_CASE("absolute refractory counts down without sampling") {
  NeuronParams prm;
  auto b = neuron_branches(NeuronState{1, 0, 0, 2, 0}, Rat(999), prm);
  REQUIRE(b.size() == 1);
  CHECK(b[0].prob == Rat(1));
  CHECK(b[0].next == NeuronState{1, 0, 0, 1, 0});

  b = neuron_branches(NeuronState{1, 0, 0, 0, 0}, Rat(999), prm);
  REQUIRE(b.size() == 1);
  CHECK(b[0].next == NeuronState{2, 0, 0, 0, 5});

  // rrp=0 still passes through an s=2 state for one shrunk step
  prm.rrp = 0;
  b = neuron_branches(NeuronState{1, 0, 0, 0, 0}, Rat(0), prm);
  REQUIRE(b.size() == 1);
  CHECK(b[0].next == NeuronState{2, 0, 0, 0, 0});
}

TEST_CASE("branch order is no-spike first and probabilities sum to one") {
  NeuronParams prm;
  auto b = neuron_branches(NeuronState{0, 0, 0, 0, 0}, Rat(11), prm);
  REQUIRE(b.size() == 2);
  CHECK(b[0].next.y == 0);
  CHECK(b[1].next.y == 1);
  CHECK(b[0].prob == Rat(1, 2));
  CHECK(b[1].prob == Rat(1, 2));
  CHECK(b[0].next == NeuronState{0, 0, 11, 0, 0});
  CHECK(b[1].next == NeuronState{1, 1, 0, 2, 0});

  for (long long w = -30; w <= 30; ++w) {
    auto bb = neuron_branches(NeuronState{0, 0, 4, 0, 0}, Rat(w), prm);
    Rat sum(0);
    for (const auto& br : bb) sum += br.prob;
    CHECK(sum == Rat(1));
  }
}

TEST_CASE("spike target depends on the refractory configuration") {
  NeuronParams prm;
  prm.arp = 0;
  auto b = neuron_branches(NeuronState{0, 0, 0, 0, 0}, Rat(11), prm);
  REQUIRE(b.size() == 2);
  CHECK(b[1].next == NeuronState{2, 1, 0, 0, 5});

  prm.rrp = 0;
  b = neuron_branches(NeuronState{0, 0, 0, 0, 0}, Rat(11), prm);
  REQUIRE(b.size() == 2);
  CHECK(b[1].next == NeuronState{0, 1, 0, 0, 0});

  // spike resets to p_rest, not to 0
  prm = NeuronParams{};
  prm.p_rest = 4;
  b = neuron_branches(NeuronState{0, 0, 0, 0, 0}, Rat(11), prm);
  REQUIRE(b.size() == 2);
  CHECK(b[1].next.p == 4);
}

TEST_CASE("degenerate probabilities collapse to one branch") {
  NeuronParams prm;
  auto b = neuron_branches(NeuronState{0, 0, 0, 0, 0}, Rat(-100), prm);
  REQUIRE(b.size() == 1);
  CHECK(b[0].next == NeuronState{0, 0, -100, 0, 0});

  b = neuron_branches(NeuronState{0, 0, 0, 0, 0}, Rat(100), prm);
  REQUIRE(b.size() == 1);
  CHECK(b[0].next == NeuronState{1, 1, 0, 2, 0});
}

TEST_CASE("relative refractory no-spike branch counts rref down") {
  NeuronParams prm;
  auto b = neuron_branches(NeuronState{2, 0, 3, 0, 3}, Rat(0), prm);
  REQUIRE(b.size() == 2);
  CHECK(b[0].next == NeuronState{2, 0, 2, 0, 2});  // floor(0.7*3)=2
  // delta = 2-10 = -8, base 1/10, shrunk by alpha
  CHECK(b[0].prob == Rat(1) - Rat(2, 25) * Rat(1, 10));

  // rref=0: the no-spike branch leaves the refractory chain
  b = neuron_branches(NeuronState{2, 0, 3, 0, 0}, Rat(0), prm);
  REQUIRE(b.size() == 2);
  CHECK(b[0].next == NeuronState{0, 0, 2, 0, 0});
}

TEST_CASE("initial state rests at p_rest") {
  NeuronParams prm;
  prm.p_rest = -7;
  CHECK(initial_neuron_state(prm) == NeuronState{0, 0, -7, 0, 0});
}
