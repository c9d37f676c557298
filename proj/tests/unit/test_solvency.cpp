#include "doctest.h"

#include <algorithm>

#include "contagion/clearing.hpp"
#include "contagion/solvency.hpp"
#include "fixtures.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace contagion;
using namespace fixtures;

namespace {

bool subset(const BankSet& a, const BankSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

bool intersects_every_cycle(const SolvencyDiagnosis& d) { return d.uncovered_cycles.empty(); }

}  // namespace

TEST_SUITE("solvency") {
  TEST_CASE("cascade from bank 2 clears the three-equilibria network") {
    auto s = cascade_closure(three_equilibria(), {1});
    CHECK(s.covers_all());
    CHECK(s.seed == BankSet{1});
    REQUIRE(s.layers.size() >= 1);
    CHECK(s.layers[0] == BankSet{0, 2});
  }

  TEST_CASE("cascade from bank 3 stops at bank 4") {
    auto s = cascade_closure(three_equilibria(), {2});
    CHECK(s.members() == BankSet{2, 3});
  }

  TEST_CASE("empty seed without unilaterally solvent banks stays empty") {
    CHECK(cascade_closure(three_equilibria(), {}).members().empty());
  }

  TEST_CASE("bailing the head of the cycle chain unravels it") {
    auto chain = make({0, 1, 1, 0}, {owes(1, 2, 2), owes(2, 1, 1), owes(2, 3, 2), owes(3, 2, 1), owes(3, 4, 2),
                                     owes(4, 3, 1)});
    auto s = cascade_closure(chain, {0});
    CHECK(s.covers_all());
    CHECK(s.layers.size() == 3);
  }

  TEST_CASE("extra cash enters the cascade") {
    auto s = cascade_closure(three_equilibria(), {}, {0, q(3, 4), 0, 0});
    CHECK(s.covers_all());
  }

  TEST_CASE("maximum iteratively strongly solvent set") {
    CHECK(max_iss_set(shared_pairs().with_costs(CostSpec::full())).members() == BankSet{0});
    CHECK(max_iss_set(three_equilibria()).members().empty());
    auto rich = make({5, 5}, {owes(1, 2, 1), owes(2, 1, 1)});
    CHECK(max_iss_set(rich).covers_all());
  }

  TEST_CASE("closure agrees with the oracle and is monotone and idempotent") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      auto net = instances::arbitrary(seed, 7, CostSpec::full());
      BankSet x, y;
      for (BankIndex i = 0; i < net.size(); ++i) {
        if ((seed >> i) & 1) x.push_back(i);
        if (((seed >> i) & 1) || i % 3 == 0) y.push_back(i);
      }
      auto sx = cascade_closure(net, x);
      auto sy = cascade_closure(net, y);
      CAPTURE(seed);
      CHECK(sx.solvent == oracle::closure(net, x));
      CHECK(subset(sx.members(), sy.members()));
      CHECK(cascade_closure(net, sx.members()).members() == sx.members());
    }
  }

  TEST_CASE("max ISS is the solvent set of the worst equilibrium under full costs") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      auto net = instances::arbitrary(seed, 7, CostSpec::full());
      auto worst = worst_equilibrium(net);
      BankSet solvent;
      for (BankIndex i = 0; i < net.size(); ++i) {
        if (!worst.defaulted[i]) solvent.push_back(i);
      }
      CHECK(max_iss_set(net).members() == solvent);
    }
  }

  TEST_CASE("diagnosis of the three-equilibria network") {
    auto d = diagnose(three_equilibria());
    CHECK(d.weakly_balanced);
    CHECK(d.best_all_solvent);
    CHECK_FALSE(d.worst_all_solvent);
    CHECK(d.max_iss.empty());
    CHECK(d.cycles.count() == 3);
    CHECK(d.uncovered_cycles.size() == 3);
  }

  TEST_CASE("diagnosis of the five-bank chain after the imbalance injection") {
    auto net = five_bank_chain().with_portfolio({1, 0, 1, 1, 0});
    auto d = diagnose(net);
    CHECK(d.weakly_balanced);
    CHECK(d.max_iss == BankSet{0});
    CHECK(d.cycles.count() == 3);
    CHECK(d.uncovered_cycles == std::vector<std::size_t>{0, 1, 2});
  }

  TEST_CASE("weakly balanced acyclic network clears in the worst equilibrium") {
    auto net = compress(instances::weakly_balanced(7, 6));
    if (is_weakly_balanced(net)) CHECK(diagnose(net).worst_all_solvent);
    auto chain = make({0, 1, 0}, {owes(1, 2, 1), owes(2, 3, 2)}, CostSpec::full(), {1, 0, 0});
    CHECK_FALSE(diagnose(chain).weakly_balanced);
    auto line = make({1, 1, 0}, {owes(1, 2, 1), owes(2, 3, 2)});
    CHECK(diagnose(line).worst_all_solvent);
  }

  TEST_CASE("weak balance plus a strongly solvent bank on every cycle decides worst-case solvency") {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
      auto net = instances::weakly_balanced(seed, 7);
      auto d = diagnose(net);
      CAPTURE(seed);
      CHECK(worst_equilibrium(net).defaults().empty() == intersects_every_cycle(d));
      CHECK(d.worst_all_solvent == intersects_every_cycle(d));
    }
  }

  TEST_CASE("no unilaterally solvent bank means everyone defaults in the worst equilibrium") {
    int seen = 0;
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
      auto net = instances::arbitrary(seed, 6, CostSpec::full());
      auto d = diagnose(net);
      if (!d.unilaterally_solvent.empty()) continue;
      ++seen;
      CHECK(worst_equilibrium(net).defaults().size() == net.size());
    }
    CHECK(seen > 0);
  }

  TEST_CASE("critically balanced cycle banks need a unilaterally solvent bank per cycle") {
    // Ring with a spur: every bank on a cycle is critically balanced.
    auto net = make({1, 0, 0, 0}, {owes(1, 2, 1), owes(2, 3, 1), owes(3, 1, 1), owes(3, 4, 1), owes(4, 3, 1)},
                    CostSpec::full());
    auto d = diagnose(net);
    CHECK(d.weakly_balanced);
    CHECK(d.multi_cycle_banks_critical);
    CHECK(d.every_cycle_has_unilateral == d.worst_all_solvent);
  }

  TEST_CASE("uniqueness under weak balance tracks cycle coverage") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      auto net = instances::weakly_balanced(seed, 7);
      auto d = diagnose(net);
      CAPTURE(seed);
      CHECK((enumerate_equilibria(net).members.size() == 1) == intersects_every_cycle(d));
    }
  }
}
