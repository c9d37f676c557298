#include "doctest.h"

#include "contagion/bailout.hpp"
#include "contagion/generators.hpp"
#include "contagion/structured.hpp"
#include "fixtures.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace contagion;
using namespace fixtures;

namespace {

std::vector<BankIndex> order(const BailoutPolicy& p) {
  std::vector<BankIndex> out;
  for (const auto& s : p.steps) out.push_back(s.bank);
  return out;
}

template <class T>
bool is(const StructureTag& t) {
  return std::holds_alternative<T>(t);
}

FinancialNetwork star_net(std::vector<Rational> p) {
  // Center is the last bank; peripherals owe 2 and are owed 1.
  std::vector<Debt> debts;
  std::size_t n = p.size();
  for (std::size_t i = 1; i < n; ++i) {
    debts.push_back(owes(i, n, 2));
    debts.push_back(owes(n, i, 1));
  }
  return make(std::move(p), std::move(debts));
}

}  // namespace

TEST_SUITE("structured") {
  TEST_CASE("structure detection") {
    CHECK(is<structure::DisjointCycles>(detect_structure(generate(gen::Wheel{4, 1, 0}))));
    CHECK(is<structure::DisjointCycles>(detect_structure(make({1, 0}, {owes(1, 2, 1)}))));
    CHECK(is<structure::General>(detect_structure(shared_pairs())));
    CHECK(is<structure::General>(detect_structure(FinancialNetwork())));
    auto star = detect_structure(star_net({q(3, 2), q(5, 4), 1, q(1, 2)}));
    REQUIRE(is<structure::Star>(star));
    CHECK(std::get<structure::Star>(star).center == 3);
    CHECK(std::get<structure::Star>(star).d_in == 2);
    CHECK(is<structure::Clique>(detect_structure(generate(gen::CorePeriphery{3, 0, 1, 2, 1, {q(3, 2), 1, 0}, 0}))));
    auto cp = detect_structure(generate(gen::CorePeriphery{2, 2, 2, 1, 1, {1, 0}, q(1, 2)}));
    REQUIRE(is<structure::CorePeriphery>(cp));
    CHECK(std::get<structure::CorePeriphery>(cp).n_p == 2);
    CHECK(structure_name(cp) == "core-periphery");
  }

  TEST_CASE("disjoint cycles are bailed in tier order") {
    auto net = make({1, 1, 0, 1, 1}, {owes(1, 2, 2), owes(2, 1, 2), owes(2, 3, 1), owes(3, 4, 2), owes(4, 5, 2),
                                      owes(5, 3, 2)});
    REQUIRE(is<structure::DisjointCycles>(detect_structure(net)));
    auto p = disjoint_cycles_policy(net);
    CHECK(order(p) == std::vector<BankIndex>{0, 2});
    CHECK(p.total == 2);
    CHECK(oracle::min_bailout_total(net) == 2);

    auto pairs = make({0, 0, 1, 0}, {owes(1, 2, 1), owes(2, 1, 1), owes(3, 4, 3), owes(4, 3, 3)});
    CHECK(disjoint_cycles_policy(pairs).total == 3);
    CHECK_THROWS_AS(disjoint_cycles_policy(shared_pairs()), DomainError);
  }

  TEST_CASE("star policy") {
    auto net = star_net({q(3, 2), q(5, 4), 1, q(1, 2)});
    auto p = star_policy(net);
    CHECK(order(p) == std::vector<BankIndex>{0, 3});
    CHECK(p.total == 1);
    CHECK(oracle::min_bailout_total(net) == 1);

    auto flat = star_net({1, 1, 1, 0});
    auto f = star_policy(flat);
    CHECK(order(f) == std::vector<BankIndex>{0, 3});
    CHECK(f.total == 2);
    CHECK(oracle::min_bailout_total(flat) == 2);
  }

  TEST_CASE("star whose peripherals are short of weak balance is routed to the exact solver") {
    auto net = star_net({q(1, 2), q(1, 2), q(1, 2), 0});
    auto routed = auto_bailout(net);
    CHECK(is<structure::General>(routed.tag));
    CHECK(routed.result.policy.total == q(7, 2));
    CHECK(oracle::min_bailout_total(net) == q(7, 2));
    CHECK_THROWS_AS(star_policy(net), DomainError);
  }

  TEST_CASE("core periphery and clique policies") {
    auto clique = generate(gen::CorePeriphery{3, 0, 1, 2, 1, {q(3, 2), 1, 0}, 0});
    auto c = core_periphery_policy(clique);
    CHECK(order(c) == std::vector<BankIndex>{0});
    CHECK(c.total == q(1, 2));
    CHECK(oracle::min_bailout_total(clique) == q(1, 2));

    auto cp = generate(gen::CorePeriphery{2, 1, 2, 1, 1, {1, 0}, q(1, 2)});
    REQUIRE(is<structure::CorePeriphery>(detect_structure(cp)));
    auto r = core_periphery_policy(cp);
    CHECK(r.total == 2);
    CHECK(oracle::min_bailout_total(cp) == 2);
    CHECK(policy_cost(cp, r).valid);
  }

  TEST_CASE("restoring the richest core bank first is not always cheapest") {
    auto net = generate(gen::CorePeriphery{2, 1, 1, 4, 4, {q(7, 2), q(3, 2)}, q(3, 2)});
    REQUIRE(is<structure::CorePeriphery>(detect_structure(net)));
    auto descending = BailoutPolicy::from_steps({{0, q(3, 2)}, {1, q(5, 2)}});
    CHECK(policy_cost(net, descending).valid);
    CHECK(descending.total == 4);
    auto p = core_periphery_policy(net);
    CHECK(order(p) == std::vector<BankIndex>{3, 0});
    CHECK(p.total == 3);
    CHECK(oracle::min_bailout_total(net) == 3);
  }

  TEST_CASE("star policy bails peripherals before the center and beats the simple alternatives") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      auto net = instances::star(seed, 7, false);
      auto star = std::get<structure::Star>(detect_structure(net));
      auto p = star_policy(net);
      CAPTURE(seed);
      for (std::size_t k = 0; k + 1 < p.steps.size(); ++k) CHECK(p.steps[k].bank != star.center);

      std::vector<BankIndex> peripherals;
      for (BankIndex i = 0; i < net.size(); ++i) {
        if (i != star.center) peripherals.push_back(i);
      }
      std::stable_sort(peripherals.begin(), peripherals.end(),
                       [&](BankIndex x, BankIndex y) { return net.p(x) > net.p(y); });
      Amount need = net.liabilities(star.center) - net.p(star.center);
      long ceil_m = static_cast<long>(floor_rational(need / star.d_in).get_num().get_si());
      if (Rational(ceil_m) * star.d_in < need) ++ceil_m;
      ceil_m = std::min<long>(ceil_m, static_cast<long>(peripherals.size()));

      // Bail the top ceil(m*) peripherals, then whatever the center still lacks.
      std::vector<BailoutStep> all;
      BankSet bailed;
      for (long k = 0; k < ceil_m; ++k) {
        all.push_back({peripherals[k], bailout_cost(net, peripherals[k], bailed)});
        bailed.push_back(peripherals[k]);
      }
      if (sgn(bailout_cost(net, star.center, bailed)) > 0) all.push_back({star.center, bailout_cost(net, star.center, bailed)});
      auto all_p = BailoutPolicy::from_steps(all);
      CHECK(p.total <= all_p.total);
      CHECK(all_p.total - p.total <= star.d_in);

      auto center = BailoutPolicy::from_steps({{star.center, bailout_cost(net, star.center, {})}});
      Amount top_p;
      for (long k = 0; k < ceil_m; ++k) top_p += net.p(peripherals[k]);
      CHECK(p.total <= center.total);
      CHECK(center.total - p.total <= top_p);
    }
  }

  TEST_CASE("a single core bank is a star") {
    auto net = generate(gen::CorePeriphery{1, 3, 1, 2, 1, {0}, 1});
    CHECK(is<structure::Star>(detect_structure(net)));
  }

  TEST_CASE("closed-form policies match the oracle") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      CAPTURE(seed);
      auto dc = instances::disjoint_cycles(seed, 8);
      REQUIRE(is<structure::DisjointCycles>(detect_structure(dc)));
      CHECK(disjoint_cycles_policy(dc).total == oracle::min_bailout_total(dc));

      auto st = instances::star(seed, 7, false);
      REQUIRE(is<structure::Star>(detect_structure(st)));
      auto sp = star_policy(st);
      CHECK(policy_cost(st, sp).valid);
      CHECK(sp.total == oracle::min_bailout_total(st));

      auto cp = instances::core_periphery(seed, 2 + seed % 2, 1 + seed % 3);
      auto tag = detect_structure(cp);
      REQUIRE((is<structure::CorePeriphery>(tag) || is<structure::Clique>(tag)));
      auto cpp = core_periphery_policy(cp);
      CHECK(policy_cost(cp, cpp).valid);
      CHECK(cpp.total == oracle::min_bailout_total(cp));
    }
  }

  TEST_CASE("auto routing agrees with the exact solver") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto net = instances::star(seed, 6, true);
      auto routed = auto_bailout(net);
      CHECK(is<structure::Star>(routed.tag));
      CHECK(routed.result.policy.total == opt_exact(net).policy.total);
    }
  }
}
