#include "doctest.h"

#include "contagion/generators.hpp"
#include "contagion/io.hpp"
#include "fixtures.hpp"

using namespace contagion;
using namespace fixtures;

TEST_SUITE("generators") {
  TEST_CASE("wheel") {
    auto net = generate(gen::Wheel{4, 2, q(1, 2)});
    CHECK(net.size() == 4);
    REQUIRE(net.debts().size() == 4);
    for (BankIndex i = 0; i < 4; ++i) {
      CHECK(net.owed(i, (i + 1) % 4) == 2);
      CHECK(net.p(i) == q(1, 2));
    }
    CHECK_THROWS_AS(generate(gen::Wheel{1, 1, 0}), DomainError);
  }

  TEST_CASE("cycle chain") {
    auto net = generate(gen::CycleChain{5, 3, 1});
    CHECK(net.portfolio() == std::vector<Amount>{0, 1, 1, 1, 0});
    CHECK(net.owed(0, 1) == 3);
    CHECK(net.owed(1, 0) == 1);
    CHECK(net.owed(3, 4) == 3);
    CHECK(net.debts().size() == 8);
  }

  TEST_CASE("star puts the center last") {
    auto net = generate(gen::Star{4, 2, 1, {q(1, 2), 1, q(3, 2), 0}});
    CHECK(net.obligations_of(3).size() == 3);
    CHECK(net.owed(0, 3) == 2);
    CHECK(net.owed(3, 0) == 1);
    CHECK(net.p(2) == q(3, 2));
  }

  TEST_CASE("core periphery layout") {
    auto net = generate(gen::CorePeriphery{2, 2, 3, 2, 1, {1, 0}, q(1, 2)});
    CHECK(net.size() == 6);
    CHECK(net.owed(0, 1) == 3);
    CHECK(net.owed(2, 0) == 2);
    CHECK(net.owed(0, 2) == 1);
    CHECK(net.owed(4, 1) == 2);
    CHECK(net.p(5) == q(1, 2));
  }

  TEST_CASE("partition translator") {
    auto net = generate(gen::FromPartition{{3, 1, 2, 2}, 20});
    CHECK(net.size() == 5);
    CHECK(net.owed(0, 4) == 3);
    CHECK(net.p(0) == 3 - q(3, 20));
    CHECK(net.liabilities(4) - net.p(4) == 4);
    CHECK_THROWS_AS(generate(gen::FromPartition{{3, 1, 2, 2}, 16}), DomainError);
    CHECK_THROWS_AS(generate(gen::FromPartition{{3, 0}, 20}), DomainError);
  }

  TEST_CASE("random generator is deterministic") {
    gen::Random spec;
    spec.n = 6;
    spec.seed = 42;
    spec.weakly_balanced = true;
    auto a = emit_network(generate(spec));
    CHECK(a == emit_network(generate(spec)));
    CHECK(a == read_data("random_seed42.json"));
    spec.seed = 43;
    CHECK(a != emit_network(generate(spec)));
    auto net = generate(spec);
    CHECK(is_weakly_balanced(net));
  }
}
