#pragma once

#include <cstddef>
#include <string>
#include <variant>

#include "contagion/bailout.hpp"
#include "contagion/network.hpp"

namespace contagion {

namespace structure {

struct DisjointCycles {};

// Every peripheral owes the center d_in and is owed d_out by it.
struct Star {
  BankIndex center = 0;
  Amount d_in;
  Amount d_out;
};

struct CorePeriphery {
  BankSet core;
  Amount d_core;
  Amount d_in;
  Amount d_out;
  std::size_t n_p = 0;
};

// Complete graph with a uniform debt between every ordered pair.
struct Clique {
  Amount d_core;
};

struct General {};

}  // namespace structure

using StructureTag = std::variant<structure::DisjointCycles, structure::Star, structure::CorePeriphery,
                                  structure::Clique, structure::General>;

std::string structure_name(const StructureTag& tag);

// Most specific tag, tried in the order DisjointCycles, Star, Clique, CorePeriphery.
// All structured tags require a weakly balanced network.
StructureTag detect_structure(const FinancialNetwork& net, std::size_t cycle_cap = kDefaultCycleCap);

// Walks cycles in tier order and bails the cheapest bank of each cycle still outside the closure.
BailoutPolicy disjoint_cycles_policy(const FinancialNetwork& net, std::size_t cycle_cap = kDefaultCycleCap);

BailoutPolicy star_policy(const FinancialNetwork& net);

// Also accepts cliques (no peripherals). Core banks are restored one at a time, each by the
// star rule, in the order that minimizes the total.
BailoutPolicy core_periphery_policy(const FinancialNetwork& net);

struct RoutedBailout {
  StructureTag tag;
  BailoutResult result;
};

// Closed-form policy when a structure is detected, exact search otherwise.
RoutedBailout auto_bailout(const FinancialNetwork& net, const SolverParams& params = {});

}  // namespace contagion
