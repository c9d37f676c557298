#pragma once

// Independent reference implementations used to check the library. They favour obviousness
// over speed and share no code with the solvers they check.

#include <cstdint>
#include <optional>
#include <vector>

#include "contagion/network.hpp"

namespace oracle {

using contagion::Amount;
using contagion::BankIndex;
using contagion::FinancialNetwork;

// Banks solvent once `bailed` pay in full, by plain fixed-point iteration.
std::vector<bool> closure(const FinancialNetwork& net, const std::vector<BankIndex>& bailed);

// Minimum total over every admissible ordered policy with closure-minimal injections.
Amount min_bailout_total(const FinancialNetwork& net);

// Simple cycles found by depth-first path walks from each smallest member.
std::vector<std::vector<BankIndex>> simple_cycles(const FinancialNetwork& net);

// Minimum total amount of a debt set meeting every simple cycle, by exhaustive search over edge subsets.
Amount min_cycle_hitting_set(const FinancialNetwork& net);

bool has_equal_partition(const std::vector<long>& multiset);

// One application of the clearing value map, written directly from the definitions.
std::vector<Amount> value_map(const FinancialNetwork& net, const std::vector<Amount>& values);

bool is_fixed_point(const FinancialNetwork& net, const std::vector<Amount>& values);

}  // namespace oracle
