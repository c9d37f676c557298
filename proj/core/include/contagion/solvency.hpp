#pragma once

#include <cstddef>
#include <vector>

#include "contagion/cycles.hpp"
#include "contagion/network.hpp"

namespace contagion {

struct SolvencySetTrace {
  BankSet seed;                  // X
  std::vector<BankSet> layers;   // S^0(X), S^1(X), ...
  std::vector<bool> solvent;     // membership of S(X)

  BankSet members() const;
  bool covers_all() const;
};

// S(X): banks made solvent by the full payments of X, directly or through repayment chains.
// A bank joins when p_i + sum over solvent debtors of D_ij >= D_i^L.
SolvencySetTrace cascade_closure(const FinancialNetwork& net, const BankSet& seed);

// Same cascade with extra per-bank cash added to p (used for injections and guarantees).
SolvencySetTrace cascade_closure(const FinancialNetwork& net, const BankSet& seed,
                                 const std::vector<Amount>& extra_cash);

SolvencySetTrace max_iss_set(const FinancialNetwork& net);

struct SolvencyDiagnosis {
  bool weakly_balanced = false;
  BankSet unilaterally_solvent;
  BankSet max_iss;
  CycleSet cycles;
  std::vector<std::size_t> uncovered_cycles;
  bool best_all_solvent = false;
  bool worst_all_solvent = false;

  // Specialization for networks where every bank on two or more cycles is critically balanced.
  bool multi_cycle_banks_critical = false;
  bool every_cycle_has_unilateral = false;
};

SolvencyDiagnosis diagnose(const FinancialNetwork& net, std::size_t cycle_cap = kDefaultCycleCap);

}  // namespace contagion
