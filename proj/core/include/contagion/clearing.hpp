#pragma once

#include <cstddef>
#include <vector>

#include "contagion/network.hpp"

namespace contagion {

struct Equilibrium {
  std::vector<Value> values;     // V_i
  std::vector<bool> defaulted;   // p_i + d_i^A < D_i^L
  std::vector<Amount> paid;      // realized payment on each debt, aligned with net.debts()
  std::vector<Amount> received;  // d_i^A
  std::vector<Amount> costs;     // b_i

  BankSet defaults() const;
};

struct EquilibriumSet {
  std::vector<Equilibrium> members;  // sorted by (number of defaults, default bitmask)
  std::size_t best = 0;
  std::size_t worst = 0;
};

enum class FixedPointSide { Greatest, Least };

struct PaymentSolution {
  std::vector<Amount> paid;       // aligned with net.debts()
  std::vector<Amount> outflow;    // total paid by each bank
  std::vector<Amount> received;   // d_i^A
  bool consistent = false;
};

// Payments when exactly the banks in `defaults` are treated as defaulters.
// Throws DomainError if the restricted payment system is singular.
PaymentSolution payments_given_defaults(const FinancialNetwork& net, const BankSet& defaults,
                                        FixedPointSide side = FixedPointSide::Greatest);

Equilibrium best_equilibrium(const FinancialNetwork& net);
Equilibrium worst_equilibrium(const FinancialNetwork& net);
bool verify_equilibrium(const FinancialNetwork& net, const std::vector<Value>& values);

// One application of the value map V -> p + d^A(V) - D^L - b(V, p).
std::vector<Value> value_map(const FinancialNetwork& net, const std::vector<Value>& values);

struct EnumerationOptions {
  std::size_t max_banks = 20;
  unsigned threads = 1;
};

EquilibriumSet enumerate_equilibria(const FinancialNetwork& net, const EnumerationOptions& options = {});

}  // namespace contagion
