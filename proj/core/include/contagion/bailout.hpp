#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "contagion/cycles.hpp"
#include "contagion/network.hpp"

namespace contagion {

// Bailout computations use the cascade S(X) in which defaulters pay nothing.

struct BailoutStep {
  BankIndex bank = 0;
  Amount injection;
};

struct BailoutPolicy {
  std::vector<BailoutStep> steps;
  Amount total;

  BankSet banks() const;
  static BailoutPolicy from_steps(std::vector<BailoutStep> steps);
};

struct GuaranteedPayment {
  BankIndex debtor = 0;
  BankIndex creditor = 0;
  Rational weight;  // alpha in [0, 1]
};

struct GuaranteedPaymentSet {
  std::vector<GuaranteedPayment> entries;
  Amount total;
};

enum class Method { Exact, GreedyCost, GreedyFlow, GreedyShortfall };

struct SolverParams {
  Method method = Method::Exact;
  std::size_t cycle_cap = kDefaultCycleCap;
  std::size_t node_budget = 2'000'000;
  std::optional<Amount> budget;
};

struct BailoutResult {
  BailoutPolicy policy;
  bool optimal = false;
  std::size_t nodes = 0;
};

// C_{i|X} = (D_i^L - p_i - sum_{j in S(X)} D_ij)^+
Amount bailout_cost(const FinancialNetwork& net, BankIndex bank, const BankSet& bailed);

struct PolicyEvaluation {
  Amount total;                          // sum of minimal injections along the sequence
  Amount stated_total;                   // sum of the injections written in the policy
  std::vector<Amount> minimal;           // per step
  bool injections_minimal = false;
  bool ensures_solvency = false;         // the stated injections make every bank solvent
  bool valid = false;
};

PolicyEvaluation policy_cost(const FinancialNetwork& net, const BailoutPolicy& policy);

// Minimum-cost policy. Returns the best policy found and whether optimality was proven
// (false only when the node budget runs out).
BailoutResult opt_exact(const FinancialNetwork& net, const SolverParams& params = {});

// True iff some policy restores full solvency at total cost <= budget.
bool opt_decision(const FinancialNetwork& net, const Amount& budget, const SolverParams& params = {});

BailoutPolicy greedy(const FinancialNetwork& net, Method strategy);

BailoutResult solve_bailout(const FinancialNetwork& net, const SolverParams& params);

Amount half_shortfall_bound(const FinancialNetwork& net);

// Sum over cycles of the smallest debt on each cycle.
Amount cheapest_edge_sum(const FinancialNetwork& net, const CycleSet& cycles);

// Minimum-total set of fully guaranteed debts meeting every simple cycle.
GuaranteedPaymentSet min_payment_cover(const FinancialNetwork& net, const CycleSet& cycles);

// Solvency cascade when the regulator pays the guaranteed share of each listed debt.
bool ensures_solvency(const FinancialNetwork& net, const GuaranteedPaymentSet& gps);

GuaranteedPaymentSet policy_to_payments(const FinancialNetwork& net, const BailoutPolicy& policy);
BailoutPolicy payments_to_policy(const FinancialNetwork& net, const GuaranteedPaymentSet& gps);

}  // namespace contagion
