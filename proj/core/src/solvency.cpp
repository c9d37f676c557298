#include "contagion/solvency.hpp"

#include <algorithm>

namespace contagion {

BankSet SolvencySetTrace::members() const {
  BankSet s;
  for (std::size_t i = 0; i < solvent.size(); ++i) {
    if (solvent[i]) s.push_back(i);
  }
  return s;
}

bool SolvencySetTrace::covers_all() const {
  return std::all_of(solvent.begin(), solvent.end(), [](bool b) { return b; });
}

SolvencySetTrace cascade_closure(const FinancialNetwork& net, const BankSet& seed) {
  return cascade_closure(net, seed, {});
}

SolvencySetTrace cascade_closure(const FinancialNetwork& net, const BankSet& seed_in,
                                 const std::vector<Amount>& extra_cash) {
  const std::size_t n = net.size();
  SolvencySetTrace trace;
  trace.seed = normalize_set(seed_in);
  trace.solvent = membership(trace.seed, n);

  std::vector<Amount> held(n);
  for (BankIndex i = 0; i < n; ++i) {
    held[i] = net.p(i);
    if (!extra_cash.empty()) held[i] += extra_cash[i];
  }
  auto pay_out = [&](BankIndex j) {
    for (std::size_t e : net.obligations_of(j)) held[net.debts()[e].creditor] += net.debts()[e].amount;
  };
  for (BankIndex j : trace.seed) pay_out(j);

  while (true) {
    BankSet layer;
    for (BankIndex i = 0; i < n; ++i) {
      if (!trace.solvent[i] && held[i] >= net.liabilities(i)) layer.push_back(i);
    }
    if (layer.empty()) break;
    for (BankIndex i : layer) trace.solvent[i] = true;
    for (BankIndex i : layer) pay_out(i);
    trace.layers.push_back(std::move(layer));
  }
  return trace;
}

SolvencySetTrace max_iss_set(const FinancialNetwork& net) { return cascade_closure(net, {}); }

SolvencyDiagnosis diagnose(const FinancialNetwork& net, std::size_t cycle_cap) {
  SolvencyDiagnosis d;
  auto balance = classify_balance(net);
  d.weakly_balanced = balance.all_weak;
  for (BankIndex i = 0; i < net.size(); ++i) {
    if (balance.banks[i].unilaterally_solvent) d.unilaterally_solvent.push_back(i);
  }
  auto iss = max_iss_set(net);
  d.max_iss = iss.members();
  d.cycles = simple_cycles(net, cycle_cap);
  for (std::size_t c = 0; c < d.cycles.count(); ++c) {
    const auto& banks = d.cycles.cycles[c].banks;
    bool covered = std::any_of(banks.begin(), banks.end(), [&](BankIndex i) { return iss.solvent[i]; });
    if (!covered) d.uncovered_cycles.push_back(c);
  }
  d.best_all_solvent = d.weakly_balanced;
  d.worst_all_solvent = d.weakly_balanced && d.uncovered_cycles.empty();

  d.multi_cycle_banks_critical = true;
  for (BankIndex i = 0; i < net.size(); ++i) {
    if (d.cycles.on_multiple_cycles(i) && !balance.banks[i].critically_balanced) d.multi_cycle_banks_critical = false;
  }
  d.every_cycle_has_unilateral = std::all_of(d.cycles.cycles.begin(), d.cycles.cycles.end(), [&](const Cycle& c) {
    return std::any_of(c.banks.begin(), c.banks.end(),
                       [&](BankIndex i) { return balance.banks[i].unilaterally_solvent; });
  });
  return d;
}

}  // namespace contagion
