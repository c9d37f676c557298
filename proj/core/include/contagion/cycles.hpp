#pragma once

#include <cstddef>
#include <vector>

#include "contagion/network.hpp"

namespace contagion {

// A simple directed cycle listed as banks[0] -> banks[1] -> ... -> banks[0], with banks[0] the
// smallest index on the cycle. Edges run debtor -> creditor.
struct Cycle {
  std::vector<BankIndex> banks;

  std::size_t length() const { return banks.size(); }
  BankIndex debtor(std::size_t k) const { return banks[k]; }
  BankIndex creditor(std::size_t k) const { return banks[(k + 1) % banks.size()]; }
  bool contains(BankIndex i) const;
  friend bool operator<(const Cycle& x, const Cycle& y) { return x.banks < y.banks; }
  friend bool operator==(const Cycle& x, const Cycle& y) { return x.banks == y.banks; }
};

struct CycleSet {
  std::vector<Cycle> cycles;                       // sorted lexicographically
  std::vector<std::vector<std::size_t>> by_bank;   // cycle indices through each bank

  std::size_t count() const { return cycles.size(); }
  bool on_multiple_cycles(BankIndex i) const { return by_bank[i].size() >= 2; }
};

class CycleCapExceeded : public DomainError {
 public:
  explicit CycleCapExceeded(std::size_t cap);
  std::size_t lower_bound() const { return lower_bound_; }

 private:
  std::size_t lower_bound_;
};

inline constexpr std::size_t kDefaultCycleCap = 10000;

CycleSet simple_cycles(const FinancialNetwork& net, std::size_t cap = kDefaultCycleCap);
bool has_dependency_cycle(const FinancialNetwork& net);

// Strongly connected components of the debt graph, each sorted, listed by smallest member.
std::vector<BankSet> strongly_connected_components(const FinancialNetwork& net);

// Cycle indices ordered so that no directed path runs from a later cycle to an earlier one.
// Throws DomainError if two cycles share a bank.
std::vector<std::size_t> cycle_tiers(const FinancialNetwork& net, const CycleSet& cycles);

}  // namespace contagion
