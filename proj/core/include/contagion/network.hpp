#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "contagion/rational.hpp"

namespace contagion {

// Banks are addressed by 0-based indices inside the library. Documents, reports and the
// command line use 1-based ids; bank id k is index k - 1 and id 0 is the outside sector.
using BankIndex = std::size_t;
using BankSet = std::vector<BankIndex>;  // sorted, no duplicates

struct CostSpec {
  enum class Kind { Canonical, Full };

  Kind kind = Kind::Full;
  Rational a = 1;
  Rational b = 0;

  static CostSpec full() { return {}; }
  static CostSpec canonical(Rational a, Rational b);

  // Proportional and fixed parts of beta = b + a * (p + d^A); Full is a = 1, b = 0.
  Rational share() const { return kind == Kind::Full ? Rational(1) : a; }
  Rational fixed() const { return kind == Kind::Full ? Rational(0) : b; }
};

bool operator==(const CostSpec& x, const CostSpec& y);

struct Debt {
  BankIndex debtor = 0;
  BankIndex creditor = 0;
  Amount amount;
};

// Unvalidated description with 1-based ids, as produced by a parser or a caller.
struct RawNetwork {
  struct Bank {
    long id = 0;
    Rational p;
    Rational ext_liability;
  };
  struct Edge {
    long debtor = 0;
    long creditor = 0;
    Rational amount;
  };
  std::vector<Bank> banks;
  std::vector<Edge> debts;
  CostSpec costs;
};

class ValidationError : public DomainError {
 public:
  explicit ValidationError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

class FinancialNetwork {
 public:
  FinancialNetwork() = default;
  // Throws ValidationError. Edges are stored sorted by (debtor, creditor).
  FinancialNetwork(std::vector<Amount> p, std::vector<Amount> ext_liability, std::vector<Debt> debts,
                   CostSpec costs = CostSpec::full());

  std::size_t size() const { return p_.size(); }
  const Amount& p(BankIndex i) const { return p_[i]; }
  const std::vector<Amount>& portfolio() const { return p_; }
  const Amount& ext_liability(BankIndex i) const { return ext_[i]; }
  const std::vector<Amount>& ext_liabilities() const { return ext_; }
  // D_i^A: total claims held by i.
  const Amount& assets(BankIndex i) const { return assets_[i]; }
  // D_i^L: interbank debts owed by i plus its external liability.
  const Amount& liabilities(BankIndex i) const { return liabilities_[i]; }
  const std::vector<Debt>& debts() const { return debts_; }
  const CostSpec& costs() const { return costs_; }

  // D_{creditor,debtor}; zero when there is no such debt.
  Amount owed(BankIndex debtor, BankIndex creditor) const;
  // Edge positions (into debts()) where i is the creditor, ordered by debtor.
  const std::vector<std::size_t>& claims_of(BankIndex i) const { return claims_[i]; }
  // Edge positions where i is the debtor, ordered by creditor.
  const std::vector<std::size_t>& obligations_of(BankIndex i) const { return obligations_[i]; }

  FinancialNetwork with_portfolio(std::vector<Amount> p) const;
  FinancialNetwork with_costs(CostSpec costs) const;
  FinancialNetwork with_debts(std::vector<Debt> debts) const;

  friend bool operator==(const FinancialNetwork& x, const FinancialNetwork& y);

 private:
  std::vector<Amount> p_;
  std::vector<Amount> ext_;
  std::vector<Debt> debts_;
  CostSpec costs_;
  std::vector<Amount> assets_;
  std::vector<Amount> liabilities_;
  std::vector<std::vector<std::size_t>> claims_;
  std::vector<std::vector<std::size_t>> obligations_;
};

// Checks every invariant of a raw description and reports all violations at once.
FinancialNetwork validate_network(const RawNetwork& raw);

struct BankBalance {
  bool weakly_balanced = false;
  bool exactly_balanced = false;
  bool critically_balanced = false;
  bool unilaterally_solvent = false;
  Amount deficit;    // (D^L - D^A - p)^+
  Amount shortfall;  // (D^L - p)^+
};

struct BalanceReport {
  std::vector<BankBalance> banks;
  bool all_weak = false;
  bool all_exact = false;
  bool all_critical = false;
};

BalanceReport classify_balance(const FinancialNetwork& net);
bool is_weakly_balanced(const FinancialNetwork& net);

std::vector<Amount> net_imbalance_injections(const FinancialNetwork& net);

// Nets directed cycles (shortest first, ties by bank sequence) until the debt graph is acyclic.
FinancialNetwork compress(const FinancialNetwork& net);

struct Reduction {
  FinancialNetwork network;
  std::vector<BankIndex> original;  // original index of each remaining bank
};

Reduction reduce_modulo_solvent(const FinancialNetwork& net, const BankSet& solvent,
                                const std::vector<Amount>& transfers);

BankSet normalize_set(BankSet s);
std::vector<bool> membership(const BankSet& s, std::size_t n);

}  // namespace contagion
