#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "contagion/io.hpp"
#include "contagion/network.hpp"

namespace fixtures {

using namespace contagion;

inline Rational q(long num, long den = 1) { return make_rational(num, den); }

// Ids below are 1-based.
inline Debt owes(std::size_t debtor, std::size_t creditor, Rational amount) {
  return {debtor - 1, creditor - 1, std::move(amount)};
}

inline FinancialNetwork make(std::vector<Rational> p, std::vector<Debt> debts, CostSpec costs = CostSpec::full(),
                             std::vector<Rational> ext = {}) {
  if (ext.empty()) ext.assign(p.size(), Rational(0));
  return FinancialNetwork(std::move(p), std::move(ext), std::move(debts), std::move(costs));
}

// Three banks, two reciprocal unit debts through bank 2, half of assets lost on default.
inline FinancialNetwork shared_pairs() {
  return make({1, 0, 0}, {owes(1, 2, 1), owes(2, 1, 1), owes(2, 3, 1), owes(3, 2, 1)},
              CostSpec::canonical(q(1, 2), 0));
}

inline FinancialNetwork three_equilibria() {
  return make({0, 1, 1, 0},
              {owes(1, 2, 1), owes(2, 1, 1), owes(2, 3, q(3, 4)), owes(3, 2, q(1, 4)), owes(3, 4, 1), owes(4, 3, 1)});
}

inline FinancialNetwork five_bank_chain() {
  return make({0, 0, 1, 1, 0}, {owes(1, 2, 1), owes(2, 3, 2), owes(3, 2, 1), owes(3, 4, q(3, 4)),
                                owes(4, 3, q(1, 4)), owes(4, 5, 1), owes(5, 4, 1)});
}

inline FinancialNetwork reciprocal_pair(Rational d = 1, Rational p1 = 0, Rational p2 = 0) {
  return make({p1, p2}, {owes(1, 2, d), owes(2, 1, d)});
}

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(CONTAGION_TEST_DATA) + "/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline FinancialNetwork load(const std::string& name) { return parse_network(read_data(name)); }

}  // namespace fixtures
