#include "contagion/cycles.hpp"

#include <algorithm>
#include <deque>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/hawick_circuits.hpp>
#include <boost/graph/strong_components.hpp>

namespace contagion {

namespace {

using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;

Graph debt_graph(const FinancialNetwork& net) {
  Graph g(net.size());
  for (const auto& d : net.debts()) boost::add_edge(d.debtor, d.creditor, g);
  return g;
}

struct CapReached {};

struct Collector {
  std::vector<Cycle>* out;
  std::size_t cap;

  template <typename Path, typename G>
  void cycle(const Path& path, const G&) {
    if (out->size() >= cap) throw CapReached{};
    Cycle c;
    c.banks.assign(path.begin(), path.end());
    auto smallest = std::min_element(c.banks.begin(), c.banks.end());
    std::rotate(c.banks.begin(), smallest, c.banks.end());
    out->push_back(std::move(c));
  }
};

std::vector<std::vector<BankIndex>> successors(const FinancialNetwork& net) {
  std::vector<std::vector<BankIndex>> out(net.size());
  for (const auto& d : net.debts()) out[d.debtor].push_back(d.creditor);
  return out;
}

}  // namespace

bool Cycle::contains(BankIndex i) const { return std::find(banks.begin(), banks.end(), i) != banks.end(); }

CycleCapExceeded::CycleCapExceeded(std::size_t cap)
    : DomainError("cycle cap exceeded: more than " + std::to_string(cap) + " simple cycles"), lower_bound_(cap + 1) {}

CycleSet simple_cycles(const FinancialNetwork& net, std::size_t cap) {
  CycleSet set;
  Graph g = debt_graph(net);
  try {
    boost::hawick_unique_circuits(g, Collector{&set.cycles, cap});
  } catch (const CapReached&) {
    throw CycleCapExceeded(cap);
  }
  std::sort(set.cycles.begin(), set.cycles.end());
  set.cycles.erase(std::unique(set.cycles.begin(), set.cycles.end()), set.cycles.end());
  set.by_bank.assign(net.size(), {});
  for (std::size_t k = 0; k < set.cycles.size(); ++k) {
    for (BankIndex i : set.cycles[k].banks) set.by_bank[i].push_back(k);
  }
  return set;
}

std::vector<BankSet> strongly_connected_components(const FinancialNetwork& net) {
  Graph g = debt_graph(net);
  std::vector<int> component(net.size());
  int count = net.size() == 0 ? 0 : boost::strong_components(g, component.data());
  std::vector<BankSet> groups(static_cast<std::size_t>(count));
  for (BankIndex i = 0; i < net.size(); ++i) groups[static_cast<std::size_t>(component[i])].push_back(i);
  std::sort(groups.begin(), groups.end(), [](const BankSet& x, const BankSet& y) { return x.front() < y.front(); });
  return groups;
}

bool has_dependency_cycle(const FinancialNetwork& net) {
  for (const auto& c : strongly_connected_components(net)) {
    if (c.size() > 1) return true;
  }
  return false;
}

std::vector<std::size_t> cycle_tiers(const FinancialNetwork& net, const CycleSet& cycles) {
  const std::size_t k = cycles.count();
  std::vector<long> owner(net.size(), -1);
  for (std::size_t c = 0; c < k; ++c) {
    for (BankIndex i : cycles.cycles[c].banks) {
      if (owner[i] >= 0) {
        throw DomainError("cycles not disjoint: bank " + std::to_string(i + 1) + " lies on two cycles");
      }
      owner[i] = static_cast<long>(c);
    }
  }

  auto next = successors(net);
  std::vector<std::vector<bool>> reaches(k, std::vector<bool>(k, false));
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<bool> seen(net.size(), false);
    std::deque<BankIndex> queue(cycles.cycles[c].banks.begin(), cycles.cycles[c].banks.end());
    for (BankIndex i : queue) seen[i] = true;
    while (!queue.empty()) {
      BankIndex u = queue.front();
      queue.pop_front();
      for (BankIndex v : next[u]) {
        if (seen[v]) continue;
        seen[v] = true;
        queue.push_back(v);
        if (owner[v] >= 0 && static_cast<std::size_t>(owner[v]) != c) reaches[c][static_cast<std::size_t>(owner[v])] = true;
      }
    }
  }

  std::vector<std::size_t> order;
  std::vector<bool> placed(k, false);
  while (order.size() < k) {
    std::vector<std::size_t> tier;
    for (std::size_t c = 0; c < k; ++c) {
      if (placed[c]) continue;
      bool blocked = false;
      for (std::size_t o = 0; o < k && !blocked; ++o) blocked = !placed[o] && o != c && reaches[o][c];
      if (!blocked) tier.push_back(c);
    }
    if (tier.empty()) throw DomainError("cycles are mutually reachable; no tier ordering exists");
    std::sort(tier.begin(), tier.end(), [&](std::size_t x, std::size_t y) {
      return cycles.cycles[x].banks.front() < cycles.cycles[y].banks.front();
    });
    for (std::size_t c : tier) {
      placed[c] = true;
      order.push_back(c);
    }
  }
  return order;
}

}  // namespace contagion
