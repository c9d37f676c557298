#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace oracle {

using contagion::Rational;

std::vector<bool> closure(const FinancialNetwork& net, const std::vector<BankIndex>& bailed) {
  const std::size_t n = net.size();
  std::vector<bool> solvent(n, false);
  for (BankIndex i : bailed) solvent[i] = true;
  for (bool grew = true; grew;) {
    grew = false;
    for (BankIndex i = 0; i < n; ++i) {
      if (solvent[i]) continue;
      Amount cash = net.p(i);
      Amount owes = net.ext_liability(i);
      for (const auto& d : net.debts()) {
        if (d.creditor == i && solvent[d.debtor]) cash += d.amount;
        if (d.debtor == i) owes += d.amount;
      }
      if (cash >= owes) {
        solvent[i] = true;
        grew = true;
      }
    }
  }
  return solvent;
}

namespace {

Amount cost_given(const FinancialNetwork& net, BankIndex i, const std::vector<bool>& solvent) {
  Amount need = net.ext_liability(i) - net.p(i);
  for (const auto& d : net.debts()) {
    if (d.debtor == i) need += d.amount;
    if (d.creditor == i && solvent[d.debtor]) need -= d.amount;
  }
  return need > 0 ? need : Amount(0);
}

}  // namespace

Amount min_bailout_total(const FinancialNetwork& net) {
  if (net.size() > 20) throw contagion::DomainError("bailout oracle limited to 20 banks");
  // Future costs depend only on the current solvent set, so the walk over orders is memoised on it.
  std::map<std::uint32_t, Amount> memo;
  std::function<Amount(const std::vector<BankIndex>&)> walk = [&](const std::vector<BankIndex>& seq) -> Amount {
    auto solvent = closure(net, seq);
    std::uint32_t key = 0;
    for (BankIndex i = 0; i < net.size(); ++i) key |= solvent[i] ? (std::uint32_t{1} << i) : 0;
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::optional<Amount> best;
    for (BankIndex i = 0; i < net.size(); ++i) {
      if (solvent[i]) continue;
      auto next = seq;
      next.push_back(i);
      Amount total = cost_given(net, i, solvent) + walk(next);
      if (!best || total < *best) best = total;
    }
    Amount result = best ? *best : Amount(0);
    memo[key] = result;
    return result;
  };
  return walk({});
}

std::vector<std::vector<BankIndex>> simple_cycles(const FinancialNetwork& net) {
  const std::size_t n = net.size();
  std::vector<std::vector<BankIndex>> out;
  std::vector<BankIndex> path;
  std::vector<bool> on_path(n, false);
  std::function<void(BankIndex, BankIndex)> extend = [&](BankIndex start, BankIndex at) {
    for (const auto& d : net.debts()) {
      if (d.debtor != at || d.creditor < start) continue;
      if (d.creditor == start) {
        out.push_back(path);
      } else if (!on_path[d.creditor]) {
        path.push_back(d.creditor);
        on_path[d.creditor] = true;
        extend(start, d.creditor);
        on_path[d.creditor] = false;
        path.pop_back();
      }
    }
  };
  for (BankIndex s = 0; s < n; ++s) {
    path = {s};
    on_path[s] = true;
    extend(s, s);
    on_path[s] = false;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Amount min_cycle_hitting_set(const FinancialNetwork& net) {
  auto cycles = simple_cycles(net);
  const auto& debts = net.debts();
  const std::size_t m = debts.size();
  if (m > 24) throw contagion::DomainError("hitting-set oracle limited to 24 debts");
  auto on_cycle = [&](const std::vector<BankIndex>& c, std::size_t e) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (debts[e].debtor == c[k] && debts[e].creditor == c[(k + 1) % c.size()]) return true;
    }
    return false;
  };
  std::optional<Amount> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    bool all = std::all_of(cycles.begin(), cycles.end(), [&](const auto& c) {
      for (std::size_t e = 0; e < m; ++e) {
        if ((mask >> e & 1) && on_cycle(c, e)) return true;
      }
      return false;
    });
    if (!all) continue;
    Amount total = 0;
    for (std::size_t e = 0; e < m; ++e) {
      if (mask >> e & 1) total += debts[e].amount;
    }
    if (!best || total < *best) best = total;
  }
  return *best;
}

bool has_equal_partition(const std::vector<long>& multiset) {
  long sum = 0;
  for (long a : multiset) sum += a;
  if (sum % 2) return false;
  std::vector<bool> reachable(static_cast<std::size_t>(sum / 2 + 1), false);
  reachable[0] = true;
  for (long a : multiset) {
    for (long s = sum / 2; s >= a; --s) {
      if (reachable[static_cast<std::size_t>(s - a)]) reachable[static_cast<std::size_t>(s)] = true;
    }
  }
  return reachable[static_cast<std::size_t>(sum / 2)];
}

std::vector<Amount> value_map(const FinancialNetwork& net, const std::vector<Amount>& values) {
  const std::size_t n = net.size();
  std::vector<Amount> owed(n, Amount(0));
  for (BankIndex j = 0; j < n; ++j) owed[j] = net.ext_liability(j);
  for (const auto& d : net.debts()) owed[d.debtor] += d.amount;

  std::vector<Amount> received(n, Amount(0));
  for (const auto& d : net.debts()) {
    const BankIndex j = d.debtor;
    Amount available = values[j] + owed[j];
    if (available < 0) available = 0;
    if (available > owed[j]) available = owed[j];
    received[d.creditor] += d.amount * available / owed[j];
  }

  const auto& c = net.costs();
  Rational a = c.kind == contagion::CostSpec::Kind::Full ? Rational(1) : c.a;
  Rational b = c.kind == contagion::CostSpec::Kind::Full ? Rational(0) : c.b;
  std::vector<Amount> next(n);
  for (BankIndex i = 0; i < n; ++i) {
    Amount gross = net.p(i) + received[i];
    Amount loss = gross >= owed[i] ? Amount(0) : Amount(b + a * gross);
    next[i] = gross - owed[i] - loss;
  }
  return next;
}

bool is_fixed_point(const FinancialNetwork& net, const std::vector<Amount>& values) {
  return values.size() == net.size() && value_map(net, values) == values;
}

}  // namespace oracle
