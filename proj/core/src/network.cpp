#include "contagion/network.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <utility>

namespace contagion {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& s : parts) {
    if (!out.empty()) out += "; ";
    out += s;
  }
  return out;
}

}  // namespace

CostSpec CostSpec::canonical(Rational a, Rational b) {
  if (a < 0 || a > 1) throw DomainError("cost share a must lie in [0, 1], got " + to_fraction(a));
  if (b < 0) throw DomainError("fixed cost b must be nonnegative, got " + to_fraction(b));
  CostSpec c;
  c.kind = Kind::Canonical;
  c.a = std::move(a);
  c.b = std::move(b);
  return c;
}

bool operator==(const CostSpec& x, const CostSpec& y) {
  if (x.kind != y.kind) return false;
  return x.kind == CostSpec::Kind::Full || (x.a == y.a && x.b == y.b);
}

ValidationError::ValidationError(std::vector<std::string> problems)
    : DomainError("invalid network: " + join(problems)), problems_(std::move(problems)) {}

FinancialNetwork::FinancialNetwork(std::vector<Amount> p, std::vector<Amount> ext_liability,
                                   std::vector<Debt> debts, CostSpec costs)
    : p_(std::move(p)), ext_(std::move(ext_liability)), debts_(std::move(debts)), costs_(std::move(costs)) {
  std::vector<std::string> problems;
  const std::size_t n = p_.size();
  if (ext_.size() != n) problems.push_back("ext_liability has " + std::to_string(ext_.size()) +
                                           " entries for " + std::to_string(n) + " banks");
  if (costs_.kind == CostSpec::Kind::Canonical && (costs_.a < 0 || costs_.a > 1 || costs_.b < 0)) {
    problems.push_back("cost parameters out of range");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(p_[i]) < 0) problems.push_back("bank " + std::to_string(i + 1) + ": negative p");
    if (i < ext_.size() && sgn(ext_[i]) < 0) {
      problems.push_back("bank " + std::to_string(i + 1) + ": negative ext_liability");
    }
  }
  std::sort(debts_.begin(), debts_.end(), [](const Debt& x, const Debt& y) {
    return std::pair(x.debtor, x.creditor) < std::pair(y.debtor, y.creditor);
  });
  for (std::size_t e = 0; e < debts_.size(); ++e) {
    const auto& d = debts_[e];
    std::string tag = "debt " + std::to_string(d.debtor + 1) + "->" + std::to_string(d.creditor + 1);
    if (d.debtor >= n || d.creditor >= n) problems.push_back(tag + ": unknown bank id");
    if (d.debtor == d.creditor) problems.push_back(tag + ": self-edge");
    if (sgn(d.amount) <= 0) problems.push_back(tag + ": amount must be positive");
    if (e > 0 && debts_[e - 1].debtor == d.debtor && debts_[e - 1].creditor == d.creditor) {
      problems.push_back(tag + ": duplicate edge");
    }
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));

  for (auto& x : p_) x.canonicalize();
  for (auto& x : ext_) x.canonicalize();
  assets_.assign(n, Amount(0));
  liabilities_ = ext_;
  claims_.assign(n, {});
  obligations_.assign(n, {});
  for (std::size_t e = 0; e < debts_.size(); ++e) {
    auto& d = debts_[e];
    d.amount.canonicalize();
    assets_[d.creditor] += d.amount;
    liabilities_[d.debtor] += d.amount;
    obligations_[d.debtor].push_back(e);
  }
  // claims_ ordered by debtor: debts_ is sorted by debtor first.
  for (std::size_t e = 0; e < debts_.size(); ++e) claims_[debts_[e].creditor].push_back(e);
}

Amount FinancialNetwork::owed(BankIndex debtor, BankIndex creditor) const {
  if (debtor >= size()) return Amount(0);
  for (std::size_t e : obligations_[debtor]) {
    if (debts_[e].creditor == creditor) return debts_[e].amount;
  }
  return Amount(0);
}

FinancialNetwork FinancialNetwork::with_portfolio(std::vector<Amount> p) const {
  return FinancialNetwork(std::move(p), ext_, debts_, costs_);
}

FinancialNetwork FinancialNetwork::with_costs(CostSpec costs) const {
  return FinancialNetwork(p_, ext_, debts_, std::move(costs));
}

FinancialNetwork FinancialNetwork::with_debts(std::vector<Debt> debts) const {
  return FinancialNetwork(p_, ext_, std::move(debts), costs_);
}

bool operator==(const FinancialNetwork& x, const FinancialNetwork& y) {
  if (x.p_ != y.p_ || x.ext_ != y.ext_ || !(x.costs_ == y.costs_)) return false;
  if (x.debts_.size() != y.debts_.size()) return false;
  for (std::size_t e = 0; e < x.debts_.size(); ++e) {
    const auto& a = x.debts_[e];
    const auto& b = y.debts_[e];
    if (a.debtor != b.debtor || a.creditor != b.creditor || a.amount != b.amount) return false;
  }
  return true;
}

FinancialNetwork validate_network(const RawNetwork& raw) {
  std::vector<std::string> problems;
  const std::size_t n = raw.banks.size();
  if (n == 0) problems.push_back("network has no banks");

  std::vector<Amount> p(n), ext(n);
  std::vector<bool> seen(n, false);
  for (const auto& b : raw.banks) {
    if (b.id < 1 || static_cast<std::size_t>(b.id) > n) {
      problems.push_back("bank id " + std::to_string(b.id) + " outside 1.." + std::to_string(n));
      continue;
    }
    auto i = static_cast<std::size_t>(b.id - 1);
    if (seen[i]) {
      problems.push_back("bank id " + std::to_string(b.id) + " listed twice");
      continue;
    }
    seen[i] = true;
    if (sgn(b.p) < 0) problems.push_back("bank " + std::to_string(b.id) + ": negative p " + to_fraction(b.p));
    if (sgn(b.ext_liability) < 0) {
      problems.push_back("bank " + std::to_string(b.id) + ": negative ext_liability " +
                         to_fraction(b.ext_liability));
    }
    p[i] = b.p;
    ext[i] = b.ext_liability;
  }

  std::set<std::pair<long, long>> pairs;
  std::vector<Debt> debts;
  for (const auto& d : raw.debts) {
    std::string tag = "debt " + std::to_string(d.debtor) + "->" + std::to_string(d.creditor);
    bool ok = true;
    for (long id : {d.debtor, d.creditor}) {
      if (id < 1 || static_cast<std::size_t>(id) > n) {
        problems.push_back(tag + ": unknown bank id " + std::to_string(id));
        ok = false;
      }
    }
    if (d.debtor == d.creditor) {
      problems.push_back(tag + ": self-edge");
      ok = false;
    }
    if (sgn(d.amount) < 0) {
      problems.push_back(tag + ": negative amount " + to_fraction(d.amount));
      ok = false;
    } else if (sgn(d.amount) == 0) {
      problems.push_back(tag + ": zero amount");
      ok = false;
    }
    if (!pairs.insert({d.debtor, d.creditor}).second) {
      problems.push_back(tag + ": duplicate edge");
      ok = false;
    }
    if (ok) {
      debts.push_back({static_cast<BankIndex>(d.debtor - 1), static_cast<BankIndex>(d.creditor - 1), d.amount});
    }
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
  return FinancialNetwork(std::move(p), std::move(ext), std::move(debts), raw.costs);
}

BalanceReport classify_balance(const FinancialNetwork& net) {
  BalanceReport report;
  report.all_weak = report.all_exact = report.all_critical = true;
  for (BankIndex i = 0; i < net.size(); ++i) {
    BankBalance b;
    const Amount& p = net.p(i);
    const Amount& da = net.assets(i);
    const Amount& dl = net.liabilities(i);
    Amount held = p + da;
    b.weakly_balanced = held >= dl;
    b.exactly_balanced = held == dl;
    b.critically_balanced = b.weakly_balanced;
    for (std::size_t e : net.claims_of(i)) {
      if (held - net.debts()[e].amount >= dl) {
        b.critically_balanced = false;
        break;
      }
    }
    b.unilaterally_solvent = p >= dl;
    b.deficit = positive_part(dl - da - p);
    b.shortfall = positive_part(dl - p);
    report.all_weak = report.all_weak && b.weakly_balanced;
    report.all_exact = report.all_exact && b.exactly_balanced;
    report.all_critical = report.all_critical && b.critically_balanced;
    report.banks.push_back(std::move(b));
  }
  return report;
}

bool is_weakly_balanced(const FinancialNetwork& net) {
  for (BankIndex i = 0; i < net.size(); ++i) {
    if (net.p(i) + net.assets(i) < net.liabilities(i)) return false;
  }
  return true;
}

std::vector<Amount> net_imbalance_injections(const FinancialNetwork& net) {
  std::vector<Amount> t(net.size());
  for (BankIndex i = 0; i < net.size(); ++i) {
    t[i] = positive_part(net.liabilities(i) - net.assets(i) - net.p(i));
  }
  return t;
}

namespace {

// Shortest directed cycle in the residual graph; ties go to the smallest bank sequence.
std::vector<BankIndex> shortest_cycle(std::size_t n, const std::map<std::pair<BankIndex, BankIndex>, Amount>& residual) {
  std::vector<std::vector<BankIndex>> out(n);
  for (const auto& [edge, amount] : residual) out[edge.first].push_back(edge.second);

  std::vector<BankIndex> best;
  for (BankIndex s = 0; s < n; ++s) {
    std::vector<long> parent(n, -1);
    std::vector<std::size_t> depth(n, 0);
    std::vector<bool> visited(n, false);
    std::deque<BankIndex> queue{s};
    visited[s] = true;
    std::vector<BankIndex> found;
    while (!queue.empty() && found.empty()) {
      BankIndex u = queue.front();
      queue.pop_front();
      if (!best.empty() && depth[u] + 1 > best.size()) break;
      for (BankIndex v : out[u]) {
        if (v == s) {
          for (BankIndex w = u; w != s; w = static_cast<BankIndex>(parent[w])) found.push_back(w);
          found.push_back(s);
          std::reverse(found.begin(), found.end());
          break;
        }
        if (v < s || visited[v]) continue;
        visited[v] = true;
        parent[v] = static_cast<long>(u);
        depth[v] = depth[u] + 1;
        queue.push_back(v);
      }
    }
    if (found.empty()) continue;
    if (best.empty() || found.size() < best.size() || (found.size() == best.size() && found < best)) {
      best = std::move(found);
    }
  }
  return best;
}

}  // namespace

FinancialNetwork compress(const FinancialNetwork& net) {
  std::map<std::pair<BankIndex, BankIndex>, Amount> residual;
  for (const auto& d : net.debts()) residual[{d.debtor, d.creditor}] = d.amount;

  while (true) {
    auto cycle = shortest_cycle(net.size(), residual);
    if (cycle.empty()) break;
    std::vector<std::pair<BankIndex, BankIndex>> edges;
    for (std::size_t k = 0; k < cycle.size(); ++k) edges.emplace_back(cycle[k], cycle[(k + 1) % cycle.size()]);
    Amount m = residual.at(edges.front());
    for (const auto& e : edges) m = std::min(m, residual.at(e));
    for (const auto& e : edges) {
      auto it = residual.find(e);
      it->second -= m;
      if (sgn(it->second) == 0) residual.erase(it);
    }
  }

  std::vector<Debt> debts;
  for (const auto& [edge, amount] : residual) debts.push_back({edge.first, edge.second, amount});
  return net.with_debts(std::move(debts));
}

BankSet normalize_set(BankSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::vector<bool> membership(const BankSet& s, std::size_t n) {
  std::vector<bool> in(n, false);
  for (BankIndex i : s) {
    if (i >= n) throw DomainError("bank id " + std::to_string(i + 1) + " out of range");
    in[i] = true;
  }
  return in;
}

Reduction reduce_modulo_solvent(const FinancialNetwork& net, const BankSet& solvent,
                                const std::vector<Amount>& transfers) {
  const std::size_t n = net.size();
  std::vector<Amount> t = transfers;
  if (t.empty()) t.assign(n, Amount(0));
  if (t.size() != n) throw DomainError("transfer vector has " + std::to_string(t.size()) + " entries, expected " +
                                       std::to_string(n));
  for (const auto& x : t) {
    if (sgn(x) < 0) throw DomainError("transfers must be nonnegative");
  }
  auto in_s = membership(solvent, n);

  std::vector<std::string> failing;
  for (BankIndex i = 0; i < n; ++i) {
    if (!in_s[i]) continue;
    Amount held = net.p(i) + t[i];
    for (std::size_t e : net.claims_of(i)) {
      if (in_s[net.debts()[e].debtor]) held += net.debts()[e].amount;
    }
    if (held < net.liabilities(i)) failing.push_back(std::to_string(i + 1));
  }
  if (!failing.empty()) {
    std::string list;
    for (const auto& f : failing) list += (list.empty() ? "" : ", ") + f;
    throw DomainError("banks not solvent under the stated transfers: " + list);
  }

  std::vector<BankIndex> original;
  std::vector<long> relabel(n, -1);
  for (BankIndex i = 0; i < n; ++i) {
    if (!in_s[i]) {
      relabel[i] = static_cast<long>(original.size());
      original.push_back(i);
    }
  }
  std::vector<Amount> p(original.size()), ext(original.size());
  for (std::size_t k = 0; k < original.size(); ++k) {
    p[k] = net.p(original[k]) + t[original[k]];
    ext[k] = net.ext_liability(original[k]);
  }
  std::vector<Debt> debts;
  for (const auto& d : net.debts()) {
    bool debtor_kept = !in_s[d.debtor];
    bool creditor_kept = !in_s[d.creditor];
    if (debtor_kept && creditor_kept) {
      debts.push_back({static_cast<BankIndex>(relabel[d.debtor]), static_cast<BankIndex>(relabel[d.creditor]), d.amount});
    } else if (creditor_kept) {
      p[relabel[d.creditor]] += d.amount;
    } else if (debtor_kept) {
      ext[relabel[d.debtor]] += d.amount;
    }
  }
  return {FinancialNetwork(std::move(p), std::move(ext), std::move(debts), net.costs()), std::move(original)};
}

}  // namespace contagion
