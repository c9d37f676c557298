#include "contagion/bailout.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "contagion/solvency.hpp"

namespace contagion {

BankSet BailoutPolicy::banks() const {
  BankSet s;
  for (const auto& step : steps) s.push_back(step.bank);
  return s;
}

BailoutPolicy BailoutPolicy::from_steps(std::vector<BailoutStep> steps) {
  BailoutPolicy p;
  p.total = 0;
  for (const auto& s : steps) p.total += s.injection;
  p.steps = std::move(steps);
  return p;
}

Amount bailout_cost(const FinancialNetwork& net, BankIndex bank, const BankSet& bailed) {
  if (bank >= net.size()) throw DomainError("bank id " + std::to_string(bank + 1) + " out of range");
  auto closure = cascade_closure(net, bailed);
  Amount c = net.liabilities(bank) - net.p(bank);
  for (std::size_t e : net.claims_of(bank)) {
    if (closure.solvent[net.debts()[e].debtor]) c -= net.debts()[e].amount;
  }
  return positive_part(c);
}

PolicyEvaluation policy_cost(const FinancialNetwork& net, const BailoutPolicy& policy) {
  PolicyEvaluation ev;
  ev.total = 0;
  ev.stated_total = 0;
  ev.injections_minimal = true;
  BankSet bailed;
  std::vector<Amount> cash(net.size(), Amount(0));
  for (const auto& step : policy.steps) {
    if (step.bank >= net.size()) throw DomainError("policy names unknown bank " + std::to_string(step.bank + 1));
    if (std::find(bailed.begin(), bailed.end(), step.bank) != bailed.end()) ev.injections_minimal = false;
    Amount c = bailout_cost(net, step.bank, bailed);
    ev.total += c;
    ev.stated_total += step.injection;
    if (c != step.injection) ev.injections_minimal = false;
    ev.minimal.push_back(std::move(c));
    cash[step.bank] += step.injection;
    bailed.push_back(step.bank);
  }
  ev.ensures_solvency = cascade_closure(net, {}, cash).covers_all();
  ev.valid = ev.injections_minimal && ev.ensures_solvency;
  return ev;
}

namespace {

// Replays a bank sequence with closure-minimal injections.
BailoutPolicy policy_from_sequence(const FinancialNetwork& net, const std::vector<BankIndex>& seq) {
  std::vector<BailoutStep> steps;
  BankSet bailed;
  for (BankIndex i : seq) {
    steps.push_back({i, bailout_cost(net, i, bailed)});
    bailed.push_back(i);
  }
  return BailoutPolicy::from_steps(std::move(steps));
}

struct BudgetExhausted {};

struct Solution {
  Rational cost;
  std::vector<BankIndex> seq;
};

bool better(const Solution& a, const Solution& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  if (a.seq.size() != b.seq.size()) return a.seq.size() < b.seq.size();
  return a.seq < b.seq;
}

// Banks i and k are twins when swapping them is an automorphism of the whole network.
std::vector<std::vector<BankIndex>> twin_classes(const FinancialNetwork& net) {
  const std::size_t n = net.size();
  std::vector<std::map<BankIndex, Amount>> out(n), in(n);
  for (const auto& d : net.debts()) {
    out[d.debtor][d.creditor] = d.amount;
    in[d.creditor][d.debtor] = d.amount;
  }
  auto same_side = [](const std::map<BankIndex, Amount>& x, const std::map<BankIndex, Amount>& y, BankIndex i,
                      BankIndex k) {
    auto strip = [&](const std::map<BankIndex, Amount>& m) {
      std::map<BankIndex, Amount> r = m;
      r.erase(i);
      r.erase(k);
      return r;
    };
    return strip(x) == strip(y);
  };
  auto twins = [&](BankIndex i, BankIndex k) {
    if (net.p(i) != net.p(k) || net.ext_liability(i) != net.ext_liability(k)) return false;
    if (net.assets(i) != net.assets(k) || net.liabilities(i) != net.liabilities(k)) return false;
    if (net.owed(i, k) != net.owed(k, i)) return false;
    return same_side(out[i], out[k], i, k) && same_side(in[i], in[k], i, k);
  };

  std::vector<long> cls(n, -1);
  std::vector<std::vector<BankIndex>> classes;
  for (BankIndex i = 0; i < n; ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = static_cast<long>(classes.size());
    classes.push_back({i});
    for (BankIndex k = i + 1; k < n; ++k) {
      if (cls[k] < 0 && twins(i, k)) {
        cls[k] = cls[i];
        classes.back().push_back(k);
      }
    }
  }
  std::vector<std::vector<BankIndex>> by_bank(n);
  for (const auto& c : classes) {
    for (BankIndex i : c) by_bank[i] = c;
  }
  return by_bank;
}

// Search over sets R of insolvent banks that are closed under insolvent debtors. The cost of
// bailing i depends only on R: D_i^L - p_i - sum_{j not in R} D_ij. Source strongly connected
// components of R are resolved independently; inside a component each member is tried as the next
// bailout, with twin banks collapsed and costs bounded by the incumbent.
class ExactSolver {
 public:
  ExactSolver(const FinancialNetwork& net, std::size_t budget) : net_(net), n_(net.size()), budget_(budget) {
    base_.resize(n_);
    debtors_.resize(n_);
    creditors_.resize(n_);
    for (BankIndex i = 0; i < n_; ++i) base_[i] = net.liabilities(i) - net.p(i) - net.assets(i);
    for (const auto& d : net.debts()) {
      debtors_[d.creditor].push_back({d.debtor, d.amount});
      creditors_[d.debtor].push_back({d.creditor, d.amount});
    }
    twins_ = twin_classes(net);
  }

  std::optional<Solution> solve(const std::vector<bool>& r, const Rational& ub) {
    std::vector<BankIndex> members;
    for (BankIndex i = 0; i < n_; ++i) {
      if (r[i]) members.push_back(i);
    }
    if (members.empty()) return Solution{Rational(0), {}};

    auto it = memo_.find(r);
    if (it != memo_.end()) {
      const auto& entry = it->second;
      if (entry.exact) return entry.exact->cost <= ub ? entry.exact : std::nullopt;
      if (entry.above && *entry.above >= ub) return std::nullopt;
    }
    if (++nodes_ > budget_) throw BudgetExhausted{};

    auto cost = costs(r);
    auto comps = components(r, members);
    const auto& first = comps.front();

    std::optional<Solution> result;
    if (first.size() < members.size()) {
      std::vector<bool> rc(n_, false);
      for (BankIndex i : first) rc[i] = true;
      auto head = solve(rc, ub);
      if (head) {
        auto rest = cascade(r, cost, first);
        auto tail = solve(rest, ub - head->cost);
        if (tail) {
          result = Solution{head->cost + tail->cost, head->seq};
          result->seq.insert(result->seq.end(), tail->seq.begin(), tail->seq.end());
        }
      }
    } else if (members.size() == 1) {
      Solution s{cost[members.front()], {members.front()}};
      memo_[r].exact = s;
      return s.cost <= ub ? std::optional<Solution>(s) : std::nullopt;
    } else {
      std::vector<BankIndex> candidates;
      for (BankIndex i : members) {
        bool shadowed = std::any_of(twins_[i].begin(), twins_[i].end(), [&](BankIndex k) { return k < i && r[k]; });
        if (!shadowed) candidates.push_back(i);
      }
      std::sort(candidates.begin(), candidates.end(), [&](BankIndex x, BankIndex y) {
        return cost[x] != cost[y] ? cost[x] < cost[y] : x < y;
      });
      Rational bound = ub;
      for (BankIndex i : candidates) {
        const Rational& c = cost[i];
        if (c > bound) break;
        auto next = cascade(r, cost, {i});
        if (c + min_cost(next) > bound) continue;
        auto sub = solve(next, bound - c);
        if (!sub) continue;
        Solution cand{c + sub->cost, {i}};
        cand.seq.insert(cand.seq.end(), sub->seq.begin(), sub->seq.end());
        if (!result || better(cand, *result)) {
          result = std::move(cand);
          bound = result->cost;
        }
      }
    }

    auto& entry = memo_[r];
    if (result) {
      entry.exact = result;
    } else if (!entry.above || *entry.above < ub) {
      entry.above = ub;
    }
    return result;
  }

  std::size_t nodes() const { return nodes_; }

 private:
  struct Entry {
    std::optional<Solution> exact;
    std::optional<Rational> above;  // every solution costs strictly more than this
  };

  std::vector<Rational> costs(const std::vector<bool>& r) const {
    std::vector<Rational> c(n_);
    for (BankIndex i = 0; i < n_; ++i) {
      if (!r[i]) continue;
      c[i] = base_[i];
      for (const auto& [j, amount] : debtors_[i]) {
        if (r[j]) c[i] += amount;
      }
    }
    return c;
  }

  Rational min_cost(const std::vector<bool>& r) const {
    std::optional<Rational> m;
    auto c = costs(r);
    for (BankIndex i = 0; i < n_; ++i) {
      if (r[i] && (!m || c[i] < *m)) m = c[i];
    }
    return m ? *m : Rational(0);
  }

  std::vector<bool> cascade(const std::vector<bool>& r, std::vector<Rational> cost,
                            const std::vector<BankIndex>& removed) const {
    std::vector<bool> next = r;
    std::vector<BankIndex> queue(removed.begin(), removed.end());
    for (BankIndex i : removed) next[i] = false;
    while (!queue.empty()) {
      BankIndex j = queue.back();
      queue.pop_back();
      for (const auto& [k, amount] : creditors_[j]) {
        if (!next[k]) continue;
        cost[k] -= amount;
        if (sgn(cost[k]) <= 0) {
          next[k] = false;
          queue.push_back(k);
        }
      }
    }
    return next;
  }

  // Strongly connected components of R's dependency graph; the first entry is the source
  // component holding the smallest bank.
  std::vector<std::vector<BankIndex>> components(const std::vector<bool>& r, const std::vector<BankIndex>& members) const {
    std::vector<long> index(n_, -1), low(n_, 0), comp(n_, -1);
    std::vector<bool> on_stack(n_, false);
    std::vector<BankIndex> stack;
    std::vector<std::vector<BankIndex>> comps;
    long counter = 0;
    std::function<void(BankIndex)> visit = [&](BankIndex v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = true;
      for (const auto& [w, amount] : creditors_[v]) {
        if (!r[w]) continue;
        if (index[w] < 0) {
          visit(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      }
      if (low[v] == index[v]) {
        std::vector<BankIndex> c;
        BankIndex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = static_cast<long>(comps.size());
          c.push_back(w);
        } while (w != v);
        std::sort(c.begin(), c.end());
        comps.push_back(std::move(c));
      }
    };
    for (BankIndex v : members) {
      if (index[v] < 0) visit(v);
    }

    std::vector<bool> source(comps.size(), true);
    for (BankIndex v : members) {
      for (const auto& [w, amount] : creditors_[v]) {
        if (r[w] && comp[w] != comp[v]) source[static_cast<std::size_t>(comp[w])] = false;
      }
    }
    std::size_t pick = comps.size();
    for (std::size_t c = 0; c < comps.size(); ++c) {
      if (source[c] && (pick == comps.size() || comps[c].front() < comps[pick].front())) pick = c;
    }
    std::swap(comps[0], comps[pick]);
    return comps;
  }

  const FinancialNetwork& net_;
  std::size_t n_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<Rational> base_;
  std::vector<std::vector<std::pair<BankIndex, Amount>>> debtors_;
  std::vector<std::vector<std::pair<BankIndex, Amount>>> creditors_;
  std::vector<std::vector<BankIndex>> twins_;
  std::unordered_map<std::vector<bool>, Entry> memo_;
};

std::vector<bool> initial_insolvent(const FinancialNetwork& net) {
  auto closure = max_iss_set(net);
  std::vector<bool> r(net.size());
  for (BankIndex i = 0; i < net.size(); ++i) r[i] = !closure.solvent[i];
  return r;
}

}  // namespace

BailoutPolicy greedy(const FinancialNetwork& net, Method strategy) {
  const std::size_t n = net.size();
  std::vector<BailoutStep> steps;
  BankSet bailed;
  auto closure = cascade_closure(net, bailed);

  auto cost_given = [&](BankIndex i, const SolvencySetTrace& s) {
    Amount c = net.liabilities(i) - net.p(i);
    for (std::size_t e : net.claims_of(i)) {
      if (s.solvent[net.debts()[e].debtor]) c -= net.debts()[e].amount;
    }
    return positive_part(c);
  };

  std::vector<BankIndex> order;
  if (strategy == Method::GreedyShortfall) {
    for (BankIndex i = 0; i < n; ++i) order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](BankIndex x, BankIndex y) {
      return positive_part(net.liabilities(x) - net.p(x)) < positive_part(net.liabilities(y) - net.p(y));
    });
  }
  std::size_t cursor = 0;

  while (!closure.covers_all()) {
    std::optional<BankIndex> pick;
    if (strategy == Method::GreedyShortfall) {
      while (closure.solvent[order[cursor]]) ++cursor;
      pick = order[cursor];
    } else {
      Amount best_cost;
      std::size_t best_gain = 0;
      for (BankIndex i = 0; i < n; ++i) {
        if (closure.solvent[i]) continue;
        Amount c = cost_given(i, closure);
        if (strategy == Method::GreedyFlow) {
          BankSet trial = bailed;
          trial.push_back(i);
          std::size_t gain = cascade_closure(net, trial).members().size();
          if (!pick || gain > best_gain || (gain == best_gain && c < best_cost)) {
            pick = i;
            best_gain = gain;
            best_cost = c;
          }
        } else if (!pick || c < best_cost) {
          pick = i;
          best_cost = c;
        }
      }
    }
    steps.push_back({*pick, cost_given(*pick, closure)});
    bailed.push_back(*pick);
    closure = cascade_closure(net, bailed);
  }
  return BailoutPolicy::from_steps(std::move(steps));
}

BailoutResult opt_exact(const FinancialNetwork& net, const SolverParams& params) {
  BailoutResult result;
  std::optional<BailoutPolicy> incumbent;
  for (Method m : {Method::GreedyCost, Method::GreedyFlow, Method::GreedyShortfall}) {
    auto g = greedy(net, m);
    if (!incumbent || g.total < incumbent->total) incumbent = std::move(g);
  }
  ExactSolver solver(net, params.node_budget);
  try {
    auto sol = solver.solve(initial_insolvent(net), incumbent->total);
    if (!sol) throw DomainError("exact search found no policy within the greedy bound");
    result.policy = policy_from_sequence(net, sol->seq);
    result.optimal = true;
  } catch (const BudgetExhausted&) {
    result.policy = std::move(*incumbent);
    result.optimal = false;
  }
  result.nodes = solver.nodes();
  return result;
}

bool opt_decision(const FinancialNetwork& net, const Amount& budget, const SolverParams& params) {
  if (sgn(budget) < 0) throw DomainError("budget must be nonnegative");
  ExactSolver solver(net, params.node_budget);
  try {
    return solver.solve(initial_insolvent(net), budget).has_value();
  } catch (const BudgetExhausted&) {
    throw DomainError("search budget exhausted after " + std::to_string(params.node_budget) + " nodes");
  }
}

BailoutResult solve_bailout(const FinancialNetwork& net, const SolverParams& params) {
  if (params.method == Method::Exact) return opt_exact(net, params);
  BailoutResult r;
  r.policy = greedy(net, params.method);
  r.optimal = false;
  return r;
}

Amount half_shortfall_bound(const FinancialNetwork& net) {
  Amount s = 0;
  for (BankIndex i = 0; i < net.size(); ++i) s += positive_part(net.liabilities(i) - net.p(i));
  return s / 2;
}

Amount cheapest_edge_sum(const FinancialNetwork& net, const CycleSet& cycles) {
  Amount s = 0;
  for (const auto& c : cycles.cycles) {
    Amount m = net.owed(c.debtor(0), c.creditor(0));
    for (std::size_t k = 1; k < c.length(); ++k) m = std::min(m, net.owed(c.debtor(k), c.creditor(k)));
    s += m;
  }
  return s;
}

namespace {

std::size_t edge_index(const FinancialNetwork& net, BankIndex debtor, BankIndex creditor) {
  for (std::size_t e : net.obligations_of(debtor)) {
    if (net.debts()[e].creditor == creditor) return e;
  }
  throw DomainError("no debt " + std::to_string(debtor + 1) + "->" + std::to_string(creditor + 1));
}

class HittingSet {
 public:
  HittingSet(const FinancialNetwork& net, const CycleSet& cycles) : net_(net) {
    for (const auto& c : cycles.cycles) {
      std::vector<std::size_t> edges;
      for (std::size_t k = 0; k < c.length(); ++k) edges.push_back(edge_index(net, c.debtor(k), c.creditor(k)));
      std::sort(edges.begin(), edges.end());
      cycles_.push_back(std::move(edges));
    }
    chosen_.assign(net.debts().size(), false);
    forbidden_.assign(net.debts().size(), false);
  }

  std::vector<std::size_t> run() {
    search(Rational(0));
    return best_;
  }

 private:
  bool hit(const std::vector<std::size_t>& c) const {
    return std::any_of(c.begin(), c.end(), [&](std::size_t e) { return chosen_[e]; });
  }

  const Amount& weight(std::size_t e) const { return net_.debts()[e].amount; }

  void search(const Rational& current) {
    std::optional<std::size_t> branch;
    std::size_t branch_width = 0;
    for (std::size_t c = 0; c < cycles_.size(); ++c) {
      if (hit(cycles_[c])) continue;
      std::size_t width = 0;
      for (std::size_t e : cycles_[c]) width += forbidden_[e] ? 0 : 1;
      if (width == 0) return;
      if (!branch || width < branch_width) {
        branch = c;
        branch_width = width;
      }
    }
    if (!branch) {
      if (!found_ || current < best_cost_) {
        found_ = true;
        best_cost_ = current;
        best_.clear();
        for (std::size_t e = 0; e < chosen_.size(); ++e) {
          if (chosen_[e]) best_.push_back(e);
        }
      }
      return;
    }
    if (found_ && current + packing_bound() >= best_cost_) return;

    std::vector<std::size_t> options;
    for (std::size_t e : cycles_[*branch]) {
      if (!forbidden_[e]) options.push_back(e);
    }
    std::stable_sort(options.begin(), options.end(), [&](std::size_t x, std::size_t y) { return weight(x) < weight(y); });
    std::vector<std::size_t> excluded;
    for (std::size_t e : options) {
      chosen_[e] = true;
      search(current + weight(e));
      chosen_[e] = false;
      forbidden_[e] = true;
      excluded.push_back(e);
    }
    for (std::size_t e : excluded) forbidden_[e] = false;
  }

  // Edge-disjoint unhit cycles each still need one edge.
  Rational packing_bound() const {
    std::vector<bool> used(chosen_.size(), false);
    Rational total = 0;
    for (const auto& c : cycles_) {
      if (hit(c)) continue;
      if (std::any_of(c.begin(), c.end(), [&](std::size_t e) { return used[e]; })) continue;
      std::optional<Rational> m;
      for (std::size_t e : c) {
        used[e] = true;
        if (!forbidden_[e] && (!m || weight(e) < *m)) m = weight(e);
      }
      if (m) total += *m;
    }
    return total;
  }

  const FinancialNetwork& net_;
  std::vector<std::vector<std::size_t>> cycles_;
  std::vector<bool> chosen_;
  std::vector<bool> forbidden_;
  bool found_ = false;
  Rational best_cost_;
  std::vector<std::size_t> best_;
};

}  // namespace

GuaranteedPaymentSet min_payment_cover(const FinancialNetwork& net, const CycleSet& cycles) {
  GuaranteedPaymentSet gps;
  gps.total = 0;
  if (cycles.count() == 0) return gps;
  for (std::size_t e : HittingSet(net, cycles).run()) {
    const auto& d = net.debts()[e];
    gps.entries.push_back({d.debtor, d.creditor, Rational(1)});
    gps.total += d.amount;
  }
  return gps;
}

namespace {

std::vector<Rational> weights_by_edge(const FinancialNetwork& net, const GuaranteedPaymentSet& gps) {
  std::vector<Rational> alpha(net.debts().size(), Rational(0));
  for (const auto& g : gps.entries) {
    if (g.weight < 0 || g.weight > 1) throw DomainError("guarantee weight outside [0, 1]");
    alpha[edge_index(net, g.debtor, g.creditor)] += g.weight;
  }
  for (const auto& a : alpha) {
    if (a > 1) throw DomainError("debt guaranteed more than once in full");
  }
  return alpha;
}

}  // namespace

bool ensures_solvency(const FinancialNetwork& net, const GuaranteedPaymentSet& gps) {
  const std::size_t n = net.size();
  auto alpha = weights_by_edge(net, gps);
  std::vector<Amount> held(n);
  for (BankIndex i = 0; i < n; ++i) held[i] = net.p(i);
  for (std::size_t e = 0; e < alpha.size(); ++e) held[net.debts()[e].creditor] += alpha[e] * net.debts()[e].amount;
  std::vector<bool> solvent(n, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (BankIndex i = 0; i < n; ++i) {
      if (solvent[i] || held[i] < net.liabilities(i)) continue;
      solvent[i] = changed = true;
      for (std::size_t e : net.obligations_of(i)) {
        held[net.debts()[e].creditor] += (1 - alpha[e]) * net.debts()[e].amount;
      }
    }
  }
  return std::all_of(solvent.begin(), solvent.end(), [](bool b) { return b; });
}

GuaranteedPaymentSet policy_to_payments(const FinancialNetwork& net, const BailoutPolicy& policy) {
  GuaranteedPaymentSet gps;
  gps.total = 0;
  BankSet bailed;
  for (const auto& step : policy.steps) {
    auto closure = cascade_closure(net, bailed);
    std::vector<std::size_t> unpaid;
    for (std::size_t e : net.claims_of(step.bank)) {
      if (!closure.solvent[net.debts()[e].debtor]) unpaid.push_back(e);
    }
    std::stable_sort(unpaid.begin(), unpaid.end(),
                     [&](std::size_t x, std::size_t y) { return net.debts()[x].amount > net.debts()[y].amount; });
    Amount remaining = step.injection;
    for (std::size_t e : unpaid) {
      if (sgn(remaining) <= 0) break;
      const auto& d = net.debts()[e];
      Amount take = std::min(remaining, d.amount);
      gps.entries.push_back({d.debtor, d.creditor, Rational(take / d.amount)});
      gps.total += take;
      remaining -= take;
    }
    if (sgn(remaining) > 0) {
      throw DomainError("bank " + std::to_string(step.bank + 1) +
                        " has too few unpaid claims to carry its injection as guarantees");
    }
    bailed.push_back(step.bank);
  }
  return gps;
}

BailoutPolicy payments_to_policy(const FinancialNetwork& net, const GuaranteedPaymentSet& gps) {
  const std::size_t n = net.size();
  auto alpha = weights_by_edge(net, gps);
  std::vector<Amount> guaranteed(n, Amount(0));
  for (std::size_t e = 0; e < alpha.size(); ++e) guaranteed[net.debts()[e].creditor] += alpha[e] * net.debts()[e].amount;

  std::vector<bool> solvent(n, false);
  std::vector<Amount> held(n);
  for (BankIndex i = 0; i < n; ++i) held[i] = net.p(i);
  auto join = [&](BankIndex i) {
    solvent[i] = true;
    for (std::size_t e : net.obligations_of(i)) held[net.debts()[e].creditor] += net.debts()[e].amount;
  };
  auto pending_guarantees = [&](BankIndex i) {
    Amount g = 0;
    for (std::size_t e : net.claims_of(i)) {
      if (!solvent[net.debts()[e].debtor]) g += alpha[e] * net.debts()[e].amount;
    }
    return g;
  };

  std::vector<BailoutStep> steps;
  std::size_t remaining = n;
  while (remaining > 0) {
    std::optional<BankIndex> cascade;
    for (BankIndex i = 0; i < n && !cascade; ++i) {
      if (!solvent[i] && sgn(guaranteed[i]) == 0 && held[i] >= net.liabilities(i)) cascade = i;
    }
    if (cascade) {
      join(*cascade);
      --remaining;
      continue;
    }
    std::optional<BankIndex> pick;
    for (BankIndex i = 0; i < n && !pick; ++i) {
      if (!solvent[i] && sgn(guaranteed[i]) > 0 && held[i] + pending_guarantees(i) >= net.liabilities(i)) pick = i;
    }
    if (!pick) throw DomainError("guaranteed payments do not restore full solvency");
    steps.push_back({*pick, guaranteed[*pick]});
    join(*pick);
    --remaining;
  }
  return BailoutPolicy::from_steps(std::move(steps));
}

}  // namespace contagion
