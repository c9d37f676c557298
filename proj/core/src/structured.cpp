#include "contagion/structured.hpp"

#include <algorithm>
#include <optional>

#include "contagion/cycles.hpp"
#include "contagion/solvency.hpp"

namespace contagion {

namespace {

struct Link {
  BankIndex hub = 0;
  Amount owes;   // to the hub
  Amount owed;   // by the hub
};

// A bank whose only counterparty is a single hub, with one debt in each direction.
std::optional<Link> single_counterparty(const FinancialNetwork& net, BankIndex i) {
  const auto& out = net.obligations_of(i);
  const auto& in = net.claims_of(i);
  if (out.size() != 1 || in.size() != 1) return std::nullopt;
  const auto& o = net.debts()[out.front()];
  const auto& c = net.debts()[in.front()];
  if (o.creditor != c.debtor) return std::nullopt;
  return Link{o.creditor, o.amount, c.amount};
}

bool no_external(const FinancialNetwork& net) {
  const auto& ext = net.ext_liabilities();
  return std::all_of(ext.begin(), ext.end(), [](const Amount& x) { return sgn(x) == 0; });
}

std::optional<structure::Star> detect_star(const FinancialNetwork& net) {
  const std::size_t n = net.size();
  if (n < 3 || net.debts().size() != 2 * (n - 1)) return std::nullopt;
  std::optional<BankIndex> center;
  for (BankIndex i = 0; i < n; ++i) {
    if (net.obligations_of(i).size() == n - 1) center = i;
  }
  if (!center) return std::nullopt;
  std::optional<Amount> d_in, d_out;
  for (BankIndex i = 0; i < n; ++i) {
    if (i == *center) continue;
    auto link = single_counterparty(net, i);
    if (!link || link->hub != *center) return std::nullopt;
    if (!d_in) {
      d_in = link->owes;
      d_out = link->owed;
    }
    if (link->owes != *d_in || link->owed != *d_out) return std::nullopt;
    if (net.p(i) >= *d_in) return std::nullopt;
  }
  if (net.p(*center) >= net.liabilities(*center)) return std::nullopt;
  return structure::Star{*center, *d_in, *d_out};
}

std::optional<structure::Clique> detect_clique(const FinancialNetwork& net) {
  const std::size_t n = net.size();
  if (n < 3 || net.debts().size() != n * (n - 1)) return std::nullopt;
  const Amount& d = net.debts().front().amount;
  for (const auto& e : net.debts()) {
    if (e.amount != d) return std::nullopt;
  }
  return structure::Clique{d};
}

std::optional<structure::CorePeriphery> detect_core_periphery(const FinancialNetwork& net) {
  const std::size_t n = net.size();
  std::vector<std::optional<Link>> links(n);
  for (BankIndex i = 0; i < n; ++i) links[i] = single_counterparty(net, i);

  structure::CorePeriphery cp;
  for (BankIndex i = 0; i < n; ++i) {
    if (!links[i]) cp.core.push_back(i);
  }
  const std::size_t n_c = cp.core.size();
  if (n_c < 2 || n_c == n) return std::nullopt;
  auto core = membership(cp.core, n);

  std::vector<std::size_t> attached(n, 0);
  std::optional<Amount> p_p;
  for (BankIndex i = 0; i < n; ++i) {
    if (core[i]) continue;
    const auto& link = *links[i];
    if (!core[link.hub]) return std::nullopt;
    if (!p_p) {
      p_p = net.p(i);
      cp.d_in = link.owes;
      cp.d_out = link.owed;
    }
    if (net.p(i) != *p_p || link.owes != cp.d_in || link.owed != cp.d_out) return std::nullopt;
    ++attached[link.hub];
  }
  if (*p_p >= cp.d_in) return std::nullopt;
  cp.n_p = attached[cp.core.front()];
  for (BankIndex i : cp.core) {
    if (attached[i] != cp.n_p) return std::nullopt;
  }

  cp.d_core = net.owed(cp.core[0], cp.core[1]);
  if (sgn(cp.d_core) == 0) return std::nullopt;
  for (BankIndex i : cp.core) {
    for (BankIndex j : cp.core) {
      if (i != j && net.owed(i, j) != cp.d_core) return std::nullopt;
    }
  }
  if (net.debts().size() != n_c * (n_c - 1) + 2 * n_c * cp.n_p) return std::nullopt;
  return cp;
}

bool disjoint_cycles(const FinancialNetwork& net, std::size_t cap) {
  try {
    auto cycles = simple_cycles(net, cap);
    cycle_tiers(net, cycles);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

BailoutPolicy replay(const FinancialNetwork& net, const std::vector<BankIndex>& seq) {
  std::vector<BailoutStep> steps;
  BankSet bailed;
  for (BankIndex i : seq) {
    steps.push_back({i, bailout_cost(net, i, bailed)});
    bailed.push_back(i);
  }
  return BailoutPolicy::from_steps(std::move(steps));
}

// Hungarian method; returns, for each row, the column assigned to it. Ties go to the first
// optimum found when rows are added in order.
std::vector<std::size_t> min_cost_assignment(const std::vector<std::vector<Amount>>& a) {
  const std::size_t n = a.size();
  std::vector<Amount> u(n + 1), v(n + 1);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t row = 1; row <= n; ++row) {
    match[0] = row;
    std::size_t col = 0;
    std::vector<std::optional<Amount>> slack(n + 1);
    std::vector<bool> used(n + 1, false);
    do {
      used[col] = true;
      const std::size_t r = match[col];
      std::optional<Amount> delta;
      std::size_t next = 0;
      for (std::size_t c = 1; c <= n; ++c) {
        if (used[c]) continue;
        Amount reduced = a[r - 1][c - 1] - u[r] - v[c];
        if (!slack[c] || reduced < *slack[c]) {
          slack[c] = reduced;
          way[c] = col;
        }
        if (!delta || *slack[c] < *delta) {
          delta = *slack[c];
          next = c;
        }
      }
      for (std::size_t c = 0; c <= n; ++c) {
        if (used[c]) {
          u[match[c]] += *delta;
          v[c] -= *delta;
        } else {
          *slack[c] -= *delta;
        }
      }
      col = next;
    } while (match[col] != 0);
    do {
      std::size_t prev = way[col];
      match[col] = match[prev];
      col = prev;
    } while (col != 0);
  }
  std::vector<std::size_t> out(n);
  for (std::size_t c = 1; c <= n; ++c) out[match[c] - 1] = c - 1;
  return out;
}

[[noreturn]] void mismatch(const char* expected, const StructureTag& found) {
  throw DomainError(std::string("structure mismatch: expected ") + expected + ", detected " + structure_name(found));
}

}  // namespace

std::string structure_name(const StructureTag& tag) {
  struct Visitor {
    std::string operator()(const structure::DisjointCycles&) const { return "disjoint-cycles"; }
    std::string operator()(const structure::Star&) const { return "star"; }
    std::string operator()(const structure::CorePeriphery&) const { return "core-periphery"; }
    std::string operator()(const structure::Clique&) const { return "clique"; }
    std::string operator()(const structure::General&) const { return "general"; }
  };
  return std::visit(Visitor{}, tag);
}

StructureTag detect_structure(const FinancialNetwork& net, std::size_t cycle_cap) {
  if (net.size() == 0 || !is_weakly_balanced(net)) return structure::General{};
  if (disjoint_cycles(net, cycle_cap)) return structure::DisjointCycles{};
  if (!no_external(net)) return structure::General{};
  if (auto s = detect_star(net)) return *s;
  if (auto c = detect_clique(net)) return *c;
  if (auto cp = detect_core_periphery(net)) return *cp;
  return structure::General{};
}

BailoutPolicy disjoint_cycles_policy(const FinancialNetwork& net, std::size_t cycle_cap) {
  auto tag = detect_structure(net, cycle_cap);
  if (!std::holds_alternative<structure::DisjointCycles>(tag)) mismatch("disjoint-cycles", tag);

  auto cycles = simple_cycles(net, cycle_cap);
  std::vector<BankIndex> seq;
  auto closure = cascade_closure(net, seq);
  for (std::size_t c : cycle_tiers(net, cycles)) {
    const auto& banks = cycles.cycles[c].banks;
    if (std::any_of(banks.begin(), banks.end(), [&](BankIndex i) { return closure.solvent[i]; })) continue;
    std::optional<BankIndex> pick;
    Amount best;
    for (BankIndex i : banks) {
      Amount cost = bailout_cost(net, i, seq);
      if (!pick || cost < best || (cost == best && i < *pick)) {
        pick = i;
        best = cost;
      }
    }
    seq.push_back(*pick);
    closure = cascade_closure(net, seq);
  }
  if (!closure.covers_all()) throw DomainError("disjoint-cycle policy left insolvent banks");
  return replay(net, seq);
}

BailoutPolicy star_policy(const FinancialNetwork& net) {
  auto tag = detect_structure(net);
  const auto* star = std::get_if<structure::Star>(&tag);
  if (!star) mismatch("star", tag);

  std::vector<BankIndex> peripherals;
  for (BankIndex i = 0; i < net.size(); ++i) {
    if (i != star->center) peripherals.push_back(i);
  }
  std::stable_sort(peripherals.begin(), peripherals.end(), [&](BankIndex x, BankIndex y) { return net.p(x) > net.p(y); });

  Amount need = net.liabilities(star->center) - net.p(star->center);
  Rational m = need / star->d_in;
  std::size_t k = static_cast<std::size_t>(floor_rational(m).get_num().get_si());
  k = std::min(k, peripherals.size());
  std::vector<BankIndex> seq(peripherals.begin(), peripherals.begin() + static_cast<long>(k));
  Amount remainder = need - Rational(static_cast<long>(k)) * star->d_in;
  if (sgn(remainder) > 0) {
    if (k < peripherals.size() && remainder > star->d_in - net.p(peripherals[k])) {
      seq.push_back(peripherals[k]);
    } else {
      seq.push_back(star->center);
    }
  }
  return replay(net, seq);
}

BailoutPolicy core_periphery_policy(const FinancialNetwork& net) {
  auto tag = detect_structure(net);
  BankSet core;
  std::size_t n_p = 0;
  Amount d_in, d_core, d_out, p_p;
  if (const auto* cp = std::get_if<structure::CorePeriphery>(&tag)) {
    core = cp->core;
    n_p = cp->n_p;
    d_in = cp->d_in;
    d_out = cp->d_out;
    d_core = cp->d_core;
  } else if (const auto* cl = std::get_if<structure::Clique>(&tag)) {
    for (BankIndex i = 0; i < net.size(); ++i) core.push_back(i);
    d_core = cl->d_core;
  } else {
    mismatch("core-periphery", tag);
  }

  std::vector<std::vector<BankIndex>> periphery(net.size());
  for (BankIndex j = 0; j < net.size(); ++j) {
    if (!std::binary_search(core.begin(), core.end(), j)) {
      periphery[net.debts()[net.obligations_of(j).front()].creditor].push_back(j);
    }
  }
  if (n_p > 0) p_p = net.p(periphery[core.front()].front());

  // Restoring a core bank that still needs r costs min over k of k (D^in - p_P) + (r - k D^in)^+.
  auto restore = [&](const Amount& r) -> std::pair<std::size_t, Amount> {
    if (sgn(r) <= 0) return {0, Amount(0)};
    if (n_p == 0) return {0, r};
    std::size_t k = std::min<std::size_t>(n_p, static_cast<std::size_t>(floor_rational(r / d_in).get_num().get_si()));
    Amount per = d_in - p_p;
    Amount cost = Rational(static_cast<long>(k)) * per + positive_part(r - Rational(static_cast<long>(k)) * d_in);
    if (k < n_p) {
      Amount more = Rational(static_cast<long>(k + 1)) * per + positive_part(r - Rational(static_cast<long>(k + 1)) * d_in);
      if (more < cost) return {k + 1, more};
    }
    return {k, cost};
  };

  // Core bank j restored as the x-th one needs (n_C - 1 - x) D^core + n_P D^out - p_j.
  const std::size_t n_c = core.size();
  Amount top = Rational(static_cast<long>(n_c) - 1) * d_core + Rational(static_cast<long>(n_p)) * d_out;
  std::vector<std::vector<Amount>> cost(n_c, std::vector<Amount>(n_c));
  for (std::size_t x = 0; x < n_c; ++x) {
    for (std::size_t j = 0; j < n_c; ++j) {
      cost[x][j] = restore(top - Rational(static_cast<long>(x)) * d_core - net.p(core[j])).second;
    }
  }
  auto stage_of = min_cost_assignment(cost);
  std::vector<BankIndex> by_stage(n_c);
  for (std::size_t x = 0; x < n_c; ++x) by_stage[x] = core[stage_of[x]];

  std::vector<BankIndex> seq;
  auto closure = cascade_closure(net, seq);
  for (BankIndex i : by_stage) {
    if (closure.solvent[i]) continue;
    auto [k, spent] = restore(bailout_cost(net, i, seq));
    const auto& mine = periphery[i];
    seq.insert(seq.end(), mine.begin(), mine.begin() + static_cast<long>(k));
    if (!cascade_closure(net, seq).solvent[i]) seq.push_back(i);
    closure = cascade_closure(net, seq);
  }
  if (!closure.covers_all()) throw DomainError("core-periphery policy left insolvent banks");
  return replay(net, seq);
}

RoutedBailout auto_bailout(const FinancialNetwork& net, const SolverParams& params) {
  RoutedBailout routed{detect_structure(net, params.cycle_cap), {}};
  routed.result.optimal = true;
  if (std::holds_alternative<structure::DisjointCycles>(routed.tag)) {
    routed.result.policy = disjoint_cycles_policy(net, params.cycle_cap);
  } else if (std::holds_alternative<structure::Star>(routed.tag)) {
    routed.result.policy = star_policy(net);
  } else if (std::holds_alternative<structure::CorePeriphery>(routed.tag) ||
             std::holds_alternative<structure::Clique>(routed.tag)) {
    routed.result.policy = core_periphery_policy(net);
  } else {
    SolverParams exact = params;
    exact.method = Method::Exact;
    routed.result = opt_exact(net, exact);
  }
  return routed;
}

}  // namespace contagion
