#include "contagion/generators.hpp"

#include <random>

namespace contagion {

namespace {

Rational ratio(long num, long den) { return make_rational(num, den); }

FinancialNetwork wheel(const gen::Wheel& w, const CostSpec& costs) {
  if (w.n < 2) throw DomainError("wheel needs at least 2 banks");
  std::vector<Debt> debts;
  for (BankIndex i = 0; i < w.n; ++i) debts.push_back({i, (i + 1) % w.n, w.d});
  return {std::vector<Amount>(w.n, w.p), std::vector<Amount>(w.n, Amount(0)), std::move(debts), costs};
}

FinancialNetwork star(const gen::Star& s, const CostSpec& costs) {
  if (s.n < 2) throw DomainError("star needs a center and at least one peripheral");
  std::vector<Amount> p = s.p;
  if (p.empty()) p.assign(s.n, Amount(0));
  if (p.size() != s.n) throw DomainError("star p vector must list every bank");
  const BankIndex center = s.n - 1;
  std::vector<Debt> debts;
  for (BankIndex i = 0; i < center; ++i) {
    debts.push_back({i, center, s.d_in});
    debts.push_back({center, i, s.d_out});
  }
  return {std::move(p), std::vector<Amount>(s.n, Amount(0)), std::move(debts), costs};
}

FinancialNetwork core_periphery(const gen::CorePeriphery& cp, const CostSpec& costs) {
  if (cp.n_c == 0) throw DomainError("core-periphery needs at least one core bank");
  std::vector<Amount> p = cp.p_core;
  if (p.empty()) p.assign(cp.n_c, Amount(0));
  if (p.size() != cp.n_c) throw DomainError("core p vector must list every core bank");
  std::vector<Debt> debts;
  for (BankIndex i = 0; i < cp.n_c; ++i) {
    for (BankIndex j = 0; j < cp.n_c; ++j) {
      if (i != j) debts.push_back({i, j, cp.d_core});
    }
  }
  for (BankIndex i = 0; i < cp.n_c; ++i) {
    for (std::size_t k = 0; k < cp.n_p; ++k) {
      BankIndex q = p.size();
      p.push_back(cp.p_p);
      debts.push_back({q, i, cp.d_in});
      debts.push_back({i, q, cp.d_out});
    }
  }
  std::size_t n = p.size();
  return {std::move(p), std::vector<Amount>(n, Amount(0)), std::move(debts), costs};
}

FinancialNetwork cycle_chain(const gen::CycleChain& c, const CostSpec& costs) {
  if (c.n < 2) throw DomainError("cycle chain needs at least 2 banks");
  std::vector<Amount> p(c.n, c.d_lo);
  p.front() = 0;
  p.back() = 0;
  std::vector<Debt> debts;
  for (BankIndex i = 0; i + 1 < c.n; ++i) {
    debts.push_back({i, i + 1, c.d_hi});
    debts.push_back({i + 1, i, c.d_lo});
  }
  return {std::move(p), std::vector<Amount>(c.n, Amount(0)), std::move(debts), costs};
}

FinancialNetwork random_network(const gen::Random& r, const CostSpec& costs) {
  if (r.n == 0) throw DomainError("random network needs at least one bank");
  if (r.density_den == 0 || r.density_num > r.density_den) throw DomainError("density must lie in [0, 1]");
  if (r.scale <= 0 || r.amount_lo <= 0 || r.amount_hi < r.amount_lo || r.p_lo < 0 || r.p_hi < r.p_lo ||
      r.ext_lo < 0 || r.ext_hi < r.ext_lo) {
    throw DomainError("random generator ranges must be nonnegative, ordered, with positive amounts");
  }
  std::mt19937_64 rng(r.seed);
  auto draw = [&](long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(rng() % span);
  };

  std::vector<Debt> debts;
  for (BankIndex i = 0; i < r.n; ++i) {
    for (BankIndex j = 0; j < r.n; ++j) {
      if (i == j) continue;
      if (rng() % r.density_den < r.density_num) debts.push_back({i, j, ratio(draw(r.amount_lo, r.amount_hi), r.scale)});
    }
  }
  std::vector<Amount> p(r.n), ext(r.n);
  for (BankIndex i = 0; i < r.n; ++i) p[i] = ratio(draw(r.p_lo, r.p_hi), r.scale);
  for (BankIndex i = 0; i < r.n; ++i) ext[i] = ratio(draw(r.ext_lo, r.ext_hi), r.scale);

  if (r.weakly_balanced) {
    std::vector<Amount> gap(r.n);
    for (BankIndex i = 0; i < r.n; ++i) gap[i] = ext[i] - p[i];
    for (const auto& d : debts) {
      gap[d.debtor] += d.amount;
      gap[d.creditor] -= d.amount;
    }
    for (BankIndex i = 0; i < r.n; ++i) p[i] += positive_part(gap[i]);
  }
  return {std::move(p), std::move(ext), std::move(debts), costs};
}

FinancialNetwork from_partition(const gen::FromPartition& f, const CostSpec& costs) {
  if (f.multiset.empty()) throw DomainError("partition multiset is empty");
  long sum = 0;
  for (long a : f.multiset) {
    if (a <= 0) throw DomainError("partition entries must be positive");
    sum += a;
  }
  if (f.m <= 2 * sum) throw DomainError("M must exceed twice the multiset sum");
  const std::size_t n = f.multiset.size();
  const BankIndex center = n;
  std::vector<Amount> p(n + 1, Amount(0));
  std::vector<Debt> debts;
  for (BankIndex i = 0; i < n; ++i) {
    Amount a = f.multiset[i];
    p[i] = a - a / f.m;
    debts.push_back({i, center, a});
    debts.push_back({center, i, Amount(a / 2)});
  }
  return {std::move(p), std::vector<Amount>(n + 1, Amount(0)), std::move(debts), costs};
}

}  // namespace

FinancialNetwork generate(const GeneratorSpec& spec, const CostSpec& costs) {
  return std::visit(
      [&](const auto& s) -> FinancialNetwork {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, gen::Wheel>) return wheel(s, costs);
        else if constexpr (std::is_same_v<T, gen::Star>) return star(s, costs);
        else if constexpr (std::is_same_v<T, gen::CorePeriphery>) return core_periphery(s, costs);
        else if constexpr (std::is_same_v<T, gen::CycleChain>) return cycle_chain(s, costs);
        else if constexpr (std::is_same_v<T, gen::Random>) return random_network(s, costs);
        else return from_partition(s, costs);
      },
      spec);
}

}  // namespace contagion
