#include "instances.hpp"

#include <algorithm>
#include <random>

#include "contagion/generators.hpp"
#include "oracles.hpp"

namespace instances {

using namespace contagion;

namespace {

struct Draw {
  std::mt19937_64 rng;
  explicit Draw(std::uint64_t seed) : rng(seed) {}
  long between(long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }
  Rational quarter(long lo, long hi) { return make_rational(between(lo, hi), 4); }
  bool chance(unsigned num, unsigned den) { return rng() % den < num; }
};

FinancialNetwork top_up(std::vector<Amount> p, std::vector<Amount> ext, std::vector<Debt> debts) {
  FinancialNetwork net(p, ext, debts);
  for (BankIndex i = 0; i < net.size(); ++i) p[i] += positive_part(net.liabilities(i) - net.assets(i) - net.p(i));
  return {std::move(p), std::move(ext), std::move(debts)};
}

}  // namespace

FinancialNetwork weakly_balanced(std::uint64_t seed, std::size_t n_max) {
  Draw d(seed);
  gen::Random spec;
  spec.n = static_cast<std::size_t>(d.between(2, static_cast<long>(n_max)));
  spec.density_num = static_cast<std::uint64_t>(d.between(1, 2));
  spec.density_den = 4;
  spec.amount_lo = 1;
  spec.amount_hi = 8;
  spec.p_lo = 0;
  spec.p_hi = 6;
  spec.ext_hi = d.chance(1, 4) ? 2 : 0;
  spec.scale = 2;
  spec.weakly_balanced = true;
  spec.seed = d.rng();
  return generate(spec);
}

FinancialNetwork exactly_balanced(std::uint64_t seed, std::size_t n_max) {
  Draw d(seed);
  gen::Random spec;
  spec.n = static_cast<std::size_t>(d.between(2, static_cast<long>(n_max)));
  spec.density_num = static_cast<std::uint64_t>(d.between(1, 2));
  spec.density_den = 4;
  spec.amount_hi = 6;
  spec.p_hi = 4;
  spec.scale = 2;
  spec.seed = d.rng();
  auto base = generate(spec);
  std::vector<Amount> p = base.portfolio();
  std::vector<Amount> ext(base.size(), Amount(0));
  for (BankIndex i = 0; i < base.size(); ++i) {
    Amount gap = p[i] + base.assets(i) - base.liabilities(i);
    if (sgn(gap) >= 0) {
      ext[i] = gap;
    } else {
      p[i] -= gap;
    }
  }
  return {p, ext, base.debts()};
}

FinancialNetwork arbitrary(std::uint64_t seed, std::size_t n_max, const CostSpec& costs) {
  Draw d(seed);
  gen::Random spec;
  spec.n = static_cast<std::size_t>(d.between(2, static_cast<long>(n_max)));
  spec.density_num = static_cast<std::uint64_t>(d.between(1, 3));
  spec.density_den = 5;
  spec.amount_hi = 8;
  spec.p_hi = 8;
  spec.ext_hi = d.chance(1, 3) ? 2 : 0;
  spec.scale = 4;
  spec.seed = d.rng();
  return generate(spec, costs);
}

FinancialNetwork disjoint_cycles(std::uint64_t seed, std::size_t n) {
  Draw d(seed);
  std::vector<std::vector<BankIndex>> groups;
  std::vector<BankIndex> order(n);
  for (BankIndex i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), d.rng);
  std::size_t at = 0;
  while (at < n) {
    std::size_t len = static_cast<std::size_t>(d.between(1, 4));
    len = std::min(len, n - at);
    groups.emplace_back(order.begin() + static_cast<long>(at), order.begin() + static_cast<long>(at + len));
    at += len;
  }

  std::vector<Debt> debts;
  for (const auto& g : groups) {
    if (g.size() < 2) continue;
    for (std::size_t k = 0; k < g.size(); ++k) debts.push_back({g[k], g[(k + 1) % g.size()], d.quarter(2, 16)});
  }
  for (std::size_t a = 0; a < groups.size(); ++a) {
    for (std::size_t b = a + 1; b < groups.size(); ++b) {
      if (!d.chance(1, 3)) continue;
      BankIndex from = groups[a][static_cast<std::size_t>(d.between(0, static_cast<long>(groups[a].size()) - 1))];
      BankIndex to = groups[b][static_cast<std::size_t>(d.between(0, static_cast<long>(groups[b].size()) - 1))];
      debts.push_back({from, to, d.quarter(1, 8)});
    }
  }
  std::vector<Amount> p(n);
  for (auto& x : p) x = d.quarter(0, 8);
  return top_up(std::move(p), std::vector<Amount>(n, Amount(0)), std::move(debts));
}

FinancialNetwork star(std::uint64_t seed, std::size_t n, bool coarse) {
  Draw d(seed);
  gen::Star s;
  s.n = n;
  s.d_in = d.between(1, 4);
  s.d_out = d.between(1, 4);
  const long q_in = 4 * s.d_in.get_num().get_si();
  const long q_out = 4 * s.d_out.get_num().get_si();
  const long lo = std::max(0L, q_in - q_out);
  std::vector<Rational> levels;
  for (int k = 0; k < 3; ++k) levels.push_back(make_rational(d.between(lo, q_in - 1), 4));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    s.p.push_back(coarse ? levels[static_cast<std::size_t>(d.between(0, 2))] : make_rational(d.between(lo, q_in - 1), 4));
  }
  const long m = static_cast<long>(n - 1);
  s.p.push_back(make_rational(d.between(std::max(0L, m * (q_out - q_in)), m * q_out - 1), 4));
  return generate(s);
}

FinancialNetwork core_periphery(std::uint64_t seed, std::size_t n_c, std::size_t n_p) {
  Draw d(seed);
  gen::CorePeriphery cp;
  cp.n_c = n_c;
  cp.n_p = n_p;
  cp.d_core = d.between(1, 4);
  cp.d_in = d.between(1, 4);
  cp.d_out = d.between(1, 4);
  const long q_in = 4 * cp.d_in.get_num().get_si();
  const long q_out = 4 * cp.d_out.get_num().get_si();
  const long q_core = 4 * cp.d_core.get_num().get_si();
  cp.p_p = make_rational(d.between(std::max(0L, q_in - q_out), q_in - 1), 4);
  const long np = static_cast<long>(n_p);
  const long lo = std::max(0L, np * (q_out - q_in));
  const long need = static_cast<long>(n_c - 1) * q_core + np * q_out;
  for (std::size_t i = 0; i < n_c; ++i) cp.p_core.push_back(make_rational(d.between(lo, std::max(lo, need - 1)), 4));
  return generate(cp);
}

std::vector<long> partition_multiset(std::uint64_t seed, std::size_t n, bool with_partition) {
  Draw d(seed);
  for (;;) {
    std::vector<long> a(n);
    for (auto& x : a) x = d.between(1, 20);
    if (with_partition) {
      // Force an equal split by adjusting the last element, keeping it positive.
      long left = 0, right = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) (i % 2 ? right : left) += a[i];
      long diff = left - right;
      if ((n - 1) % 2 == 1) {
        if (diff <= 0) continue;
        a[n - 1] = diff;
      } else {
        if (diff >= 0) continue;
        a[n - 1] = -diff;
      }
    }
    if (oracle::has_equal_partition(a) == with_partition) return a;
  }
}

}  // namespace instances
