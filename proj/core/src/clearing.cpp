#include "contagion/clearing.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <thread>

namespace contagion {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Gaussian elimination over the rationals; nullopt when the matrix is singular.
std::optional<std::vector<Rational>> solve_linear(Matrix a, std::vector<Rational> b) {
  const std::size_t m = b.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (pivot < m && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == m) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = col + 1; r < m; ++r) {
      if (sgn(a[r][col]) == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col + 1; c < m; ++c) {
        if (sgn(a[col][c]) != 0) a[r][c] -= f * a[col][c];
      }
      a[r][col] = 0;
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(m);
  for (std::size_t r = m; r-- > 0;) {
    Rational s = b[r];
    for (std::size_t c = r + 1; c < m; ++c) {
      if (sgn(a[r][c]) != 0) s -= a[r][c] * x[c];
    }
    x[r] = s / a[r][r];
  }
  return x;
}

std::string describe(const BankSet& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k] + 1);
  return out + "}";
}

enum class Regime { Zero, Interior, Saturated };

// Extreme fixed point of x = clamp(Bx + q, 0, u) with B >= 0, reached by following the monotone
// path from the bottom (least) or the top (greatest) of the box and re-solving the affine system
// of the current regime each time a coordinate crosses a kink.
std::vector<Rational> clamp_fixed_point(const Matrix& B, const std::vector<Rational>& q,
                                        const std::vector<Rational>& u, FixedPointSide side,
                                        const BankSet& label) {
  const std::size_t m = q.size();
  const bool upward = side == FixedPointSide::Least;
  std::vector<Rational> x = upward ? std::vector<Rational>(m, Rational(0)) : u;

  auto apply = [&](const std::vector<Rational>& y) {
    std::vector<Rational> v(m);
    for (std::size_t r = 0; r < m; ++r) {
      Rational s = 0;
      for (std::size_t c = 0; c < m; ++c) {
        if (sgn(B[r][c]) != 0 && sgn(y[c]) != 0) s += B[r][c] * y[c];
      }
      v[r] = s + q[r];
    }
    return v;
  };

  for (std::size_t iteration = 0; iteration <= 2 * m + 2; ++iteration) {
    auto v = apply(x);
    std::vector<Regime> regime(m);
    for (std::size_t r = 0; r < m; ++r) {
      if (upward) {
        regime[r] = sgn(v[r]) < 0 ? Regime::Zero : (v[r] < u[r] ? Regime::Interior : Regime::Saturated);
      } else {
        regime[r] = sgn(v[r]) <= 0 ? Regime::Zero : (v[r] <= u[r] ? Regime::Interior : Regime::Saturated);
      }
    }

    std::vector<std::size_t> interior;
    for (std::size_t r = 0; r < m; ++r) {
      if (regime[r] == Regime::Interior) interior.push_back(r);
    }
    std::vector<Rational> z(m, Rational(0));
    for (std::size_t r = 0; r < m; ++r) {
      if (regime[r] == Regime::Saturated) z[r] = u[r];
    }
    if (!interior.empty()) {
      const std::size_t k = interior.size();
      Matrix a(k, std::vector<Rational>(k));
      std::vector<Rational> rhs(k);
      for (std::size_t r = 0; r < k; ++r) {
        std::size_t row = interior[r];
        for (std::size_t c = 0; c < k; ++c) a[r][c] = (r == c ? Rational(1) : Rational(0)) - B[row][interior[c]];
        rhs[r] = q[row];
        for (std::size_t c = 0; c < m; ++c) {
          if (regime[c] == Regime::Saturated) rhs[r] += B[row][c] * u[c];
        }
      }
      auto sol = solve_linear(std::move(a), std::move(rhs));
      if (!sol) throw DomainError("singular payment system for default set " + describe(label));
      for (std::size_t r = 0; r < k; ++r) z[interior[r]] = (*sol)[r];
    }

    std::vector<Rational> d(m);
    for (std::size_t r = 0; r < m; ++r) d[r] = z[r] - x[r];
    std::vector<Rational> dv(m);
    for (std::size_t r = 0; r < m; ++r) {
      Rational s = 0;
      for (std::size_t c = 0; c < m; ++c) {
        if (sgn(B[r][c]) != 0 && sgn(d[c]) != 0) s += B[r][c] * d[c];
      }
      dv[r] = s;
    }

    Rational step = 1;
    for (std::size_t r = 0; r < m; ++r) {
      if (sgn(dv[r]) == 0) continue;
      std::optional<Rational> hit;
      if (upward && sgn(dv[r]) > 0) {
        if (regime[r] == Regime::Zero) hit = -v[r] / dv[r];
        if (regime[r] == Regime::Interior) hit = (u[r] - v[r]) / dv[r];
      } else if (!upward && sgn(dv[r]) < 0) {
        if (regime[r] == Regime::Saturated) hit = (v[r] - u[r]) / -dv[r];
        if (regime[r] == Regime::Interior) hit = v[r] / -dv[r];
      }
      if (hit && *hit < step) step = *hit;
    }

    if (step == 1) return z;
    for (std::size_t r = 0; r < m; ++r) x[r] += step * d[r];
  }
  throw DomainError("payment fixed point did not settle for default set " + describe(label));
}

Equilibrium assemble(const FinancialNetwork& net, const PaymentSolution& sol) {
  const std::size_t n = net.size();
  Equilibrium eq;
  eq.paid = sol.paid;
  eq.received = sol.received;
  eq.values.resize(n);
  eq.defaulted.resize(n);
  eq.costs.assign(n, Amount(0));
  const Rational share = net.costs().share();
  const Rational fixed = net.costs().fixed();
  for (BankIndex i = 0; i < n; ++i) {
    Amount held = net.p(i) + sol.received[i];
    eq.defaulted[i] = held < net.liabilities(i);
    if (eq.defaulted[i]) eq.costs[i] = fixed + share * held;
    eq.values[i] = held - net.liabilities(i) - eq.costs[i];
  }
  return eq;
}

BankSet insolvent(const FinancialNetwork& net, const PaymentSolution& sol) {
  BankSet f;
  for (BankIndex i = 0; i < net.size(); ++i) {
    if (net.p(i) + sol.received[i] < net.liabilities(i)) f.push_back(i);
  }
  return f;
}

}  // namespace

BankSet Equilibrium::defaults() const {
  BankSet f;
  for (std::size_t i = 0; i < defaulted.size(); ++i) {
    if (defaulted[i]) f.push_back(i);
  }
  return f;
}

PaymentSolution payments_given_defaults(const FinancialNetwork& net, const BankSet& defaults_in,
                                        FixedPointSide side) {
  const std::size_t n = net.size();
  const BankSet defaults = normalize_set(defaults_in);
  auto in_f = membership(defaults, n);
  std::vector<long> pos(n, -1);
  for (std::size_t k = 0; k < defaults.size(); ++k) pos[defaults[k]] = static_cast<long>(k);

  const std::size_t m = defaults.size();
  const Rational keep = 1 - net.costs().share();
  const Rational fixed = net.costs().fixed();
  Matrix B(m, std::vector<Rational>(m));
  std::vector<Rational> q(m), u(m);
  for (std::size_t r = 0; r < m; ++r) {
    BankIndex j = defaults[r];
    Amount full_receipts = 0;
    for (std::size_t e : net.claims_of(j)) {
      const auto& d = net.debts()[e];
      if (in_f[d.debtor]) {
        B[r][static_cast<std::size_t>(pos[d.debtor])] = keep * d.amount / net.liabilities(d.debtor);
      } else {
        full_receipts += d.amount;
      }
    }
    q[r] = keep * (net.p(j) + full_receipts) - fixed;
    u[r] = net.liabilities(j);
  }
  auto outflow_f = clamp_fixed_point(B, q, u, side, defaults);

  PaymentSolution sol;
  sol.outflow.assign(n, Amount(0));
  sol.received.assign(n, Amount(0));
  for (BankIndex i = 0; i < n; ++i) {
    sol.outflow[i] = in_f[i] ? outflow_f[static_cast<std::size_t>(pos[i])] : net.liabilities(i);
  }
  sol.paid.reserve(net.debts().size());
  for (const auto& d : net.debts()) {
    Amount x = in_f[d.debtor] ? Amount(d.amount * sol.outflow[d.debtor] / net.liabilities(d.debtor)) : d.amount;
    sol.received[d.creditor] += x;
    sol.paid.push_back(std::move(x));
  }
  sol.consistent = insolvent(net, sol) == defaults;
  return sol;
}

Equilibrium best_equilibrium(const FinancialNetwork& net) {
  BankSet f;
  for (BankIndex i = 0; i < net.size(); ++i) {
    if (net.p(i) + net.assets(i) < net.liabilities(i)) f.push_back(i);
  }
  while (true) {
    auto sol = payments_given_defaults(net, f, FixedPointSide::Greatest);
    auto next = insolvent(net, sol);
    if (next == f) return assemble(net, sol);
    f = std::move(next);
  }
}

Equilibrium worst_equilibrium(const FinancialNetwork& net) {
  BankSet f(net.size());
  for (BankIndex i = 0; i < net.size(); ++i) f[i] = i;
  while (true) {
    auto sol = payments_given_defaults(net, f, FixedPointSide::Least);
    auto next = insolvent(net, sol);
    if (next == f) return assemble(net, sol);
    f = std::move(next);
  }
}

std::vector<Value> value_map(const FinancialNetwork& net, const std::vector<Value>& values) {
  const std::size_t n = net.size();
  if (values.size() != n) throw DomainError("value vector has wrong length");
  std::vector<Amount> pays(n);
  for (BankIndex j = 0; j < n; ++j) {
    Rational x = values[j] + net.liabilities(j);
    pays[j] = std::clamp(x, Rational(0), net.liabilities(j));
  }
  const Rational share = net.costs().share();
  const Rational fixed = net.costs().fixed();
  std::vector<Value> image(n);
  for (BankIndex i = 0; i < n; ++i) {
    Amount held = net.p(i);
    for (std::size_t e : net.claims_of(i)) {
      const auto& d = net.debts()[e];
      held += d.amount * pays[d.debtor] / net.liabilities(d.debtor);
    }
    Rational cost = held < net.liabilities(i) ? Rational(fixed + share * held) : Rational(0);
    image[i] = held - net.liabilities(i) - cost;
  }
  return image;
}

bool verify_equilibrium(const FinancialNetwork& net, const std::vector<Value>& values) {
  if (values.size() != net.size()) return false;
  return value_map(net, values) == values;
}

EquilibriumSet enumerate_equilibria(const FinancialNetwork& net, const EnumerationOptions& options) {
  const std::size_t n = net.size();
  const std::size_t cap = std::min<std::size_t>(options.max_banks, 62);
  if (n > cap) {
    throw DomainError("enumeration cap exceeded: " + std::to_string(n) + " banks > " + std::to_string(cap));
  }
  auto best = best_equilibrium(net);
  auto worst = worst_equilibrium(net);
  BankSet lower = best.defaults();
  BankSet free;
  for (BankIndex i : worst.defaults()) {
    if (!best.defaulted[i]) free.push_back(i);
  }

  const std::uint64_t count = std::uint64_t{1} << free.size();
  std::vector<std::optional<Equilibrium>> found(count);
  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      BankSet f = lower;
      for (std::size_t k = 0; k < free.size(); ++k) {
        if (mask >> k & 1) f.push_back(free[k]);
      }
      auto sol = payments_given_defaults(net, f, FixedPointSide::Greatest);
      if (sol.consistent) found[mask] = assemble(net, sol);
    }
  };

  unsigned threads = std::max(1u, options.threads);
  if (threads == 1 || count < 2) {
    work(0, count);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    std::uint64_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::uint64_t begin = std::min(count, t * chunk);
      std::uint64_t end = std::min(count, begin + chunk);
      pool.emplace_back([&, t, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::vector<std::pair<std::pair<std::size_t, std::uint64_t>, Equilibrium>> keyed;
  for (auto& e : found) {
    if (!e) continue;
    std::uint64_t bits = 0;
    for (BankIndex i : e->defaults()) bits |= std::uint64_t{1} << i;
    keyed.push_back({{e->defaults().size(), bits}, std::move(*e)});
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

  EquilibriumSet set;
  for (auto& [key, e] : keyed) {
    bool duplicate = std::any_of(set.members.begin(), set.members.end(),
                                 [&](const Equilibrium& m) { return m.values == e.values; });
    if (!duplicate) set.members.push_back(std::move(e));
  }
  set.best = 0;
  set.worst = set.members.empty() ? 0 : set.members.size() - 1;
  return set;
}

}  // namespace contagion
