#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "contagion/bailout.hpp"
#include "contagion/clearing.hpp"
#include "contagion/cycles.hpp"
#include "contagion/generators.hpp"
#include "contagion/io.hpp"
#include "contagion/network.hpp"
#include "contagion/solvency.hpp"
#include "contagion/structured.hpp"

using namespace contagion;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

struct Globals {
  bool json = false;
  unsigned threads = 1;
  std::size_t cycle_cap = kDefaultCycleCap;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

FinancialNetwork load(const std::string& path, bool lenient = false) {
  ParseOptions options;
  options.strict = !lenient;
  return parse_network(read_input(path), options);
}

std::string frac(const Rational& x) { return to_fraction(x); }

Json ids(const BankSet& s) {
  Json a = Json::array();
  for (BankIndex i : s) a.push_back(i + 1);
  return a;
}

std::string id_list(const BankSet& s) {
  if (s.empty()) return "(none)";
  std::string out;
  for (BankIndex i : s) out += (out.empty() ? "" : ", ") + std::to_string(i + 1);
  return out;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ',')) {
    if (!cur.empty()) parts.push_back(cur);
  }
  return parts;
}

std::vector<Amount> amounts(const std::string& text) {
  std::vector<Amount> v;
  for (const auto& s : split(text)) v.push_back(parse_rational(s));
  return v;
}

BankSet bank_ids(const std::string& text, std::size_t n) {
  BankSet s;
  for (const auto& part : split(text)) {
    long id = std::stol(part);
    if (id < 1 || static_cast<std::size_t>(id) > n) throw DomainError("bank id " + part + " out of range");
    s.push_back(static_cast<BankIndex>(id - 1));
  }
  return normalize_set(s);
}

Json equilibrium_json(const FinancialNetwork& net, const Equilibrium& eq) {
  Json j;
  j["values"] = Json::array();
  for (const auto& v : eq.values) j["values"].push_back(frac(v));
  j["defaults"] = ids(eq.defaults());
  j["payments"] = Json::array();
  for (std::size_t e = 0; e < net.debts().size(); ++e) {
    const auto& d = net.debts()[e];
    j["payments"].push_back({{"debtor", d.debtor + 1}, {"creditor", d.creditor + 1}, {"owed", frac(d.amount)},
                             {"paid", frac(eq.paid[e])}});
  }
  return j;
}

void print_equilibrium(const FinancialNetwork& net, const Equilibrium& eq, const std::string& title) {
  std::cout << title << " (defaults: " << id_list(eq.defaults()) << ")\n";
  std::cout << "  bank  value\n";
  for (BankIndex i = 0; i < net.size(); ++i) {
    std::cout << "  " << std::left << std::setw(6) << i + 1 << to_display(eq.values[i])
              << (eq.defaulted[i] ? "  default" : "") << "\n";
  }
  bool header = false;
  for (std::size_t e = 0; e < net.debts().size(); ++e) {
    const auto& d = net.debts()[e];
    if (eq.paid[e] == d.amount) continue;
    if (!header) std::cout << "  partial payments:\n";
    header = true;
    std::cout << "    " << d.debtor + 1 << " -> " << d.creditor + 1 << ": " << to_display(eq.paid[e]) << " of "
              << to_display(d.amount) << "\n";
  }
}

Json policy_json(const BailoutPolicy& p) {
  Json j;
  j["steps"] = Json::array();
  for (const auto& s : p.steps) j["steps"].push_back({{"bank", s.bank + 1}, {"injection", frac(s.injection)}});
  j["total"] = frac(p.total);
  return j;
}

void print_policy(const BailoutPolicy& p) {
  if (p.steps.empty()) std::cout << "  no bailout needed\n";
  for (std::size_t k = 0; k < p.steps.size(); ++k) {
    std::cout << "  " << k + 1 << ". bank " << p.steps[k].bank + 1 << "  inject " << to_display(p.steps[k].injection)
              << "\n";
  }
  std::cout << "  total " << to_display(p.total) << "\n";
}

std::optional<Method> method_from(const std::string& name) {
  if (name == "exact") return Method::Exact;
  if (name == "greedy-cost") return Method::GreedyCost;
  if (name == "greedy-flow") return Method::GreedyFlow;
  if (name == "greedy-shortfall") return Method::GreedyShortfall;
  return std::nullopt;
}

int cmd_validate(const Globals& g, const std::string& path, bool lenient) {
  try {
    auto net = load(path, lenient);
    if (g.json) {
      std::cout << Json{{"valid", true}, {"banks", net.size()}, {"debts", net.debts().size()}}.dump(2) << "\n";
    } else {
      std::cout << "valid: " << net.size() << " banks, " << net.debts().size() << " debts\n";
    }
    return 0;
  } catch (const ValidationError& e) {
    if (g.json) {
      std::cout << Json{{"valid", false}, {"problems", e.problems()}}.dump(2) << "\n";
    } else {
      std::cout << "invalid:\n";
      for (const auto& p : e.problems()) std::cout << "  " << p << "\n";
    }
    return kDomainError;
  }
}

int cmd_solve(const Globals& g, const std::string& path, const std::string& which) {
  auto net = load(path);
  if (which == "all") {
    EnumerationOptions opt;
    opt.threads = g.threads;
    auto set = enumerate_equilibria(net, opt);
    if (g.json) {
      Json j;
      j["equilibria"] = Json::array();
      for (const auto& m : set.members) j["equilibria"].push_back(equilibrium_json(net, m));
      j["best"] = set.best;
      j["worst"] = set.worst;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << set.members.size() << " equilibri" << (set.members.size() == 1 ? "um" : "a") << "\n";
      for (std::size_t k = 0; k < set.members.size(); ++k) {
        std::string title = "equilibrium " + std::to_string(k + 1);
        if (k == set.best) title += " [best]";
        if (k == set.worst) title += " [worst]";
        print_equilibrium(net, set.members[k], title);
      }
    }
    return 0;
  }
  auto eq = which == "best" ? best_equilibrium(net) : worst_equilibrium(net);
  if (g.json) {
    Json j = equilibrium_json(net, eq);
    j["equilibrium"] = which;
    std::cout << j.dump(2) << "\n";
  } else {
    print_equilibrium(net, eq, which + " equilibrium");
  }
  return 0;
}

int cmd_analyze(const Globals& g, const std::string& path) {
  auto net = load(path);
  auto balance = classify_balance(net);
  auto d = diagnose(net, g.cycle_cap);
  auto sccs = strongly_connected_components(net);
  auto tag = detect_structure(net, g.cycle_cap);

  if (g.json) {
    Json j;
    j["banks"] = Json::array();
    for (BankIndex i = 0; i < net.size(); ++i) {
      const auto& b = balance.banks[i];
      j["banks"].push_back({{"id", i + 1},
                            {"assets", frac(net.assets(i))},
                            {"liabilities", frac(net.liabilities(i))},
                            {"weakly_balanced", b.weakly_balanced},
                            {"exactly_balanced", b.exactly_balanced},
                            {"critically_balanced", b.critically_balanced},
                            {"unilaterally_solvent", b.unilaterally_solvent},
                            {"deficit", frac(b.deficit)},
                            {"shortfall", frac(b.shortfall)}});
    }
    j["weakly_balanced"] = d.weakly_balanced;
    j["max_iss"] = ids(d.max_iss);
    j["cycles"] = Json::array();
    for (const auto& c : d.cycles.cycles) j["cycles"].push_back(ids(c.banks));
    j["uncovered_cycles"] = Json::array();
    for (std::size_t c : d.uncovered_cycles) j["uncovered_cycles"].push_back(ids(d.cycles.cycles[c].banks));
    j["best_all_solvent"] = d.best_all_solvent;
    j["worst_all_solvent"] = d.worst_all_solvent;
    j["components"] = Json::array();
    for (const auto& s : sccs) j["components"].push_back(ids(s));
    j["structure"] = structure_name(tag);
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  std::cout << "bank  assets            liabilities       balance\n";
  for (BankIndex i = 0; i < net.size(); ++i) {
    const auto& b = balance.banks[i];
    std::string kind = b.unilaterally_solvent ? "unilaterally solvent"
                       : b.critically_balanced ? "critically balanced"
                       : b.exactly_balanced    ? "exactly balanced"
                       : b.weakly_balanced     ? "weakly balanced"
                                               : "deficit " + to_display(b.deficit);
    std::cout << std::left << std::setw(6) << i + 1 << std::setw(18) << to_display(net.assets(i)) << std::setw(18)
              << to_display(net.liabilities(i)) << kind << "\n";
  }
  std::cout << "weakly balanced: " << (d.weakly_balanced ? "yes" : "no") << "\n";
  std::cout << "simple cycles: " << d.cycles.count() << "\n";
  for (std::size_t c = 0; c < d.cycles.count(); ++c) {
    bool uncovered = std::find(d.uncovered_cycles.begin(), d.uncovered_cycles.end(), c) != d.uncovered_cycles.end();
    std::cout << "  " << id_list(d.cycles.cycles[c].banks) << (uncovered ? "  (no strongly solvent bank)" : "") << "\n";
  }
  std::cout << "iteratively strongly solvent: " << id_list(d.max_iss) << "\n";
  std::cout << "best equilibrium all solvent: " << (d.best_all_solvent ? "yes" : "no") << "\n";
  std::cout << "worst equilibrium all solvent: " << (d.worst_all_solvent ? "yes" : "no") << "\n";
  std::cout << "structure: " << structure_name(tag) << "\n";
  return 0;
}

int cmd_bailout(const Globals& g, const std::string& path, const std::string& method_name,
                const std::string& budget_text, std::size_t node_budget) {
  auto net = load(path);
  SolverParams params;
  params.cycle_cap = g.cycle_cap;
  params.node_budget = node_budget;

  if (!budget_text.empty()) {
    Amount budget = parse_rational(budget_text);
    bool ok = opt_decision(net, budget, params);
    if (g.json) {
      std::cout << Json{{"budget", frac(budget)}, {"feasible", ok}}.dump(2) << "\n";
    } else {
      std::cout << "full solvency within " << to_display(budget) << ": " << (ok ? "yes" : "no") << "\n";
    }
    return 0;
  }

  BailoutResult result;
  std::string route = method_name;
  if (method_name == "auto") {
    auto routed = auto_bailout(net, params);
    result = routed.result;
    route = structure_name(routed.tag);
    if (route == "general") route = "exact";
  } else {
    params.method = *method_from(method_name);
    result = solve_bailout(net, params);
  }
  auto ev = policy_cost(net, result.policy);
  if (g.json) {
    Json j = policy_json(result.policy);
    j["method"] = route;
    j["optimal"] = result.optimal;
    j["valid"] = ev.valid;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "method: " << route << (result.optimal ? " (optimal)" : "") << "\n";
    print_policy(result.policy);
    if (!ev.valid) std::cout << "  warning: policy does not restore full solvency\n";
  }
  return 0;
}

int cmd_reduce(const Globals& g, const std::string& path, const std::string& solvent_text,
               const std::string& transfers_text, bool imbalance) {
  auto net = load(path);
  BankSet s = bank_ids(solvent_text, net.size());
  std::vector<Amount> t;
  if (imbalance) t = net_imbalance_injections(net);
  if (!transfers_text.empty()) t = amounts(transfers_text);
  auto r = reduce_modulo_solvent(net, s, t);
  if (g.json) {
    Json j;
    j["original"] = ids(r.original);
    j["network"] = Json::parse(emit_network(r.network));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cerr << "remaining banks (original ids): " << id_list(r.original) << "\n";
    std::cout << emit_network(r.network);
  }
  return 0;
}

int cmd_compress(const std::string& path) {
  std::cout << emit_network(compress(load(path)));
  return 0;
}

int cmd_export_dot(const std::string& path, const std::string& equilibrium, const std::string& method_name) {
  auto net = load(path);
  std::optional<Equilibrium> eq;
  if (equilibrium == "best") eq = best_equilibrium(net);
  if (equilibrium == "worst") eq = worst_equilibrium(net);
  std::optional<BailoutPolicy> policy;
  if (!method_name.empty()) {
    if (method_name == "auto") {
      policy = auto_bailout(net).result.policy;
    } else {
      SolverParams params;
      params.method = *method_from(method_name);
      policy = solve_bailout(net, params).policy;
    }
  }
  std::cout << export_dot(net, eq, policy);
  return 0;
}

CostSpec cost_spec(const std::string& kind, const std::string& a, const std::string& b) {
  if (kind == "full") return CostSpec::full();
  return CostSpec::canonical(parse_rational(a), parse_rational(b));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interbank clearing, solvency diagnostics and minimum bailouts"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--threads", g.threads, "Worker threads for equilibrium enumeration")->check(CLI::PositiveNumber);
  app.add_option("--cycle-cap", g.cycle_cap, "Maximum number of simple cycles to enumerate")
      ->check(CLI::PositiveNumber);

  std::string file;
  std::function<int()> run;

  auto* validate = app.add_subcommand("validate", "Check a network document");
  bool lenient = false;
  validate->add_option("file", file, "Network document ('-' for stdin)")->required();
  validate->add_flag("--lenient", lenient, "Ignore unknown fields");
  validate->callback([&] { run = [&] { return cmd_validate(g, file, lenient); }; });

  auto* solve = app.add_subcommand("solve", "Compute clearing equilibria");
  std::string which = "best";
  solve->add_option("file", file)->required();
  solve->add_option("--equilibrium", which, "best, worst or all")
      ->check(CLI::IsMember({"best", "worst", "all"}));
  solve->callback([&] { run = [&] { return cmd_solve(g, file, which); }; });

  auto* analyze = app.add_subcommand("analyze", "Balance, cycles and solvency diagnosis");
  analyze->add_option("file", file)->required();
  analyze->callback([&] { run = [&] { return cmd_analyze(g, file); }; });

  auto* bailout = app.add_subcommand("bailout", "Minimum-cost bailout policy");
  std::string method = "exact";
  std::string budget;
  std::size_t node_budget = SolverParams{}.node_budget;
  bailout->add_option("file", file)->required();
  bailout->add_option("--method", method)
      ->check(CLI::IsMember({"exact", "greedy-cost", "greedy-flow", "greedy-shortfall", "auto"}));
  bailout->add_option("--budget", budget, "Only decide whether full solvency fits within this amount");
  bailout->add_option("--node-budget", node_budget, "Search node limit for the exact solver")
      ->check(CLI::PositiveNumber);
  bailout->callback([&] { run = [&] { return cmd_bailout(g, file, method, budget, node_budget); }; });

  auto* reduce = app.add_subcommand("reduce", "Remove a solvent set and fold its payments into the rest");
  std::string solvent, transfers;
  bool imbalance = false;
  reduce->add_option("file", file)->required();
  reduce->add_option("--solvent", solvent, "Comma-separated bank ids")->required();
  auto* t_opt = reduce->add_option("--transfers", transfers, "Comma-separated per-bank transfers");
  reduce->add_flag("--imbalance", imbalance, "Use the net-imbalance injections as transfers")->excludes(t_opt);
  reduce->callback([&] { run = [&] { return cmd_reduce(g, file, solvent, transfers, imbalance); }; });

  auto* compress_cmd = app.add_subcommand("compress", "Net out debt cycles");
  compress_cmd->add_option("file", file)->required();
  compress_cmd->callback([&] { run = [&] { return cmd_compress(file); }; });

  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering");
  std::string dot_eq = "none", dot_method;
  dot->add_option("file", file)->required();
  dot->add_option("--equilibrium", dot_eq)->check(CLI::IsMember({"none", "best", "worst"}));
  dot->add_option("--bailout", dot_method, "Annotate the policy found by this method")
      ->check(CLI::IsMember({"exact", "greedy-cost", "greedy-flow", "greedy-shortfall", "auto"}));
  dot->callback([&] { run = [&] { return cmd_export_dot(file, dot_eq, dot_method); }; });

  auto* generate_cmd = app.add_subcommand("generate", "Emit a generated network document");
  generate_cmd->require_subcommand(1);
  std::string costs_kind = "full", cost_a = "1", cost_b = "0";
  generate_cmd->add_option("--costs", costs_kind)->check(CLI::IsMember({"full", "canonical"}));
  generate_cmd->add_option("--a", cost_a, "Proportional recovery loss");
  generate_cmd->add_option("--b", cost_b, "Fixed bankruptcy cost");
  GeneratorSpec spec;
  auto emit = [&] { run = [&] {
                      std::cout << emit_network(generate(spec, cost_spec(costs_kind, cost_a, cost_b)));
                      return 0;
                    }; };

  std::size_t n = 0;
  std::string d = "1", p = "0", d_in = "2", d_out = "1", d_core = "1", d_hi = "2", d_lo = "1", p_list, p_core,
              p_p = "0";
  auto* wheel = generate_cmd->add_subcommand("wheel", "Single debt cycle");
  wheel->add_option("--n", n)->required();
  wheel->add_option("--d", d);
  wheel->add_option("--p", p);
  wheel->callback([&] {
    spec = gen::Wheel{n, parse_rational(d), parse_rational(p)};
    emit();
  });

  auto* star = generate_cmd->add_subcommand("star", "Center bank with symmetric peripherals");
  star->add_option("--n", n)->required();
  star->add_option("--d-in", d_in);
  star->add_option("--d-out", d_out);
  star->add_option("--p", p_list, "Comma-separated p for peripherals, then the center");
  star->callback([&] {
    spec = gen::Star{n, parse_rational(d_in), parse_rational(d_out), amounts(p_list)};
    emit();
  });

  std::size_t n_c = 0, n_p = 0;
  auto* cp = generate_cmd->add_subcommand("core-periphery", "Core clique with attached peripherals");
  cp->add_option("--n-core", n_c)->required();
  cp->add_option("--n-periphery", n_p)->required();
  cp->add_option("--d-core", d_core);
  cp->add_option("--d-in", d_in);
  cp->add_option("--d-out", d_out);
  cp->add_option("--p-core", p_core, "Comma-separated p for core banks");
  cp->add_option("--p-periphery", p_p);
  cp->callback([&] {
    spec = gen::CorePeriphery{n_c, n_p, parse_rational(d_core), parse_rational(d_in), parse_rational(d_out),
                              amounts(p_core), parse_rational(p_p)};
    emit();
  });

  auto* chain = generate_cmd->add_subcommand("cycle-chain", "Chain of reciprocal debts");
  chain->add_option("--n", n)->required();
  chain->add_option("--d-hi", d_hi);
  chain->add_option("--d-lo", d_lo);
  chain->callback([&] {
    spec = gen::CycleChain{n, parse_rational(d_hi), parse_rational(d_lo)};
    emit();
  });

  gen::Random random_spec;
  auto* random = generate_cmd->add_subcommand("random", "Seeded random network");
  random->add_option("--n", random_spec.n)->required();
  random->add_option("--density-num", random_spec.density_num);
  random->add_option("--density-den", random_spec.density_den);
  random->add_option("--amount-lo", random_spec.amount_lo);
  random->add_option("--amount-hi", random_spec.amount_hi);
  random->add_option("--p-lo", random_spec.p_lo);
  random->add_option("--p-hi", random_spec.p_hi);
  random->add_option("--ext-lo", random_spec.ext_lo);
  random->add_option("--ext-hi", random_spec.ext_hi);
  random->add_option("--scale", random_spec.scale);
  random->add_option("--seed", random_spec.seed);
  random->add_flag("--balanced", random_spec.weakly_balanced, "Top up p so every bank is weakly balanced");
  random->callback([&] {
    spec = random_spec;
    emit();
  });

  gen::FromPartition partition;
  auto* part = generate_cmd->add_subcommand("partition", "Bilateral star encoding a partition instance");
  part->add_option("--multiset", partition.multiset, "Positive integers")->required()->delimiter(',');
  part->add_option("--m", partition.m, "Scale M, greater than twice the sum")->required();
  part->callback([&] {
    spec = partition;
    emit();
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    return run();
  } catch (const CycleCapExceeded& e) {
    std::cerr << "error: " << e.what() << " (raise --cycle-cap)\n";
    return kDomainError;
  } catch (const ValidationError& e) {
    std::cerr << "error: invalid network\n";
    for (const auto& p : e.problems()) std::cerr << "  " << p << "\n";
    return kDomainError;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: malformed number: " << e.what() << "\n";
    return kUsageError;
  }
}
