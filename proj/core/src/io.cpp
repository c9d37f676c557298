#include "contagion/io.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace contagion {

namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

constexpr const char* kFormat = "contagion-network";
constexpr int kVersion = 1;

void check_fields(const Json& object, const std::string& where, std::initializer_list<const char*> allowed,
                  bool strict) {
  if (!strict) return;
  std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& [key, value] : object.items()) {
    if (!known.count(key)) throw ParseError(where + ": unknown field \"" + key + "\"");
  }
}

const Json& require(const Json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) throw ParseError(where + ": missing field \"" + key + "\"");
  return *it;
}

Rational amount_of(const Json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const DomainError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Rational(std::to_string(v.get<std::uint64_t>()));
    return Rational(std::to_string(v.get<std::int64_t>()));
  }
  if (v.is_number_float()) throw ParseError(where + ": floating-point amounts are not exact; use a string");
  throw ParseError(where + ": expected an amount");
}

long id_of(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer bank id");
  if (v.is_number_unsigned()) {
    auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<long>::max())) throw ParseError(where + ": id too large");
    return static_cast<long>(u);
  }
  return v.get<long>();
}

const Json& array_field(const Json& doc, const char* key) {
  const Json& a = require(doc, key, "document");
  if (!a.is_array()) throw ParseError(std::string(key) + ": expected an array");
  return a;
}

std::string line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(std::min(byte, text.size())), '\n'));
  return std::to_string(line);
}

}  // namespace

FinancialNetwork parse_network(std::string_view text, const ParseOptions& options) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError("syntax error at line " + line_of(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("document: expected an object");
  check_fields(doc, "document", {"format", "version", "banks", "debts", "costs"}, options.strict);

  const Json& format = require(doc, "format", "document");
  if (!format.is_string() || format.get<std::string>() != kFormat) {
    throw ParseError(std::string("format: expected \"") + kFormat + "\"");
  }
  const Json& version = require(doc, "version", "document");
  if (!version.is_number_integer() || version.get<long>() != kVersion) {
    throw ParseError("version: unsupported version");
  }

  RawNetwork raw;
  const Json& banks = array_field(doc, "banks");
  for (std::size_t k = 0; k < banks.size(); ++k) {
    std::string where = "banks[" + std::to_string(k) + "]";
    const Json& b = banks[k];
    if (!b.is_object()) throw ParseError(where + ": expected an object");
    check_fields(b, where, {"id", "p", "ext_liability"}, options.strict);
    RawNetwork::Bank bank;
    bank.id = id_of(require(b, "id", where), where + ".id");
    bank.p = amount_of(require(b, "p", where), where + ".p");
    bank.ext_liability = b.contains("ext_liability") ? amount_of(b["ext_liability"], where + ".ext_liability") : Rational(0);
    raw.banks.push_back(std::move(bank));
  }

  std::map<std::pair<long, long>, std::size_t> seen;
  const Json& debts = array_field(doc, "debts");
  for (std::size_t k = 0; k < debts.size(); ++k) {
    std::string where = "debts[" + std::to_string(k) + "]";
    const Json& d = debts[k];
    if (!d.is_object()) throw ParseError(where + ": expected an object");
    check_fields(d, where, {"debtor", "creditor", "amount"}, options.strict);
    RawNetwork::Edge edge;
    edge.debtor = id_of(require(d, "debtor", where), where + ".debtor");
    edge.creditor = id_of(require(d, "creditor", where), where + ".creditor");
    edge.amount = amount_of(require(d, "amount", where), where + ".amount");
    auto key = std::make_pair(edge.debtor, edge.creditor);
    auto it = seen.find(key);
    if (it != seen.end() && sgn(edge.amount) > 0 && sgn(raw.debts[it->second].amount) > 0) {
      raw.debts[it->second].amount += edge.amount;
      continue;
    }
    seen[key] = raw.debts.size();
    raw.debts.push_back(std::move(edge));
  }

  if (doc.contains("costs")) {
    const Json& c = doc["costs"];
    if (!c.is_object()) throw ParseError("costs: expected an object");
    check_fields(c, "costs", {"kind", "a", "b"}, options.strict);
    const Json& kind = require(c, "kind", "costs");
    std::string k = kind.is_string() ? kind.get<std::string>() : "";
    if (k == "full") {
      raw.costs = CostSpec::full();
    } else if (k == "canonical") {
      try {
        raw.costs = CostSpec::canonical(amount_of(require(c, "a", "costs"), "costs.a"),
                                        amount_of(require(c, "b", "costs"), "costs.b"));
      } catch (const ParseError&) {
        throw;
      } catch (const DomainError& e) {
        throw ParseError(std::string("costs: ") + e.what());
      }
    } else {
      throw ParseError("costs.kind: expected \"canonical\" or \"full\"");
    }
  }
  return validate_network(raw);
}

std::string emit_network(const FinancialNetwork& net) {
  OrderedJson doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["banks"] = OrderedJson::array();
  for (BankIndex i = 0; i < net.size(); ++i) {
    OrderedJson b;
    b["id"] = i + 1;
    b["p"] = to_fraction(net.p(i));
    b["ext_liability"] = to_fraction(net.ext_liability(i));
    doc["banks"].push_back(std::move(b));
  }
  doc["debts"] = OrderedJson::array();
  for (const auto& d : net.debts()) {
    OrderedJson e;
    e["debtor"] = d.debtor + 1;
    e["creditor"] = d.creditor + 1;
    e["amount"] = to_fraction(d.amount);
    doc["debts"].push_back(std::move(e));
  }
  OrderedJson costs;
  if (net.costs().kind == CostSpec::Kind::Full) {
    costs["kind"] = "full";
  } else {
    costs["kind"] = "canonical";
    costs["a"] = to_fraction(net.costs().a);
    costs["b"] = to_fraction(net.costs().b);
  }
  doc["costs"] = std::move(costs);
  return doc.dump(2) + "\n";
}

std::string export_dot(const FinancialNetwork& net, const std::optional<Equilibrium>& equilibrium,
                       const std::optional<BailoutPolicy>& policy) {
  std::vector<std::optional<Amount>> injection(net.size());
  if (policy) {
    for (const auto& s : policy->steps) {
      if (s.bank < net.size()) injection[s.bank] = injection[s.bank].value_or(Amount(0)) + s.injection;
    }
  }

  std::ostringstream out;
  out << "digraph contagion {\n";
  out << "  rankdir=LR;\n";
  for (BankIndex i = 0; i < net.size(); ++i) {
    out << "  " << i + 1 << " [label=\"" << i + 1 << "\\np=" << to_fraction(net.p(i));
    if (equilibrium) out << "\\nV=" << to_fraction(equilibrium->values[i]);
    out << "\"";
    if (equilibrium && equilibrium->defaulted[i]) out << ", style=filled, fillcolor=\"#f4a6a6\"";
    if (injection[i]) out << ", shape=doublecircle, xlabel=\"+" << to_fraction(*injection[i]) << "\"";
    out << "];\n";
  }
  for (std::size_t e = 0; e < net.debts().size(); ++e) {
    const auto& d = net.debts()[e];
    out << "  " << d.debtor + 1 << " -> " << d.creditor + 1 << " [label=\"" << to_fraction(d.amount);
    if (equilibrium && equilibrium->paid[e] != d.amount) out << " (paid " << to_fraction(equilibrium->paid[e]) << ")";
    out << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace contagion
