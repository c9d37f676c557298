#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "contagion/bailout.hpp"
#include "contagion/clearing.hpp"
#include "contagion/network.hpp"

namespace contagion {

// Malformed document: bad syntax, wrong types, unknown fields in strict mode.
class ParseError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct ParseOptions {
  bool strict = true;
};

// Reads a network document. Amounts are strings ("2/7", "0.25", "3") or JSON integers;
// floating-point numbers are rejected. Parallel debts between the same pair are summed.
FinancialNetwork parse_network(std::string_view text, const ParseOptions& options = {});

// Canonical document; parse_network(emit_network(net)) == net.
std::string emit_network(const FinancialNetwork& net);

// Graphviz description with debtor -> creditor edges labelled by amount.
std::string export_dot(const FinancialNetwork& net, const std::optional<Equilibrium>& equilibrium = std::nullopt,
                       const std::optional<BailoutPolicy>& policy = std::nullopt);

}  // namespace contagion
