#pragma once

#include <string>
#include <string_view>

#include "seqig/ci.hpp"
#include "seqig/diagram.hpp"
#include "seqig/grecursion.hpp"
#include "seqig/model.hpp"
#include "seqig/strategy.hpp"

namespace seqig {

// Text formats. All parsers are pure and re-entrant; every diagnostic is a
// ParseError carrying a line/column span. Serializers emit the canonical
// form, on which parse . serialize is the identity.

// Model documents: `variables:` / `order:` / `regime <id> : <kind>` /
// `shared:` sections with `kernel CHILD | PARENTS : rows` tables.
RegimeModel parse_model(std::string_view text);
std::string serialize_model(const RegimeModel& model);

// "X1,X2 _||_ Y1,sigma | Z1,Z2" with an optional "; regime=id" suffix
// (numeric checks only).
CIStatement parse_ci(std::string_view text);
std::string serialize_ci(const CIStatement& stmt);

// Strategy documents: `A := value` (static) or `A | H1 H2 :` tables keyed by
// observed-history values. Unspecified histories default to the first
// action value.
Strategy parse_strategy(std::string_view text, const RegimeModel& model);
std::string serialize_strategy(const Strategy& strat, const RegimeModel& model);

// Diagram documents: `A -> B` edge lines plus `node N` declarations for
// isolated nodes; the name `sigma` marks the regime-indicator node.
InfluenceDiagram parse_diagram(std::string_view text);
std::string serialize_diagram(const InfluenceDiagram& dag);

// Loss/utility documents: one `value : rational` line per outcome value.
OutcomeFunctional parse_loss(std::string_view text, const RegimeModel& model);
std::string serialize_loss(const OutcomeFunctional& k, const RegimeModel& model);

}  // namespace seqig
