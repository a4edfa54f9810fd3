#pragma once

#include <json.hpp>
#include <ostream>
#include <string>

#include "seqig/conditions.hpp"
#include "seqig/fixtures.hpp"
#include "seqig/semigraphoid.hpp"
#include "seqig/strategy.hpp"

namespace seqig {

// Machine-readable report schema: versioned and field-stable. Probabilities
// are always rendered as "numerator/denominator" strings.
inline constexpr const char* kReportSchema = "seqig-report/1";

nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const CheckReport& r);
nlohmann::json to_json(const ConditionReport& r);
nlohmann::json to_json(const TransferOutcome& t);
nlohmann::json to_json(const OptimizeResult& r);
nlohmann::json to_json(const Derivation& d);
nlohmann::json to_json(const FixtureReport& r);

void render_witness(std::ostream& os, const Witness& w, const std::string& indent);
void render_check(std::ostream& os, const CheckReport& r, bool verbose);
void render_condition_report(std::ostream& os, const ConditionReport& r, bool verbose);
void render_derivation(std::ostream& os, const Derivation& d);
void render_fixture_report(std::ostream& os, const FixtureReport& r);
void render_optimize(std::ostream& os, const OptimizeResult& r);

}  // namespace seqig
