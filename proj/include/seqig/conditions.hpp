#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "seqig/ci.hpp"
#include "seqig/model.hpp"

namespace seqig {

struct CheckReport {
    std::string condition;                     // "simple_stability", ...
    std::pair<std::string, std::string> regime_pair;  // (observational, interventional)
    bool holds = true;
    std::vector<Witness> witnesses;            // non-empty iff !holds
    std::vector<std::string> details;          // one line per stage statement
    std::vector<CommonVersionEntry> common_version;  // stability checks, when they hold
    std::string notes;
};

// Each L_i (and the outcome) has a regime-independent conditional law
// given the observed past, checked over {o, s}.
CheckReport check_simple_stability(const RegimeModel& model, std::string_view s);

// Absolute continuity of the s-joint w.r.t. the o-joint over domain variables.
CheckReport check_positivity(const RegimeModel& model, std::string_view s);

// Stability over the extended information base: (L_i, U_i) given the full
// extended past. Requires an extended base.
CheckReport check_extended_stability(const RegimeModel& model, std::string_view s);

// Absolute continuity over all variables including the unobserved ones.
CheckReport check_extended_positivity(const RegimeModel& model, std::string_view s);

// Actions under s ignore the unobserved past given the observed past.
CheckReport check_control_strategy(const RegimeModel& model, std::string_view s);

// The same property under the observational regime.
CheckReport check_sequential_randomization(const RegimeModel& model);

// Observables ignore the unobserved past given the observed past, within
// the named regime.
CheckReport check_sequential_irrelevance(const RegimeModel& model, std::string_view regime);

// Positivity propagation: wherever the observed prefix is s-possible and the
// full prefix is o-possible, the full prefix is s-possible. Premises
// (extended stability + control strategy) are verified first; throws
// InputError when they fail rather than silently skipping.
CheckReport check_lemma1(const RegimeModel& model, std::string_view s);

struct ConditionReport {
    std::string observational, interventional;
    std::vector<CheckReport> checks;
    std::vector<std::string> implication_errors;  // proven implications that failed
    bool internal_error = false;
    std::vector<std::string> skipped;             // checks not applicable to this model
};

// Runs every applicable checker and cross-validates the implication
// structure between them; a violated implication marks the report as an
// internal error (engine defect, not a property of the input).
ConditionReport condition_report(const RegimeModel& model, std::string_view s);

}  // namespace seqig
