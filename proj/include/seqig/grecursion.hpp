#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seqig/conditions.hpp"
#include "seqig/model.hpp"
#include "seqig/rational.hpp"

namespace seqig {

// Numeric value attached to each outcome label (loss or utility; the engine
// is agnostic). Must be total over the outcome domain.
struct OutcomeFunctional {
    std::map<std::string, Rat> values;
};

// Throws InputError when a domain label has no value.
void require_total(const OutcomeFunctional& k, const Variable& outcome);

// E{k(Y); s} by direct summation over the full joint. Reference semantics
// for the recursive evaluator.
Rat consequence_brute_force(const RegimeModel& model, std::string_view s,
                            const OutcomeFunctional& k);

// Test/debug seams for the recursion. The initializer override replaces the
// starting values on full histories (the recursion must be insensitive to
// values on zero-mass histories); captured tables expose each backward level.
struct GHooks {
    // args: full history config over the domain sequence, default value k(y)
    std::function<Rat(std::span<const int>, const Rat&)> init_override;
    std::vector<std::vector<Rat>>* capture_levels = nullptr;
};

// Backward recursion over partial histories, alternating action- and
// nature-variable expectation steps. Visits only histories of positive
// s-mass and equals consequence_brute_force exactly.
Rat g_recursion(const RegimeModel& model, std::string_view s, const OutcomeFunctional& k,
                const GHooks& hooks = {});

enum class TransferPolicy { require_checks, force };

struct TransferOutcome {
    enum class Status { ok, refused, undefined_conditional };
    Status status = Status::ok;
    std::optional<Rat> value;
    bool unsafe = false;                     // force mode with failed checks
    std::vector<CheckReport> failed_checks;  // populated on refusal / unsafe
    std::string undefined_at;                // history where an o-conditional was undefined
};

// G-recursion with nature steps taken from the observational regime and
// action steps from regime s. Under require_checks, refuses unless simple
// stability and positivity both hold; under force it proceeds, flags the
// result unsafe when they fail, and reports an undefined observational
// conditional as a hard error.
TransferOutcome g_transfer(const RegimeModel& model, std::string_view s,
                           const OutcomeFunctional& k,
                           TransferPolicy policy = TransferPolicy::require_checks);

}  // namespace seqig
