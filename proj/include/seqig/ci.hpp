#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seqig/joint.hpp"
#include "seqig/model.hpp"
#include "seqig/rational.hpp"

namespace seqig {

// Conditional-independence triple X _||_ Y | Z over variable names, with the
// regime indicator optionally on the Y side or in the conditioning set
// (never on the left). Canonical form: sets sorted, Z removed from X and Y.
struct CIStatement {
    std::vector<std::string> x, y, z;
    bool sigma_in_y = false;
    bool sigma_in_z = false;
    // Numeric-check extension: restrict to specific regimes ("; regime=s").
    std::vector<std::string> regime_filter;

    static CIStatement make(std::vector<std::string> x, std::vector<std::string> y,
                            std::vector<std::string> z, bool sigma_in_y = false,
                            bool sigma_in_z = false);

    bool trivially_true() const { return x.empty() || (y.empty() && !sigma_in_y); }
    bool operator==(const CIStatement& o) const;
    std::string text() const;  // canonical "X _||_ Y | Z" rendering
};

struct Assignment {
    std::string var, value;
    bool operator==(const Assignment& o) const = default;
};

struct WitnessSide {
    std::string regime;              // empty when not regime-specific
    std::vector<Assignment> given;   // conditioning event
    Rat prob;
};

// A concrete cell at which two conditional probabilities disagree (or, for
// positivity-type checks, a configuration with mass on one side only).
struct Witness {
    std::vector<Assignment> event;
    WitnessSide left, right;
    std::string note;
};

std::string assignments_text(const std::vector<Assignment>& a);

struct CommonVersionEntry {
    std::vector<Assignment> given;   // z-configuration
    std::vector<Assignment> event;   // x-configuration
    Rat w;
    std::vector<std::string> constrained_by;  // regimes fixing this cell; empty = default fill
};

struct Verdict {
    bool holds = true;
    std::vector<Witness> witnesses;  // non-empty iff !holds
    std::optional<std::vector<CommonVersionEntry>> common_version;
    std::string note;
};

// X _||_ Y | Z on a single table, zero-mass cells unconstrained. The sigma
// flags are honoured when the table carries a "sigma" axis (mixture joints).
Verdict check_stochastic_ci(const JointTable& joint, const CIStatement& stmt);

// Extended CI across regimes. With sigma on the Y side, searches for one
// conditional table valid in every listed regime simultaneously and returns
// it on success; with sigma in the conditioning set, checks X _||_ Y | Z
// within each regime separately.
Verdict check_extended_ci(const RegimeModel& model, const std::vector<std::string>& regimes,
                          const CIStatement& stmt);
Verdict check_extended_ci(const RegimeModel& model, const std::vector<std::string>& regimes,
                          const CIStatement& stmt, const std::vector<const JointTable*>& joints);

struct MixtureJoint {
    std::vector<std::pair<std::string, Rat>> prior;  // regime id -> pi(s) > 0
    JointTable joint;                                // model variables + trailing "sigma" axis
};

// Product-space mixture: sigma becomes an ordinary variable with marginal
// equal to the prior and per-regime conditionals equal to the regime joints.
MixtureJoint mixture_joint(const RegimeModel& model,
                           const std::vector<std::pair<std::string, Rat>>& prior);

struct VersionReport {
    bool valid = true;
    std::vector<Witness> mismatches;
};

// Does `candidate` serve as a version of E{h(target) | given} on this table?
// Checked at every positive-mass configuration of `given`.
VersionReport check_expectation_version(
    const JointTable& joint, const std::string& target,
    const std::map<std::string, Rat>& target_values, const std::vector<std::string>& given,
    const std::function<Rat(const std::vector<Assignment>&)>& candidate);

}  // namespace seqig
