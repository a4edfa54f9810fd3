#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqig/rational.hpp"

namespace seqig {

enum class Role { observable, action, unobserved, outcome };
std::string_view role_name(Role r);
std::optional<Role> role_from_name(std::string_view name);

using VarId = int;

struct Variable {
    std::string name;
    Role role = Role::observable;
    std::vector<std::string> domain;  // ordered, distinct, non-empty

    // -1 when the label is not in the domain.
    int value_index(std::string_view label) const;
};

// Stage i of a sequential problem: optional observable block, optional
// unobserved block, then the action. The outcome closes the sequence.
struct Stage {
    std::optional<VarId> l;
    std::optional<VarId> u;
    VarId a = -1;
};

struct InformationBase {
    std::vector<VarId> order;  // every model variable exactly once
    bool extended = false;     // true iff any unobserved variable present

    // Derived by analyze(); empty/-1 until then.
    std::vector<Stage> stages;
    VarId outcome = -1;
};

enum class RegimeKind { observational, interventional };
std::string_view regime_kind_name(RegimeKind k);

// Conditional table for one variable. Rows are dense over the parent
// product space in mixed-radix order (first parent most significant).
// A disengaged row is "unconstrained": permitted only where the parent
// configuration has probability zero in the owning regime.
struct Kernel {
    VarId child = -1;
    std::vector<VarId> parents;
    std::vector<std::optional<std::vector<Rat>>> rows;

    std::size_t row_count() const { return rows.size(); }
};

struct Regime {
    std::string id;
    RegimeKind kind = RegimeKind::interventional;
    std::vector<Kernel> kernels;  // one per variable, in information-base order
};

struct RegimeModel {
    std::vector<Variable> variables;
    InformationBase base;
    std::vector<Regime> regimes;

    const Variable& var(VarId id) const { return variables.at(static_cast<std::size_t>(id)); }
    VarId var_id(std::string_view name) const;  // -1 when absent
    const Regime* find_regime(std::string_view id) const;
    const Regime& regime(std::string_view id) const;  // throws InputError
    std::string observational_id() const;             // throws InputError when absent
    std::vector<std::string> interventional_ids() const;

    // Domain variables (observable/action/outcome) in base order.
    std::vector<VarId> domain_order() const;
    std::size_t stage_count() const { return base.stages.size(); }

    // Derives stages/outcome from `base.order` and variable roles.
    // Throws InputError when the order does not alternate ([L] [U] A)* Y.
    void analyze();
};

struct Violation {
    std::string where;    // "variable Y", "regime o kernel A row (U=1)", ...
    std::string message;
};

// Full structural audit; empty result iff every invariant holds.
std::vector<Violation> validate_model(const RegimeModel& model);

// Throws InputError listing the violations.
void require_valid(const RegimeModel& model);

// State-space bound for joint materialization (number of configurations).
// Overridable via the SEQIG_STATE_CAP environment variable.
std::size_t state_space_cap();

}  // namespace seqig
