#include "seqig/grecursion.hpp"

#include <algorithm>
#include <sstream>

#include "seqig/errors.hpp"
#include "seqig/joint.hpp"

namespace seqig {

void require_total(const OutcomeFunctional& k, const Variable& outcome) {
    for (const auto& label : outcome.domain)
        if (!k.values.count(label))
            throw InputError("outcome functional has no value for " + outcome.name + "=" + label);
}

Rat consequence_brute_force(const RegimeModel& model, std::string_view s,
                            const OutcomeFunctional& k) {
    JointTable joint = materialize_joint(model, s);
    RegimeModel probe = model;
    probe.analyze();
    const Variable& outcome = probe.var(probe.base.outcome);
    require_total(k, outcome);
    int ax = joint.axis(outcome.name);

    std::vector<Rat> h(outcome.domain.size());
    for (std::size_t i = 0; i < outcome.domain.size(); ++i)
        h[i] = k.values.at(outcome.domain[i]);

    Rat acc = 0;
    for (std::size_t c = 0; c < joint.cell_count(); ++c) {
        const Rat& p = joint.cell(c);
        if (p == 0) continue;
        acc += p * h[joint.value_at(c, ax)];
    }
    return acc;
}

namespace {

// Dense prefix marginals M_0..M_m of a table; M_j lives on configurations
// of the first j variables.
std::vector<std::vector<Rat>> level_marginals(const JointTable& table) {
    std::vector<std::vector<Rat>> levels(table.vars().size() + 1);
    levels.back().assign(table.cell_count(), Rat(0));
    for (std::size_t c = 0; c < table.cell_count(); ++c) levels.back()[c] = table.cell(c);
    for (int j = static_cast<int>(table.vars().size()) - 1; j >= 0; --j) {
        std::size_t width = table.vars()[j].domain.size();
        const auto& lower = levels[j + 1];
        levels[j].assign(lower.size() / width, Rat(0));
        for (std::size_t i = 0; i < levels[j].size(); ++i)
            for (std::size_t t = 0; t < width; ++t) levels[j][i] += lower[i * width + t];
    }
    return levels;
}

std::string history_label(const JointTable& shape, std::size_t level, std::size_t idx) {
    std::vector<int> cfg(level);
    for (int j = static_cast<int>(level) - 1; j >= 0; --j) {
        std::size_t width = shape.vars()[j].domain.size();
        cfg[j] = static_cast<int>(idx % width);
        idx /= width;
    }
    std::ostringstream os;
    os << "(";
    for (std::size_t j = 0; j < level; ++j) {
        if (j) os << ", ";
        os << shape.vars()[j].name << "=" << shape.vars()[j].domain[cfg[j]];
    }
    os << ")";
    return os.str();
}

// Conditional law of the variable at position j given a prefix; false means
// the source cannot supply it (zero-mass prefix / unconstrained row).
using CondFn =
    std::function<bool(std::size_t j, std::size_t prefix_idx, std::vector<Rat>& out)>;

struct EngineResult {
    bool ok = true;
    Rat value;
    std::size_t undefined_level = 0;
    std::size_t undefined_prefix = 0;
};

// Backward expectation recursion over the domain sequence. The forward pass
// computes the masses of the histories the recursion is allowed to visit; the
// backward pass reads starting values only on visited full histories, so
// `init` may hold arbitrary junk elsewhere.
EngineResult run_recursion(const JointTable& shape, const CondFn& cond,
                           const std::vector<Rat>& init, const GHooks& hooks) {
    const std::size_t m = shape.vars().size();

    std::vector<std::vector<Rat>> q(m + 1);
    q[0] = {Rat(1)};
    std::vector<Rat> probs;
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t width = shape.vars()[j].domain.size();
        q[j + 1].assign(q[j].size() * width, Rat(0));
        for (std::size_t i = 0; i < q[j].size(); ++i) {
            if (q[j][i] == 0) continue;
            if (!cond(j, i, probs)) {
                EngineResult r;
                r.ok = false;
                r.undefined_level = j;
                r.undefined_prefix = i;
                return r;
            }
            for (std::size_t t = 0; t < width; ++t)
                if (probs[t] != 0) q[j + 1][i * width + t] = q[j][i] * probs[t];
        }
    }

    std::vector<Rat> f = init;
    if (hooks.capture_levels) hooks.capture_levels->push_back(f);
    for (std::size_t j = m; j >= 1; --j) {
        const std::size_t width = shape.vars()[j - 1].domain.size();
        std::vector<Rat> up(q[j - 1].size(), Rat(0));
        for (std::size_t i = 0; i < up.size(); ++i) {
            if (q[j - 1][i] == 0) continue;
            cond(j - 1, i, probs);  // defined: the forward pass succeeded here
            for (std::size_t t = 0; t < width; ++t)
                if (probs[t] != 0) up[i] += probs[t] * f[i * width + t];
        }
        f = std::move(up);
        if (hooks.capture_levels) hooks.capture_levels->push_back(f);
    }
    EngineResult r;
    r.value = f[0];
    return r;
}

struct Prepared {
    RegimeModel model;          // analyzed + validated
    JointTable domain_joint_s;  // marginal of the s-joint over domain variables
    std::vector<Rat> init;      // k(y) on full domain histories
};

Prepared prepare(const RegimeModel& model, std::string_view s, const OutcomeFunctional& k,
                 const GHooks& hooks) {
    Prepared p{model, {}, {}};
    p.model.analyze();
    require_valid(p.model);
    const Variable& outcome = p.model.var(p.model.base.outcome);
    require_total(k, outcome);

    std::vector<std::string> domain_names;
    for (VarId v : p.model.domain_order()) domain_names.push_back(p.model.var(v).name);
    p.domain_joint_s = marginalize(materialize_joint(p.model, s), domain_names);

    const std::size_t width = outcome.domain.size();
    std::vector<Rat> h(width);
    for (std::size_t i = 0; i < width; ++i) h[i] = k.values.at(outcome.domain[i]);
    p.init.assign(p.domain_joint_s.cell_count(), Rat(0));
    for (std::size_t c = 0; c < p.init.size(); ++c) p.init[c] = h[c % width];

    if (hooks.init_override) {
        std::vector<int> cfg;
        for (std::size_t c = 0; c < p.init.size(); ++c) {
            p.domain_joint_s.config_of(c, cfg);
            p.init[c] = hooks.init_override(cfg, p.init[c]);
        }
    }
    return p;
}

CondFn marginal_source(const JointTable& shape, const std::vector<std::vector<Rat>>& levels) {
    return [&shape, &levels](std::size_t j, std::size_t idx, std::vector<Rat>& out) {
        const std::size_t width = shape.vars()[j].domain.size();
        const Rat& den = levels[j][idx];
        if (den == 0) return false;
        out.assign(width, Rat(0));
        for (std::size_t t = 0; t < width; ++t) out[t] = levels[j + 1][idx * width + t] / den;
        return true;
    };
}

}  // namespace

Rat g_recursion(const RegimeModel& model, std::string_view s, const OutcomeFunctional& k,
                const GHooks& hooks) {
    Prepared p = prepare(model, s, k, hooks);
    auto levels = level_marginals(p.domain_joint_s);
    CondFn src = marginal_source(p.domain_joint_s, levels);
    EngineResult r = run_recursion(p.domain_joint_s, src, p.init, hooks);
    if (!r.ok)
        throw InternalError(
            "undefined conditional at the s-possible history " +
            history_label(p.domain_joint_s, r.undefined_level, r.undefined_prefix) +
            "; the recursion must only visit positive-mass histories");
    return r.value;
}

TransferOutcome g_transfer(const RegimeModel& model, std::string_view s,
                           const OutcomeFunctional& k, TransferPolicy policy) {
    TransferOutcome outcome;
    {
        RegimeModel probe = model;
        probe.analyze();
        if (probe.regime(s).kind != RegimeKind::interventional)
            throw InputError("transfer target regime '" + std::string(s) +
                             "' must be interventional");
    }

    CheckReport stability = check_simple_stability(model, s);
    CheckReport positivity = check_positivity(model, s);
    if (!stability.holds || !positivity.holds) {
        if (!stability.holds) outcome.failed_checks.push_back(stability);
        if (!positivity.holds) outcome.failed_checks.push_back(positivity);
        if (policy == TransferPolicy::require_checks) {
            outcome.status = TransferOutcome::Status::refused;
            return outcome;
        }
        outcome.unsafe = true;
    }

    GHooks hooks;
    Prepared p = prepare(model, s, k, hooks);
    const JointTable& shape = p.domain_joint_s;
    std::vector<std::string> domain_names;
    for (const auto& v : shape.vars()) domain_names.push_back(v.name);
    JointTable domain_joint_o =
        marginalize(materialize_joint(p.model, p.model.observational_id()), domain_names);

    auto levels_s = level_marginals(p.domain_joint_s);
    auto levels_o = level_marginals(domain_joint_o);
    CondFn from_s = marginal_source(shape, levels_s);
    CondFn from_o = marginal_source(shape, levels_o);

    // Per position: nature steps read the observational conditional; action
    // steps read regime s. An action kernel whose parents are all domain
    // variables stays defined beyond the s-support, so prefer its rows.
    const Regime& regime_s = p.model.regime(s);
    std::vector<VarId> domain = p.model.domain_order();
    struct ActionKernel {
        const Kernel* kernel = nullptr;
        std::vector<std::size_t> parent_pos;  // positions within the domain sequence
    };
    std::vector<ActionKernel> action(domain.size());
    std::vector<bool> is_action(domain.size(), false);
    for (std::size_t j = 0; j < domain.size(); ++j) {
        if (p.model.var(domain[j]).role != Role::action) continue;
        is_action[j] = true;
        for (const Kernel& kern : regime_s.kernels) {
            if (kern.child != domain[j]) continue;
            bool domain_only = true;
            std::vector<std::size_t> pos;
            for (VarId parent : kern.parents) {
                auto it = std::find(domain.begin(), domain.end(), parent);
                if (it == domain.end()) {
                    domain_only = false;
                    break;
                }
                pos.push_back(static_cast<std::size_t>(it - domain.begin()));
            }
            if (domain_only) action[j] = {&kern, std::move(pos)};
        }
    }

    std::vector<int> cfg;
    CondFn cond = [&](std::size_t j, std::size_t idx, std::vector<Rat>& out) {
        if (!is_action[j]) return from_o(j, idx, out);
        if (!action[j].kernel) return from_s(j, idx, out);
        // Decode the prefix and read the kernel row.
        cfg.assign(j, 0);
        std::size_t rest = idx;
        for (int d = static_cast<int>(j) - 1; d >= 0; --d) {
            std::size_t width = shape.vars()[d].domain.size();
            cfg[d] = static_cast<int>(rest % width);
            rest /= width;
        }
        const Kernel& kern = *action[j].kernel;
        std::size_t row_idx = 0;
        for (std::size_t pi = 0; pi < kern.parents.size(); ++pi)
            row_idx = row_idx * p.model.var(kern.parents[pi]).domain.size() +
                      static_cast<std::size_t>(cfg[action[j].parent_pos[pi]]);
        const auto& row = kern.rows[row_idx];
        if (!row) return false;  // unconstrained row outside the s-support
        out = *row;
        return true;
    };

    EngineResult r = run_recursion(shape, cond, p.init, hooks);
    if (!r.ok) {
        outcome.status = TransferOutcome::Status::undefined_conditional;
        const std::string var = shape.vars()[r.undefined_level].name;
        outcome.undefined_at =
            history_label(shape, r.undefined_level, r.undefined_prefix) + " for variable '" + var +
            "'" +
            (is_action[r.undefined_level]
                 ? " (action law unavailable off the s-support)"
                 : " (observational conditional undefined: the history has probability 0 under '" +
                       p.model.observational_id() + "')");
        return outcome;
    }
    outcome.value = r.value;
    return outcome;
}

}  // namespace seqig
