#include "seqig/conditions.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "seqig/errors.hpp"
#include "seqig/joint.hpp"

namespace seqig {

namespace {

constexpr std::size_t kWitnessCap = 16;

// Shared per-call state: analyzed model plus joint cache.
class Ctx {
public:
    explicit Ctx(const RegimeModel& model) : model_(model) {
        model_.analyze();
        require_valid(model_);
    }

    const RegimeModel& model() const { return model_; }

    const JointTable& joint(const std::string& id) {
        auto it = joints_.find(id);
        if (it == joints_.end()) it = joints_.emplace(id, materialize_joint(model_, id)).first;
        return it->second;
    }

    std::string name(VarId v) const { return model_.var(v).name; }
    std::vector<std::string> names(const std::vector<VarId>& ids) const {
        std::vector<std::string> out;
        for (VarId v : ids) out.push_back(name(v));
        return out;
    }

    // Variables strictly before `v` in the information base, optionally
    // restricted to domain variables.
    std::vector<VarId> past(VarId v, bool domain_only) const {
        std::vector<VarId> out;
        for (VarId w : model_.base.order) {
            if (w == v) break;
            if (domain_only && model_.var(w).role == Role::unobserved) continue;
            out.push_back(w);
        }
        return out;
    }

    std::vector<VarId> unobserved_up_to(VarId v, bool inclusive) const {
        std::vector<VarId> out;
        for (VarId w : model_.base.order) {
            if (w == v && !inclusive) break;
            if (model_.var(w).role == Role::unobserved) out.push_back(w);
            if (w == v) break;
        }
        return out;
    }

    void require_interventional(std::string_view s) const {
        if (model_.regime(s).kind != RegimeKind::interventional)
            throw InputError("regime '" + std::string(s) + "' is not interventional");
    }
    void require_extended() const {
        if (!model_.base.extended)
            throw InputError("this check requires an extended information base "
                             "(unobserved variables)");
    }

private:
    RegimeModel model_;
    std::map<std::string, JointTable, std::less<>> joints_;
};

void absorb(CheckReport& report, const std::string& line, const Verdict& verdict) {
    std::ostringstream os;
    os << line << ": " << (verdict.holds ? "holds" : "FAILS");
    report.details.push_back(os.str());
    if (!verdict.holds) {
        report.holds = false;
        for (const auto& w : verdict.witnesses)
            if (report.witnesses.size() < kWitnessCap) report.witnesses.push_back(w);
    } else if (verdict.common_version) {
        for (const auto& e : *verdict.common_version) report.common_version.push_back(e);
    }
}

// The per-stage "L_i given past" statements; extended=false gives the
// observed-information-base family, extended=true the (L_i, U_i) family.
CheckReport stability_check(Ctx& ctx, std::string_view s, bool extended) {
    CheckReport report;
    report.condition = extended ? "extended_stability" : "simple_stability";
    report.regime_pair = {ctx.model().observational_id(), std::string(s)};
    ctx.require_interventional(s);
    if (extended) ctx.require_extended();

    std::vector<std::string> pair = {report.regime_pair.first, report.regime_pair.second};
    std::vector<const JointTable*> joints = {&ctx.joint(pair[0]), &ctx.joint(pair[1])};
    const auto& stages = ctx.model().base.stages;

    for (std::size_t i = 0; i <= stages.size(); ++i) {
        std::vector<VarId> block;
        VarId anchor;  // first variable of the block, for computing the past
        if (i < stages.size()) {
            const Stage& st = stages[i];
            if (st.l) block.push_back(*st.l);
            if (extended && st.u) block.push_back(*st.u);
            if (block.empty()) {
                report.details.push_back("stage " + std::to_string(i + 1) +
                                         ": no nature variables, trivial");
                continue;
            }
            anchor = block.front();
        } else {
            anchor = ctx.model().base.outcome;
            block.push_back(anchor);
        }
        auto stmt = CIStatement::make(ctx.names(block), {}, ctx.names(ctx.past(anchor, !extended)),
                                      /*sigma_in_y=*/true);
        Verdict v = check_extended_ci(ctx.model(), pair, stmt, joints);
        absorb(report, "stage " + std::to_string(i + 1) + ": " + stmt.text(), v);
    }
    return report;
}

CheckReport continuity_check(Ctx& ctx, std::string_view s, bool extended) {
    CheckReport report;
    report.condition = extended ? "extended_positivity" : "positivity";
    report.regime_pair = {ctx.model().observational_id(), std::string(s)};
    ctx.require_interventional(s);
    if (extended) ctx.require_extended();

    const JointTable& js = ctx.joint(report.regime_pair.second);
    const JointTable& jo = ctx.joint(report.regime_pair.first);
    std::vector<std::string> keep;
    for (VarId v : extended ? ctx.model().base.order : ctx.model().domain_order())
        keep.push_back(ctx.name(v));
    JointTable ms = marginalize(js, keep), mo = marginalize(jo, keep);

    std::vector<int> cfg;
    for (std::size_t c = 0; c < ms.cell_count(); ++c) {
        if (ms.cell(c) == 0 || mo.cell(c) != 0) continue;
        report.holds = false;
        if (report.witnesses.size() >= kWitnessCap) break;
        ms.config_of(c, cfg);
        Witness w;
        for (std::size_t i = 0; i < ms.vars().size(); ++i)
            w.event.push_back({ms.vars()[i].name, ms.vars()[i].domain[cfg[i]]});
        w.left = {report.regime_pair.second, {}, ms.cell(c)};
        w.right = {report.regime_pair.first, {}, Rat(0)};
        w.note = "event possible under " + report.regime_pair.second +
                 " but impossible under " + report.regime_pair.first;
        report.witnesses.push_back(std::move(w));
    }
    report.notes = report.holds ? "every s-possible configuration is o-possible" : "";
    return report;
}

// A_i independent of the unobserved past, within one regime.
CheckReport action_ignorability_check(Ctx& ctx, std::string_view regime,
                                      const std::string& condition) {
    CheckReport report;
    report.condition = condition;
    report.regime_pair = {ctx.model().observational_id(), std::string(regime)};
    ctx.require_extended();
    const JointTable& joint = ctx.joint(std::string(regime));

    const auto& stages = ctx.model().base.stages;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        VarId a = stages[i].a;
        std::vector<VarId> us = ctx.unobserved_up_to(a, false);
        if (us.empty()) {
            report.details.push_back("stage " + std::to_string(i + 1) +
                                     ": no unobserved past, trivial");
            continue;
        }
        auto stmt = CIStatement::make({ctx.name(a)}, ctx.names(us),
                                      ctx.names(ctx.past(a, true)));
        Verdict v = check_stochastic_ci(joint, stmt);
        for (auto& w : v.witnesses) {
            w.left.regime = std::string(regime);
            w.right.regime = std::string(regime);
        }
        absorb(report, "stage " + std::to_string(i + 1) + ": " + stmt.text() + " ; regime=" +
                           std::string(regime),
               v);
    }
    return report;
}

}  // namespace

CheckReport check_simple_stability(const RegimeModel& model, std::string_view s) {
    Ctx ctx(model);
    return stability_check(ctx, s, false);
}

CheckReport check_extended_stability(const RegimeModel& model, std::string_view s) {
    Ctx ctx(model);
    return stability_check(ctx, s, true);
}

CheckReport check_positivity(const RegimeModel& model, std::string_view s) {
    Ctx ctx(model);
    return continuity_check(ctx, s, false);
}

CheckReport check_extended_positivity(const RegimeModel& model, std::string_view s) {
    Ctx ctx(model);
    return continuity_check(ctx, s, true);
}

CheckReport check_control_strategy(const RegimeModel& model, std::string_view s) {
    Ctx ctx(model);
    ctx.require_interventional(s);
    return action_ignorability_check(ctx, s, "control_strategy");
}

CheckReport check_sequential_randomization(const RegimeModel& model) {
    Ctx ctx(model);
    return action_ignorability_check(ctx, ctx.model().observational_id(),
                                     "sequential_randomization");
}

CheckReport check_sequential_irrelevance(const RegimeModel& model, std::string_view regime) {
    Ctx ctx(model);
    ctx.require_extended();
    model.regime(regime);

    CheckReport report;
    report.condition = "sequential_irrelevance(" + std::string(regime) + ")";
    report.regime_pair = {ctx.model().observational_id(), std::string(regime)};
    const JointTable& joint = ctx.joint(std::string(regime));

    const auto& stages = ctx.model().base.stages;
    for (std::size_t i = 0; i <= stages.size(); ++i) {
        VarId l;
        if (i < stages.size()) {
            if (!stages[i].l) {
                report.details.push_back("stage " + std::to_string(i + 1) +
                                         ": no observable, trivial");
                continue;
            }
            l = *stages[i].l;
        } else {
            l = ctx.model().base.outcome;
        }
        std::vector<VarId> us = ctx.unobserved_up_to(l, false);
        if (us.empty()) {
            report.details.push_back("stage " + std::to_string(i + 1) +
                                     ": no unobserved past, trivial");
            continue;
        }
        auto stmt =
            CIStatement::make({ctx.name(l)}, ctx.names(us), ctx.names(ctx.past(l, true)));
        Verdict v = check_stochastic_ci(joint, stmt);
        for (auto& w : v.witnesses) {
            w.left.regime = std::string(regime);
            w.right.regime = std::string(regime);
        }
        absorb(report, "stage " + std::to_string(i + 1) + ": " + stmt.text() + " ; regime=" +
                           std::string(regime),
               v);
    }
    return report;
}

CheckReport check_lemma1(const RegimeModel& model, std::string_view s) {
    Ctx ctx(model);
    ctx.require_interventional(s);
    ctx.require_extended();

    CheckReport es = stability_check(ctx, s, true);
    CheckReport cs = action_ignorability_check(ctx, s, "control_strategy");
    if (!es.holds || !cs.holds) {
        std::string missing = !es.holds ? "extended stability" : "";
        if (!cs.holds) missing += (missing.empty() ? "" : " and ") + std::string("control strategy");
        throw InputError("lemma-1 preconditions unmet: " + missing + " does not hold for regime '" +
                         std::string(s) + "'");
    }

    CheckReport report;
    report.condition = "lemma1";
    report.regime_pair = {ctx.model().observational_id(), std::string(s)};

    const JointTable& js = ctx.joint(report.regime_pair.second);
    const JointTable& jo = ctx.joint(report.regime_pair.first);
    const auto& stages = ctx.model().base.stages;
    std::size_t scanned = 0;
    for (std::size_t k = 0; k < stages.size(); ++k) {
        // Prefix through A_k, with and without the unobserved variables.
        std::vector<std::string> full, domain;
        for (VarId v : ctx.model().base.order) {
            full.push_back(ctx.name(v));
            if (ctx.model().var(v).role != Role::unobserved) domain.push_back(ctx.name(v));
            if (v == stages[k].a) break;
        }
        JointTable ms = marginalize(js, full), mo = marginalize(jo, full);
        JointTable md = marginalize(js, domain);

        std::vector<int> cfg, dom_cfg(domain.size());
        for (std::size_t c = 0; c < ms.cell_count(); ++c) {
            ms.config_of(c, cfg);
            std::size_t di = 0;
            for (std::size_t i = 0; i < ms.vars().size(); ++i) {
                if (di < domain.size() && ms.vars()[i].name == domain[di]) dom_cfg[di++] = cfg[i];
            }
            ++scanned;
            bool a_k = md.at(dom_cfg) > 0;
            bool b_k = mo.cell(c) > 0;
            bool c_k = ms.cell(c) > 0;
            if (a_k && b_k && !c_k) {
                report.holds = false;
                if (report.witnesses.size() < kWitnessCap) {
                    Witness w;
                    for (std::size_t i = 0; i < ms.vars().size(); ++i)
                        w.event.push_back({ms.vars()[i].name, ms.vars()[i].domain[cfg[i]]});
                    w.left = {report.regime_pair.second, {}, Rat(0)};
                    w.right = {report.regime_pair.first, {}, mo.cell(c)};
                    w.note = "observed prefix s-possible and full prefix o-possible, yet the full "
                             "prefix is s-impossible";
                    report.witnesses.push_back(std::move(w));
                }
            }
        }
    }
    report.notes = "scanned " + std::to_string(scanned) + " prefix configurations";
    return report;
}

ConditionReport condition_report(const RegimeModel& model, std::string_view s) {
    Ctx ctx(model);
    ctx.require_interventional(s);

    ConditionReport out;
    out.observational = ctx.model().observational_id();
    out.interventional = std::string(s);

    out.checks.push_back(stability_check(ctx, s, false));
    out.checks.push_back(continuity_check(ctx, s, false));

    const bool extended = ctx.model().base.extended;
    if (!extended) {
        out.skipped = {"extended_stability", "extended_positivity", "control_strategy",
                       "sequential_randomization", "sequential_irrelevance", "lemma1"};
        return out;
    }

    out.checks.push_back(stability_check(ctx, s, true));
    out.checks.push_back(continuity_check(ctx, s, true));
    out.checks.push_back(action_ignorability_check(ctx, s, "control_strategy"));
    out.checks.push_back(
        action_ignorability_check(ctx, ctx.model().observational_id(), "sequential_randomization"));
    out.checks.push_back(check_sequential_irrelevance(model, ctx.model().observational_id()));
    out.checks.push_back(check_sequential_irrelevance(model, s));

    auto holds = [&](const std::string& name) {
        for (const auto& c : out.checks)
            if (c.condition == name) return c.holds;
        return false;
    };
    const bool es = holds("extended_stability");
    const bool control = holds("control_strategy");
    const bool randomization = holds("sequential_randomization");
    const bool irr_s = holds("sequential_irrelevance(" + std::string(s) + ")");
    const bool simple = holds("simple_stability");

    if (es && control) {
        out.checks.push_back(check_lemma1(model, s));
        if (!out.checks.back().holds)
            out.implication_errors.push_back(
                "positivity propagation must hold under extended stability + control strategy");
    } else {
        out.skipped.push_back("lemma1");
    }

    if (es && randomization && control && !simple)
        out.implication_errors.push_back(
            "extended stability + sequential randomization + control strategy must imply simple "
            "stability");
    if (es && control && irr_s && !simple)
        out.implication_errors.push_back(
            "extended stability + control strategy + sequential irrelevance under the "
            "interventional regime must imply simple stability (discrete case)");
    if (holds("extended_positivity") && !holds("positivity"))
        out.implication_errors.push_back(
            "extended positivity must imply positivity over the domain variables");

    // Fault-injection seam: implication violations cannot be produced by any
    // valid input, so the reporting path is exercised by tests through this
    // environment variable.
    if (std::getenv("SEQIG_FAULT_INJECT_IMPLICATION"))
        out.implication_errors.push_back("synthetic implication violation (fault injection)");

    out.internal_error = !out.implication_errors.empty();
    return out;
}

}  // namespace seqig
