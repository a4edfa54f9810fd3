#include "seqig/model.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "seqig/errors.hpp"

namespace seqig {

std::string_view role_name(Role r) {
    switch (r) {
        case Role::observable: return "observable";
        case Role::action: return "action";
        case Role::unobserved: return "unobserved";
        case Role::outcome: return "outcome";
    }
    return "?";
}

std::optional<Role> role_from_name(std::string_view name) {
    if (name == "observable") return Role::observable;
    if (name == "action") return Role::action;
    if (name == "unobserved") return Role::unobserved;
    if (name == "outcome") return Role::outcome;
    return std::nullopt;
}

std::string_view regime_kind_name(RegimeKind k) {
    return k == RegimeKind::observational ? "observational" : "interventional";
}

int Variable::value_index(std::string_view label) const {
    for (std::size_t i = 0; i < domain.size(); ++i)
        if (domain[i] == label) return static_cast<int>(i);
    return -1;
}

VarId RegimeModel::var_id(std::string_view name) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i].name == name) return static_cast<VarId>(i);
    return -1;
}

const Regime* RegimeModel::find_regime(std::string_view id) const {
    for (const auto& r : regimes)
        if (r.id == id) return &r;
    return nullptr;
}

const Regime& RegimeModel::regime(std::string_view id) const {
    if (const Regime* r = find_regime(id)) return *r;
    throw InputError("unknown regime id: '" + std::string(id) + "'");
}

std::string RegimeModel::observational_id() const {
    for (const auto& r : regimes)
        if (r.kind == RegimeKind::observational) return r.id;
    throw InputError("model has no observational regime");
}

std::vector<std::string> RegimeModel::interventional_ids() const {
    std::vector<std::string> out;
    for (const auto& r : regimes)
        if (r.kind == RegimeKind::interventional) out.push_back(r.id);
    return out;
}

std::vector<VarId> RegimeModel::domain_order() const {
    std::vector<VarId> out;
    for (VarId v : base.order)
        if (var(v).role != Role::unobserved) out.push_back(v);
    return out;
}

void RegimeModel::analyze() {
    base.stages.clear();
    base.outcome = -1;
    base.extended = false;

    std::size_t i = 0;
    const std::size_t m = base.order.size();
    while (i < m) {
        VarId v = base.order[i];
        Role r = var(v).role;
        if (r == Role::outcome) {
            if (i + 1 != m)
                throw InputError("outcome variable '" + var(v).name +
                                 "' must be last in the information base");
            base.outcome = v;
            ++i;
            continue;
        }
        Stage stage;
        if (r == Role::observable) {
            stage.l = v;
            if (++i >= m)
                throw InputError("information base ends after observable '" + var(v).name +
                                 "'; expected an action and the outcome");
            v = base.order[i];
            r = var(v).role;
            if (r == Role::observable)
                throw InputError("consecutive observables '" + var(stage.l.value()).name +
                                 "', '" + var(v).name +
                                 "' in the information base; encode a multi-variable block as one "
                                 "variable with a product domain");
        }
        if (r == Role::unobserved) {
            stage.u = v;
            base.extended = true;
            if (++i >= m)
                throw InputError("information base ends after unobserved '" + var(v).name + "'");
            v = base.order[i];
            r = var(v).role;
            if (r == Role::observable)
                throw InputError("observable '" + var(v).name +
                                 "' may not follow an unobserved variable within a stage");
            if (r == Role::unobserved)
                throw InputError("consecutive unobserved variables in the information base; "
                                 "encode them as one variable with a product domain");
        }
        if (r != Role::action)
            throw InputError("expected an action at position " + std::to_string(i + 1) +
                             " of the information base, found " + std::string(role_name(r)) +
                             " '" + var(v).name + "'");
        stage.a = v;
        base.stages.push_back(stage);
        ++i;
    }
    if (base.outcome < 0) throw InputError("information base must end with the outcome variable");
}

std::size_t state_space_cap() {
    static const std::size_t cap = [] {
        if (const char* env = std::getenv("SEQIG_STATE_CAP")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        }
        return static_cast<std::size_t>(1'000'000);
    }();
    return cap;
}

namespace {

bool clean_token(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) return false;
        if (c == '#' || c == ':' || c == '|' || c == ',' || c == ';') return false;
    }
    return true;
}

std::string config_label(const RegimeModel& model, const std::vector<VarId>& vars,
                         const std::vector<int>& cfg) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) os << ", ";
        os << model.var(vars[i]).name << "=" << model.var(vars[i]).domain[cfg[i]];
    }
    os << ")";
    return os.str();
}

// Checks row totality/sums and that unconstrained rows are unreachable,
// building the prefix distribution kernel by kernel.
void validate_regime_tables(const RegimeModel& model, const Regime& regime,
                            std::vector<Violation>& out) {
    const auto& order = model.base.order;
    if (regime.kernels.size() != order.size()) {
        out.push_back({"regime " + regime.id,
                       "expected " + std::to_string(order.size()) + " kernels, found " +
                           std::to_string(regime.kernels.size())});
        return;
    }

    bool sizes_ok = true;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Kernel& kernel = regime.kernels[k];
        std::string where = "regime " + regime.id + " kernel " +
                            (kernel.child >= 0 ? model.var(kernel.child).name : "?");
        if (kernel.child != order[k]) {
            out.push_back({where, "kernels must follow the information-base order; expected '" +
                                      model.var(order[k]).name + "' at position " +
                                      std::to_string(k + 1)});
            sizes_ok = false;
            continue;
        }
        std::set<VarId> seen;
        std::size_t expect_rows = 1;
        for (VarId p : kernel.parents) {
            auto pos = std::find(order.begin(), order.end(), p);
            auto cpos = std::find(order.begin(), order.end(), kernel.child);
            if (pos == order.end() || pos >= cpos) {
                out.push_back({where, "parent '" + (p >= 0 && p < (VarId)model.variables.size()
                                                        ? model.var(p).name
                                                        : std::string("?")) +
                                          "' does not precede the child in the information base"});
                sizes_ok = false;
            }
            if (!seen.insert(p).second)
                out.push_back({where, "duplicate parent"});
            if (p >= 0 && p < (VarId)model.variables.size())
                expect_rows *= model.var(p).domain.size();
        }
        if (kernel.rows.size() != expect_rows) {
            out.push_back({where, "expected " + std::to_string(expect_rows) + " rows, found " +
                                      std::to_string(kernel.rows.size())});
            sizes_ok = false;
            continue;
        }
        const std::size_t width = model.var(kernel.child).domain.size();
        for (std::size_t r = 0; r < kernel.rows.size(); ++r) {
            if (!kernel.rows[r]) continue;
            const auto& row = *kernel.rows[r];
            std::string rw = where + " row " + std::to_string(r + 1);
            if (row.size() != width) {
                out.push_back({rw, "row has " + std::to_string(row.size()) +
                                       " entries; child domain has " + std::to_string(width)});
                sizes_ok = false;
                continue;
            }
            Rat sum = 0;
            bool range_ok = true;
            for (const Rat& p : row) {
                if (p < 0 || p > 1) range_ok = false;
                sum += p;
            }
            if (!range_ok) out.push_back({rw, "probability outside [0, 1]"});
            if (sum != 1)
                out.push_back({rw, "row sums to " + fraction_string(sum) + ", expected 1"});
        }
    }
    if (!sizes_ok) return;

    // Reachability pass for unconstrained rows.
    std::size_t cells = 1;
    for (VarId v : order) {
        if (cells > state_space_cap() / std::max<std::size_t>(model.var(v).domain.size(), 1)) {
            out.push_back({"regime " + regime.id,
                           "state space exceeds cap of " + std::to_string(state_space_cap()) +
                               " configurations"});
            return;
        }
        cells *= model.var(v).domain.size();
    }

    std::vector<Rat> prefix{Rat(1)};
    std::vector<VarId> prefix_vars;
    std::vector<int> cfg;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Kernel& kernel = regime.kernels[k];
        const std::size_t width = model.var(kernel.child).domain.size();
        // strides of parents within the prefix configuration
        std::vector<std::size_t> parent_pos;
        for (VarId p : kernel.parents)
            parent_pos.push_back(static_cast<std::size_t>(
                std::find(prefix_vars.begin(), prefix_vars.end(), p) - prefix_vars.begin()));

        std::vector<Rat> next(prefix.size() * width, Rat(0));
        cfg.assign(prefix_vars.size(), 0);
        for (std::size_t idx = 0; idx < prefix.size(); ++idx) {
            const Rat& mass = prefix[idx];
            std::size_t row_idx = 0;
            for (std::size_t pi = 0; pi < parent_pos.size(); ++pi)
                row_idx = row_idx * model.var(kernel.parents[pi]).domain.size() +
                          static_cast<std::size_t>(cfg[parent_pos[pi]]);
            const auto& row = kernel.rows[row_idx];
            if (mass > 0) {
                if (!row) {
                    out.push_back({"regime " + regime.id + " kernel " +
                                       model.var(kernel.child).name,
                                   "row " + config_label(model, kernel.parents, [&] {
                                       std::vector<int> pc;
                                       for (auto pp : parent_pos) pc.push_back(cfg[pp]);
                                       return pc;
                                   }()) + " is unconstrained but reachable with probability " +
                                       fraction_string(mass)});
                } else {
                    for (std::size_t v = 0; v < width; ++v)
                        next[idx * width + v] = mass * (*row)[v];
                }
            }
            // advance cfg (last variable fastest)
            for (int d = static_cast<int>(cfg.size()) - 1; d >= 0; --d) {
                if (++cfg[d] < (int)model.var(prefix_vars[d]).domain.size()) break;
                cfg[d] = 0;
            }
        }
        prefix = std::move(next);
        prefix_vars.push_back(kernel.child);
    }
}

}  // namespace

std::vector<Violation> validate_model(const RegimeModel& model) {
    std::vector<Violation> out;

    std::set<std::string> names;
    int outcomes = 0;
    for (const auto& v : model.variables) {
        std::string where = "variable " + (v.name.empty() ? std::string("<unnamed>") : v.name);
        if (!clean_token(v.name))
            out.push_back({where, "variable names must be non-empty and free of whitespace and "
                                  "DSL delimiters"});
        if (v.name == "sigma") out.push_back({where, "'sigma' is reserved for the regime indicator"});
        if (!names.insert(v.name).second) out.push_back({where, "duplicate variable name"});
        if (v.domain.empty()) out.push_back({where, "domain is empty"});
        std::set<std::string> labels;
        for (const auto& d : v.domain) {
            if (!clean_token(d)) out.push_back({where, "bad domain label '" + d + "'"});
            if (!labels.insert(d).second) out.push_back({where, "duplicate domain label '" + d + "'"});
        }
        if (v.role == Role::outcome) ++outcomes;
    }
    if (outcomes != 1)
        out.push_back({"model", "exactly one outcome variable required, found " +
                                    std::to_string(outcomes)});

    if (model.base.order.size() != model.variables.size()) {
        out.push_back({"order", "information base must list every variable exactly once"});
        return out;
    }
    std::set<VarId> in_order;
    for (VarId v : model.base.order) {
        if (v < 0 || v >= (VarId)model.variables.size()) {
            out.push_back({"order", "reference to unknown variable"});
            return out;
        }
        if (!in_order.insert(v).second) {
            out.push_back({"order", "variable '" + model.var(v).name + "' listed twice"});
            return out;
        }
    }
    try {
        RegimeModel probe = model;
        probe.analyze();
    } catch (const Error& e) {
        out.push_back({"order", e.what()});
        return out;
    }

    if (model.regimes.empty()) {
        out.push_back({"model", "at least one regime required"});
        return out;
    }
    std::set<std::string> ids;
    int observational = 0, interventional = 0;
    for (const auto& r : model.regimes) {
        if (!clean_token(r.id))
            out.push_back({"regime '" + r.id + "'", "regime ids must be non-empty tokens"});
        if (!ids.insert(r.id).second)
            out.push_back({"regime '" + r.id + "'", "duplicate regime id"});
        (r.kind == RegimeKind::observational ? observational : interventional) += 1;
    }
    if (observational != 1)
        out.push_back({"model", "exactly one observational regime required, found " +
                                    std::to_string(observational)});
    if (interventional < 1)
        out.push_back({"model", "at least one interventional regime required"});

    for (const auto& r : model.regimes) validate_regime_tables(model, r, out);
    return out;
}

void require_valid(const RegimeModel& model) {
    auto violations = validate_model(model);
    if (violations.empty()) return;
    std::ostringstream os;
    os << "invalid model (" << violations.size() << " violation"
       << (violations.size() == 1 ? "" : "s") << "):";
    for (const auto& v : violations) os << "\n  " << v.where << ": " << v.message;
    throw InputError(os.str());
}

}  // namespace seqig
