#include "seqig/joint.hpp"

#include <algorithm>
#include <sstream>

#include "seqig/errors.hpp"

namespace seqig {

JointTable::JointTable(std::vector<JointVar> vars) : vars_(std::move(vars)) {
    std::size_t cells = 1;
    for (const auto& v : vars_) {
        if (v.domain.empty()) throw InputError("joint variable '" + v.name + "' has empty domain");
        if (cells > state_space_cap() / v.domain.size())
            throw InputError("state space exceeds cap of " + std::to_string(state_space_cap()) +
                             " configurations (override with SEQIG_STATE_CAP)");
        cells *= v.domain.size();
    }
    strides_.assign(vars_.size(), 1);
    for (int i = static_cast<int>(vars_.size()) - 2; i >= 0; --i)
        strides_[i] = strides_[i + 1] * vars_[i + 1].domain.size();
    cells_.assign(cells, Rat(0));
}

int JointTable::axis(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return static_cast<int>(i);
    return -1;
}

Rat JointTable::total() const {
    Rat t = 0;
    for (const auto& c : cells_) t += c;
    return t;
}

std::size_t JointTable::index_of(std::span<const int> config) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        idx += strides_[i] * static_cast<std::size_t>(config[i]);
    return idx;
}

void JointTable::config_of(std::size_t idx, std::vector<int>& out) const {
    out.resize(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        out[i] = static_cast<int>(idx / strides_[i]);
        idx %= strides_[i];
    }
}

int JointTable::value_at(std::size_t idx, int ax) const {
    return static_cast<int>(idx / strides_[ax] % vars_[ax].domain.size());
}

std::string JointTable::label(std::span<const int> config) const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < config.size() && i < vars_.size(); ++i) {
        if (i) os << ", ";
        os << vars_[i].name << "=" << vars_[i].domain[config[i]];
    }
    os << ")";
    return os.str();
}

JointTable materialize_joint(const RegimeModel& model, std::string_view regime_id) {
    const Regime& regime = model.regime(regime_id);
    require_valid(model);

    std::vector<JointVar> jvars;
    for (VarId v : model.base.order) jvars.push_back({model.var(v).name, model.var(v).domain});
    JointTable joint(std::move(jvars));

    // Incremental product along the factorization order: prefix masses get
    // extended one variable at a time, so unconstrained rows (which only
    // occur below zero-mass prefixes) never contribute.
    std::vector<Rat> prefix{Rat(1)};
    std::vector<std::size_t> parent_radix;  // scratch
    std::vector<int> cfg;
    std::vector<VarId> placed;
    for (std::size_t k = 0; k < model.base.order.size(); ++k) {
        const Kernel& kernel = regime.kernels[k];
        const std::size_t width = model.var(kernel.child).domain.size();
        std::vector<std::size_t> parent_pos;
        for (VarId p : kernel.parents)
            parent_pos.push_back(static_cast<std::size_t>(
                std::find(placed.begin(), placed.end(), p) - placed.begin()));

        std::vector<Rat> next(prefix.size() * width, Rat(0));
        cfg.assign(placed.size(), 0);
        for (std::size_t idx = 0; idx < prefix.size(); ++idx) {
            if (prefix[idx] > 0) {
                std::size_t row_idx = 0;
                for (std::size_t pi = 0; pi < parent_pos.size(); ++pi)
                    row_idx = row_idx * model.var(kernel.parents[pi]).domain.size() +
                              static_cast<std::size_t>(cfg[parent_pos[pi]]);
                const auto& row = kernel.rows[row_idx];
                if (!row)
                    throw InternalError("unconstrained kernel row reached with positive mass in "
                                        "regime '" + regime.id + "' (validation should reject this)");
                for (std::size_t v = 0; v < width; ++v)
                    next[idx * width + v] = prefix[idx] * (*row)[v];
            }
            for (int d = static_cast<int>(cfg.size()) - 1; d >= 0; --d) {
                if (++cfg[d] < (int)model.var(placed[d]).domain.size()) break;
                cfg[d] = 0;
            }
        }
        prefix = std::move(next);
        placed.push_back(kernel.child);
    }
    for (std::size_t i = 0; i < prefix.size(); ++i) joint.cell(i) = std::move(prefix[i]);
    return joint;
}

JointTable marginalize(const JointTable& joint, const std::vector<std::string>& keep) {
    std::vector<int> axes;
    for (const auto& name : keep) {
        int ax = joint.axis(name);
        if (ax < 0) throw InputError("unknown variable '" + name + "' in marginalization");
        axes.push_back(ax);
    }
    std::sort(axes.begin(), axes.end());
    axes.erase(std::unique(axes.begin(), axes.end()), axes.end());

    std::vector<JointVar> kept;
    for (int ax : axes) kept.push_back(joint.vars()[ax]);
    JointTable out(kept);

    std::vector<int> sub(axes.size());
    for (std::size_t idx = 0; idx < joint.cell_count(); ++idx) {
        const Rat& p = joint.cell(idx);
        if (p == 0) continue;
        for (std::size_t i = 0; i < axes.size(); ++i) sub[i] = joint.value_at(idx, axes[i]);
        out.at(sub) += p;
    }
    return out;
}

Conditional condition(const JointTable& joint,
                      const std::vector<std::pair<std::string, std::string>>& given) {
    std::vector<int> fixed_axis, fixed_value;
    for (const auto& [name, label] : given) {
        int ax = joint.axis(name);
        if (ax < 0) throw InputError("unknown variable '" + name + "' in conditioning event");
        const auto& dom = joint.vars()[ax].domain;
        auto it = std::find(dom.begin(), dom.end(), label);
        if (it == dom.end())
            throw InputError("value '" + label + "' not in the domain of '" + name + "'");
        fixed_axis.push_back(ax);
        fixed_value.push_back(static_cast<int>(it - dom.begin()));
    }

    std::vector<JointVar> kept;
    std::vector<int> kept_axis;
    for (std::size_t ax = 0; ax < joint.vars().size(); ++ax) {
        if (std::find(fixed_axis.begin(), fixed_axis.end(), static_cast<int>(ax)) ==
            fixed_axis.end()) {
            kept.push_back(joint.vars()[ax]);
            kept_axis.push_back(static_cast<int>(ax));
        }
    }

    Conditional result;
    result.table = JointTable(kept);
    Rat mass = 0;
    std::vector<int> sub(kept_axis.size());
    for (std::size_t idx = 0; idx < joint.cell_count(); ++idx) {
        bool match = true;
        for (std::size_t i = 0; i < fixed_axis.size() && match; ++i)
            match = joint.value_at(idx, fixed_axis[i]) == fixed_value[i];
        if (!match) continue;
        const Rat& p = joint.cell(idx);
        mass += p;
        if (p == 0) continue;
        for (std::size_t i = 0; i < kept_axis.size(); ++i) sub[i] = joint.value_at(idx, kept_axis[i]);
        result.table.at(sub) += p;
    }
    if (mass == 0) {
        result.defined = false;
        return result;
    }
    result.defined = true;
    for (std::size_t i = 0; i < result.table.cell_count(); ++i) result.table.cell(i) /= mass;
    return result;
}

}  // namespace seqig
