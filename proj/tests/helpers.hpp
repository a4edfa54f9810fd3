#pragma once

#include <random>
#include <string>
#include <vector>

#include "seqig/grecursion.hpp"
#include "seqig/joint.hpp"
#include "seqig/model.hpp"

namespace seqig::testing {

// Random-model generator for the property suites. Structural constraints are
// enforced by construction rather than rejection:
//   shared_nature          nature kernels identical across regimes
//                          (extended stability holds by construction)
//   s_actions_ignore_u     interventional action kernels read domain
//                          variables only (control strategy)
//   o_actions_ignore_u     the same for the observational regime
//                          (sequential randomization)
//   l_kernels_ignore_u     observable/outcome kernels never read unobserved
//                          variables (sequential irrelevance, both regimes)
//   allow_zero_weights     rows may contain exact zeros
//   o_actions_positive     observational action rows strictly positive
//                          (with shared nature this forces positivity)
struct GenOptions {
    int min_stages = 1;
    int max_stages = 3;
    int max_domain = 4;
    bool want_unobserved = true;
    bool shared_nature = true;
    bool s_actions_ignore_u = true;
    bool o_actions_ignore_u = false;
    bool l_kernels_ignore_u = false;
    bool allow_zero_weights = true;
    bool o_actions_positive = false;
};

inline std::vector<Rat> random_row(std::mt19937_64& rng, std::size_t width, bool allow_zero) {
    std::uniform_int_distribution<int> weight(allow_zero ? 0 : 1, 4);
    std::vector<Rat> row(width);
    while (true) {
        long total = 0;
        std::vector<long> w(width);
        for (std::size_t i = 0; i < width; ++i) {
            w[i] = weight(rng);
            total += w[i];
        }
        if (total == 0) continue;
        for (std::size_t i = 0; i < width; ++i) row[i] = Rat(w[i], total);
        return row;
    }
}

inline RegimeModel random_model(std::mt19937_64& rng, const GenOptions& opt = {}) {
    std::uniform_int_distribution<int> stage_count(opt.min_stages, opt.max_stages);
    std::uniform_int_distribution<int> domain(2, opt.max_domain);
    std::uniform_int_distribution<int> coin(0, 1);

    RegimeModel model;
    const int n = stage_count(rng);
    std::vector<VarId> u_vars;
    for (int i = 1; i <= n; ++i) {
        if (coin(rng)) {
            model.variables.push_back({"L" + std::to_string(i), Role::observable,
                                       {}});
            model.base.order.push_back((VarId)model.variables.size() - 1);
        }
        if (opt.want_unobserved && (coin(rng) || (i == n && u_vars.empty()))) {
            model.variables.push_back({"U" + std::to_string(i), Role::unobserved, {}});
            model.base.order.push_back((VarId)model.variables.size() - 1);
            u_vars.push_back((VarId)model.variables.size() - 1);
        }
        model.variables.push_back({"A" + std::to_string(i), Role::action, {}});
        model.base.order.push_back((VarId)model.variables.size() - 1);
    }
    model.variables.push_back({"Y", Role::outcome, {}});
    model.base.order.push_back((VarId)model.variables.size() - 1);

    for (auto& v : model.variables) {
        int size = domain(rng);
        for (int d = 0; d < size; ++d) v.domain.push_back(std::to_string(d));
    }
    model.analyze();

    auto predecessors = [&](VarId child, bool include_u) {
        std::vector<VarId> out;
        for (VarId v : model.base.order) {
            if (v == child) break;
            if (!include_u && model.var(v).role == Role::unobserved) continue;
            out.push_back(v);
        }
        return out;
    };
    auto random_parents = [&](const std::vector<VarId>& pool) {
        std::vector<VarId> out;
        for (VarId v : pool)
            if (coin(rng)) out.push_back(v);
        return out;
    };
    auto make_kernel = [&](VarId child, const std::vector<VarId>& parents, bool positive) {
        Kernel k;
        k.child = child;
        k.parents = parents;
        std::size_t rows = 1;
        for (VarId p : parents) rows *= model.var(p).domain.size();
        for (std::size_t r = 0; r < rows; ++r)
            k.rows.push_back(random_row(rng, model.var(child).domain.size(),
                                        opt.allow_zero_weights && !positive));
        return k;
    };

    Regime o{"o", RegimeKind::observational, {}};
    Regime s{"s", RegimeKind::interventional, {}};
    for (VarId v : model.base.order) {
        const Role role = model.var(v).role;
        if (role == Role::action) {
            o.kernels.push_back(make_kernel(
                v, random_parents(predecessors(v, !opt.o_actions_ignore_u)),
                opt.o_actions_positive));
            s.kernels.push_back(
                make_kernel(v, random_parents(predecessors(v, !opt.s_actions_ignore_u)), false));
            continue;
        }
        const bool is_u = role == Role::unobserved;
        Kernel nature = make_kernel(
            v, random_parents(predecessors(v, is_u || !opt.l_kernels_ignore_u)), false);
        o.kernels.push_back(nature);
        s.kernels.push_back(opt.shared_nature
                                ? nature
                                : make_kernel(v, nature.parents, false));
    }
    model.regimes.push_back(std::move(o));
    model.regimes.push_back(std::move(s));
    return model;
}

// Rejects draws whose joint table would be large; keeps property loops fast.
inline RegimeModel random_model_capped(std::mt19937_64& rng, const GenOptions& opt = {},
                                       std::size_t max_cells = 4096) {
    while (true) {
        RegimeModel m = random_model(rng, opt);
        std::size_t cells = 1;
        bool ok = true;
        for (const auto& v : m.variables) {
            cells *= v.domain.size();
            if (cells > max_cells) {
                ok = false;
                break;
            }
        }
        if (ok) return m;
    }
}

inline Rat random_rat(std::mt19937_64& rng, int lo = -3, int hi = 3) {
    std::uniform_int_distribution<int> num(lo, hi), den(1, 4);
    return Rat(num(rng), den(rng));
}

inline OutcomeFunctional random_functional(std::mt19937_64& rng, const RegimeModel& model) {
    RegimeModel probe = model;
    probe.analyze();
    OutcomeFunctional k;
    for (const auto& label : probe.var(probe.base.outcome).domain)
        k.values[label] = random_rat(rng);
    return k;
}

}  // namespace seqig::testing
