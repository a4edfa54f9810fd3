#include "seqig/strategy.hpp"

#include <algorithm>

#include "seqig/errors.hpp"

namespace seqig {

std::vector<std::vector<VarId>> strategy_history_vars(const RegimeModel& model) {
    std::vector<std::vector<VarId>> out;
    std::vector<VarId> prefix;
    for (const Stage& st : model.base.stages) {
        if (st.l) prefix.push_back(*st.l);
        out.push_back(prefix);
        prefix.push_back(st.a);
    }
    return out;
}

namespace {

std::size_t history_count(const RegimeModel& model, const std::vector<VarId>& vars) {
    std::size_t n = 1;
    for (VarId v : vars) n *= model.var(v).domain.size();
    return n;
}

}  // namespace

RegimeModel instantiate_regime(const RegimeModel& model, const Strategy& strat,
                               const std::string& new_id, const std::string& nature_template) {
    RegimeModel out = model;
    out.analyze();
    if (out.find_regime(new_id))
        throw InputError("regime id '" + new_id + "' already exists in the model");
    const std::string tmpl = nature_template.empty() ? out.observational_id() : nature_template;
    const Regime& source = out.regime(tmpl);

    auto history = strategy_history_vars(out);
    if (strat.stages.size() != history.size())
        throw InputError("strategy has " + std::to_string(strat.stages.size()) +
                         " stages; the information base has " + std::to_string(history.size()));

    Regime regime;
    regime.id = new_id;
    regime.kind = RegimeKind::interventional;

    std::size_t stage = 0;
    for (std::size_t k = 0; k < out.base.order.size(); ++k) {
        VarId v = out.base.order[k];
        if (out.var(v).role != Role::action) {
            regime.kernels.push_back(source.kernels[k]);
            continue;
        }
        const auto& table = strat.stages[stage];
        const std::size_t expect = history_count(out, history[stage]);
        if (table.rows.size() != expect)
            throw InputError("strategy stage " + std::to_string(stage + 1) + " has " +
                             std::to_string(table.rows.size()) + " rows; expected " +
                             std::to_string(expect));
        Kernel kernel;
        kernel.child = v;
        kernel.parents = history[stage];
        for (const auto& row : table.rows) {
            if (row.size() != out.var(v).domain.size())
                throw InputError("strategy row width does not match the domain of '" +
                                 out.var(v).name + "'");
            Rat sum = 0;
            for (const Rat& p : row) {
                if (p < 0 || p > 1) throw InputError("strategy probability outside [0, 1]");
                sum += p;
            }
            if (sum != 1)
                throw InputError("strategy row for '" + out.var(v).name + "' sums to " +
                                 fraction_string(sum) + ", expected 1");
            kernel.rows.push_back(row);
        }
        regime.kernels.push_back(std::move(kernel));
        ++stage;
    }
    out.regimes.push_back(std::move(regime));
    return out;
}

std::uint64_t count_nonrandomized(const RegimeModel& model) {
    RegimeModel probe = model;
    probe.analyze();
    auto history = strategy_history_vars(probe);
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < history.size(); ++i) {
        const std::size_t hists = history_count(probe, history[i]);
        const std::uint64_t width = probe.var(probe.base.stages[i].a).domain.size();
        for (std::size_t h = 0; h < hists; ++h) {
            if (count > UINT64_MAX / width) return UINT64_MAX;
            count *= width;
        }
    }
    return count;
}

StrategyEnumerator::StrategyEnumerator(const RegimeModel& model, std::uint64_t cap) {
    RegimeModel probe = model;
    probe.analyze();
    const std::uint64_t count = count_nonrandomized(probe);
    if (count > cap)
        throw InputError("non-randomized strategy count " +
                         (count == UINT64_MAX ? std::string("overflows")
                                              : std::to_string(count)) +
                         " exceeds the cap of " + std::to_string(cap));
    history_vars_ = strategy_history_vars(probe);
    for (std::size_t i = 0; i < history_vars_.size(); ++i) {
        const Stage& st = probe.base.stages[i];
        stage_action_.push_back(st.a);
        const std::size_t hists = history_count(probe, history_vars_[i]);
        stage_histories_.push_back(hists);
        const int width = static_cast<int>(probe.var(st.a).domain.size());
        int digits = 1;
        for (int w = width - 1; w >= 10; w /= 10) ++digits;
        digits_.push_back(digits);
        for (std::size_t h = 0; h < hists; ++h) {
            slot_stage_.push_back(i);
            slot_width_.push_back(width);
        }
    }
    current_.assign(slot_stage_.size(), 0);
}

bool StrategyEnumerator::next(Strategy& out) {
    if (done_) return false;

    out.stages.assign(stage_histories_.size(), {});
    std::string id;
    std::size_t slot = 0;
    for (std::size_t i = 0; i < stage_histories_.size(); ++i) {
        if (i) id += ".";
        auto& table = out.stages[i];
        table.rows.assign(stage_histories_[i], {});
        for (std::size_t h = 0; h < stage_histories_[i]; ++h, ++slot) {
            const int width = slot_width_[slot];
            std::vector<Rat> row(width, Rat(0));
            row[current_[slot]] = 1;
            table.rows[h] = std::move(row);
            std::string digit = std::to_string(current_[slot]);
            id += std::string(digits_[i] - digit.size(), '0') + digit;
        }
    }
    out.id = id;

    // Odometer: last slot fastest, so emission order is lexicographic in id.
    done_ = true;
    for (int s = static_cast<int>(current_.size()) - 1; s >= 0; --s) {
        if (++current_[s] < slot_width_[s]) {
            done_ = false;
            break;
        }
        current_[s] = 0;
    }
    if (current_.empty()) done_ = true;  // n=0: single empty strategy
    return true;
}

OptimizeResult optimize(const RegimeModel& model, const OutcomeFunctional& loss,
                        OptimizeMode mode, TransferPolicy policy, std::uint64_t cap,
                        const std::string& nature_template) {
    RegimeModel probe = model;
    probe.analyze();
    require_valid(probe);
    require_total(loss, probe.var(probe.base.outcome));

    std::string eval_id = "_eval";
    while (probe.find_regime(eval_id)) eval_id += "_";

    OptimizeResult result;
    StrategyEnumerator en(probe, cap);
    Strategy strat;
    while (en.next(strat)) {
        EvaluationRow row;
        row.strategy_id = strat.id;
        RegimeModel extended = instantiate_regime(probe, strat, eval_id, nature_template);
        if (mode == OptimizeMode::oracle) {
            row.consequence = g_recursion(extended, eval_id, loss);
        } else {
            TransferOutcome t = g_transfer(extended, eval_id, loss, policy);
            switch (t.status) {
                case TransferOutcome::Status::ok:
                    row.consequence = t.value;
                    row.safety = t.unsafe ? EvaluationRow::Safety::unsafe
                                          : EvaluationRow::Safety::verified;
                    row.refusal = t.failed_checks;
                    break;
                case TransferOutcome::Status::refused:
                    row.safety = EvaluationRow::Safety::refused;
                    row.refusal = t.failed_checks;
                    row.note = "transfer refused; conditions failed";
                    break;
                case TransferOutcome::Status::undefined_conditional:
                    row.safety = EvaluationRow::Safety::refused;
                    row.refusal = t.failed_checks;
                    row.note = "undefined observational conditional at " + t.undefined_at;
                    break;
            }
        }
        result.rows.push_back(std::move(row));
    }

    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const auto& row = result.rows[i];
        if (!row.consequence) continue;
        if (!result.best || *row.consequence < *result.rows[*result.best].consequence)
            result.best = i;  // strict <: ties keep the earlier (lexicographically first) id
    }
    return result;
}

}  // namespace seqig
