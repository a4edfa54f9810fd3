#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqig/grecursion.hpp"
#include "seqig/model.hpp"
#include "seqig/rational.hpp"

namespace seqig {

// Per stage, a distribution over the next action for every observable
// history (l_1..l_i, a_1..a_{i-1}). Histories are dense, mixed-radix indexed
// over the domain variables preceding the action, last variable fastest.
// Static strategies are constant in the history; non-randomized strategies
// have degenerate rows.
struct Strategy {
    struct StageTable {
        std::vector<std::vector<Rat>> rows;  // [history][action value]
    };
    std::string id;
    std::vector<StageTable> stages;
};

// Domain variables forming the history before each stage's action.
std::vector<std::vector<VarId>> strategy_history_vars(const RegimeModel& model);

// Appends an interventional regime whose action kernels equal the strategy
// (reading only domain variables) and whose nature kernels are copied from
// `nature_template` (default: the observational regime). The new regime is a
// control strategy by construction.
RegimeModel instantiate_regime(const RegimeModel& model, const Strategy& strat,
                               const std::string& new_id,
                               const std::string& nature_template = "");

// Number of distinct non-randomized strategies (product over stages of
// |A_i| ^ #histories). Saturates at uint64 max.
std::uint64_t count_nonrandomized(const RegimeModel& model);

// Deterministic lexicographic enumeration of all non-randomized strategies.
// Ids encode the chosen action index per history slot, zero-padded, stages
// separated by '.', so id order equals enumeration order.
class StrategyEnumerator {
public:
    // Throws InputError naming the count when it exceeds `cap`.
    explicit StrategyEnumerator(const RegimeModel& model, std::uint64_t cap = 100000);
    bool next(Strategy& out);  // false when exhausted

private:
    std::vector<std::vector<VarId>> history_vars_;
    std::vector<std::size_t> slot_stage_;   // flat slot -> stage
    std::vector<int> slot_width_;           // flat slot -> |A_i|
    std::vector<std::size_t> stage_histories_;
    std::vector<int> digits_;               // id digits per stage
    std::vector<int> current_;
    std::vector<VarId> stage_action_;
    bool done_ = false;
};

enum class OptimizeMode { oracle, transfer };

struct EvaluationRow {
    std::string strategy_id;
    std::optional<Rat> consequence;
    enum class Safety { verified, unsafe, refused } safety = Safety::verified;
    std::vector<CheckReport> refusal;  // failing checks for refused/unsafe rows
    std::string note;
};

struct OptimizeResult {
    std::vector<EvaluationRow> rows;       // enumeration order
    std::optional<std::size_t> best;       // empty when every row was refused
};

// Evaluates every non-randomized strategy and selects the minimal
// consequence; ties break to the lexicographically first id. Oracle mode
// evaluates the instantiated regime directly; transfer mode evaluates from
// the observational regime under the given policy.
OptimizeResult optimize(const RegimeModel& model, const OutcomeFunctional& loss,
                        OptimizeMode mode,
                        TransferPolicy policy = TransferPolicy::require_checks,
                        std::uint64_t cap = 100000, const std::string& nature_template = "");

}  // namespace seqig
