#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seqig/model.hpp"
#include "seqig/rational.hpp"

namespace seqig {

struct JointVar {
    std::string name;
    std::vector<std::string> domain;
};

// Dense exact-probability table over a fixed variable tuple.
// Cells are mixed-radix indexed, last variable fastest.
class JointTable {
public:
    JointTable() = default;
    explicit JointTable(std::vector<JointVar> vars);

    const std::vector<JointVar>& vars() const { return vars_; }
    std::size_t cell_count() const { return cells_.size(); }
    int axis(std::string_view name) const;  // -1 when absent

    const Rat& at(std::span<const int> config) const { return cells_[index_of(config)]; }
    Rat& at(std::span<const int> config) { return cells_[index_of(config)]; }
    const Rat& cell(std::size_t idx) const { return cells_[idx]; }
    Rat& cell(std::size_t idx) { return cells_[idx]; }

    Rat total() const;

    std::size_t index_of(std::span<const int> config) const;
    void config_of(std::size_t idx, std::vector<int>& out) const;
    int value_at(std::size_t idx, int axis) const;

    // Human-readable "(A=1, Y=0)" for a cell or sub-config.
    std::string label(std::span<const int> config) const;

private:
    std::vector<JointVar> vars_;
    std::vector<std::size_t> strides_;
    std::vector<Rat> cells_;
};

// Exact joint distribution of all model variables under one regime,
// as the product of the regime's kernels along the information base.
JointTable materialize_joint(const RegimeModel& model, std::string_view regime_id);

// Sums out all variables not in `keep`. Result keeps the table's own
// variable order. keep may be empty (scalar table holding the total mass).
JointTable marginalize(const JointTable& joint, const std::vector<std::string>& keep);

struct Conditional {
    bool defined = false;   // false when the conditioning event has mass zero
    JointTable table;       // over the remaining variables, renormalized
};

// Conditions on variable=value assignments. Never divides by zero: a
// zero-mass event yields defined == false.
Conditional condition(const JointTable& joint,
                      const std::vector<std::pair<std::string, std::string>>& given);

}  // namespace seqig
