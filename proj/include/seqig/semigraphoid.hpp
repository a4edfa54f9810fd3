#pragma once

#include <string>
#include <vector>

#include "seqig/ci.hpp"

namespace seqig {

// Symbolic closure of CI statements under the semi-graphoid axioms.
// Statements are triples of disjoint symbol sets; the regime indicator is
// treated as an ordinary symbol (justified by the product-space embedding),
// and symmetry is baked into the canonical form, so an unordered pair of
// sides identifies a statement. Triviality instances (X _||_ Y | X and
// friends) hold universally and are reported as derivable without being
// enumerated.

struct ClosureResult {
    std::vector<std::string> ground;       // symbol order used; may include "sigma"
    std::vector<CIStatement> statements;   // canonical non-trivial members, sorted
    bool contains(const CIStatement& stmt) const;
};

// Least fixpoint of the premises under decomposition, weak union and
// contraction (symmetry implicit). Ground defaults to the symbols occurring
// in the premises. Throws InputError when |ground| exceeds the cap.
ClosureResult semigraphoid_close(const std::vector<CIStatement>& premises,
                                 std::vector<std::string> ground = {}, int cap = 8);

struct DerivationStep {
    std::string rule;                  // "premise", "P2 (triviality)", "P3 (decomposition)", ...
    CIStatement conclusion;
    std::vector<CIStatement> from;
};

struct Derivation {
    bool derivable = false;
    std::vector<DerivationStep> steps;  // premises-to-target order; empty when target is a premise
};

Derivation derive(const std::vector<CIStatement>& premises, const CIStatement& target,
                  std::vector<std::string> ground = {}, int cap = 8);

}  // namespace seqig
