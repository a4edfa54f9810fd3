#pragma once

#include <string>
#include <vector>

namespace seqig {

// Bundled models and diagrams, addressable by name, each carrying the exact
// verdict set it is expected to reproduce.
//   appb        two-regime positivity failure (treatment never/always given)
//   discretesi  the 1500ths table: extended stability without extended
//               positivity; irrelevance holds observationally only
//   cts<N>      N-point discretization of the continuous counterexample
//               (o: A = U; s: A uniform; Y = 1 iff A = U)
//   hiv-toy     two-stage treatment model where randomization-style
//               conditions hold and transfer is exact
//   fig1..fig5  influence diagrams for the stability conditions
struct Fixture {
    std::string name;
    std::string kind;                   // "model" | "diagram"
    std::string source;                 // DSL text
    std::vector<std::string> expected;  // human-readable expectations
    std::string paired_diagram_source;  // for model fixtures with a diagram
};

Fixture fixture(const std::string& name);  // throws InputError on unknown names
std::vector<std::string> fixture_names();

struct FixtureCheck {
    std::string label;
    bool pass = false;
    std::string detail;
};

struct FixtureReport {
    std::string name;
    bool pass = true;
    std::vector<FixtureCheck> checks;
};

// Runs every expectation of the named fixture; mismatches are reported as
// failing rows, never as exceptions.
FixtureReport verify_fixture(const std::string& name);

}  // namespace seqig
