#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "seqig/dsl.hpp"
#include "seqig/errors.hpp"
#include "seqig/joint.hpp"
#include "seqig/semigraphoid.hpp"

using namespace seqig;
using seqig::testing::random_model;

namespace {

std::vector<CIStatement> theorem2_premises() {
    return {parse_ci("L1,U1 _||_ sigma"), parse_ci("Y _||_ sigma | L1,U1,A1"),
            parse_ci("A1 _||_ U1 | L1,sigma")};
}

std::vector<CIStatement> irrelevance_premises() {
    return {parse_ci("L1,U1 _||_ sigma"), parse_ci("Y _||_ sigma | L1,U1,A1"),
            parse_ci("Y _||_ U1 | L1,A1,sigma")};
}

std::set<std::string> texts(const std::vector<CIStatement>& v) {
    std::set<std::string> out;
    for (const auto& s : v) out.insert(s.text());
    return out;
}

}  // namespace

TEST_SUITE("semigraphoid") {

TEST_CASE("decomposition: X _||_ (Y,W) | Z yields X _||_ Y | Z") {
    auto closure = semigraphoid_close({parse_ci("X _||_ Y,W | Z")});
    CHECK(closure.contains(parse_ci("X _||_ Y | Z")));
    CHECK(closure.contains(parse_ci("X _||_ W | Z")));
    CHECK(closure.contains(parse_ci("X _||_ Y | W,Z")));  // weak union too
    CHECK_FALSE(closure.contains(parse_ci("X _||_ Z | Y")));
}

TEST_CASE("contraction: X _||_ Y | Z with X _||_ W | (Y,Z) yields X _||_ (Y,W) | Z") {
    auto closure =
        semigraphoid_close({parse_ci("X _||_ Y | Z"), parse_ci("X _||_ W | Y,Z")});
    CHECK(closure.contains(parse_ci("X _||_ Y,W | Z")));
    CHECK(closure.contains(parse_ci("X _||_ W | Z")));
}

TEST_CASE("empty premises derive exactly the trivial statements") {
    auto closure = semigraphoid_close({}, {"X", "Y", "Z"});
    CHECK(closure.statements.empty());
    CHECK(closure.contains(parse_ci("X _||_ Y | X")));  // trivially true

    Derivation d = derive({}, parse_ci("X _||_ Y | X"), {"X", "Y", "Z"});
    CHECK(d.derivable);
    REQUIRE(d.steps.size() == 1);
    CHECK(d.steps.front().rule == "P2 (triviality)");

    CHECK_FALSE(derive({}, parse_ci("X _||_ Y"), {"X", "Y", "Z"}).derivable);
}

TEST_CASE("target among the premises derives with an empty trace") {
    Derivation d = derive(theorem2_premises(), parse_ci("Y _||_ sigma | U1,L1,A1"));
    CHECK(d.derivable);
    CHECK(d.steps.empty());
}

TEST_CASE("stability follows from the randomization premise set (n = 1)") {
    Derivation d = derive(theorem2_premises(), parse_ci("Y _||_ sigma | L1,A1"),
                          {"L1", "U1", "A1", "Y", "sigma"});
    REQUIRE(d.derivable);
    CHECK(d.steps.size() >= 4);
    // The trace ends at the target and references real rules only.
    CHECK(d.steps.back().conclusion == parse_ci("Y _||_ sigma | L1,A1"));
    for (const auto& step : d.steps)
        CHECK((step.rule == "premise" || step.rule.find("P") == 0));
    // The stage-1 statement is also derivable.
    CHECK(derive(theorem2_premises(), parse_ci("L1 _||_ sigma")).derivable);
}

TEST_CASE("stability does not follow when randomization is replaced by irrelevance") {
    CHECK_FALSE(derive(irrelevance_premises(), parse_ci("Y _||_ sigma | L1,A1"),
                       {"L1", "U1", "A1", "Y", "sigma"})
                    .derivable);
}

TEST_CASE("closure is monotone in the premises and idempotent") {
    std::vector<std::string> ground{"A", "B", "C", "D"};
    std::vector<CIStatement> small{parse_ci("A _||_ B,C | D")};
    std::vector<CIStatement> large = small;
    large.push_back(parse_ci("A _||_ D"));

    auto closure_small = semigraphoid_close(small, ground);
    auto closure_large = semigraphoid_close(large, ground);
    auto small_texts = texts(closure_small.statements);
    auto large_texts = texts(closure_large.statements);
    for (const auto& t : small_texts) CHECK(large_texts.count(t) == 1);

    auto again = semigraphoid_close(closure_large.statements, ground);
    CHECK(texts(again.statements) == large_texts);
}

TEST_CASE("the ground-set cap is enforced") {
    std::vector<std::string> ground;
    for (char c = 'A'; c <= 'I'; ++c) ground.push_back(std::string(1, c));
    CHECK_THROWS_WITH_AS(semigraphoid_close({}, ground), doctest::Contains("cap"), InputError);
    CHECK_NOTHROW(semigraphoid_close({}, ground, 9));
}

TEST_CASE("regime-qualified statements are rejected in symbolic derivation") {
    CHECK_THROWS_AS(semigraphoid_close({parse_ci("A _||_ B | C ; regime=s")}),
                    InputError);
}

TEST_CASE("soundness: closure statements hold on joints satisfying the premises") {
    std::mt19937_64 rng(1201);
    // All statements over four binary variables, classified numerically on a
    // random joint; the closure of the true ones must stay inside them.
    std::vector<std::string> names{"A", "B", "C", "D"};
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<JointVar> vars;
        for (const auto& n : names) vars.push_back({n, {"0", "1"}});
        JointTable joint(vars);
        std::uniform_int_distribution<int> weight(0, 6);
        long total = 0;
        std::vector<long> w(joint.cell_count());
        for (auto& x : w) {
            x = weight(rng);
            total += x;
        }
        if (total == 0) continue;
        for (std::size_t c = 0; c < joint.cell_count(); ++c) joint.cell(c) = Rat(w[c], total);

        std::vector<CIStatement> true_statements;
        std::vector<int> slot(names.size());
        std::size_t grid = 256;  // 4^4
        for (std::size_t code = 0; code < grid; ++code) {
            std::size_t c = code;
            std::vector<std::string> x, y, z;
            for (std::size_t v = 0; v < names.size(); ++v, c /= 4) {
                switch (c % 4) {
                    case 1: x.push_back(names[v]); break;
                    case 2: y.push_back(names[v]); break;
                    case 3: z.push_back(names[v]); break;
                }
            }
            if (x.empty() || y.empty()) continue;
            CIStatement stmt = CIStatement::make(x, y, z);
            if (check_stochastic_ci(joint, stmt).holds) true_statements.push_back(stmt);
        }

        auto closure = semigraphoid_close(true_statements, names);
        for (const auto& stmt : closure.statements)
            CHECK(check_stochastic_ci(joint, stmt).holds);
    }
}

}  // TEST_SUITE
