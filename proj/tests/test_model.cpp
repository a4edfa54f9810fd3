#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "seqig/dsl.hpp"
#include "seqig/errors.hpp"
#include "seqig/fixtures.hpp"
#include "seqig/joint.hpp"
#include "seqig/model.hpp"

using namespace seqig;
using seqig::testing::GenOptions;
using seqig::testing::random_model;

namespace {

RegimeModel table1() { return parse_model(fixture("discretesi").source); }

// Independent materialization oracle: per-configuration product of kernel
// rows, multiplied in an arbitrary caller-chosen order.
Rat product_of_rows(const RegimeModel& m, const Regime& regime, const std::vector<int>& cfg,
                    const std::vector<std::size_t>& order) {
    Rat acc = 1;
    for (std::size_t k : order) {
        const Kernel& kernel = regime.kernels[k];
        std::size_t row = 0;
        for (VarId p : kernel.parents) {
            std::size_t pos = static_cast<std::size_t>(
                std::find(m.base.order.begin(), m.base.order.end(), p) - m.base.order.begin());
            row = row * m.var(p).domain.size() + static_cast<std::size_t>(cfg[pos]);
        }
        std::size_t child_pos = static_cast<std::size_t>(
            std::find(m.base.order.begin(), m.base.order.end(), kernel.child) -
            m.base.order.begin());
        if (!kernel.rows[row]) return Rat(0);  // unconstrained: only under zero-mass prefixes
        acc *= (*kernel.rows[row])[static_cast<std::size_t>(cfg[child_pos])];
    }
    return acc;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("materialize_joint reproduces the 1500ths table") {
    RegimeModel m = table1();
    JointTable jo = materialize_joint(m, "o");
    const int expected_o[2][2][2] = {{{135, 240}, {50, 200}}, {{315, 560}, {0, 0}}};
    const int expected_s[2][2][2] = {{{180, 320}, {25, 100}}, {{252, 448}, {98, 77}}};
    JointTable js = materialize_joint(m, "s");
    for (int u = 0; u < 2; ++u)
        for (int a = 0; a < 2; ++a)
            for (int y = 0; y < 2; ++y) {
                std::vector<int> cfg{u, a, y};
                CHECK(jo.at(cfg) == Rat(expected_o[u][a][y], 1500));
                CHECK(js.at(cfg) == Rat(expected_s[u][a][y], 1500));
            }
}

TEST_CASE("single deterministic variable materializes to a point mass") {
    RegimeModel m;
    m.variables.push_back({"Y", Role::outcome, {"0", "1"}});
    m.base.order = {0};
    m.analyze();
    Kernel k;
    k.child = 0;
    k.rows.push_back(std::vector<Rat>{Rat(1), Rat(0)});
    m.regimes.push_back({"o", RegimeKind::observational, {k}});
    m.regimes.push_back({"s", RegimeKind::interventional, {k}});
    JointTable j = materialize_joint(m, "o");
    CHECK(j.at(std::vector<int>{0}) == 1);
    CHECK(j.at(std::vector<int>{1}) == 0);
}

TEST_CASE("appb kernels multiply out to the hand product") {
    RegimeModel m = parse_model(fixture("appb").source);
    JointTable js = materialize_joint(m, "s");
    // L1 uniform, A forced to 1, L2 = L1 + A
    CHECK(js.at(std::vector<int>{1, 1, 2}) == Rat(1, 2));
    CHECK(js.at(std::vector<int>{0, 1, 1}) == Rat(1, 2));
    CHECK(js.at(std::vector<int>{0, 0, 0}) == 0);
}

TEST_CASE("unknown regime is rejected") {
    RegimeModel m = table1();
    CHECK_THROWS_AS(materialize_joint(m, "nope"), InputError);
}

TEST_CASE("marginalize: Table 1 outcome marginal, keep-all, keep-none") {
    RegimeModel m = table1();
    JointTable js = materialize_joint(m, "s");
    JointTable y = marginalize(js, {"Y"});
    CHECK(y.at(std::vector<int>{1}) == Rat(945, 1500));
    CHECK(y.at(std::vector<int>{0}) == Rat(555, 1500));

    JointTable all = marginalize(js, {"U", "A", "Y"});
    for (std::size_t c = 0; c < js.cell_count(); ++c) CHECK(all.cell(c) == js.cell(c));

    JointTable none = marginalize(js, {});
    CHECK(none.cell_count() == 1);
    CHECK(none.cell(0) == 1);

    CHECK_THROWS_AS(marginalize(js, {"Z"}), InputError);
}

TEST_CASE("condition: positive slice, zero-mass slice, empty event") {
    RegimeModel m = table1();
    JointTable jo = materialize_joint(m, "o");

    Conditional a1 = condition(jo, {{"A", "1"}});
    REQUIRE(a1.defined);
    JointTable y = marginalize(a1.table, {"Y"});
    CHECK(y.at(std::vector<int>{1}) == Rat(4, 5));

    Conditional dead = condition(jo, {{"U", "1"}, {"A", "1"}});
    CHECK_FALSE(dead.defined);

    Conditional empty = condition(jo, {});
    REQUIRE(empty.defined);
    for (std::size_t c = 0; c < jo.cell_count(); ++c) CHECK(empty.table.cell(c) == jo.cell(c));

    CHECK_THROWS_AS(condition(jo, {{"A", "7"}}), InputError);
}

TEST_CASE("validate_model: clean fixture, bad row sum, ordering fault") {
    RegimeModel m = table1();
    CHECK(validate_model(m).empty());

    RegimeModel bad = table1();
    (*bad.regimes[0].kernels[0].rows[0])[0] = Rat(1, 2);
    (*bad.regimes[0].kernels[0].rows[0])[1] = Rat(2, 5);  // sums to 9/10
    auto violations = validate_model(bad);
    REQUIRE_FALSE(violations.empty());
    bool names_row = false;
    for (const auto& v : violations)
        names_row = names_row || (v.message.find("9/10") != std::string::npos);
    CHECK(names_row);

    RegimeModel reorder = table1();
    reorder.regimes[1].kernels[1].parents = {2};  // action kernel reading the later outcome
    auto ord = validate_model(reorder);
    bool names_order = false;
    for (const auto& v : ord)
        names_order = names_order || (v.message.find("precede") != std::string::npos);
    CHECK(names_order);
}

TEST_CASE("validate_model: reachable unconstrained row is a violation") {
    RegimeModel m = table1();
    // Under s every (U, A) cell has positive mass, so dropping a row breaks it.
    m.regimes[1].kernels[2].rows[3] = std::nullopt;
    auto violations = validate_model(m);
    bool flagged = false;
    for (const auto& v : violations)
        flagged = flagged || (v.message.find("unconstrained but reachable") != std::string::npos);
    CHECK(flagged);
}

TEST_CASE("information base alternation is enforced") {
    RegimeModel m;
    m.variables.push_back({"L1", Role::observable, {"0", "1"}});
    m.variables.push_back({"L2", Role::observable, {"0", "1"}});
    m.variables.push_back({"A", Role::action, {"0", "1"}});
    m.variables.push_back({"Y", Role::outcome, {"0", "1"}});
    m.base.order = {0, 1, 2, 3};
    CHECK_THROWS_WITH_AS(m.analyze(), doctest::Contains("product domain"), InputError);

    m.base.order = {0, 2, 3, 1};  // observable after the outcome
    CHECK_THROWS_AS(m.analyze(), InputError);
}

TEST_CASE("total mass is exactly 1 for every regime of random valid models") {
    std::mt19937_64 rng(7001);
    for (int i = 0; i < 40; ++i) {
        GenOptions opt;
        opt.shared_nature = i % 2 == 0;
        RegimeModel m = random_model(rng, opt);
        REQUIRE(validate_model(m).empty());
        for (const auto& r : m.regimes) {
            JointTable j = materialize_joint(m, r.id);
            CHECK(j.total() == 1);
        }
    }
}

TEST_CASE("materialization equals the shuffled-order kernel product") {
    std::mt19937_64 rng(7002);
    for (int i = 0; i < 10; ++i) {
        RegimeModel m = random_model(rng, {});
        for (const auto& r : m.regimes) {
            JointTable j = materialize_joint(m, r.id);
            std::vector<std::size_t> order(m.base.order.size());
            for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
            std::shuffle(order.begin(), order.end(), rng);
            std::vector<int> cfg;
            for (std::size_t c = 0; c < j.cell_count(); ++c) {
                j.config_of(c, cfg);
                CHECK(j.cell(c) == product_of_rows(m, r, cfg, order));
            }
        }
    }
}

TEST_CASE("conditionals recovered from the joint equal the kernel rows") {
    std::mt19937_64 rng(7003);
    for (int i = 0; i < 10; ++i) {
        RegimeModel m = random_model(rng, {});
        for (const auto& r : m.regimes) {
            JointTable j = materialize_joint(m, r.id);
            for (const Kernel& kernel : r.kernels) {
                std::vector<std::pair<std::string, std::string>> given;
                std::vector<int> pcfg(kernel.parents.size(), 0);
                const std::size_t rows = kernel.row_count();
                for (std::size_t row = 0; row < rows; ++row) {
                    given.clear();
                    for (std::size_t p = 0; p < kernel.parents.size(); ++p)
                        given.push_back({m.var(kernel.parents[p]).name,
                                         m.var(kernel.parents[p]).domain[pcfg[p]]});
                    Conditional c = condition(j, given);
                    if (c.defined) {
                        REQUIRE(kernel.rows[row].has_value());
                        JointTable child = marginalize(c.table, {m.var(kernel.child).name});
                        for (std::size_t v = 0; v < m.var(kernel.child).domain.size(); ++v) {
                            std::vector<int> vc{static_cast<int>(v)};
                            CHECK(child.at(vc) == (*kernel.rows[row])[v]);
                        }
                    }
                    for (int d = static_cast<int>(pcfg.size()) - 1; d >= 0; --d) {
                        if (++pcfg[d] < (int)m.var(kernel.parents[d]).domain.size()) break;
                        pcfg[d] = 0;
                    }
                }
            }
        }
    }
}

TEST_CASE("conditioning is defined exactly when the event has positive mass") {
    std::mt19937_64 rng(7004);
    for (int i = 0; i < 8; ++i) {
        RegimeModel m = random_model(rng, {});
        JointTable j = materialize_joint(m, "s");
        if (j.vars().size() < 2) continue;
        // Condition on the first two variables, over their whole grid.
        const auto& v0 = j.vars()[0];
        const auto& v1 = j.vars()[1];
        JointTable marg = marginalize(j, {v0.name, v1.name});
        for (std::size_t a = 0; a < v0.domain.size(); ++a)
            for (std::size_t b = 0; b < v1.domain.size(); ++b) {
                Conditional c = condition(j, {{v0.name, v0.domain[a]}, {v1.name, v1.domain[b]}});
                Rat mass = marg.at(std::vector<int>{(int)a, (int)b});
                CHECK(c.defined == (mass > 0));
                if (c.defined) CHECK(c.table.total() == 1);
            }
    }
}

TEST_CASE("state-space cap yields a clear error") {
    std::vector<JointVar> vars;
    for (int i = 0; i < 40; ++i)
        vars.push_back({"V" + std::to_string(i), {"0", "1", "2", "3"}});
    CHECK_THROWS_WITH_AS(JointTable{vars}, doctest::Contains("cap"), InputError);
}

}  // TEST_SUITE
