#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "seqig/conditions.hpp"
#include "seqig/dsl.hpp"
#include "seqig/errors.hpp"
#include "seqig/fixtures.hpp"
#include "seqig/joint.hpp"
#include "seqig/strategy.hpp"

using namespace seqig;
using seqig::testing::GenOptions;
using seqig::testing::random_model_capped;

namespace {

// L1 fair coin, o plays A1 uniformly, Y = A1 xor L1.
const char* kXor = R"(variables:
  L1 observable 0 1
  A1 action 0 1
  Y outcome 0 1
order: L1 A1 Y
shared:
  kernel L1 | : 1/2 1/2
  kernel Y | L1 A1 :
    0 0 : 1 0
    0 1 : 0 1
    1 0 : 0 1
    1 1 : 1 0
regime o : observational
  kernel A1 | : 1/2 1/2
regime s : interventional
  kernel A1 | : 1 0
)";

OutcomeFunctional y_loss(const RegimeModel& m) {
    RegimeModel probe = m;
    probe.analyze();
    OutcomeFunctional k;
    for (const auto& label : probe.var(probe.base.outcome).domain)
        k.values[label] = parse_rational(label);
    return k;
}

}  // namespace

TEST_SUITE("strategy") {

TEST_CASE("instantiate_regime: degenerate strategy reproduces the forced regime") {
    RegimeModel appb = parse_model(fixture("appb").source);
    Strategy always = parse_strategy("A := 1\n", appb);
    RegimeModel extended = instantiate_regime(appb, always, "forced");
    JointTable forced = materialize_joint(extended, "forced");
    JointTable s = materialize_joint(extended, "s");
    for (std::size_t c = 0; c < s.cell_count(); ++c) CHECK(forced.cell(c) == s.cell(c));
}

TEST_CASE("instantiate_regime: uniform strategy on the grid model matches its s regime") {
    RegimeModel cts = parse_model(fixture("cts4").source);
    Strategy uniform = parse_strategy("A | :\n  . : 1/4 1/4 1/4 1/4\n", cts);
    RegimeModel extended = instantiate_regime(cts, uniform, "u");
    JointTable u = materialize_joint(extended, "u");
    JointTable s = materialize_joint(extended, "s");
    for (std::size_t c = 0; c < s.cell_count(); ++c) CHECK(u.cell(c) == s.cell(c));
}

TEST_CASE("copying the observational action law reproduces the observational joint") {
    RegimeModel x = parse_model(kXor);
    Strategy observational = parse_strategy("A1 | :\n  . : 1/2 1/2\n", x);
    RegimeModel extended = instantiate_regime(x, observational, "copy");
    JointTable copy = materialize_joint(extended, "copy");
    JointTable o = materialize_joint(extended, "o");
    for (std::size_t c = 0; c < o.cell_count(); ++c) CHECK(copy.cell(c) == o.cell(c));
}

TEST_CASE("instantiated regimes satisfy the control condition by construction") {
    std::mt19937_64 rng(2101);
    GenOptions opt;
    opt.shared_nature = false;
    for (int i = 0; i < 15; ++i) {
        RegimeModel m = random_model_capped(rng, opt);
        if (!m.base.extended) continue;
        // Any shape-correct strategy will do; build the all-first-action one.
        auto history = strategy_history_vars(m);
        Strategy strat;
        strat.stages.resize(history.size());
        for (std::size_t st = 0; st < history.size(); ++st) {
            std::size_t hists = 1;
            for (VarId v : history[st]) hists *= m.var(v).domain.size();
            std::vector<Rat> row(m.var(m.base.stages[st].a).domain.size(), Rat(0));
            row[0] = 1;
            strat.stages[st].rows.assign(hists, row);
        }
        RegimeModel extended = instantiate_regime(m, strat, "probe");
        CHECK(check_control_strategy(extended, "probe").holds);
    }
}

TEST_CASE("instantiation validates shape and rows") {
    RegimeModel x = parse_model(kXor);
    Strategy bad;
    bad.stages.resize(1);
    bad.stages[0].rows = {{Rat(1, 2), Rat(1, 2)}};  // wrong row count: history runs over L1
    CHECK_THROWS_WITH_AS(instantiate_regime(x, bad, "b"), doctest::Contains("rows"), InputError);

    Strategy unnormalized;
    unnormalized.stages.resize(1);
    unnormalized.stages[0].rows = {{Rat(1, 2), Rat(1, 3)}, {Rat(1), Rat(0)}};
    CHECK_THROWS_WITH_AS(instantiate_regime(x, unnormalized, "b"), doctest::Contains("sums"),
                         InputError);

    Strategy fine = parse_strategy("A1 := 0\n", x);
    CHECK_THROWS_WITH_AS(instantiate_regime(x, fine, "s"), doctest::Contains("already"),
                         InputError);
}

TEST_CASE("enumeration counts follow the combinatorial formula") {
    RegimeModel x = parse_model(kXor);
    CHECK(count_nonrandomized(x) == 4);  // |A|^(|L1|) = 2^2

    RegimeModel wide = parse_model(
        "variables:\n  L1 observable a b c\n  A1 action 0 1\n  Y outcome 0 1\n"
        "order: L1 A1 Y\nshared:\n  kernel L1 | : 1/3 1/3 1/3\n  kernel Y | A1 :\n"
        "    0 : 1 0\n    1 : 0 1\nregime o : observational\n  kernel A1 | : 1/2 1/2\n"
        "regime s : interventional\n  kernel A1 | : 1 0\n");
    CHECK(count_nonrandomized(wide) == 8);  // 2^3

    RegimeModel hiv = parse_model(fixture("hiv-toy").source);
    // stage 1: 2 histories over CD4; stage 2: 8 histories over (CD4, T1, CD4B)
    CHECK(count_nonrandomized(hiv) == (1u << 2) * (1u << 8));

    std::uint64_t seen = 0;
    StrategyEnumerator en(x, 100);
    Strategy strat;
    std::string last;
    while (en.next(strat)) {
        ++seen;
        CHECK(strat.id > last);  // deterministic lexicographic order
        last = strat.id;
    }
    CHECK(seen == count_nonrandomized(x));
}

TEST_CASE("the enumeration cap errors with the count") {
    RegimeModel hiv = parse_model(fixture("hiv-toy").source);
    CHECK_THROWS_WITH_AS(StrategyEnumerator(hiv, 100), doctest::Contains("1024"), InputError);
}

TEST_CASE("ids stay lexicographic when an action needs two digits") {
    std::ostringstream os;
    os << "variables:\n  A action";
    for (int i = 0; i < 12; ++i) os << " a" << i;
    os << "\n  Y outcome 0 1\norder: A Y\nregime o : observational\n  kernel A | :";
    for (int i = 0; i < 12; ++i) os << " 1/12";
    os << "\n  kernel Y | : 1 0\nregime s : interventional\n  kernel A | :";
    for (int i = 0; i < 12; ++i) os << (i ? " 0" : " 1");
    os << "\n  kernel Y | : 1 0\n";
    RegimeModel wide = parse_model(os.str());
    CHECK(count_nonrandomized(wide) == 12);
    StrategyEnumerator en(wide, 100);
    Strategy strat;
    std::string last;
    int seen = 0;
    while (en.next(strat)) {
        CHECK(strat.id.size() == 2);  // zero-padded: "00" .. "11"
        CHECK(strat.id > last);
        last = strat.id;
        ++seen;
    }
    CHECK(seen == 12);
}

TEST_CASE("overlapping strategy row patterns are rejected") {
    RegimeModel hiv = parse_model(fixture("hiv-toy").source);
    CHECK_THROWS_WITH_AS(
        parse_strategy("T2 | CD4B T1 :\n  lo none : art\n  lo art : none\n  lo none : none\n",
                       hiv),
        doctest::Contains("two rows"), ParseError);
    // Distinct partial patterns that overlap on some full history.
    CHECK_THROWS_WITH_AS(
        parse_strategy("T2 | CD4B :\n  lo : art\nT1 | CD4 :\n  lo : art\n  lo : none\n", hiv),
        doctest::Contains("two rows"), ParseError);
}

TEST_CASE("optimize on the xor model finds the matching strategy, exactly zero") {
    RegimeModel x = parse_model(kXor);
    OutcomeFunctional loss = y_loss(x);

    OptimizeResult oracle = optimize(x, loss, OptimizeMode::oracle);
    REQUIRE(oracle.best.has_value());
    CHECK(oracle.rows[*oracle.best].strategy_id == "01");  // a1 = l1
    CHECK(*oracle.rows[*oracle.best].consequence == 0);
    REQUIRE(oracle.rows.size() == 4);
    CHECK(*oracle.rows[0].consequence == Rat(1, 2));  // A1 always 0: Y = L1
    CHECK(*oracle.rows[2].consequence == 1);          // a1 = 1 - l1: Y always 1

    OptimizeResult transfer = optimize(x, loss, OptimizeMode::transfer);
    REQUIRE(transfer.best.has_value());
    CHECK(transfer.rows[*transfer.best].strategy_id == "01");
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(transfer.rows[i].safety == EvaluationRow::Safety::verified);
        CHECK(*transfer.rows[i].consequence == *oracle.rows[i].consequence);
    }
}

TEST_CASE("constant loss ties break to the lexicographically first strategy") {
    RegimeModel x = parse_model(kXor);
    OutcomeFunctional constant;
    constant.values = {{"0", Rat(3)}, {"1", Rat(3)}};
    OptimizeResult r = optimize(x, constant, OptimizeMode::oracle);
    REQUIRE(r.best.has_value());
    CHECK(r.rows[*r.best].strategy_id == "00");
}

TEST_CASE("affine loss rescaling never changes the selected strategy") {
    std::mt19937_64 rng(2102);
    RegimeModel x = parse_model(kXor);
    OutcomeFunctional loss = y_loss(x);
    OptimizeResult base = optimize(x, loss, OptimizeMode::oracle);
    REQUIRE(base.best.has_value());
    for (int i = 0; i < 10; ++i) {
        Rat a(std::uniform_int_distribution<int>(1, 9)(rng),
              std::uniform_int_distribution<int>(1, 9)(rng));
        Rat b = seqig::testing::random_rat(rng, -5, 5);
        OutcomeFunctional scaled;
        for (const auto& [label, v] : loss.values) scaled.values[label] = a * v + b;
        OptimizeResult r = optimize(x, scaled, OptimizeMode::oracle);
        REQUIRE(r.best.has_value());
        CHECK(r.rows[*r.best].strategy_id == base.rows[*base.best].strategy_id);
    }
}

TEST_CASE("transfer-mode optimize refuses exactly the unidentifiable strategies") {
    RegimeModel appb = parse_model(fixture("appb").source);
    OutcomeFunctional loss = y_loss(appb);
    OptimizeResult r = optimize(appb, loss, OptimizeMode::transfer);
    // Strategies map L1 to an action; only never-treat stays inside the
    // observational support.
    REQUIRE(r.rows.size() == 4);
    CHECK(r.rows[0].strategy_id == "00");
    CHECK(r.rows[0].safety == EvaluationRow::Safety::verified);
    CHECK(*r.rows[0].consequence == Rat(1, 2));
    for (std::size_t i = 1; i < 4; ++i)
        CHECK(r.rows[i].safety == EvaluationRow::Safety::refused);
    REQUIRE(r.best.has_value());
    CHECK(r.rows[*r.best].strategy_id == "00");
}

TEST_CASE("oracle-mode optimize agrees with exhaustive brute-force minimization") {
    std::mt19937_64 rng(2103);
    GenOptions opt;
    opt.max_stages = 2;
    opt.max_domain = 3;
    opt.shared_nature = false;
    for (int i = 0; i < 10; ++i) {
        RegimeModel m = random_model_capped(rng, opt, 1024);
        if (count_nonrandomized(m) > 256) continue;
        OutcomeFunctional k = seqig::testing::random_functional(rng, m);
        OptimizeResult r = optimize(m, k, OptimizeMode::oracle);

        StrategyEnumerator en(m, 100000);
        Strategy strat;
        std::size_t idx = 0;
        std::optional<Rat> best;
        std::string best_id;
        while (en.next(strat)) {
            RegimeModel extended = instantiate_regime(m, strat, "probe");
            Rat value = consequence_brute_force(extended, "probe", k);
            CHECK(value == *r.rows[idx].consequence);
            if (!best || value < *best) {
                best = value;
                best_id = strat.id;
            }
            ++idx;
        }
        REQUIRE(r.best.has_value());
        CHECK(r.rows[*r.best].strategy_id == best_id);
    }
}

TEST_CASE("non-randomized strategies zero out every deviating history") {
    RegimeModel x = parse_model(kXor);
    Strategy match = parse_strategy("A1 | L1 :\n  0 : 0\n  1 : 1\n", x);
    RegimeModel extended = instantiate_regime(x, match, "m");
    JointTable j = materialize_joint(extended, "m");
    std::vector<int> cfg;
    for (std::size_t c = 0; c < j.cell_count(); ++c) {
        j.config_of(c, cfg);
        if (cfg[1] != cfg[0]) CHECK(j.cell(c) == 0);  // A1 deviates from L1
    }
}

}  // TEST_SUITE
