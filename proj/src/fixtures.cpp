#include "seqig/fixtures.hpp"

#include <algorithm>
#include <sstream>

#include "seqig/conditions.hpp"
#include "seqig/dsl.hpp"
#include "seqig/errors.hpp"
#include "seqig/grecursion.hpp"
#include "seqig/joint.hpp"

namespace seqig {

namespace {

const char* kDiscretesi = R"(# Two regimes over the extended information base (U, A, Y).
# Probabilities are exact 1500ths once the kernels are multiplied out.
variables:
  U unobserved 0 1
  A action 0 1
  Y outcome 0 1
order: U A Y
shared:
  kernel U | : 5/12 7/12
regime o : observational
  kernel A | U :
    0 : 3/5 2/5
    1 : 1 0
  kernel Y | U A :
    0 0 : 9/25 16/25
    0 1 : 1/5 4/5
    1 0 : 9/25 16/25
    1 1 : unconstrained
regime s : interventional
  kernel A | U :
    0 : 4/5 1/5
    1 : 4/5 1/5
  kernel Y | U A :
    0 0 : 9/25 16/25
    0 1 : 1/5 4/5
    1 0 : 9/25 16/25
    1 1 : 14/25 11/25
)";

const char* kDiscretesiDag = R"(sigma -> A
U -> A
U -> Y
A -> Y
)";

const char* kAppb = R"(# Binary treatment given never (o) or always (s); L2 = L1 + A.
variables:
  L1 observable 0 1
  A action 0 1
  L2 outcome 0 1 2
order: L1 A L2
shared:
  kernel L1 | : 1/2 1/2
  kernel L2 | L1 A :
    0 0 : 1 0 0
    0 1 : 0 1 0
    1 0 : 0 1 0
    1 1 : 0 0 1
regime o : observational
  kernel A | : 1 0
regime s : interventional
  kernel A | : 0 1
)";

const char* kAppbDag = R"(sigma -> A
L1 -> L2
A -> L2
)";

const char* kHivToy = R"(# Two treatment stages; adherence is unobserved, influences the second
# CD4 reading, but never the treatment decisions.
variables:
  CD4 observable lo hi
  ADH unobserved no yes
  T1 action none art
  CD4B observable lo hi
  T2 action none art
  Y outcome fail ok
order: CD4 ADH T1 CD4B T2 Y
shared:
  kernel CD4 | : 2/5 3/5
  kernel ADH | CD4 :
    lo : 1/2 1/2
    hi : 1/4 3/4
  kernel CD4B | CD4 ADH T1 :
    lo no none : 9/10 1/10
    lo no art : 3/5 2/5
    lo yes none : 4/5 1/5
    lo yes art : 1/5 4/5
    hi no none : 3/5 2/5
    hi no art : 1/5 4/5
    hi yes none : 2/5 3/5
    hi yes art : 1/20 19/20
  kernel Y | CD4B T2 :
    lo none : 7/10 3/10
    lo art : 2/5 3/5
    hi none : 3/10 7/10
    hi art : 1/10 9/10
regime o : observational
  kernel T1 | CD4 :
    lo : 1/4 3/4
    hi : 3/4 1/4
  kernel T2 | T1 CD4B :
    none lo : 1/5 4/5
    none hi : 3/5 2/5
    art lo : 1/10 9/10
    art hi : 1/2 1/2
regime s : interventional
  kernel T1 | CD4 :
    lo : 0 1
    hi : 1 0
  kernel T2 | CD4B :
    lo : 0 1
    hi : 1 0
)";

const char* kHivToyDag = R"(sigma -> T1
sigma -> T2
CD4 -> ADH
CD4 -> T1
CD4 -> CD4B
CD4 -> T2
CD4 -> Y
ADH -> T1
ADH -> CD4B
ADH -> T2
ADH -> Y
T1 -> CD4B
T1 -> T2
T1 -> Y
CD4B -> T2
CD4B -> Y
T2 -> Y
)";

const char* kFig1 = R"(sigma -> A1
sigma -> A2
L1 -> A1
L1 -> L2
L1 -> A2
L1 -> Y
A1 -> L2
A1 -> A2
A1 -> Y
L2 -> A2
L2 -> Y
A2 -> Y
)";

// Complete history DAG over the extended base, regime arrows into actions only.
const char* kFig2 = R"(sigma -> A1
sigma -> A2
L1 -> U1
L1 -> A1
L1 -> L2
L1 -> U2
L1 -> A2
L1 -> Y
U1 -> A1
U1 -> L2
U1 -> U2
U1 -> A2
U1 -> Y
A1 -> L2
A1 -> U2
A1 -> A2
A1 -> Y
L2 -> U2
L2 -> A2
L2 -> Y
U2 -> A2
U2 -> Y
A2 -> Y
)";

// fig2 minus the arrows from unobserved variables into actions.
const char* kFig3 = R"(sigma -> A1
sigma -> A2
L1 -> U1
L1 -> A1
L1 -> L2
L1 -> U2
L1 -> A2
L1 -> Y
U1 -> L2
U1 -> U2
U1 -> Y
A1 -> L2
A1 -> U2
A1 -> A2
A1 -> Y
L2 -> U2
L2 -> A2
L2 -> Y
U2 -> Y
A2 -> Y
)";

// fig2 minus the arrows from unobserved variables into later observables.
const char* kFig4 = R"(sigma -> A1
sigma -> A2
L1 -> U1
L1 -> A1
L1 -> L2
L1 -> U2
L1 -> A2
L1 -> Y
U1 -> A1
U1 -> U2
U1 -> A2
A1 -> L2
A1 -> U2
A1 -> A2
A1 -> Y
L2 -> U2
L2 -> A2
L2 -> Y
U2 -> A2
A2 -> Y
)";

const char* kFig5 = R"(sigma -> A
U -> A
U -> Y
A -> Y
)";

std::string cts_source(int n) {
    std::ostringstream os;
    os << "# " << n << "-point discretization: o sets A = U, s draws A uniformly;\n"
       << "# Y indicates A = U.\n";
    os << "variables:\n  U unobserved";
    for (int i = 0; i < n; ++i) os << " " << i;
    os << "\n  A action";
    for (int i = 0; i < n; ++i) os << " " << i;
    os << "\n  Y outcome 0 1\n";
    os << "order: U A Y\n";
    os << "shared:\n  kernel U | :";
    for (int i = 0; i < n; ++i) os << " 1/" << n;
    os << "\n  kernel Y | U A :\n";
    for (int u = 0; u < n; ++u)
        for (int a = 0; a < n; ++a)
            os << "    " << u << " " << a << " : " << (u == a ? "0 1" : "1 0") << "\n";
    os << "regime o : observational\n  kernel A | U :\n";
    for (int u = 0; u < n; ++u) {
        os << "    " << u << " :";
        for (int a = 0; a < n; ++a) os << (a == u ? " 1" : " 0");
        os << "\n";
    }
    os << "regime s : interventional\n  kernel A | :";
    for (int a = 0; a < n; ++a) os << " 1/" << n;
    os << "\n";
    return os.str();
}

int cts_points(const std::string& name) {
    // accepts cts<N> and cts(<N>)
    if (name.rfind("cts", 0) != 0) return 0;
    std::string digits = name.substr(3);
    if (digits.size() >= 2 && digits.front() == '(' && digits.back() == ')')
        digits = digits.substr(1, digits.size() - 2);
    if (digits.empty()) return 0;
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c))) return 0;
    int n = std::stoi(digits);
    return n >= 2 ? n : -1;
}

struct Checker {
    FixtureReport& report;
    void expect(const std::string& label, bool pass, const std::string& detail = "") {
        report.checks.push_back({label, pass, detail});
        report.pass = report.pass && pass;
    }
};

Rat marginal_prob(const JointTable& joint, const std::string& var, const std::string& value) {
    JointTable m = marginalize(joint, {var});
    int idx = -1;
    for (std::size_t i = 0; i < m.vars()[0].domain.size(); ++i)
        if (m.vars()[0].domain[i] == value) idx = static_cast<int>(i);
    if (idx < 0) throw InputError("no value " + value + " for " + var);
    std::vector<int> cfg{idx};
    return m.at(cfg);
}

Rat conditional_prob(const JointTable& joint, const std::string& var, const std::string& value,
                     const std::vector<std::pair<std::string, std::string>>& given) {
    Conditional c = condition(joint, given);
    if (!c.defined) throw InputError("conditioning event has mass zero");
    return marginal_prob(c.table, var, value);
}

const CheckReport* find_check(const ConditionReport& report, const std::string& name) {
    for (const auto& c : report.checks)
        if (c.condition == name) return &c;
    return nullptr;
}

bool same_assignments(std::vector<Assignment> a, std::vector<Assignment> b) {
    auto lt = [](const Assignment& x, const Assignment& y) {
        return std::tie(x.var, x.value) < std::tie(y.var, y.value);
    };
    std::sort(a.begin(), a.end(), lt);
    std::sort(b.begin(), b.end(), lt);
    return a == b;
}

bool common_version_has(const CheckReport& check, const std::vector<Assignment>& given,
                        const std::vector<Assignment>& event, const Rat& w,
                        const std::vector<std::string>* constrained_by = nullptr) {
    for (const auto& e : check.common_version) {
        if (same_assignments(e.given, given) && same_assignments(e.event, event)) {
            if (e.w != w) return false;
            if (constrained_by && e.constrained_by != *constrained_by) return false;
            return true;
        }
    }
    return false;
}

void verify_discretesi(Checker& c) {
    RegimeModel model = parse_model(kDiscretesi);
    JointTable jo = materialize_joint(model, "o"), js = materialize_joint(model, "s");
    ConditionReport report = condition_report(model, "s");

    c.expect("joint o reproduces the 1500ths table at (U=0,A=0,Y=0)",
             jo.at(std::vector<int>{0, 0, 0}) == Rat(135, 1500));
    c.expect("joint s reproduces the 1500ths table at (U=1,A=1,Y=1)",
             js.at(std::vector<int>{1, 1, 1}) == Rat(77, 1500));

    const CheckReport* es = find_check(report, "extended_stability");
    c.expect("extended stability holds", es && es->holds);
    if (es && es->holds) {
        c.expect("common version w(Y=1 | U=0, A=0) = 16/25",
                 common_version_has(*es, {{"U", "0"}, {"A", "0"}}, {{"Y", "1"}}, Rat(16, 25)));
        std::vector<std::string> only_s{"s"};
        c.expect("common version w(Y=1 | U=1, A=1) = 11/25, fixed by s alone",
                 common_version_has(*es, {{"U", "1"}, {"A", "1"}}, {{"Y", "1"}}, Rat(11, 25),
                                    &only_s));
    }

    const CheckReport* control = find_check(report, "control_strategy");
    c.expect("control strategy holds under s", control && control->holds);
    c.expect("P(A=1 | U=0; s) = 1/5",
             conditional_prob(js, "A", "1", {{"U", "0"}}) == Rat(1, 5));
    c.expect("P(A=1 | U=1; s) = 1/5",
             conditional_prob(js, "A", "1", {{"U", "1"}}) == Rat(1, 5));

    const CheckReport* rand = find_check(report, "sequential_randomization");
    c.expect("sequential randomization fails under o", rand && !rand->holds);
    c.expect("P(A=1 | U=0; o) = 2/5 while P(A=1 | U=1; o) = 0",
             conditional_prob(jo, "A", "1", {{"U", "0"}}) == Rat(2, 5) &&
                 conditional_prob(jo, "A", "1", {{"U", "1"}}) == Rat(0));

    const CheckReport* irr_o = find_check(report, "sequential_irrelevance(o)");
    const CheckReport* irr_s = find_check(report, "sequential_irrelevance(s)");
    c.expect("sequential irrelevance holds under o", irr_o && irr_o->holds);
    c.expect("sequential irrelevance fails under s", irr_s && !irr_s->holds);
    c.expect("irrelevance witness at A=1: P(Y=1|U=0,A=1;s) = 4/5 vs P(Y=1|U=1,A=1;s) = 11/25",
             conditional_prob(js, "Y", "1", {{"U", "0"}, {"A", "1"}}) == Rat(4, 5) &&
                 conditional_prob(js, "Y", "1", {{"U", "1"}, {"A", "1"}}) == Rat(11, 25));

    const CheckReport* ep = find_check(report, "extended_positivity");
    c.expect("extended positivity fails", ep && !ep->holds);
    bool cell_11 = false;
    if (ep)
        for (const auto& w : ep->witnesses) {
            bool u1 = false, a1 = false;
            for (const auto& a : w.event) {
                if (a.var == "U" && a.value == "1") u1 = true;
                if (a.var == "A" && a.value == "1") a1 = true;
            }
            cell_11 = cell_11 || (u1 && a1);
        }
    c.expect("extended positivity witness lies in the cell (U=1, A=1)", cell_11);

    const CheckReport* pos = find_check(report, "positivity");
    c.expect("positivity over the domain variables holds", pos && pos->holds);

    const CheckReport* ss = find_check(report, "simple_stability");
    c.expect("simple stability fails", ss && !ss->holds);
    c.expect("stability witness at A=1: P(Y=1|A=1;o) = 4/5 vs P(Y=1|A=1;s) = 59/100",
             conditional_prob(jo, "Y", "1", {{"A", "1"}}) == Rat(4, 5) &&
                 conditional_prob(js, "Y", "1", {{"A", "1"}}) == Rat(59, 100));

    const CheckReport* lemma = find_check(report, "lemma1");
    c.expect("positivity propagation (lemma) holds at every cell", lemma && lemma->holds);
    c.expect("no implication violations", !report.internal_error);

    c.expect("conditioning on the o-impossible event (U=1, A=1) is reported undefined",
             !condition(jo, {{"U", "1"}, {"A", "1"}}).defined);
    c.expect("P(Y=1; s) = 945/1500 by marginalization",
             marginal_prob(js, "Y", "1") == Rat(945, 1500));
}

void verify_appb(Checker& c) {
    RegimeModel model = parse_model(kAppb);
    JointTable jo = materialize_joint(model, "o"), js = materialize_joint(model, "s");

    CheckReport pos = check_positivity(model, "s");
    c.expect("positivity fails", !pos.holds);
    c.expect("witness event A=1 has mass 1 under s and 0 under o",
             marginal_prob(js, "A", "1") == 1 && marginal_prob(jo, "A", "1") == 0);

    CheckReport ss = check_simple_stability(model, "s");
    c.expect("simple stability holds (disjoint supports constrain nothing twice)", ss.holds);

    OutcomeFunctional k;
    k.values = {{"0", Rat(0)}, {"1", Rat(1)}, {"2", Rat(2)}};
    c.expect("consequence E(L2; s) = 3/2 by G-recursion",
             g_recursion(model, "s", k) == Rat(3, 2));
    c.expect("consequence matches brute-force marginalization",
             consequence_brute_force(model, "s", k) == Rat(3, 2));

    TransferOutcome refused = g_transfer(model, "s", k, TransferPolicy::require_checks);
    bool cites_positivity = false;
    for (const auto& check : refused.failed_checks)
        cites_positivity = cites_positivity || check.condition == "positivity";
    c.expect("transfer under require_checks refuses citing positivity",
             refused.status == TransferOutcome::Status::refused && cites_positivity);

    TransferOutcome forced = g_transfer(model, "s", k, TransferPolicy::force);
    c.expect("forced transfer hits an undefined observational conditional at A=1",
             forced.status == TransferOutcome::Status::undefined_conditional &&
                 forced.undefined_at.find("A=1") != std::string::npos);

    // The two regime-specific versions of E(L2 | L1, A): each valid in its
    // own regime only.
    std::map<std::string, Rat> values{{"0", Rat(0)}, {"1", Rat(1)}, {"2", Rat(2)}};
    auto w_o = [](const std::vector<Assignment>& given) {
        Rat l1, a;
        for (const auto& g : given) (g.var == "L1" ? l1 : a) = parse_rational(g.value);
        return a == 0 ? l1 : Rat(0);
    };
    auto w_s = [](const std::vector<Assignment>& given) {
        Rat l1, a;
        for (const auto& g : given) (g.var == "L1" ? l1 : a) = parse_rational(g.value);
        return a == 0 ? Rat(2) : l1 + 1;
    };
    c.expect("W_o is a version of E(L2 | L1, A) under o",
             check_expectation_version(jo, "L2", values, {"L1", "A"}, w_o).valid);
    c.expect("W_s is a version of E(L2 | L1, A) under s",
             check_expectation_version(js, "L2", values, {"L1", "A"}, w_s).valid);
    c.expect("W_o is not a version under s",
             !check_expectation_version(js, "L2", values, {"L1", "A"}, w_o).valid);
    c.expect("W_s is not a version under o",
             !check_expectation_version(jo, "L2", values, {"L1", "A"}, w_s).valid);
}

void verify_cts(Checker& c, int n) {
    RegimeModel model = parse_model(cts_source(n));
    JointTable jo = materialize_joint(model, "o"), js = materialize_joint(model, "s");

    c.expect("P(Y=1; o) = 1", marginal_prob(jo, "Y", "1") == 1);
    c.expect("P(Y=1; s) = 1/" + std::to_string(n),
             marginal_prob(js, "Y", "1") == Rat(1, n));

    CheckReport es = check_extended_stability(model, "s");
    c.expect("extended stability holds", es.holds);
    CheckReport control = check_control_strategy(model, "s");
    c.expect("control strategy holds under s", control.holds);
    CheckReport ss = check_simple_stability(model, "s");
    c.expect("simple stability fails", !ss.holds);
    CheckReport ep = check_extended_positivity(model, "s");
    c.expect("extended positivity fails", !ep.holds);
    CheckReport irr = check_sequential_irrelevance(model, "s");
    c.expect("sequential irrelevance fails under s (discrete analogue)", !irr.holds);
    CheckReport rand = check_sequential_randomization(model);
    c.expect("sequential randomization fails under o", !rand.holds);
}

void verify_hiv_toy(Checker& c) {
    RegimeModel model = parse_model(kHivToy);
    ConditionReport report = condition_report(model, "s");
    for (const char* name : {"extended_stability", "control_strategy",
                             "sequential_randomization", "simple_stability", "positivity",
                             "extended_positivity", "lemma1"}) {
        const CheckReport* check = find_check(report, name);
        c.expect(std::string(name) + " holds", check && check->holds);
    }
    const CheckReport* irr_o = find_check(report, "sequential_irrelevance(o)");
    const CheckReport* irr_s = find_check(report, "sequential_irrelevance(s)");
    c.expect("sequential irrelevance fails in both regimes (adherence moves the second reading)",
             irr_o && !irr_o->holds && irr_s && !irr_s->holds);
    c.expect("no implication violations", !report.internal_error);

    OutcomeFunctional k;
    k.values = {{"fail", Rat(1)}, {"ok", Rat(0)}};
    Rat direct = g_recursion(model, "s", k);
    c.expect("expected failure probability under s is 343/1000", direct == Rat(343, 1000));
    TransferOutcome transfer = g_transfer(model, "s", k, TransferPolicy::require_checks);
    c.expect("observational transfer is verified and exact",
             transfer.status == TransferOutcome::Status::ok && !transfer.unsafe &&
                 transfer.value == direct);
}

std::vector<CIStatement> eq9_statements() {
    return {
        CIStatement::make({"L1"}, {}, {}, true),
        CIStatement::make({"L2"}, {}, {"L1", "A1"}, true),
        CIStatement::make({"Y"}, {}, {"L1", "A1", "L2", "A2"}, true),
    };
}

std::vector<CIStatement> eq12_statements() {
    return {
        CIStatement::make({"L1", "U1"}, {}, {}, true),
        CIStatement::make({"L2", "U2"}, {}, {"L1", "U1", "A1"}, true),
        CIStatement::make({"Y"}, {}, {"L1", "U1", "A1", "L2", "U2", "A2"}, true),
    };
}

void verify_fig1(Checker& c) {
    InfluenceDiagram dag = parse_diagram(kFig1);
    RepresentsReport rep = represents(dag, eq9_statements());
    c.expect("the observed-base stability statements are all implied", rep.all_implied);
    c.expect("L1 is d-separated from sigma given nothing",
             d_separated(dag, {"L1"}, {"sigma"}, {}).separated);
}

void verify_fig2(Checker& c) {
    InfluenceDiagram dag = parse_diagram(kFig2);
    RepresentsReport rep = represents(dag, eq12_statements());
    c.expect("the extended stability statements are all implied", rep.all_implied);
    c.expect("observed-base stability for L2 is not implied",
             !implies(dag, CIStatement::make({"L2"}, {}, {"L1", "A1"}, true)));
}

void verify_fig3(Checker& c) {
    InfluenceDiagram fig3 = parse_diagram(kFig3);
    InfluenceDiagram fig2 = parse_diagram(kFig2);
    RepresentsReport rep = represents(fig3, eq9_statements());
    c.expect("dropping the U-to-action arrows makes every stability statement implied",
             rep.all_implied);

    auto implied2 = implied_ci(fig2, 8);
    auto implied3 = implied_ci(fig3, 8);
    bool superset = true;
    for (const auto& s : implied2) {
        bool found = false;
        for (const auto& t : implied3) found = found || t == s;
        superset = superset && found;
    }
    c.expect("the implied set only grows when arrows are removed", superset);
    c.expect("and grows strictly", implied3.size() > implied2.size());
}

void verify_fig4(Checker& c) {
    InfluenceDiagram dag = parse_diagram(kFig4);
    c.expect("the diagram over-claims observed-base stability for L2",
             implies(dag, CIStatement::make({"L2"}, {}, {"L1", "A1"}, true)));
}

void verify_fig5(Checker& c) {
    InfluenceDiagram dag = parse_diagram(kFig5);
    SeparationResult sep = d_separated(dag, {"Y"}, {"sigma"}, {"A"});
    c.expect("Y and sigma are not d-separated given A", !sep.separated);
    c.expect("an active trail is certified", !sep.active_path.empty());

    auto implied = implied_ci(dag, 8);
    auto contains = [&](const CIStatement& s) {
        for (const auto& t : implied)
            if (t == s) return true;
        return false;
    };
    c.expect("U _||_ sigma is implied", contains(CIStatement::make({"U"}, {}, {}, true)));
    c.expect("Y _||_ sigma | A is not implied",
             !contains(CIStatement::make({"Y"}, {}, {"A"}, true)));
    c.expect("d-separation and moralization agree on the failing query",
             moral_separated(dag, {"Y"}, {"sigma"}, {"A"}) == sep.separated);
}

}  // namespace

Fixture fixture(const std::string& name) {
    Fixture f;
    f.name = name;
    if (name == "discretesi") {
        f.kind = "model";
        f.source = kDiscretesi;
        f.paired_diagram_source = kDiscretesiDag;
        f.expected = {
            "extended stability holds; w(Y=1|U=0,A=0)=16/25, w(Y=1|U=1,A=1)=11/25 (s only)",
            "control strategy holds under s: P(A=1|U;s)=1/5 for both U values",
            "sequential randomization fails under o: 2/5 vs 0",
            "sequential irrelevance holds under o, fails under s (4/5 vs 11/25 at A=1)",
            "extended positivity fails at the cell (U=1, A=1)",
            "positivity over the domain variables holds",
            "simple stability fails: P(Y=1|A=1) is 4/5 under o, 59/100 under s",
            "positivity propagation (lemma) holds at every cell",
        };
    } else if (name == "appb") {
        f.kind = "model";
        f.source = kAppb;
        f.paired_diagram_source = kAppbDag;
        f.expected = {
            "positivity fails: P(A=1;s)=1 while P(A=1;o)=0",
            "simple stability holds vacuously",
            "E(L2; s) = 3/2 by G-recursion and by brute force",
            "transfer refuses under require_checks; --force hits an undefined o-conditional",
            "W_o and W_s are versions of E(L2|L1,A) in their own regimes only",
        };
    } else if (name == "hiv-toy") {
        f.kind = "model";
        f.source = kHivToy;
        f.paired_diagram_source = kHivToyDag;
        f.expected = {
            "extended stability, control, sequential randomization, positivity all hold",
            "sequential irrelevance fails in both regimes",
            "simple stability holds (implied) and transfer equals direct evaluation",
            "expected failure probability under s is 343/1000",
        };
    } else if (name == "fig1") {
        f.kind = "diagram";
        f.source = kFig1;
        f.expected = {"implies the observed-base stability statements"};
    } else if (name == "fig2") {
        f.kind = "diagram";
        f.source = kFig2;
        f.expected = {"implies extended stability but not observed-base stability"};
    } else if (name == "fig3") {
        f.kind = "diagram";
        f.source = kFig3;
        f.expected = {"implies observed-base stability; implied set strictly contains fig2's"};
    } else if (name == "fig4") {
        f.kind = "diagram";
        f.source = kFig4;
        f.expected = {"over-claims observed-base stability for L2"};
    } else if (name == "fig5") {
        f.kind = "diagram";
        f.source = kFig5;
        f.expected = {"Y and sigma not d-separated given A; U _||_ sigma implied"};
    } else if (int n = cts_points(name); n != 0) {
        if (n < 0) throw InputError("cts fixtures need at least 2 points");
        f.kind = "model";
        f.source = cts_source(n);
        f.paired_diagram_source = kFig5;
        f.expected = {
            "extended stability and control hold; simple stability fails",
            "P(Y=1;o) = 1 and P(Y=1;s) = 1/" + std::to_string(n),
            "extended positivity and s-irrelevance fail (discrete analogue)",
        };
    } else {
        throw InputError("unknown fixture '" + name + "'; available: " + [] {
            std::string all;
            for (const auto& n : fixture_names()) all += (all.empty() ? "" : ", ") + n;
            return all;
        }());
    }
    return f;
}

std::vector<std::string> fixture_names() {
    return {"appb", "discretesi", "hiv-toy", "cts2", "cts10", "cts100",
            "fig1", "fig2", "fig3", "fig4", "fig5"};
}

FixtureReport verify_fixture(const std::string& name) {
    FixtureReport report;
    report.name = name;
    Checker c{report};
    if (name == "discretesi")
        verify_discretesi(c);
    else if (name == "appb")
        verify_appb(c);
    else if (name == "hiv-toy")
        verify_hiv_toy(c);
    else if (name == "fig1")
        verify_fig1(c);
    else if (name == "fig2")
        verify_fig2(c);
    else if (name == "fig3")
        verify_fig3(c);
    else if (name == "fig4")
        verify_fig4(c);
    else if (name == "fig5")
        verify_fig5(c);
    else if (int n = cts_points(name); n > 0)
        verify_cts(c, n);
    else
        fixture(name);  // throws the canonical unknown-name error
    return report;
}

}  // namespace seqig
