#include "seqig/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "seqig/dsl.hpp"
#include "seqig/errors.hpp"
#include "seqig/fixtures.hpp"
#include "seqig/joint.hpp"
#include "seqig/report.hpp"
#include "seqig/semigraphoid.hpp"

namespace seqig::cli {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "seqig 0.1.0";

struct Emit {
    std::string format = "text";  // text | json
    bool canonical = false;
    std::ostream& out;

    void json_report(const std::string& command, const json& payload, int exit_code,
                     const json& inputs) {
        json root;
        root["schema"] = kReportSchema;
        root["command"] = command;
        if (!canonical) {
            root["generator"] = kVersion;
            root["inputs"] = inputs;
        }
        root["exit"] = exit_code;
        root["report"] = payload;
        out << root.dump(2) << "\n";
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

RegimeModel load_model(const std::string& path) {
    try {
        return parse_model(read_file(path));
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// ------------------------------------------------------------------ check

int cmd_check(Emit& emit, const std::string& model_path, std::string regime,
              const std::string& condition) {
    RegimeModel model = load_model(model_path);
    std::vector<std::string> targets;
    if (!regime.empty())
        targets.push_back(regime);
    else
        targets = model.interventional_ids();
    if (targets.empty()) throw InputError("model has no interventional regime to check");

    int exit_code = kOk;
    json payload = json::array();
    std::ostringstream text;

    for (const auto& s : targets) {
        if (condition == "all") {
            ConditionReport report = condition_report(model, s);
            for (const auto& c : report.checks)
                if (!c.holds) exit_code = std::max(exit_code, kFails);
            if (report.internal_error) exit_code = kInternalError;
            payload.push_back(to_json(report));
            render_condition_report(text, report, true);
            continue;
        }
        std::vector<CheckReport> reports;
        if (condition == "simple_stability")
            reports.push_back(check_simple_stability(model, s));
        else if (condition == "positivity")
            reports.push_back(check_positivity(model, s));
        else if (condition == "extended_stability")
            reports.push_back(check_extended_stability(model, s));
        else if (condition == "extended_positivity")
            reports.push_back(check_extended_positivity(model, s));
        else if (condition == "control_strategy")
            reports.push_back(check_control_strategy(model, s));
        else if (condition == "sequential_randomization")
            reports.push_back(check_sequential_randomization(model));
        else if (condition == "sequential_irrelevance") {
            reports.push_back(check_sequential_irrelevance(model, model.observational_id()));
            reports.push_back(check_sequential_irrelevance(model, s));
        } else if (condition == "lemma1")
            reports.push_back(check_lemma1(model, s));
        else
            throw InputError(
                "unknown condition '" + condition +
                "'; expected one of: all, simple_stability, positivity, extended_stability, "
                "extended_positivity, control_strategy, sequential_randomization, "
                "sequential_irrelevance, lemma1");
        for (const auto& r : reports) {
            if (!r.holds) exit_code = std::max(exit_code, kFails);
            payload.push_back(to_json(r));
            render_check(text, r, true);
        }
    }

    if (emit.format == "json")
        emit.json_report("check", payload, exit_code,
                         {{"model", model_path}, {"condition", condition}});
    else
        emit.out << text.str();
    return exit_code;
}

// --------------------------------------------------------------- evaluate

int cmd_evaluate(Emit& emit, const std::string& model_path, const std::string& regime,
                 const std::string& loss_path, const std::string& method, bool force) {
    RegimeModel model = load_model(model_path);
    OutcomeFunctional loss = parse_loss(read_file(loss_path), model);

    json payload;
    std::ostringstream text;
    int exit_code = kOk;

    if (method == "g" || method == "brute") {
        Rat value = method == "g" ? g_recursion(model, regime, loss)
                                  : consequence_brute_force(model, regime, loss);
        payload["method"] = method;
        payload["regime"] = regime;
        payload["value"] = fraction_string(value);
        payload["value_decimal"] = decimal_string(value);
        text << "consequence = " << fraction_string(value) << " (" << decimal_string(value)
             << ")  [method " << method << ", regime " << regime << "]\n";
    } else if (method == "transfer") {
        TransferOutcome t = g_transfer(model, regime, loss,
                                       force ? TransferPolicy::force
                                             : TransferPolicy::require_checks);
        payload = to_json(t);
        payload["method"] = "transfer";
        payload["regime"] = regime;
        switch (t.status) {
            case TransferOutcome::Status::ok:
                text << "consequence = " << fraction_string(*t.value) << " ("
                     << decimal_string(*t.value) << ")  [transfer from "
                     << model.observational_id() << ", regime " << regime << "]\n";
                if (t.unsafe) {
                    text << "UNSAFE: transfer conditions fail; value is not identified\n";
                    for (const auto& c : t.failed_checks) render_check(text, c, false);
                }
                break;
            case TransferOutcome::Status::refused:
                exit_code = kFails;
                text << "transfer refused: identification conditions fail\n";
                for (const auto& c : t.failed_checks) render_check(text, c, false);
                break;
            case TransferOutcome::Status::undefined_conditional:
                exit_code = kUndefinedTransfer;
                text << "transfer failed: undefined observational conditional at "
                     << t.undefined_at << "\n";
                break;
        }
    } else {
        throw InputError("unknown method '" + method + "'; expected g, brute or transfer");
    }

    if (emit.format == "json")
        emit.json_report("evaluate", payload, exit_code,
                         {{"model", model_path}, {"loss", loss_path}});
    else
        emit.out << text.str();
    return exit_code;
}

// --------------------------------------------------------------- optimize

int cmd_optimize(Emit& emit, const std::string& model_path, const std::string& loss_path,
                 const std::string& mode, bool force, std::uint64_t cap) {
    RegimeModel model = load_model(model_path);
    OutcomeFunctional loss = parse_loss(read_file(loss_path), model);

    OptimizeResult result =
        optimize(model, loss, mode == "oracle" ? OptimizeMode::oracle : OptimizeMode::transfer,
                 force ? TransferPolicy::force : TransferPolicy::require_checks, cap);
    int exit_code = result.best ? kOk : kFails;

    if (emit.format == "json") {
        emit.json_report("optimize", to_json(result), exit_code,
                         {{"model", model_path}, {"loss", loss_path}, {"mode", mode}});
    } else {
        render_optimize(emit.out, result);
    }
    return exit_code;
}

// ----------------------------------------------------------------- derive

int cmd_derive(Emit& emit, const std::string& premises_path, const std::string& target_text,
               const std::string& ground_list, int cap) {
    std::vector<CIStatement> premises;
    std::istringstream lines(read_file(premises_path));
    std::string line;
    int line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        bool blank = true;
        for (char c : line) blank = blank && std::isspace(static_cast<unsigned char>(c));
        if (blank) continue;
        try {
            premises.push_back(parse_ci(line));
        } catch (const ParseError& e) {
            throw InputError(premises_path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    CIStatement target = parse_ci(target_text);
    Derivation d = derive(premises, target, split_list(ground_list), cap);

    int exit_code = d.derivable ? kOk : kFails;
    if (emit.format == "json") {
        json payload = to_json(d);
        payload["target"] = target.text();
        emit.json_report("derive", payload, exit_code, {{"premises", premises_path}});
    } else {
        emit.out << "target: " << target.text() << "\n";
        render_derivation(emit.out, d);
    }
    return exit_code;
}

// ------------------------------------------------------------------- dsep

int cmd_dsep(Emit& emit, const std::string& dag_path, const std::string& stmt_text,
             const std::string& method) {
    InfluenceDiagram dag;
    try {
        dag = parse_diagram(read_file(dag_path));
    } catch (const ParseError& e) {
        throw InputError(dag_path + ": " + e.what());
    }
    CIStatement stmt = parse_ci(stmt_text);
    if (!stmt.regime_filter.empty())
        throw InputError("regime-qualified statements are for numeric checks, not d-separation");

    std::vector<std::string> y = stmt.y, z = stmt.z;
    if (stmt.sigma_in_y || stmt.sigma_in_z) {
        if (dag.regime_node() < 0)
            throw InputError("the diagram has no regime node but the statement mentions sigma");
        (stmt.sigma_in_y ? y : z).push_back(dag.nodes()[dag.regime_node()].name);
    }

    json payload;
    payload["statement"] = stmt.text();
    payload["method"] = method;
    int exit_code = kOk;
    std::ostringstream text;
    if (method == "moral") {
        bool sep = moral_separated(dag, stmt.x, y, z);
        exit_code = sep ? kOk : kFails;
        payload["separated"] = sep;
        text << (sep ? "separated (moralization)" : "not separated (moralization)") << "\n";
    } else if (method == "d") {
        SeparationResult sep = d_separated(dag, stmt.x, y, z);
        exit_code = sep.separated ? kOk : kFails;
        payload["separated"] = sep.separated;
        if (!sep.separated) {
            payload["active_path"] = sep.active_path;
            text << "not separated; active trail:";
            for (const auto& n : sep.active_path) text << " " << n;
            text << "\n";
        } else {
            text << "separated\n";
        }
    } else {
        throw InputError("unknown method '" + method + "'; expected d or moral");
    }

    if (emit.format == "json")
        emit.json_report("dsep", payload, exit_code, {{"dag", dag_path}});
    else
        emit.out << text.str();
    return exit_code;
}

// --------------------------------------------------------------------- ci

int cmd_ci(Emit& emit, const std::string& model_path, const std::string& stmt_text,
           const std::string& regime_list) {
    RegimeModel model = load_model(model_path);
    CIStatement stmt = parse_ci(stmt_text);

    std::vector<std::string> regimes = split_list(regime_list);
    if (regimes.empty()) regimes = stmt.regime_filter;
    if (regimes.empty())
        for (const auto& r : model.regimes) regimes.push_back(r.id);

    Verdict verdict;
    if (stmt.sigma_in_y || stmt.sigma_in_z) {
        verdict = check_extended_ci(model, regimes, stmt);
    } else {
        // Plain statement: within each selected regime separately.
        CIStatement with_sigma = stmt;
        with_sigma.sigma_in_z = true;
        with_sigma.regime_filter.clear();
        verdict = check_extended_ci(model, regimes, with_sigma);
    }

    int exit_code = verdict.holds ? kOk : kFails;
    if (emit.format == "json") {
        json payload = to_json(verdict);
        payload["statement"] = stmt.text();
        payload["regimes"] = regimes;
        emit.json_report("ci", payload, exit_code, {{"model", model_path}});
    } else {
        emit.out << stmt.text() << " over {";
        for (std::size_t i = 0; i < regimes.size(); ++i)
            emit.out << (i ? ", " : "") << regimes[i];
        emit.out << "}: " << (verdict.holds ? "holds" : "FAILS") << "\n";
        for (const auto& w : verdict.witnesses) render_witness(emit.out, w, "  witness ");
        if (!verdict.note.empty()) emit.out << "  note: " << verdict.note << "\n";
    }
    return exit_code;
}

// ---------------------------------------------------------------- fixture

int cmd_fixture(Emit& emit, const std::string& name, bool verify) {
    if (!verify) {
        Fixture f = fixture(name);
        emit.out << f.source;
        return kOk;
    }
    FixtureReport report = verify_fixture(name);
    int exit_code = report.pass ? kOk : kFails;
    if (emit.format == "json")
        emit.json_report("fixture", to_json(report), exit_code, {{"fixture", name}});
    else
        render_fixture_report(emit.out, report);
    return exit_code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact engine for sequential decision strategies across regimes"};
    app.require_subcommand(1);

    Emit emit{"text", false, out};
    app.add_option("--format", emit.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--canonical", emit.canonical,
                 "strip environment-dependent fields from reports");

    auto* check = app.add_subcommand("check", "verify identification conditions");
    std::string check_model, check_regime, check_condition = "all";
    check->add_option("model", check_model, "model file")->required();
    check->add_option("--regime", check_regime, "interventional regime id");
    check->add_option("--condition", check_condition, "condition name or 'all'");

    auto* evaluate = app.add_subcommand("evaluate", "consequence of a regime");
    std::string eval_model, eval_regime, eval_loss, eval_method = "g";
    bool eval_force = false;
    evaluate->add_option("model", eval_model, "model file")->required();
    evaluate->add_option("--regime", eval_regime, "regime id")->required();
    evaluate->add_option("--loss", eval_loss, "loss file")->required();
    evaluate->add_option("--method", eval_method, "g | brute | transfer")
        ->check(CLI::IsMember({"g", "brute", "transfer"}));
    evaluate->add_flag("--force", eval_force, "run transfer even when checks fail");

    auto* opt = app.add_subcommand("optimize", "exhaustive strategy selection");
    std::string opt_model, opt_loss, opt_mode = "oracle";
    bool opt_force = false;
    std::uint64_t opt_cap = 100000;
    opt->add_option("model", opt_model, "model file")->required();
    opt->add_option("--loss", opt_loss, "loss file")->required();
    opt->add_option("--mode", opt_mode, "oracle | transfer")
        ->check(CLI::IsMember({"oracle", "transfer"}));
    opt->add_flag("--force", opt_force, "transfer mode: evaluate even when checks fail");
    opt->add_option("--cap", opt_cap, "maximum number of strategies");

    auto* der = app.add_subcommand("derive", "semi-graphoid derivation");
    std::string der_premises, der_target, der_ground;
    int der_cap = 8;
    der->add_option("--premises", der_premises, "file with one statement per line")->required();
    der->add_option("--target", der_target, "target statement")->required();
    der->add_option("--ground", der_ground, "comma-separated ground symbols");
    der->add_option("--cap", der_cap, "ground-set size cap");

    auto* dsep = app.add_subcommand("dsep", "graphical separation query");
    std::string dsep_dag, dsep_stmt, dsep_method = "d";
    dsep->add_option("dag", dsep_dag, "diagram file")->required();
    dsep->add_option("statement", dsep_stmt, "CI statement")->required();
    dsep->add_option("--method", dsep_method, "d | moral")
        ->check(CLI::IsMember({"d", "moral"}));

    auto* ci = app.add_subcommand("ci", "numeric conditional-independence check");
    std::string ci_model, ci_stmt, ci_regimes;
    ci->add_option("model", ci_model, "model file")->required();
    ci->add_option("statement", ci_stmt, "CI statement")->required();
    ci->add_option("--regimes", ci_regimes, "comma-separated regime ids");

    auto* fix = app.add_subcommand("fixture", "bundled models and diagrams");
    std::string fix_name;
    bool fix_verify = false;
    fix->add_option("name", fix_name, "fixture name")->required();
    fix->add_flag("--verify", fix_verify, "run the fixture's expected checks");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());  // CLI11 convention
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        if (*check) return cmd_check(emit, check_model, check_regime, check_condition);
        if (*evaluate)
            return cmd_evaluate(emit, eval_model, eval_regime, eval_loss, eval_method, eval_force);
        if (*opt) return cmd_optimize(emit, opt_model, opt_loss, opt_mode, opt_force, opt_cap);
        if (*der) return cmd_derive(emit, der_premises, der_target, der_ground, der_cap);
        if (*dsep) return cmd_dsep(emit, dsep_dag, dsep_stmt, dsep_method);
        if (*ci) return cmd_ci(emit, ci_model, ci_stmt, ci_regimes);
        if (*fix) return cmd_fixture(emit, fix_name, fix_verify);
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternalError;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    err << "error: no subcommand\n";
    return kInputError;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
    return run(args, out, err);
}

}  // namespace seqig::cli
