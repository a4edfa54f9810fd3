#include "seqig/report.hpp"

#include <sstream>

namespace seqig {

namespace {

using nlohmann::json;

json assignments_json(const std::vector<Assignment>& a) {
    json out = json::array();
    for (const auto& [var, value] : a) out.push_back({{"var", var}, {"value", value}});
    return out;
}

json side_json(const WitnessSide& s) {
    json out;
    if (!s.regime.empty()) out["regime"] = s.regime;
    out["given"] = assignments_json(s.given);
    out["prob"] = fraction_string(s.prob);
    return out;
}

std::string side_text(const WitnessSide& s) {
    std::ostringstream os;
    if (!s.given.empty()) os << assignments_text(s.given) << " ";
    if (!s.regime.empty()) os << "[" << s.regime << "] ";
    os << "= " << fraction_string(s.prob);
    return os.str();
}

}  // namespace

nlohmann::json to_json(const Witness& w) {
    json out;
    out["event"] = assignments_json(w.event);
    out["left"] = side_json(w.left);
    out["right"] = side_json(w.right);
    if (!w.note.empty()) out["note"] = w.note;
    return out;
}

nlohmann::json to_json(const Verdict& v) {
    json out;
    out["holds"] = v.holds;
    out["witnesses"] = json::array();
    for (const auto& w : v.witnesses) out["witnesses"].push_back(to_json(w));
    if (v.common_version) {
        json entries = json::array();
        for (const auto& e : *v.common_version) {
            json row;
            row["given"] = assignments_json(e.given);
            row["event"] = assignments_json(e.event);
            row["w"] = fraction_string(e.w);
            row["constrained_by"] = e.constrained_by;
            entries.push_back(row);
        }
        out["common_version"] = entries;
    }
    if (!v.note.empty()) out["note"] = v.note;
    return out;
}

nlohmann::json to_json(const CheckReport& r) {
    json out;
    out["condition"] = r.condition;
    out["regime_pair"] = {r.regime_pair.first, r.regime_pair.second};
    out["holds"] = r.holds;
    out["witnesses"] = json::array();
    for (const auto& w : r.witnesses) out["witnesses"].push_back(to_json(w));
    out["details"] = r.details;
    if (!r.common_version.empty()) {
        json entries = json::array();
        for (const auto& e : r.common_version) {
            json row;
            row["given"] = assignments_json(e.given);
            row["event"] = assignments_json(e.event);
            row["w"] = fraction_string(e.w);
            row["constrained_by"] = e.constrained_by;
            entries.push_back(row);
        }
        out["common_version"] = entries;
    }
    if (!r.notes.empty()) out["notes"] = r.notes;
    return out;
}

nlohmann::json to_json(const ConditionReport& r) {
    json out;
    out["observational"] = r.observational;
    out["interventional"] = r.interventional;
    out["checks"] = json::array();
    for (const auto& c : r.checks) out["checks"].push_back(to_json(c));
    out["skipped"] = r.skipped;
    out["implication_errors"] = r.implication_errors;
    out["internal_error"] = r.internal_error;
    return out;
}

nlohmann::json to_json(const TransferOutcome& t) {
    json out;
    switch (t.status) {
        case TransferOutcome::Status::ok: out["status"] = "ok"; break;
        case TransferOutcome::Status::refused: out["status"] = "refused"; break;
        case TransferOutcome::Status::undefined_conditional:
            out["status"] = "undefined_conditional";
            break;
    }
    if (t.value) {
        out["value"] = fraction_string(*t.value);
        out["value_decimal"] = decimal_string(*t.value);
    }
    out["unsafe"] = t.unsafe;
    out["failed_checks"] = json::array();
    for (const auto& c : t.failed_checks) out["failed_checks"].push_back(to_json(c));
    if (!t.undefined_at.empty()) out["undefined_at"] = t.undefined_at;
    return out;
}

nlohmann::json to_json(const OptimizeResult& r) {
    json out;
    json rows = json::array();
    for (const auto& row : r.rows) {
        json j;
        j["strategy"] = row.strategy_id;
        if (row.consequence) {
            j["consequence"] = fraction_string(*row.consequence);
            j["consequence_decimal"] = decimal_string(*row.consequence);
        }
        switch (row.safety) {
            case EvaluationRow::Safety::verified: j["safety"] = "verified"; break;
            case EvaluationRow::Safety::unsafe: j["safety"] = "unsafe"; break;
            case EvaluationRow::Safety::refused: j["safety"] = "refused"; break;
        }
        if (!row.note.empty()) j["note"] = row.note;
        rows.push_back(j);
    }
    out["rows"] = rows;
    if (r.best) out["best"] = r.rows[*r.best].strategy_id;
    return out;
}

nlohmann::json to_json(const Derivation& d) {
    json out;
    out["derivable"] = d.derivable;
    json steps = json::array();
    for (const auto& s : d.steps) {
        json step;
        step["rule"] = s.rule;
        step["conclusion"] = s.conclusion.text();
        json from = json::array();
        for (const auto& f : s.from) from.push_back(f.text());
        step["from"] = from;
        steps.push_back(step);
    }
    out["steps"] = steps;
    return out;
}

nlohmann::json to_json(const FixtureReport& r) {
    json out;
    out["fixture"] = r.name;
    out["pass"] = r.pass;
    json checks = json::array();
    for (const auto& c : r.checks) {
        json row;
        row["label"] = c.label;
        row["pass"] = c.pass;
        if (!c.detail.empty()) row["detail"] = c.detail;
        checks.push_back(row);
    }
    out["checks"] = checks;
    return out;
}

void render_witness(std::ostream& os, const Witness& w, const std::string& indent) {
    os << indent << "at " << assignments_text(w.event) << ": " << side_text(w.left) << "  vs  "
       << side_text(w.right);
    if (!w.note.empty()) os << "  (" << w.note << ")";
    os << "\n";
}

void render_check(std::ostream& os, const CheckReport& r, bool verbose) {
    os << (r.holds ? "[ ok ] " : "[FAIL] ") << r.condition << "  {" << r.regime_pair.first << ", "
       << r.regime_pair.second << "}";
    if (!r.notes.empty()) os << "  -- " << r.notes;
    os << "\n";
    if (verbose)
        for (const auto& d : r.details) os << "         " << d << "\n";
    for (const auto& w : r.witnesses) render_witness(os, w, "         witness ");
}

void render_condition_report(std::ostream& os, const ConditionReport& r, bool verbose) {
    os << "conditions for regime pair {" << r.observational << ", " << r.interventional << "}\n";
    for (const auto& c : r.checks) render_check(os, c, verbose);
    for (const auto& s : r.skipped) os << "[ -- ] " << s << "  (not applicable)\n";
    for (const auto& e : r.implication_errors) os << "[INTERNAL ERROR] " << e << "\n";
}

void render_derivation(std::ostream& os, const Derivation& d) {
    if (!d.derivable) {
        os << "not derivable\n";
        return;
    }
    os << "derivable\n";
    if (d.steps.empty()) {
        os << "  (target is a premise)\n";
        return;
    }
    std::size_t i = 0;
    for (const auto& s : d.steps) {
        os << "  " << ++i << ". " << s.conclusion.text() << "   [" << s.rule;
        for (std::size_t f = 0; f < s.from.size(); ++f)
            os << (f ? ", " : ": ") << s.from[f].text();
        os << "]\n";
    }
}

void render_fixture_report(std::ostream& os, const FixtureReport& r) {
    os << "fixture " << r.name << ": " << (r.pass ? "PASS" : "FAIL") << "\n";
    for (const auto& c : r.checks) {
        os << "  " << (c.pass ? "[ ok ] " : "[FAIL] ") << c.label;
        if (!c.detail.empty()) os << "  -- " << c.detail;
        os << "\n";
    }
}

void render_optimize(std::ostream& os, const OptimizeResult& r) {
    os << "strategy  consequence  safety\n";
    for (const auto& row : r.rows) {
        os << "  " << row.strategy_id << "  ";
        if (row.consequence)
            os << fraction_string(*row.consequence) << " (" << decimal_string(*row.consequence)
               << ")";
        else
            os << "-";
        switch (row.safety) {
            case EvaluationRow::Safety::verified: os << "  verified"; break;
            case EvaluationRow::Safety::unsafe: os << "  unsafe"; break;
            case EvaluationRow::Safety::refused: os << "  refused"; break;
        }
        if (!row.note.empty()) os << "  -- " << row.note;
        os << "\n";
    }
    if (r.best)
        os << "best: " << r.rows[*r.best].strategy_id << " with consequence "
           << fraction_string(*r.rows[*r.best].consequence) << " ("
           << decimal_string(*r.rows[*r.best].consequence) << ")\n";
    else
        os << "no strategy evaluable: not identifiable from observational data\n";
}

}  // namespace seqig
