#include "seqig/dsl.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "seqig/errors.hpp"

namespace seqig {

namespace {

struct Token {
    std::string text;
    int col = 0;  // 1-based
};

struct Line {
    int number = 0;
    std::vector<Token> tokens;
};

bool is_special(char c) { return c == '|' || c == ':' || c == ','; }

// Splits a document into comment-stripped token lines. Recognized
// multi-char tokens: "->" and ":=". '|', ':' and ',' stand alone.
std::vector<Line> scan(std::string_view text) {
    std::vector<Line> lines;
    int line_no = 1;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);

        Line line;
        line.number = line_no;
        std::size_t i = 0;
        while (i < raw.size()) {
            char c = raw[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            int col = static_cast<int>(i) + 1;
            if (c == '-' && i + 1 < raw.size() && raw[i + 1] == '>') {
                line.tokens.push_back({"->", col});
                i += 2;
                continue;
            }
            if (c == ':' && i + 1 < raw.size() && raw[i + 1] == '=') {
                line.tokens.push_back({":=", col});
                i += 2;
                continue;
            }
            if (is_special(c)) {
                line.tokens.push_back({std::string(1, c), col});
                ++i;
                continue;
            }
            std::size_t start = i;
            while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i])) &&
                   !is_special(raw[i])) {
                if (raw[i] == '-' && i + 1 < raw.size() && raw[i + 1] == '>') break;
                ++i;
            }
            line.tokens.push_back({std::string(raw.substr(start, i - start)), col});
        }
        if (!line.tokens.empty()) lines.push_back(std::move(line));
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
        ++line_no;
    }
    return lines;
}

[[noreturn]] void fail(const Line& line, const Token& tok, const std::string& msg) {
    throw ParseError({line.number, tok.col}, msg);
}
[[noreturn]] void fail(const Line& line, const std::string& msg) {
    throw ParseError({line.number, line.tokens.empty() ? 1 : line.tokens.front().col}, msg);
}

Rat parse_prob(const Line& line, const Token& tok) {
    try {
        return parse_rational(tok.text);
    } catch (const Error& e) {
        fail(line, tok, e.what());
    }
}

// ---------------------------------------------------------------- models

struct PendingKernel {
    std::string child;
    std::vector<std::string> parents;
    // row key = parent value labels; nullopt payload = unconstrained
    std::vector<std::pair<std::vector<std::string>, std::optional<std::vector<Rat>>>> rows;
    int line = 0, col = 0;
};

struct PendingRegime {
    std::string id;
    RegimeKind kind = RegimeKind::interventional;
    std::vector<PendingKernel> kernels;
    int line = 0;
};

Kernel realize_kernel(const RegimeModel& model, const PendingKernel& pending,
                      const std::string& owner) {
    Kernel kernel;
    SourceSpan span{pending.line, pending.col};
    VarId child = model.var_id(pending.child);
    if (child < 0) throw ParseError(span, "unknown variable '" + pending.child + "'");
    kernel.child = child;
    std::size_t row_count = 1;
    for (const auto& p : pending.parents) {
        VarId pid = model.var_id(p);
        if (pid < 0) throw ParseError(span, "unknown parent '" + p + "'");
        kernel.parents.push_back(pid);
        row_count *= model.var(pid).domain.size();
    }
    kernel.rows.assign(row_count, std::nullopt);

    std::set<std::size_t> filled;
    for (const auto& [labels, probs] : pending.rows) {
        if (labels.size() != kernel.parents.size())
            throw ParseError(span, "row for kernel '" + pending.child + "' in " + owner +
                                       " names " + std::to_string(labels.size()) +
                                       " parent values; expected " +
                                       std::to_string(kernel.parents.size()));
        std::size_t idx = 0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            const Variable& pv = model.var(kernel.parents[i]);
            int value = pv.value_index(labels[i]);
            if (value < 0)
                throw ParseError(span, "value '" + labels[i] + "' is not in the domain of '" +
                                           pv.name + "'");
            idx = idx * pv.domain.size() + static_cast<std::size_t>(value);
        }
        if (!filled.insert(idx).second)
            throw ParseError(span, "duplicate row for kernel '" + pending.child + "' in " + owner);
        kernel.rows[idx] = probs;
    }
    return kernel;
}

}  // namespace

RegimeModel parse_model(std::string_view text) {
    RegimeModel model;
    std::vector<PendingRegime> regimes;
    std::vector<PendingKernel> shared;
    bool in_shared = false;
    bool seen_order = false;

    enum class Section { none, variables, regime };
    Section section = Section::none;
    PendingKernel* open_kernel = nullptr;

    for (const Line& line : scan(text)) {
        const Token& head = line.tokens.front();

        if (head.text == "variables" && line.tokens.size() >= 2 && line.tokens[1].text == ":") {
            section = Section::variables;
            open_kernel = nullptr;
            if (line.tokens.size() > 2) fail(line, line.tokens[2], "unexpected trailing tokens");
            continue;
        }
        if (head.text == "order" && line.tokens.size() >= 2 && line.tokens[1].text == ":") {
            if (seen_order) fail(line, head, "duplicate order line");
            seen_order = true;
            section = Section::none;
            open_kernel = nullptr;
            for (std::size_t i = 2; i < line.tokens.size(); ++i) {
                if (line.tokens[i].text == ",") continue;
                VarId v = model.var_id(line.tokens[i].text);
                if (v < 0) fail(line, line.tokens[i], "unknown variable '" + line.tokens[i].text + "'");
                model.base.order.push_back(v);
            }
            continue;
        }
        if (head.text == "regime") {
            // regime ID : KIND
            if (line.tokens.size() != 4 || line.tokens[2].text != ":")
                fail(line, head, "expected: regime <id> : <observational|interventional>");
            PendingRegime r;
            r.id = line.tokens[1].text;
            r.line = line.number;
            const std::string& kind = line.tokens[3].text;
            if (kind == "observational")
                r.kind = RegimeKind::observational;
            else if (kind == "interventional")
                r.kind = RegimeKind::interventional;
            else
                fail(line, line.tokens[3], "regime kind must be observational or interventional");
            for (const auto& existing : regimes)
                if (existing.id == r.id) fail(line, line.tokens[1], "duplicate regime '" + r.id + "'");
            regimes.push_back(std::move(r));
            in_shared = false;
            section = Section::regime;
            open_kernel = nullptr;
            continue;
        }
        if (head.text == "shared" && line.tokens.size() >= 2 && line.tokens[1].text == ":") {
            in_shared = true;
            section = Section::regime;
            open_kernel = nullptr;
            continue;
        }
        if (head.text == "kernel") {
            if (section != Section::regime)
                fail(line, head, "kernel outside of a regime or shared section");
            // kernel CHILD | P1 P2 ... : [inline row]
            std::size_t i = 1;
            if (i >= line.tokens.size()) fail(line, head, "kernel needs a child variable");
            PendingKernel k;
            k.child = line.tokens[i++].text;
            k.line = line.number;
            k.col = head.col;
            if (i >= line.tokens.size() || line.tokens[i].text != "|")
                fail(line, head, "expected '|' after the kernel child");
            ++i;
            while (i < line.tokens.size() && line.tokens[i].text != ":") {
                if (line.tokens[i].text != ",") k.parents.push_back(line.tokens[i].text);
                ++i;
            }
            if (i >= line.tokens.size()) fail(line, head, "expected ':' in kernel header");
            ++i;  // skip ':'
            if (i < line.tokens.size()) {
                if (!k.parents.empty())
                    fail(line, line.tokens[i],
                         "kernels with parents take their rows on the following lines");
                std::vector<Rat> row;
                for (; i < line.tokens.size(); ++i) row.push_back(parse_prob(line, line.tokens[i]));
                k.rows.push_back({{}, std::move(row)});
            } else if (k.parents.empty()) {
                fail(line, head, "parentless kernel needs its row on the same line");
            }
            auto& target = in_shared ? shared : regimes.back().kernels;
            for (const auto& existing : target)
                if (existing.child == k.child)
                    fail(line, head, "duplicate kernel for '" + k.child + "'");
            target.push_back(std::move(k));
            open_kernel = &target.back();
            continue;
        }

        if (section == Section::variables) {
            // NAME ROLE v1 v2 ...
            if (line.tokens.size() < 3)
                fail(line, "expected: <name> <role> <value> [<value> ...]");
            Variable v;
            v.name = head.text;
            auto role = role_from_name(line.tokens[1].text);
            if (!role)
                fail(line, line.tokens[1],
                     "role must be observable, action, unobserved or outcome");
            v.role = *role;
            for (std::size_t i = 2; i < line.tokens.size(); ++i) {
                if (line.tokens[i].text == ",") continue;
                v.domain.push_back(line.tokens[i].text);
            }
            if (model.var_id(v.name) >= 0) fail(line, head, "duplicate variable '" + v.name + "'");
            model.variables.push_back(std::move(v));
            continue;
        }
        if (section == Section::regime && open_kernel) {
            // parent values : probs | unconstrained
            auto colon = std::find_if(line.tokens.begin(), line.tokens.end(),
                                      [](const Token& t) { return t.text == ":"; });
            if (colon == line.tokens.end())
                fail(line, "expected a kernel row of the form <values> : <probabilities>");
            std::vector<std::string> labels;
            for (auto it = line.tokens.begin(); it != colon; ++it)
                if (it->text != ",") labels.push_back(it->text);
            std::vector<Rat> probs;
            bool unconstrained = false;
            for (auto it = colon + 1; it != line.tokens.end(); ++it) {
                if (it->text == "unconstrained") {
                    unconstrained = true;
                    if (it + 1 != line.tokens.end() || !probs.empty())
                        fail(line, *it, "'unconstrained' stands alone in a row");
                    break;
                }
                if (it->text != ",") probs.push_back(parse_prob(line, *it));
            }
            if (!unconstrained && probs.empty()) fail(line, "kernel row has no probabilities");
            open_kernel->rows.push_back(
                {std::move(labels),
                 unconstrained ? std::nullopt : std::optional<std::vector<Rat>>(std::move(probs))});
            continue;
        }
        fail(line, head, "unexpected '" + head.text + "'");
    }

    if (model.variables.empty()) throw ParseError({1, 1}, "model declares no variables");
    if (!seen_order) throw ParseError({1, 1}, "model has no order line");
    if (regimes.empty()) throw ParseError({1, 1}, "model declares no regimes");

    // Expand kernels (regime-specific plus shared) into base order.
    for (const auto& pending : regimes) {
        Regime regime;
        regime.id = pending.id;
        regime.kind = pending.kind;
        for (VarId v : model.base.order) {
            const std::string& name = model.var(v).name;
            const PendingKernel* chosen = nullptr;
            for (const auto& k : pending.kernels)
                if (k.child == name) chosen = &k;
            for (const auto& k : shared)
                if (k.child == name) {
                    if (chosen)
                        throw ParseError({k.line, k.col},
                                         "kernel for '" + name + "' defined both in regime '" +
                                             pending.id + "' and in the shared section");
                    chosen = &k;
                }
            if (!chosen)
                throw ParseError({pending.line, 1}, "regime '" + pending.id +
                                                        "' has no kernel for '" + name + "'");
            regime.kernels.push_back(realize_kernel(model, *chosen, "regime '" + pending.id + "'"));
        }
        model.regimes.push_back(std::move(regime));
    }

    try {
        model.analyze();
    } catch (const Error& e) {
        throw ParseError({1, 1}, e.what());
    }
    auto violations = validate_model(model);
    if (!violations.empty()) {
        std::ostringstream os;
        os << violations.front().where << ": " << violations.front().message;
        if (violations.size() > 1) os << " (+" << violations.size() - 1 << " more)";
        throw ParseError({1, 1}, os.str());
    }
    return model;
}

std::string serialize_model(const RegimeModel& model) {
    std::ostringstream os;
    os << "variables:\n";
    for (VarId v : model.base.order) {
        const Variable& var = model.var(v);
        os << "  " << var.name << " " << role_name(var.role);
        for (const auto& d : var.domain) os << " " << d;
        os << "\n";
    }
    os << "order:";
    for (VarId v : model.base.order) os << " " << model.var(v).name;
    os << "\n";
    for (const auto& regime : model.regimes) {
        os << "regime " << regime.id << " : " << regime_kind_name(regime.kind) << "\n";
        for (const auto& kernel : regime.kernels) {
            os << "  kernel " << model.var(kernel.child).name << " |";
            for (VarId p : kernel.parents) os << " " << model.var(p).name;
            os << " :";
            if (kernel.parents.empty()) {
                const auto& row = kernel.rows.front();
                if (!row)
                    os << " unconstrained";
                else
                    for (const auto& p : *row) os << " " << fraction_string(p);
                os << "\n";
                continue;
            }
            os << "\n";
            std::vector<int> cfg(kernel.parents.size(), 0);
            for (std::size_t r = 0; r < kernel.rows.size(); ++r) {
                os << "   ";
                for (std::size_t i = 0; i < kernel.parents.size(); ++i)
                    os << " " << model.var(kernel.parents[i]).domain[cfg[i]];
                os << " :";
                if (!kernel.rows[r])
                    os << " unconstrained";
                else
                    for (const auto& p : *kernel.rows[r]) os << " " << fraction_string(p);
                os << "\n";
                for (int d = static_cast<int>(cfg.size()) - 1; d >= 0; --d) {
                    if (++cfg[d] < (int)model.var(kernel.parents[d]).domain.size()) break;
                    cfg[d] = 0;
                }
            }
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- CI text

namespace {

std::vector<std::string> split_names(std::string_view part, bool& sigma, int base_col,
                                     bool sigma_allowed) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&](std::size_t at) {
        if (cur.empty()) return;
        if (cur == "sigma") {
            if (!sigma_allowed)
                throw ParseError({1, base_col + static_cast<int>(at)},
                                 "the regime indicator may not appear on the left side");
            sigma = true;
        } else {
            out.push_back(cur);
        }
        cur.clear();
    };
    for (std::size_t i = 0; i < part.size(); ++i) {
        char c = part[i];
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            flush(i);
            continue;
        }
        cur += c;
    }
    flush(part.size());
    return out;
}

}  // namespace

CIStatement parse_ci(std::string_view text) {
    std::string_view rest = text;
    std::vector<std::string> regime_filter;

    if (auto semi = rest.find(';'); semi != std::string_view::npos) {
        std::string_view suffix = rest.substr(semi + 1);
        rest = rest.substr(0, semi);
        auto eq = suffix.find('=');
        auto key_end = eq == std::string_view::npos ? suffix.size() : eq;
        std::string key(suffix.substr(0, key_end));
        key.erase(std::remove_if(key.begin(), key.end(),
                                 [](unsigned char c) { return std::isspace(c); }),
                  key.end());
        if (key != "regime" || eq == std::string_view::npos)
            throw ParseError({1, static_cast<int>(semi) + 2},
                             "expected '; regime=<id>[,<id>]' after the statement");
        bool dummy = false;
        regime_filter = split_names(suffix.substr(eq + 1), dummy,
                                    static_cast<int>(semi + 2 + eq), false);
        if (regime_filter.empty())
            throw ParseError({1, static_cast<int>(semi) + 2}, "empty regime list");
    }

    auto ind = rest.find("_||_");
    if (ind == std::string_view::npos)
        throw ParseError({1, 1}, "expected '_||_' in the independence statement");
    std::string_view left = rest.substr(0, ind);
    std::string_view right = rest.substr(ind + 4);

    std::string_view ypart = right, zpart;
    if (auto bar = right.find('|'); bar != std::string_view::npos) {
        ypart = right.substr(0, bar);
        zpart = right.substr(bar + 1);
    }

    bool sigma_x = false, sigma_y = false, sigma_z = false;
    auto x = split_names(left, sigma_x, 1, false);
    auto y = split_names(ypart, sigma_y, static_cast<int>(ind) + 5, true);
    auto z = split_names(zpart, sigma_z, static_cast<int>(ind + 4 + ypart.size()) + 2, true);
    if (x.empty())
        throw ParseError({1, 1}, "the left side of the statement is empty");
    if (y.empty() && !sigma_y)
        throw ParseError({1, static_cast<int>(ind) + 5}, "the right side of the statement is empty");

    try {
        CIStatement stmt = CIStatement::make(std::move(x), std::move(y), std::move(z), sigma_y,
                                             sigma_z);
        stmt.regime_filter = std::move(regime_filter);
        return stmt;
    } catch (const InputError& e) {
        throw ParseError({1, 1}, e.what());
    }
}

std::string serialize_ci(const CIStatement& stmt) { return stmt.text(); }

// ------------------------------------------------------------- strategies

Strategy parse_strategy(std::string_view text, const RegimeModel& model) {
    RegimeModel probe = model;
    probe.analyze();
    auto history = strategy_history_vars(probe);

    Strategy strat;
    strat.stages.resize(history.size());
    std::vector<bool> specified(history.size(), false);

    // Default rows: degenerate at the first action value.
    for (std::size_t i = 0; i < history.size(); ++i) {
        std::size_t hists = 1;
        for (VarId v : history[i]) hists *= probe.var(v).domain.size();
        const std::size_t width = probe.var(probe.base.stages[i].a).domain.size();
        std::vector<Rat> def(width, Rat(0));
        def[0] = 1;
        strat.stages[i].rows.assign(hists, def);
    }

    auto stage_of = [&](const Line& line, const Token& tok) -> std::size_t {
        VarId v = probe.var_id(tok.text);
        if (v < 0 || probe.var(v).role != Role::action)
            fail(line, tok, "'" + tok.text + "' is not an action variable of the model");
        for (std::size_t i = 0; i < probe.base.stages.size(); ++i)
            if (probe.base.stages[i].a == v) return i;
        fail(line, tok, "action '" + tok.text + "' not found in the information base");
    };

    std::size_t open_stage = history.size();  // sentinel: none
    std::vector<std::size_t> open_cond;       // positions within the history tuple
    std::vector<bool> row_seen;

    auto lines = scan(text);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const Line& line = lines[li];
        const Token& head = line.tokens.front();
        if (head.text == "strategy") continue;  // optional banner line

        if (line.tokens.size() >= 2 && line.tokens[1].text == ":=") {
            // ACTION := VALUE : the same action everywhere.
            std::size_t stage = stage_of(line, head);
            if (specified[stage]) fail(line, head, "action '" + head.text + "' specified twice");
            specified[stage] = true;
            open_stage = history.size();
            if (line.tokens.size() != 3) fail(line, head, "expected: <action> := <value>");
            const Variable& av = probe.var(probe.base.stages[stage].a);
            int value = av.value_index(line.tokens[2].text);
            if (value < 0)
                fail(line, line.tokens[2],
                     "value '" + line.tokens[2].text + "' not in the domain of '" + av.name + "'");
            std::vector<Rat> row(av.domain.size(), Rat(0));
            row[value] = 1;
            for (auto& r : strat.stages[stage].rows) r = row;
            continue;
        }
        if (line.tokens.size() >= 2 && line.tokens[1].text == "|") {
            // ACTION | H1 H2 ... :
            std::size_t stage = stage_of(line, head);
            if (specified[stage]) fail(line, head, "action '" + head.text + "' specified twice");
            specified[stage] = true;
            open_stage = stage;
            open_cond.clear();
            row_seen.assign(strat.stages[stage].rows.size(), false);
            std::size_t i = 2;
            for (; i < line.tokens.size() && line.tokens[i].text != ":"; ++i) {
                if (line.tokens[i].text == ",") continue;
                VarId v = probe.var_id(line.tokens[i].text);
                auto pos = std::find(history[stage].begin(), history[stage].end(), v);
                if (v < 0 || pos == history[stage].end())
                    fail(line, line.tokens[i],
                         "'" + line.tokens[i].text + "' is not observed before action '" +
                             head.text + "'");
                open_cond.push_back(static_cast<std::size_t>(pos - history[stage].begin()));
            }
            if (i >= line.tokens.size()) fail(line, head, "expected ':' after the history list");
            if (i + 1 != line.tokens.size())
                fail(line, line.tokens[i], "strategy rows go on the following lines");
            continue;
        }

        // Row within an open table: h-values : probabilities
        if (open_stage >= history.size()) fail(line, head, "unexpected '" + head.text + "'");
        auto colon = std::find_if(line.tokens.begin(), line.tokens.end(),
                                  [](const Token& t) { return t.text == ":"; });
        if (colon == line.tokens.end())
            fail(line, "expected a row of the form <values> : <probabilities>");
        std::vector<std::string> labels;
        for (auto it = line.tokens.begin(); it != colon; ++it)
            if (it->text != "," && it->text != ".") labels.push_back(it->text);
        if (labels.size() != open_cond.size())
            fail(line, "row names " + std::to_string(labels.size()) + " values; the table header "
                       "lists " + std::to_string(open_cond.size()) + " history variables");
        const Variable& av = probe.var(probe.base.stages[open_stage].a);
        std::vector<Token> row_tokens;
        for (auto it = colon + 1; it != line.tokens.end(); ++it)
            if (it->text != ",") row_tokens.push_back(*it);
        std::vector<Rat> row;
        if (row_tokens.size() == 1 && av.domain.size() > 1) {
            // A bare action value is shorthand for a degenerate row.
            int value = av.value_index(row_tokens.front().text);
            if (value < 0)
                fail(line, row_tokens.front(),
                     "'" + row_tokens.front().text + "' is neither a full probability row nor a "
                     "value of '" + av.name + "'");
            row.assign(av.domain.size(), Rat(0));
            row[value] = 1;
        } else {
            for (const Token& t : row_tokens) row.push_back(parse_prob(line, t));
        }
        if (row.size() != av.domain.size())
            fail(line, "row has " + std::to_string(row.size()) + " probabilities; the domain of '" +
                           av.name + "' has " + std::to_string(av.domain.size()));
        Rat sum = 0;
        for (const Rat& p : row) sum += p;
        if (sum != 1) fail(line, "row sums to " + fraction_string(sum) + ", expected 1");

        // Expand the (possibly partial) history pattern over all full histories.
        const auto& hvars = history[open_stage];
        std::vector<int> want(hvars.size(), -1);
        for (std::size_t i = 0; i < labels.size(); ++i) {
            const Variable& hv = probe.var(hvars[open_cond[i]]);
            int value = hv.value_index(labels[i]);
            if (value < 0)
                fail(line, "value '" + labels[i] + "' not in the domain of '" + hv.name + "'");
            want[open_cond[i]] = value;
        }
        std::vector<int> cfg(hvars.size(), 0);
        const std::size_t total = strat.stages[open_stage].rows.size();
        for (std::size_t h = 0; h < total; ++h) {
            bool match = true;
            for (std::size_t i = 0; i < hvars.size() && match; ++i)
                match = want[i] < 0 || cfg[i] == want[i];
            if (match) {
                if (row_seen[h]) fail(line, "history covered by two rows");
                row_seen[h] = true;
                strat.stages[open_stage].rows[h] = row;
            }
            for (int d = static_cast<int>(cfg.size()) - 1; d >= 0; --d) {
                if (++cfg[d] < (int)probe.var(hvars[d]).domain.size()) break;
                cfg[d] = 0;
            }
        }
    }

    // Canonical id when the strategy is non-randomized.
    bool degenerate = true;
    for (const auto& st : strat.stages)
        for (const auto& row : st.rows)
            for (const Rat& p : row)
                if (p != 0 && p != 1) degenerate = false;
    if (degenerate) {
        std::string id;
        for (std::size_t i = 0; i < strat.stages.size(); ++i) {
            if (i) id += ".";
            const int width = static_cast<int>(probe.var(probe.base.stages[i].a).domain.size());
            int digits = 1;
            for (int w = width - 1; w >= 10; w /= 10) ++digits;
            for (const auto& row : strat.stages[i].rows) {
                int value = static_cast<int>(std::find(row.begin(), row.end(), Rat(1)) -
                                             row.begin());
                std::string digit = std::to_string(value);
                id += std::string(digits - digit.size(), '0') + digit;
            }
        }
        strat.id = id;
    } else {
        strat.id = "randomized";
    }
    return strat;
}

std::string serialize_strategy(const Strategy& strat, const RegimeModel& model) {
    RegimeModel probe = model;
    probe.analyze();
    auto history = strategy_history_vars(probe);
    std::ostringstream os;
    for (std::size_t i = 0; i < strat.stages.size(); ++i) {
        const Variable& av = probe.var(probe.base.stages[i].a);
        os << av.name << " |";
        for (VarId v : history[i]) os << " " << probe.var(v).name;
        os << " :\n";
        std::vector<int> cfg(history[i].size(), 0);
        for (const auto& row : strat.stages[i].rows) {
            os << " ";
            for (std::size_t d = 0; d < cfg.size(); ++d)
                os << " " << probe.var(history[i][d]).domain[cfg[d]];
            if (cfg.empty()) os << " .";  // placeholder for the empty history
            os << " :";
            for (const Rat& p : row) os << " " << fraction_string(p);
            os << "\n";
            for (int d = static_cast<int>(cfg.size()) - 1; d >= 0; --d) {
                if (++cfg[d] < (int)probe.var(history[i][d]).domain.size()) break;
                cfg[d] = 0;
            }
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- diagrams

InfluenceDiagram parse_diagram(std::string_view text) {
    std::vector<InfluenceDiagram::Node> nodes;
    std::vector<std::pair<std::string, std::string>> edges;
    std::set<std::string> known;
    std::set<std::pair<std::string, std::string>> edge_set;

    auto declare = [&](const std::string& name) {
        if (known.insert(name).second) nodes.push_back({name, name == "sigma"});
    };

    for (const Line& line : scan(text)) {
        const Token& head = line.tokens.front();
        if (head.text == "node") {
            if (line.tokens.size() != 2) fail(line, head, "expected: node <name>");
            if (known.count(line.tokens[1].text))
                fail(line, line.tokens[1], "duplicate node '" + line.tokens[1].text + "'");
            declare(line.tokens[1].text);
            continue;
        }
        // NAME -> NAME [-> NAME ...]
        if (line.tokens.size() < 3 || line.tokens.size() % 2 == 0)
            fail(line, head, "expected an edge line: <from> -> <to>");
        for (std::size_t i = 1; i < line.tokens.size(); i += 2)
            if (line.tokens[i].text != "->") fail(line, line.tokens[i], "expected '->'");
        for (std::size_t i = 0; i + 2 < line.tokens.size(); i += 2) {
            const std::string& from = line.tokens[i].text;
            const std::string& to = line.tokens[i + 2].text;
            declare(from);
            declare(to);
            if (!edge_set.insert({from, to}).second)
                fail(line, line.tokens[i], "duplicate edge " + from + " -> " + to);
            edges.push_back({from, to});
            // Cycle diagnosis points at the edge that closed the cycle.
            try {
                InfluenceDiagram::build(nodes, edges);
            } catch (const InputError& e) {
                fail(line, line.tokens[i], e.what());
            }
        }
    }
    return InfluenceDiagram::build(nodes, edges);
}

std::string serialize_diagram(const InfluenceDiagram& dag) {
    std::ostringstream os;
    std::vector<bool> touched(dag.nodes().size(), false);
    for (const auto& [from, to] : dag.edges()) touched[from] = touched[to] = true;
    for (std::size_t i = 0; i < dag.nodes().size(); ++i)
        if (!touched[i]) os << "node " << dag.nodes()[i].name << "\n";
    for (const auto& [from, to] : dag.edges())
        os << dag.nodes()[from].name << " -> " << dag.nodes()[to].name << "\n";
    return os.str();
}

// -------------------------------------------------------------------- loss

OutcomeFunctional parse_loss(std::string_view text, const RegimeModel& model) {
    RegimeModel probe = model;
    probe.analyze();
    const Variable& outcome = probe.var(probe.base.outcome);

    OutcomeFunctional k;
    for (const Line& line : scan(text)) {
        if (line.tokens.size() != 3 || line.tokens[1].text != ":")
            fail(line, "expected: <outcome-value> : <rational>");
        const std::string& label = line.tokens[0].text;
        if (outcome.value_index(label) < 0)
            fail(line, line.tokens[0],
                 "value '" + label + "' not in the domain of the outcome '" + outcome.name + "'");
        if (k.values.count(label)) fail(line, line.tokens[0], "duplicate value '" + label + "'");
        k.values[label] = parse_prob(line, line.tokens[2]);
    }
    try {
        require_total(k, outcome);
    } catch (const Error& e) {
        throw ParseError({1, 1}, e.what());
    }
    return k;
}

std::string serialize_loss(const OutcomeFunctional& k, const RegimeModel& model) {
    RegimeModel probe = model;
    probe.analyze();
    const Variable& outcome = probe.var(probe.base.outcome);
    std::ostringstream os;
    for (const auto& label : outcome.domain) {
        auto it = k.values.find(label);
        if (it != k.values.end()) os << label << " : " << fraction_string(it->second) << "\n";
    }
    return os.str();
}

}  // namespace seqig
