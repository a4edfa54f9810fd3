#include "seqig/semigraphoid.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "seqig/errors.hpp"

namespace seqig {

namespace {

using Mask = uint32_t;

struct Sym {
    Mask x = 0, y = 0, z = 0;
};

uint64_t key_of(const Sym& s) {
    return uint64_t(s.x) | (uint64_t(s.y) << 16) | (uint64_t(s.z) << 32);
}
uint64_t okey(Mask x, Mask z) { return uint64_t(x) | (uint64_t(z) << 32); }

struct Engine {
    std::vector<std::string> ground;
    int sigma_bit = -1;

    struct Deriv {
        int rule;  // 0 premise, 3 P3, 4 P4, 5 P5
        uint64_t p1 = 0, p2 = 0;
    };
    std::unordered_map<uint64_t, Deriv> members;     // canonical key -> derivation
    std::unordered_set<uint64_t> oriented;           // both orientations of members
    std::unordered_map<uint64_t, std::vector<Mask>> by_xz;  // oriented (x, z) -> y list
    std::vector<Sym> worklist;

    Sym canon(Sym s) const {
        s.x &= ~s.z;
        s.y &= ~s.z;
        bool swap = false;
        if (sigma_bit >= 0 && (s.x >> sigma_bit) & 1)
            swap = true;
        else if (!(sigma_bit >= 0 && ((s.y >> sigma_bit) & 1)) && s.x > s.y)
            swap = true;
        if (swap) std::swap(s.x, s.y);
        return s;
    }
    static bool trivial(const Sym& s) { return s.x == 0 || s.y == 0; }

    void add(Sym s, int rule, uint64_t p1, uint64_t p2) {
        s = canon(s);
        if (trivial(s)) return;
        uint64_t k = key_of(s);
        if (members.count(k)) return;
        members.emplace(k, Deriv{rule, p1, p2});
        for (const Sym& o : {s, Sym{s.y, s.x, s.z}}) {
            oriented.insert(key_of(o));
            by_xz[okey(o.x, o.z)].push_back(o.y);
        }
        worklist.push_back(s);
    }

    void run() {
        for (std::size_t head = 0; head < worklist.size(); ++head) {
            Sym s = worklist[head];
            uint64_t sk = key_of(canon(s));
            for (const Sym& o : {s, Sym{s.y, s.x, s.z}}) {
                // P3 decomposition: X _||_ W | Z for proper nonempty W < Y.
                for (Mask w = (o.y - 1) & o.y; w; w = (w - 1) & o.y)
                    add({o.x, w, o.z}, 3, sk, 0);
                // P4 weak union: X _||_ Y\W | (Z, W) for nonempty W <= Y.
                for (Mask w = o.y; w; w = (w - 1) & o.y)
                    if (w != o.y) add({o.x, o.y & ~w, o.z | w}, 4, sk, 0);
                // P5 contraction, this statement as X _||_ Y | Z:
                // partner X _||_ W | (Y, Z) gives X _||_ (Y, W) | Z.
                if (auto it = by_xz.find(okey(o.x, o.y | o.z)); it != by_xz.end()) {
                    auto partners = it->second;  // copy: add() may grow the index
                    for (Mask w : partners)
                        add({o.x, o.y | w, o.z}, 5, sk, key_of(canon({o.x, w, o.y | o.z})));
                }
                // P5 contraction, this statement as X _||_ W | (Y, Z):
                // partner X _||_ Y | Z with Y a nonempty subset of our Z.
                for (Mask y = o.z; y; y = (y - 1) & o.z) {
                    Sym partner{o.x, y, o.z & ~y};
                    if (oriented.count(key_of(partner)))
                        add({o.x, o.y | y, o.z & ~y}, 5, key_of(canon(partner)), sk);
                }
            }
        }
    }
};

int find_symbol(const std::vector<std::string>& ground, const std::string& name) {
    for (std::size_t i = 0; i < ground.size(); ++i)
        if (ground[i] == name) return static_cast<int>(i);
    return -1;
}

Mask to_mask(const Engine& eng, const std::vector<std::string>& names, bool add_sigma,
             const CIStatement& stmt) {
    Mask m = 0;
    for (const auto& n : names) {
        int bit = find_symbol(eng.ground, n);
        if (bit < 0)
            throw InputError("symbol '" + n + "' of '" + stmt.text() +
                             "' is not in the ground set");
        m |= Mask(1) << bit;
    }
    if (add_sigma) {
        if (eng.sigma_bit < 0)
            throw InputError("statement '" + stmt.text() +
                             "' mentions the regime indicator but 'sigma' is not in the ground set");
        m |= Mask(1) << eng.sigma_bit;
    }
    return m;
}

Sym to_sym(const Engine& eng, const CIStatement& stmt) {
    if (!stmt.regime_filter.empty())
        throw InputError("regime-qualified statement '" + stmt.text() +
                         "' cannot be used in symbolic derivation");
    Sym s;
    s.x = to_mask(eng, stmt.x, false, stmt);
    s.y = to_mask(eng, stmt.y, stmt.sigma_in_y, stmt);
    s.z = to_mask(eng, stmt.z, stmt.sigma_in_z, stmt);
    return s;
}

CIStatement from_sym(const Engine& eng, Sym s) {
    auto names = [&](Mask m, bool strip_sigma) {
        std::vector<std::string> out;
        for (std::size_t b = 0; b < eng.ground.size(); ++b)
            if ((m >> b) & 1) {
                if (strip_sigma && static_cast<int>(b) == eng.sigma_bit) continue;
                out.push_back(eng.ground[b]);
            }
        return out;
    };
    bool sy = eng.sigma_bit >= 0 && ((s.y >> eng.sigma_bit) & 1);
    bool sz = eng.sigma_bit >= 0 && ((s.z >> eng.sigma_bit) & 1);
    return CIStatement::make(names(s.x, false), names(s.y, true), names(s.z, true), sy, sz);
}

std::vector<std::string> infer_ground(const std::vector<CIStatement>& premises,
                                      const CIStatement* target) {
    std::set<std::string> symbols;
    bool sigma = false;
    auto absorb = [&](const CIStatement& s) {
        symbols.insert(s.x.begin(), s.x.end());
        symbols.insert(s.y.begin(), s.y.end());
        symbols.insert(s.z.begin(), s.z.end());
        sigma = sigma || s.sigma_in_y || s.sigma_in_z;
    };
    for (const auto& p : premises) absorb(p);
    if (target) absorb(*target);
    std::vector<std::string> ground(symbols.begin(), symbols.end());
    if (sigma) ground.push_back("sigma");
    return ground;
}

Engine build(const std::vector<CIStatement>& premises, std::vector<std::string>& ground,
             const CIStatement* target, int cap) {
    if (ground.empty()) ground = infer_ground(premises, target);
    if (static_cast<int>(ground.size()) > cap)
        throw InputError("ground set has " + std::to_string(ground.size()) +
                         " symbols; closure cap is " + std::to_string(cap));
    Engine eng;
    eng.ground = ground;
    eng.sigma_bit = find_symbol(ground, "sigma");
    for (const auto& p : premises) eng.add(to_sym(eng, p), 0, 0, 0);
    eng.run();
    return eng;
}

std::string rule_name(int rule) {
    switch (rule) {
        case 0: return "premise";
        case 3: return "P3 (decomposition)";
        case 4: return "P4 (weak union)";
        case 5: return "P5 (contraction)";
    }
    return "P2 (triviality)";
}

Sym sym_of_key(uint64_t k) {
    return Sym{Mask(k & 0xffff), Mask((k >> 16) & 0xffff), Mask((k >> 32) & 0xffff)};
}

}  // namespace

bool ClosureResult::contains(const CIStatement& stmt) const {
    if (stmt.trivially_true()) return true;
    for (const auto& s : statements)
        if (s == stmt) return true;
    // Canonical symmetric twin.
    CIStatement twin = stmt;
    std::swap(twin.x, twin.y);
    if (!stmt.sigma_in_y)
        for (const auto& s : statements)
            if (s == twin) return true;
    return false;
}

ClosureResult semigraphoid_close(const std::vector<CIStatement>& premises,
                                 std::vector<std::string> ground, int cap) {
    Engine eng = build(premises, ground, nullptr, cap);
    std::vector<uint64_t> keys;
    keys.reserve(eng.members.size());
    for (const auto& [k, d] : eng.members) keys.push_back(k);
    std::sort(keys.begin(), keys.end());

    ClosureResult result;
    result.ground = eng.ground;
    for (uint64_t k : keys) result.statements.push_back(from_sym(eng, sym_of_key(k)));
    return result;
}

Derivation derive(const std::vector<CIStatement>& premises, const CIStatement& target,
                  std::vector<std::string> ground, int cap) {
    Derivation result;
    if (target.trivially_true()) {
        result.derivable = true;
        result.steps.push_back({"P2 (triviality)", target, {}});
        return result;
    }
    Engine eng = build(premises, ground, &target, cap);
    Sym t = eng.canon(to_sym(eng, target));
    uint64_t tk = key_of(t);
    auto it = eng.members.find(tk);
    if (it == eng.members.end()) return result;

    result.derivable = true;
    if (it->second.rule == 0) return result;  // target is itself a premise: empty trace

    // Collect the derivation DAG below the target, parents first.
    std::vector<uint64_t> order;
    std::set<uint64_t> visited;
    std::function<void(uint64_t)> visit = [&](uint64_t k) {
        if (visited.count(k)) return;
        visited.insert(k);
        const auto& d = eng.members.at(k);
        if (d.rule != 0) {
            visit(d.p1);
            if (d.p2) visit(d.p2);
        }
        order.push_back(k);
    };
    visit(tk);

    for (uint64_t k : order) {
        const auto& d = eng.members.at(k);
        DerivationStep step;
        step.rule = rule_name(d.rule);
        step.conclusion = from_sym(eng, sym_of_key(k));
        if (d.rule != 0) {
            step.from.push_back(from_sym(eng, sym_of_key(d.p1)));
            if (d.p2) step.from.push_back(from_sym(eng, sym_of_key(d.p2)));
        }
        result.steps.push_back(std::move(step));
    }
    return result;
}

}  // namespace seqig
