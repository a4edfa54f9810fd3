#include "seqig/ci.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "seqig/errors.hpp"

namespace seqig {

namespace {

constexpr std::size_t kWitnessCap = 16;

void sort_unique(std::vector<std::string>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

void subtract(std::vector<std::string>& from, const std::vector<std::string>& what) {
    from.erase(std::remove_if(from.begin(), from.end(),
                              [&](const std::string& s) {
                                  return std::binary_search(what.begin(), what.end(), s);
                              }),
               from.end());
}

std::string join(const std::vector<std::string>& v, bool sigma = false) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    if (sigma) {
        if (!v.empty()) os << ",";
        os << "sigma";
    }
    return os.str();
}

}  // namespace

CIStatement CIStatement::make(std::vector<std::string> x, std::vector<std::string> y,
                              std::vector<std::string> z, bool sigma_in_y, bool sigma_in_z) {
    CIStatement s;
    s.sigma_in_y = sigma_in_y;
    s.sigma_in_z = sigma_in_z;
    if (sigma_in_y && sigma_in_z)
        throw InputError("the regime indicator may appear on one side only");
    sort_unique(x);
    sort_unique(y);
    sort_unique(z);
    subtract(x, z);
    subtract(y, z);
    for (const auto& n : x)
        if (std::binary_search(y.begin(), y.end(), n))
            throw InputError("variable '" + n + "' appears on both sides of the statement");
    s.x = std::move(x);
    s.y = std::move(y);
    s.z = std::move(z);
    return s;
}

bool CIStatement::operator==(const CIStatement& o) const {
    return x == o.x && y == o.y && z == o.z && sigma_in_y == o.sigma_in_y &&
           sigma_in_z == o.sigma_in_z;
}

std::string CIStatement::text() const {
    std::string out = join(x) + " _||_ " + join(y, sigma_in_y);
    if (!z.empty() || sigma_in_z) out += " | " + join(z, sigma_in_z);
    if (!regime_filter.empty()) out += " ; regime=" + join(regime_filter);
    return out;
}

std::string assignments_text(const std::vector<Assignment>& a) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) os << ", ";
        os << a[i].var << "=" << a[i].value;
    }
    os << ")";
    return os.str();
}

namespace {

struct AxisGroup {
    std::vector<int> axes;
    std::size_t size = 1;  // product of domain sizes

    std::size_t sub_index(const JointTable& t, std::size_t cell) const {
        std::size_t idx = 0;
        for (int ax : axes)
            idx = idx * t.vars()[ax].domain.size() + static_cast<std::size_t>(t.value_at(cell, ax));
        return idx;
    }
    std::vector<Assignment> assignments(const JointTable& t, std::size_t sub) const {
        std::vector<Assignment> out(axes.size());
        for (int i = static_cast<int>(axes.size()) - 1; i >= 0; --i) {
            const auto& v = t.vars()[axes[i]];
            out[i] = {v.name, v.domain[sub % v.domain.size()]};
            sub /= v.domain.size();
        }
        return out;
    }
};

AxisGroup resolve(const JointTable& t, const std::vector<std::string>& names) {
    AxisGroup g;
    for (const auto& n : names) {
        int ax = t.axis(n);
        if (ax < 0) throw InputError("unknown variable '" + n + "' in CI statement");
        g.axes.push_back(ax);
        g.size *= t.vars()[ax].domain.size();
    }
    return g;
}

std::vector<Assignment> concat(std::vector<Assignment> a, const std::vector<Assignment>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

Verdict check_stochastic_ci(const JointTable& joint, const CIStatement& stmt) {
    std::vector<std::string> ynames = stmt.y, znames = stmt.z;
    if (stmt.sigma_in_y || stmt.sigma_in_z) {
        if (joint.axis("sigma") < 0)
            throw InputError("statement references the regime indicator but the table has no "
                             "'sigma' axis; use the extended check on a model");
        (stmt.sigma_in_y ? ynames : znames).push_back("sigma");
    }
    AxisGroup X = resolve(joint, stmt.x), Y = resolve(joint, ynames), Z = resolve(joint, znames);

    std::vector<Rat> pxyz(X.size * Y.size * Z.size, Rat(0));
    std::vector<Rat> pyz(Y.size * Z.size, Rat(0));
    for (std::size_t c = 0; c < joint.cell_count(); ++c) {
        const Rat& p = joint.cell(c);
        if (p == 0) continue;
        std::size_t xi = X.sub_index(joint, c), yi = Y.sub_index(joint, c),
                    zi = Z.sub_index(joint, c);
        pxyz[(zi * Y.size + yi) * X.size + xi] += p;
        pyz[zi * Y.size + yi] += p;
    }

    Verdict verdict;
    for (std::size_t zi = 0; zi < Z.size; ++zi) {
        std::size_t ref = Y.size;  // first y with positive mass
        for (std::size_t yi = 0; yi < Y.size; ++yi) {
            if (pyz[zi * Y.size + yi] == 0) continue;
            if (ref == Y.size) {
                ref = yi;
                continue;
            }
            const Rat& mref = pyz[zi * Y.size + ref];
            const Rat& mcur = pyz[zi * Y.size + yi];
            for (std::size_t xi = 0; xi < X.size; ++xi) {
                const Rat& a = pxyz[(zi * Y.size + ref) * X.size + xi];
                const Rat& b = pxyz[(zi * Y.size + yi) * X.size + xi];
                if (a * mcur != b * mref) {  // cross-multiplied conditional comparison
                    verdict.holds = false;
                    if (verdict.witnesses.size() < kWitnessCap) {
                        Witness w;
                        w.event = X.assignments(joint, xi);
                        w.left = {"", concat(Y.assignments(joint, ref), Z.assignments(joint, zi)),
                                  a / mref};
                        w.right = {"", concat(Y.assignments(joint, yi), Z.assignments(joint, zi)),
                                   b / mcur};
                        verdict.witnesses.push_back(std::move(w));
                    }
                }
            }
        }
    }
    return verdict;
}

Verdict check_extended_ci(const RegimeModel& model, const std::vector<std::string>& regimes,
                          const CIStatement& stmt) {
    std::vector<JointTable> owned;
    owned.reserve(regimes.size());
    std::vector<const JointTable*> ptrs;
    for (const auto& id : regimes) {
        owned.push_back(materialize_joint(model, id));
        ptrs.push_back(&owned.back());
    }
    return check_extended_ci(model, regimes, stmt, ptrs);
}

Verdict check_extended_ci(const RegimeModel& model, const std::vector<std::string>& regimes,
                          const CIStatement& stmt, const std::vector<const JointTable*>& joints) {
    if (regimes.empty()) throw InputError("extended CI check requires at least one regime");
    if (!stmt.sigma_in_y && !stmt.sigma_in_z)
        throw InputError("statement '" + stmt.text() +
                         "' has no regime indicator; use the stochastic check");
    {
        std::set<std::string> seen;
        for (const auto& id : regimes) {
            model.regime(id);  // throws on unknown
            if (!seen.insert(id).second) throw InputError("regime '" + id + "' listed twice");
        }
    }

    if (stmt.sigma_in_z) {
        // Definition-1 style: within each regime separately.
        Verdict verdict;
        CIStatement plain = CIStatement::make(stmt.x, stmt.y, stmt.z);
        for (std::size_t r = 0; r < regimes.size(); ++r) {
            Verdict sub = check_stochastic_ci(*joints[r], plain);
            if (!sub.holds) {
                verdict.holds = false;
                for (auto& w : sub.witnesses) {
                    w.left.regime = regimes[r];
                    w.right.regime = regimes[r];
                    if (verdict.witnesses.size() < kWitnessCap)
                        verdict.witnesses.push_back(std::move(w));
                }
            }
        }
        return verdict;
    }

    // Definition-2 style: one w(x, z) valid across all listed regimes.
    const JointTable& first = *joints[0];
    AxisGroup X = resolve(first, stmt.x), Y = resolve(first, stmt.y), Z = resolve(first, stmt.z);

    struct Reference {
        bool set = false;
        std::vector<Rat> w;          // conditional vector over X
        std::string regime;          // provenance of the constraint
        std::size_t y_sub = 0;
        std::set<std::string> constrained_by;
    };
    std::vector<Reference> refs(Z.size);

    Verdict verdict;
    for (std::size_t r = 0; r < regimes.size(); ++r) {
        const JointTable& joint = *joints[r];
        // Axis layout is identical across regimes (same model order).
        std::vector<Rat> pxyz(X.size * Y.size * Z.size, Rat(0));
        std::vector<Rat> pyz(Y.size * Z.size, Rat(0));
        for (std::size_t c = 0; c < joint.cell_count(); ++c) {
            const Rat& p = joint.cell(c);
            if (p == 0) continue;
            std::size_t xi = X.sub_index(joint, c), yi = Y.sub_index(joint, c),
                        zi = Z.sub_index(joint, c);
            pxyz[(zi * Y.size + yi) * X.size + xi] += p;
            pyz[zi * Y.size + yi] += p;
        }
        for (std::size_t zi = 0; zi < Z.size; ++zi) {
            for (std::size_t yi = 0; yi < Y.size; ++yi) {
                const Rat& mass = pyz[zi * Y.size + yi];
                if (mass == 0) continue;
                Reference& ref = refs[zi];
                if (!ref.set) {
                    ref.set = true;
                    ref.regime = regimes[r];
                    ref.y_sub = yi;
                    ref.w.resize(X.size);
                    for (std::size_t xi = 0; xi < X.size; ++xi)
                        ref.w[xi] = pxyz[(zi * Y.size + yi) * X.size + xi] / mass;
                    ref.constrained_by.insert(regimes[r]);
                    continue;
                }
                ref.constrained_by.insert(regimes[r]);
                for (std::size_t xi = 0; xi < X.size; ++xi) {
                    Rat cur = pxyz[(zi * Y.size + yi) * X.size + xi] / mass;
                    if (cur != ref.w[xi]) {
                        verdict.holds = false;
                        if (verdict.witnesses.size() < kWitnessCap) {
                            Witness w;
                            w.event = X.assignments(first, xi);
                            w.left = {ref.regime,
                                      concat(Y.assignments(first, ref.y_sub),
                                             Z.assignments(first, zi)),
                                      ref.w[xi]};
                            w.right = {regimes[r],
                                       concat(Y.assignments(first, yi), Z.assignments(first, zi)),
                                       cur};
                            verdict.witnesses.push_back(std::move(w));
                        }
                    }
                }
            }
        }
    }

    if (verdict.holds) {
        std::vector<CommonVersionEntry> version;
        bool filled = false;
        for (std::size_t zi = 0; zi < Z.size; ++zi) {
            const Reference& ref = refs[zi];
            for (std::size_t xi = 0; xi < X.size; ++xi) {
                CommonVersionEntry e;
                e.given = Z.assignments(first, zi);
                e.event = X.assignments(first, xi);
                if (ref.set) {
                    e.w = ref.w[xi];
                    e.constrained_by.assign(ref.constrained_by.begin(), ref.constrained_by.end());
                } else {
                    e.w = Rat(1, static_cast<long>(X.size));  // default fill, never load-bearing
                    filled = true;
                }
                version.push_back(std::move(e));
            }
        }
        verdict.common_version = std::move(version);
        if (filled)
            verdict.note = "conditioning cells with zero mass in every listed regime were filled "
                           "with the uniform default";
    }
    return verdict;
}

MixtureJoint mixture_joint(const RegimeModel& model,
                           const std::vector<std::pair<std::string, Rat>>& prior) {
    if (prior.empty()) throw InputError("mixture prior must cover at least one regime");
    Rat sum = 0;
    std::set<std::string> seen;
    for (const auto& [id, p] : prior) {
        model.regime(id);
        if (!seen.insert(id).second)
            throw InputError("regime '" + id + "' listed twice in the mixture prior");
        if (p <= 0)
            throw InputError("mixture prior must be strictly positive; pi(" + id + ") = " +
                             fraction_string(p));
        sum += p;
    }
    if (sum != 1)
        throw InputError("mixture prior sums to " + fraction_string(sum) + ", expected 1");

    std::vector<JointVar> jvars;
    for (VarId v : model.base.order) jvars.push_back({model.var(v).name, model.var(v).domain});
    std::vector<std::string> sigma_domain;
    for (const auto& [id, p] : prior) sigma_domain.push_back(id);
    jvars.push_back({"sigma", sigma_domain});

    MixtureJoint mix;
    mix.prior = prior;
    mix.joint = JointTable(jvars);
    for (std::size_t r = 0; r < prior.size(); ++r) {
        JointTable regime_joint = materialize_joint(model, prior[r].first);
        for (std::size_t c = 0; c < regime_joint.cell_count(); ++c) {
            if (regime_joint.cell(c) == 0) continue;
            // sigma is the trailing (fastest) axis
            mix.joint.cell(c * prior.size() + r) = prior[r].second * regime_joint.cell(c);
        }
    }
    return mix;
}

VersionReport check_expectation_version(
    const JointTable& joint, const std::string& target,
    const std::map<std::string, Rat>& target_values, const std::vector<std::string>& given,
    const std::function<Rat(const std::vector<Assignment>&)>& candidate) {
    int target_ax = joint.axis(target);
    if (target_ax < 0) throw InputError("unknown variable '" + target + "'");
    const auto& tdom = joint.vars()[target_ax].domain;
    std::vector<Rat> h(tdom.size());
    for (std::size_t i = 0; i < tdom.size(); ++i) {
        auto it = target_values.find(tdom[i]);
        if (it == target_values.end())
            throw InputError("no numeric value supplied for " + target + "=" + tdom[i]);
        h[i] = it->second;
    }
    AxisGroup G = resolve(joint, given);

    std::vector<Rat> mass(G.size, Rat(0)), weighted(G.size, Rat(0));
    for (std::size_t c = 0; c < joint.cell_count(); ++c) {
        const Rat& p = joint.cell(c);
        if (p == 0) continue;
        std::size_t gi = G.sub_index(joint, c);
        mass[gi] += p;
        weighted[gi] += p * h[joint.value_at(c, target_ax)];
    }

    VersionReport report;
    for (std::size_t gi = 0; gi < G.size; ++gi) {
        if (mass[gi] == 0) continue;
        auto assigns = G.assignments(joint, gi);
        Rat expect = weighted[gi] / mass[gi];
        Rat cand = candidate(assigns);
        if (expect != cand) {
            report.valid = false;
            Witness w;
            w.event = assigns;
            w.left = {"", {}, expect};
            w.right = {"", {}, cand};
            w.note = "conditional expectation vs candidate";
            report.mismatches.push_back(std::move(w));
        }
    }
    return report;
}

}  // namespace seqig
