#pragma once

// Reference engine for checking the premise-triggered one: full
// re-saturation, no premise index, no exploration queue. Every pass joins
// every rule against a snapshot of the whole knowledge base and the loop
// repeats until a pass adds nothing. Deliberately reimplements the result
// pipeline (gating, value policy) against the public API only.

#include <algorithm>
#include <set>
#include <vector>

#include "geoproof/engine.hpp"
#include "geoproof/match.hpp"
#include "geoproof/problem.hpp"
#include "geoproof/referential.hpp"

namespace testsupport {

struct NaiveResult {
    geoproof::KnowledgeBase kb;
    size_t passes = 0;
    size_t trigger_count = 0;  // (statement, rule, position) attempts, all passes
};

inline std::optional<geoproof::Term> naive_resolve_angles(const geoproof::Term& t,
                                                          const geoproof::KnowledgeBase& kb,
                                                          bool gating) {
    using geoproof::Term;
    if (t.is_compound("angle")) {
        geoproof::Angle a = geoproof::angle_from_term(t);
        if (!gating) return geoproof::to_term(a);
        for (const geoproof::Angle& u : kb.useful_angles())
            if (u == a) return geoproof::to_term(a);
        auto inside = [](const std::vector<std::string>& xs, const std::vector<std::string>& ys) {
            return std::includes(ys.begin(), ys.end(), xs.begin(), xs.end());
        };
        for (const geoproof::Angle& u : kb.useful_angles()) {
            if (u.vertex != a.vertex) continue;
            if ((inside(a.left, u.left) && inside(a.right, u.right)) ||
                (inside(a.left, u.right) && inside(a.right, u.left)))
                return geoproof::to_term(u);
        }
        return std::nullopt;
    }
    Term out = t;
    for (auto& arg : out.args) {
        auto sub = naive_resolve_angles(arg, kb, gating);
        if (!sub) return std::nullopt;
        arg = *sub;
    }
    return out;
}

inline NaiveResult naive_saturate(const geoproof::Problem& p, const geoproof::Referential& r,
                                  const geoproof::EngineConfig& cfg = {}) {
    using namespace geoproof;
    NaiveResult res;
    KnowledgeBase& kb = res.kb;
    kb.set_useful_angles(p.all_useful_angles());
    auto seed = [&](const std::vector<Statement>& ss, Origin o) {
        for (const Statement& s : ss) {
            kb.add_statement(s, o);
            if (auto m = s.measurement()) register_value(kb, m->first, m->second);
        }
    };
    seed(p.implicit_hypotheses, Origin::Implicit);
    seed(p.explicit_hypotheses, Origin::Explicit);
    seed(p.auxiliary_hypotheses, Origin::Auxiliary);

    // Each pass joins every rule against the statements visible at pass
    // start; what it derives is applied only once the pass is over, both to
    // make passes strict derivation waves and because adding a statement
    // mid-join would invalidate the references the matcher is walking.
    for (bool changed = true; changed;) {
        changed = false;
        ++res.passes;
        size_t snapshot = kb.statements().size();
        std::vector<Inference> found;
        std::set<std::string> found_keys;
        for (const PropertyRule& rule : r.rules()) {
            res.trigger_count += rule.premises.size() * snapshot;
            std::vector<Statement> prem(rule.premises.size());
            std::function<void(size_t, const Bindings&)> join = [&](size_t i, const Bindings& b) {
                if (i < rule.premises.size()) {
                    for (size_t k = 0; k < snapshot; ++k) {
                        const Statement& cand = kb.statements()[k].stmt;
                        match_term(rule.premises[i], cand.term(), b,
                                   [&](const Bindings& nb) {
                                       prem[i] = cand;
                                       join(i + 1, nb);
                                   });
                    }
                    return;
                }
                for (const Guard& g : rule.guards)
                    if (!eval_guard(g, b, cfg.tolerance)) return;
                Statement st;
                try {
                    Term inst = fold_arithmetic(substitute(rule.result, b));
                    auto resolved = naive_resolve_angles(inst, kb, cfg.useful_angle_gating);
                    if (!resolved) return;
                    st = canonicalize_statement(*resolved);
                } catch (const ModelError&) {
                    return;
                }
                if (const PredicateSig* sig = find_predicate(st.predicate());
                    sig && sig->has_value) {
                    auto m = st.measurement();
                    auto it = kb.value_registry().find(to_text(m->first));
                    if (it != kb.value_registry().end()) {
                        if (it->second.magnitude != m->second.magnitude) {
                            Term vt = Term::compound("value",
                                                     {Term::number(it->second.magnitude)});
                            st = canonicalize_statement(
                                Term::compound(st.predicate(), {m->first, vt}));
                        }
                    } else {
                        register_value(kb, m->first, m->second);
                    }
                }
                for (const Statement& q : prem)
                    if (q == st) return;
                Inference inf{st, rule.id, rule.justification, rule.granularity, prem};
                std::string key = inf.key();
                if (kb.has_inference(key) || !found_keys.insert(key).second) return;
                found.push_back(std::move(inf));
            };
            join(0, {});
        }
        for (const Inference& inf : found) {
            kb.add_inference(inf);
            kb.add_statement(inf.result, Origin::Derived);
            changed = true;
        }
    }
    return res;
}

inline std::vector<std::string> statement_texts(const geoproof::KnowledgeBase& kb) {
    std::vector<std::string> out;
    for (const auto& e : kb.statements()) out.push_back(e.stmt.text());
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::string> inference_keys(const geoproof::KnowledgeBase& kb) {
    std::vector<std::string> out;
    for (const auto& inf : kb.inferences()) out.push_back(inf.key());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace testsupport
