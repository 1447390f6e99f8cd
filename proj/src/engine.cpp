#include "geoproof/engine.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <set>

#include "geoproof/match.hpp"

namespace geoproof {

std::string origin_name(Origin o) {
    switch (o) {
        case Origin::Implicit: return "implicit";
        case Origin::Explicit: return "explicit";
        case Origin::Auxiliary: return "auxiliary";
        case Origin::Derived: return "derived";
    }
    return "?";
}

std::string Inference::key() const {
    std::vector<std::string> ps;
    ps.reserve(premises.size());
    for (const auto& p : premises) ps.push_back(p.text());
    std::sort(ps.begin(), ps.end());
    std::string k = rule_id;
    for (const auto& t : ps) {
        k += '\x1f';
        k += t;
    }
    k += '\x1e';
    k += result.text();
    return k;
}

int KnowledgeBase::add_statement(const Statement& s, Origin origin) {
    auto it = index_.find(s.text());
    if (it != index_.end()) return it->second;
    int idx = (int)entries_.size();
    entries_.push_back({s, origin});
    index_.emplace(s.text(), idx);
    by_predicate_[s.predicate()].push_back(idx);
    return idx;
}

int KnowledgeBase::find(const std::string& canonical_text) const {
    auto it = index_.find(canonical_text);
    return it == index_.end() ? -1 : it->second;
}

const std::vector<int>& KnowledgeBase::with_predicate(const std::string& pred) const {
    static const std::vector<int> empty;
    auto it = by_predicate_.find(pred);
    return it == by_predicate_.end() ? empty : it->second;
}

bool KnowledgeBase::add_inference(const Inference& inf) {
    if (!inference_keys_.insert(inf.key()).second) return false;
    inferences_.push_back(inf);
    return true;
}

void KnowledgeBase::set_useful_angles(std::vector<Angle> angles) {
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end()), angles.end());
    useful_angles_ = std::move(angles);
}

bool values_equal(const Value& a, const Value& b, double tolerance) {
    if (a.unit != b.unit)
        throw ModelError(ModelErrorCode::UnitMismatch,
                         "cannot compare values with different units");
    return nearly_equal(a.magnitude, b.magnitude, tolerance);
}

Value register_value(KnowledgeBase& kb, const Term& entity, Value v) {
    auto [it, inserted] = kb.values_.emplace(to_text(entity), v);
    (void)inserted;
    return it->second;
}

namespace {

// Rewrites every angle entity in a result instance to canonical form. With
// gating on, a constructed angle must resolve against the useful set: an
// exact member stays, otherwise the first useful angle (they are sorted)
// with the same vertex whose arms contain the constructed arms is
// substituted. No resolution sets `gated` and the result is dropped.
Term resolve_result_angles(const Term& t, const KnowledgeBase& kb, bool gating, bool& gated) {
    if (t.is_compound("angle")) {
        Angle a = angle_from_term(t);  // throws ModelError on a degenerate angle
        if (!gating) return to_term(a);
        auto contains = [](const std::vector<PointId>& inner, const std::vector<PointId>& outer) {
            return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
        };
        for (const Angle& u : kb.useful_angles())
            if (u == a) return to_term(a);
        for (const Angle& u : kb.useful_angles()) {
            if (u.vertex != a.vertex) continue;
            if ((contains(a.left, u.left) && contains(a.right, u.right)) ||
                (contains(a.left, u.right) && contains(a.right, u.left)))
                return to_term(u);
        }
        gated = true;
        return t;
    }
    Term out = t;
    for (auto& arg : out.args) {
        arg = resolve_result_angles(arg, kb, gating, gated);
        if (gated) return out;
    }
    return out;
}

std::vector<Inference> infer_using_impl(const Statement& new_premise, KnowledgeBase& kb,
                                        const Referential& r, const EngineConfig& cfg,
                                        SaturationStats* stats) {
    std::vector<Inference> out;
    std::set<std::string> local_keys;

    for (const PremiseRef& ref : r.rules_using(new_premise.predicate())) {
        if (stats) stats->matcher_invocations++;
        const PropertyRule& rule = r.rules()[ref.rule];
        std::vector<Statement> prem(rule.premises.size());

        auto emit = [&](const Bindings& b) {
            for (const Guard& g : rule.guards)
                if (!eval_guard(g, b, cfg.tolerance)) return;
            Statement st;
            try {
                Term inst = fold_arithmetic(substitute(rule.result, b));
                bool gated = false;
                Term resolved = resolve_result_angles(inst, kb, cfg.useful_angle_gating, gated);
                if (gated) {
                    if (stats) stats->gated_results++;
                    return;
                }
                st = canonicalize_statement(resolved);
            } catch (const ModelError&) {
                if (stats) stats->skipped_degenerate++;
                return;
            }
            // Value policy: the first registered measurement of an entity is
            // the one everyone uses. A rederivation is rewritten to it, so a
            // within-tolerance recomputation cannot mint a near-duplicate.
            bool fresh_value = false;
            Term value_entity;
            Value computed{};
            if (const PredicateSig* sig = find_predicate(st.predicate());
                sig && sig->has_value) {
                auto m = st.measurement();
                auto it = kb.value_registry().find(to_text(m->first));
                if (it != kb.value_registry().end()) {
                    if (it->second.magnitude != m->second.magnitude) {
                        if (stats) stats->value_reuses++;
                        Term vt = Term::compound(
                            "value", {Term::number(it->second.magnitude)});
                        st = canonicalize_statement(
                            Term::compound(st.predicate(), {m->first, vt}));
                    }
                } else {
                    fresh_value = true;
                    value_entity = m->first;
                    computed = m->second;
                }
            }
            for (const Statement& p : prem)
                if (p == st) return;  // a premise restated proves nothing
            Inference inf{st, rule.id, rule.justification, rule.granularity, prem};
            std::string key = inf.key();
            if (kb.has_inference(key) || !local_keys.insert(key).second) return;
            if (fresh_value) register_value(kb, value_entity, computed);
            out.push_back(std::move(inf));
        };

        // Fill premise slots left to right, the trigger pinned at ref.position.
        std::function<void(size_t, const Bindings&)> fill = [&](size_t i, const Bindings& b) {
            if (i == rule.premises.size()) {
                emit(b);
                return;
            }
            if ((int)i == ref.position) {
                match_term(rule.premises[i], new_premise.term(), b,
                           [&](const Bindings& nb) {
                               prem[i] = new_premise;
                               fill(i + 1, nb);
                           });
                return;
            }
            for (int idx : kb.with_predicate(rule.premises[i].text)) {
                const Statement& cand = kb.statements()[idx].stmt;
                match_term(rule.premises[i], cand.term(), b, [&](const Bindings& nb) {
                    prem[i] = cand;
                    fill(i + 1, nb);
                });
            }
        };
        fill(0, {});
    }
    return out;
}

}  // namespace

std::vector<Inference> infer_using(const Statement& new_premise, KnowledgeBase& kb,
                                   const Referential& r, const EngineConfig& cfg) {
    if (!kb.contains(new_premise))
        throw std::invalid_argument("new_premise must already be in the knowledge base");
    return infer_using_impl(new_premise, kb, r, cfg, nullptr);
}

SaturationResult saturate(const Problem& p, const Referential& r, const EngineConfig& cfg) {
    if (!(cfg.tolerance > 0.0) || cfg.tolerance > 0.1)
        throw std::invalid_argument("tolerance must be in (0, 0.1]");

    SaturationResult res;
    KnowledgeBase& kb = res.kb;
    SaturationStats& stats = res.stats;
    kb.set_useful_angles(p.all_useful_angles());

    std::vector<int> queue;
    auto seed = [&](const std::vector<Statement>& ss, Origin origin) {
        for (const Statement& s : ss) {
            size_t before = kb.statements().size();
            int idx = kb.add_statement(s, origin);
            if (kb.statements().size() > before) queue.push_back(idx);
            if (auto m = s.measurement()) register_value(kb, m->first, m->second);
        }
    };
    seed(p.implicit_hypotheses, Origin::Implicit);
    seed(p.explicit_hypotheses, Origin::Explicit);
    seed(p.auxiliary_hypotheses, Origin::Auxiliary);
    stats.hypotheses = kb.statements().size();

    std::mt19937 rng(cfg.random_seed);
    size_t head = 0;  // FIFO consumes from the front without erasing

    while (true) {
        int idx;
        if (cfg.order == ExplorationOrder::Fifo) {
            if (head >= queue.size()) break;
            idx = queue[head++];
        } else {
            if (queue.size() <= head) break;
            if (cfg.order == ExplorationOrder::Random) {
                std::uniform_int_distribution<size_t> pick(head, queue.size() - 1);
                std::swap(queue[pick(rng)], queue.back());
            }
            idx = queue.back();
            queue.pop_back();
        }
        const Statement s = kb.statements()[idx].stmt;  // copy: the vector grows below

        for (const Inference& inf : infer_using_impl(s, kb, r, cfg, &stats)) {
            kb.add_inference(inf);
            size_t before = kb.statements().size();
            int nidx = kb.add_statement(inf.result, Origin::Derived);
            if (kb.statements().size() > before) {
                if (kb.statements().size() > cfg.max_statements)
                    throw SaturationLimitError(cfg.max_statements);
                queue.push_back(nidx);
            }
            if (cfg.trace) {
                *cfg.trace << inf.rule_id << ':';
                for (size_t i = 0; i < inf.premises.size(); ++i)
                    *cfg.trace << (i ? " & " : " ") << inf.premises[i].text();
                *cfg.trace << " => " << inf.result.text() << '\n';
            }
        }
    }

    stats.statements = kb.statements().size();
    stats.inferences = kb.inferences().size();
    res.conclusion_reached = kb.contains(p.conclusion);
    return res;
}

}  // namespace geoproof
