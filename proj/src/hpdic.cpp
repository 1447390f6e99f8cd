#include "geoproof/hpdic.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include <json.hpp>

#include "geoproof/parse.hpp"

namespace geoproof {

std::string node_kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::ImplicitHypothesis: return "implicit-hypothesis";
        case NodeKind::ExplicitHypothesis: return "explicit-hypothesis";
        case NodeKind::AuxiliaryHypothesis: return "auxiliary-hypothesis";
        case NodeKind::Intermediate: return "intermediate";
        case NodeKind::Conclusion: return "conclusion";
    }
    return "?";
}

static NodeKind node_kind_from(const std::string& name) {
    if (name == "implicit-hypothesis") return NodeKind::ImplicitHypothesis;
    if (name == "explicit-hypothesis") return NodeKind::ExplicitHypothesis;
    if (name == "auxiliary-hypothesis") return NodeKind::AuxiliaryHypothesis;
    if (name == "intermediate") return NodeKind::Intermediate;
    if (name == "conclusion") return NodeKind::Conclusion;
    throw GraphError("unknown statement kind '" + name + "'");
}

HpdicGraph construct_graph(const SaturationResult& res, const Statement& conclusion,
                           std::vector<std::pair<std::string, std::string>> dictionary) {
    const KnowledgeBase& kb = res.kb;
    if (kb.find(conclusion.text()) < 0)
        throw GraphError("conclusion was not derived: " + conclusion.text());

    HpdicGraph g;
    const auto& entries = kb.statements();
    std::vector<int> order(entries.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return entries[a].stmt.text() < entries[b].stmt.text(); });

    std::map<std::string, int> position;
    for (int old_idx : order) {
        const StatementEntry& e = entries[old_idx];
        NodeKind kind = NodeKind::Intermediate;
        switch (e.origin) {
            case Origin::Implicit: kind = NodeKind::ImplicitHypothesis; break;
            case Origin::Explicit: kind = NodeKind::ExplicitHypothesis; break;
            case Origin::Auxiliary: kind = NodeKind::AuxiliaryHypothesis; break;
            case Origin::Derived: kind = NodeKind::Intermediate; break;
        }
        position[e.stmt.text()] = (int)g.statements.size();
        g.statements.push_back({e.stmt, kind, false});
    }
    g.conclusion = position.at(conclusion.text());
    g.statements[g.conclusion].kind = NodeKind::Conclusion;

    for (const Inference& inf : kb.inferences()) {
        InferenceNode n;
        n.rule_id = inf.rule_id;
        n.justification = inf.justification;
        n.granularity = inf.granularity;
        for (const Statement& p : inf.premises) n.premises.push_back(position.at(p.text()));
        // Interchangeable premise slots can be discovered in either order;
        // the inference identity is a premise multiset, so store it sorted.
        std::sort(n.premises.begin(), n.premises.end());
        n.result = position.at(inf.result.text());
        g.inferences.push_back(std::move(n));
    }
    std::sort(g.inferences.begin(), g.inferences.end(),
              [](const InferenceNode& a, const InferenceNode& b) {
                  if (a.result != b.result) return a.result < b.result;
                  if (a.rule_id != b.rule_id) return a.rule_id < b.rule_id;
                  return a.premises < b.premises;
              });

    std::sort(dictionary.begin(), dictionary.end());
    g.dictionary = std::move(dictionary);

    mark_useful(g);
    return g;
}

void mark_useful(HpdicGraph& g) {
    for (auto& s : g.statements) s.useful = false;
    for (auto& i : g.inferences) i.useful = false;
    if (g.conclusion < 0 || g.conclusion >= (int)g.statements.size()) return;
    g.statements[g.conclusion].useful = true;
    for (bool changed = true; changed;) {
        changed = false;
        for (auto& inf : g.inferences) {
            if (!inf.useful && g.statements[inf.result].useful) {
                inf.useful = true;
                changed = true;
            }
            if (inf.useful)
                for (int p : inf.premises)
                    if (!g.statements[p].useful) {
                        g.statements[p].useful = true;
                        changed = true;
                    }
        }
    }
}

std::vector<std::vector<int>> detect_cycles(const HpdicGraph& g, size_t max_len) {
    size_t n = g.statements.size();
    std::vector<std::vector<int>> adj(n);
    for (const auto& inf : g.inferences)
        for (int p : inf.premises) adj[p].push_back(inf.result);
    for (auto& v : adj) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }

    std::vector<std::vector<int>> cycles;
    std::vector<int> path;
    std::vector<char> on_path(n, 0);
    int start = 0;
    // Each elementary cycle is found exactly once: from its smallest node,
    // visiting only larger nodes.
    std::function<void(int)> dfs = [&](int u) {
        for (int v : adj[u]) {
            if (v == start) {
                cycles.push_back(path);
                continue;
            }
            if (v < start || on_path[v] || path.size() >= max_len) continue;
            on_path[v] = 1;
            path.push_back(v);
            dfs(v);
            path.pop_back();
            on_path[v] = 0;
        }
    };
    for (start = 0; start < (int)n; ++start) {
        path.assign(1, start);
        std::fill(on_path.begin(), on_path.end(), 0);
        on_path[start] = 1;
        dfs(start);
    }
    std::sort(cycles.begin(), cycles.end());
    return cycles;
}

std::vector<Proof> enumerate_proofs(const HpdicGraph& g, size_t limit) {
    if (limit == 0) throw std::invalid_argument("proof limit must be positive");
    std::vector<Proof> out;
    if (g.conclusion < 0 || g.conclusion >= (int)g.statements.size()) return out;

    std::vector<std::vector<int>> by_result(g.statements.size());
    for (int i = 0; i < (int)g.inferences.size(); ++i)
        if (g.inferences[i].useful) by_result[g.inferences[i].result].push_back(i);

    auto is_hypothesis = [&](int s) {
        NodeKind k = g.statements[s].kind;
        return k == NodeKind::ImplicitHypothesis || k == NodeKind::ExplicitHypothesis ||
               k == NodeKind::AuxiliaryHypothesis;
    };
    // A conclusion that was given as a hypothesis has no useful derivation
    // and stands as its own (empty) proof.
    auto needs_choice = [&](int s) { return !is_hypothesis(s) && !by_result[s].empty(); };

    std::map<int, int> choice;
    std::set<int> included{g.conclusion};

    auto acyclic = [&] {
        std::map<int, std::vector<int>> fwd;
        for (auto [s, inf] : choice)
            for (int p : g.inferences[inf].premises) fwd[p].push_back(s);
        std::map<int, int> color;
        std::function<bool(int)> visit = [&](int u) {
            color[u] = 1;
            for (int v : fwd[u]) {
                if (color[v] == 1) return false;
                if (color[v] == 0 && !visit(v)) return false;
            }
            color[u] = 2;
            return true;
        };
        for (int s : included)
            if (color[s] == 0 && !visit(s)) return false;
        return true;
    };

    std::function<void(std::set<int>)> expand = [&](std::set<int> pending) {
        if (out.size() >= limit) return;
        if (pending.empty()) {
            if (!acyclic()) return;
            Proof pr;
            pr.choice = choice;
            pr.statements.assign(included.begin(), included.end());
            out.push_back(std::move(pr));
            return;
        }
        int s = *pending.begin();
        pending.erase(pending.begin());
        for (int inf_idx : by_result[s]) {
            choice[s] = inf_idx;
            std::set<int> next = pending;
            std::vector<int> added;
            for (int p : g.inferences[inf_idx].premises)
                if (included.insert(p).second) {
                    added.push_back(p);
                    if (needs_choice(p)) next.insert(p);
                }
            expand(std::move(next));
            for (int p : added) included.erase(p);
            choice.erase(s);
            if (out.size() >= limit) return;
        }
    };

    std::set<int> pending;
    if (needs_choice(g.conclusion)) pending.insert(g.conclusion);
    expand(std::move(pending));
    return out;
}

std::string export_json(const HpdicGraph& g) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["statements"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < g.statements.size(); ++i) {
        const StatementNode& s = g.statements[i];
        j["statements"].push_back({{"id", "s" + std::to_string(i)},
                                   {"text", s.stmt.text()},
                                   {"kind", node_kind_name(s.kind)},
                                   {"useful", s.useful}});
    }
    j["inferences"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < g.inferences.size(); ++i) {
        const InferenceNode& inf = g.inferences[i];
        nlohmann::ordered_json prem = nlohmann::ordered_json::array();
        for (int p : inf.premises) prem.push_back("s" + std::to_string(p));
        j["inferences"].push_back({{"id", "i" + std::to_string(i)},
                                   {"rule", inf.rule_id},
                                   {"justification", inf.justification},
                                   {"granularity", granularity_name(inf.granularity)},
                                   {"premises", std::move(prem)},
                                   {"result", "s" + std::to_string(inf.result)},
                                   {"useful", inf.useful}});
    }
    j["conclusion"] = "s" + std::to_string(g.conclusion);
    j["dictionary"] = nlohmann::ordered_json::array();
    for (const auto& [entity, alias] : g.dictionary)
        j["dictionary"].push_back({{"entity", entity}, {"alias", alias}});
    return j.dump(2) + "\n";
}

HpdicGraph import_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw GraphError(std::string("graph JSON does not parse: ") + e.what());
    }
    try {
        if (j.at("schema_version").get<int>() != 1)
            throw GraphError("unsupported schema_version");
        HpdicGraph g;
        std::map<std::string, int> ids;
        for (const auto& js : j.at("statements")) {
            StatementNode n;
            n.stmt = canonicalize_statement(
                parse::parse_term_text(js.at("text").get<std::string>()));
            n.kind = node_kind_from(js.at("kind").get<std::string>());
            n.useful = js.at("useful").get<bool>();
            ids[js.at("id").get<std::string>()] = (int)g.statements.size();
            g.statements.push_back(std::move(n));
        }
        auto lookup = [&](const std::string& id) {
            auto it = ids.find(id);
            if (it == ids.end()) throw GraphError("unknown statement id '" + id + "'");
            return it->second;
        };
        for (const auto& ji : j.at("inferences")) {
            InferenceNode n;
            n.rule_id = ji.at("rule").get<std::string>();
            n.justification = ji.at("justification").get<std::string>();
            std::string gran = ji.at("granularity").get<std::string>();
            if (gran != "low" && gran != "high")
                throw GraphError("unknown granularity '" + gran + "'");
            n.granularity = gran == "low" ? Granularity::Low : Granularity::High;
            for (const auto& p : ji.at("premises")) n.premises.push_back(lookup(p.get<std::string>()));
            n.result = lookup(ji.at("result").get<std::string>());
            n.useful = ji.at("useful").get<bool>();
            g.inferences.push_back(std::move(n));
        }
        g.conclusion = lookup(j.at("conclusion").get<std::string>());
        for (const auto& jd : j.at("dictionary"))
            g.dictionary.emplace_back(jd.at("entity").get<std::string>(),
                                      jd.at("alias").get<std::string>());
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw GraphError(std::string("graph JSON is malformed: ") + e.what());
    } catch (const parse::ParseError& e) {
        throw GraphError(std::string("graph statement does not parse: ") + e.what());
    } catch (const ModelError& e) {
        throw GraphError(std::string("graph statement is invalid: ") + e.what());
    }
}

static std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string export_dot(const HpdicGraph& g, const DotOptions& opts) {
    std::string out = "digraph proof {\n";
    for (size_t i = 0; i < g.statements.size(); ++i) {
        const StatementNode& s = g.statements[i];
        std::string label = s.stmt.text();
        if (opts.allow_reversal && s.stmt.predicate() == "angleValue") {
            auto names = angle_names(angle_from_term(s.stmt.args()[0]), true);
            std::string joined;
            for (const auto& nm : names) {
                if (!joined.empty()) joined += ", ";
                joined += nm;
            }
            label += "\nnames: " + joined;
        }
        for (const auto& [entity, alias] : g.dictionary)
            for (const Term& a : s.stmt.args())
                if (to_text(a) == entity) label += "\n" + alias;
        std::string attrs = "shape=box";
        std::string style;
        switch (s.kind) {
            case NodeKind::ImplicitHypothesis:
            case NodeKind::ExplicitHypothesis:
            case NodeKind::AuxiliaryHypothesis:
                style = "filled";
                attrs += ", fillcolor=lightgrey";
                break;
            case NodeKind::Conclusion:
                style = "filled";
                attrs += ", fillcolor=palegreen, penwidth=2";
                break;
            case NodeKind::Intermediate: break;
        }
        if (!s.useful) {
            style += style.empty() ? "dashed" : ",dashed";
            attrs += ", color=gray, fontcolor=gray";
        }
        if (!style.empty()) attrs += ", style=\"" + style + "\"";
        out += "  s" + std::to_string(i) + " [" + attrs + ", label=\"" +
               dot_escape(label) + "\"];\n";
    }
    for (size_t i = 0; i < g.inferences.size(); ++i) {
        const InferenceNode& inf = g.inferences[i];
        std::string attrs = "shape=ellipse";
        if (!inf.useful) attrs += ", style=\"dashed\", color=gray, fontcolor=gray";
        out += "  i" + std::to_string(i) + " [" + attrs + ", label=\"" +
               dot_escape(inf.justification) + "\"];\n";
    }
    for (size_t i = 0; i < g.inferences.size(); ++i) {
        const InferenceNode& inf = g.inferences[i];
        std::string edge_attr = inf.useful ? "" : " [color=gray]";
        for (int p : inf.premises)
            out += "  s" + std::to_string(p) + " -> i" + std::to_string(i) + edge_attr + ";\n";
        out += "  i" + std::to_string(i) + " -> s" + std::to_string(inf.result) + edge_attr +
               ";\n";
    }
    out += "}\n";
    return out;
}

}  // namespace geoproof
