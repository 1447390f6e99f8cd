#include "geoproof/problem.hpp"

#include <algorithm>
#include <set>

#include "geoproof/parse.hpp"
#include "geoproof/referential.hpp"

namespace geoproof {

std::string format_diagnostic(const Diagnostic& d) {
    std::string out = d.is_error() ? "error" : "warning";
    if (d.line > 0) out += " (line " + std::to_string(d.line) + ")";
    out += " [" + d.code + "]: " + d.message;
    return out;
}

std::vector<Statement> Problem::hypotheses() const {
    std::vector<Statement> all = implicit_hypotheses;
    all.insert(all.end(), explicit_hypotheses.begin(), explicit_hypotheses.end());
    all.insert(all.end(), auxiliary_hypotheses.begin(), auxiliary_hypotheses.end());
    return all;
}

static void collect_angles(const Term& t, std::set<Angle>& out) {
    if (t.is_compound("angle") && t.args.size() == 3) out.insert(angle_from_term(t));
    for (const auto& a : t.args) collect_angles(a, out);
}

std::vector<Angle> Problem::all_useful_angles() const {
    std::set<Angle> set(useful_angles.begin(), useful_angles.end());
    for (const auto& s : explicit_hypotheses) collect_angles(s.term(), set);
    for (const auto& s : auxiliary_hypotheses) collect_angles(s.term(), set);
    collect_angles(conclusion.term(), set);
    return {set.begin(), set.end()};
}

namespace {

const char* model_error_code(ModelErrorCode c) {
    switch (c) {
        case ModelErrorCode::InvalidEntity: return "invalid-entity";
        case ModelErrorCode::UnknownPredicate: return "unknown-predicate";
        case ModelErrorCode::ArityMismatch: return "arity-mismatch";
        case ModelErrorCode::InvalidValue: return "invalid-value";
        case ModelErrorCode::UnitMismatch: return "unit-mismatch";
    }
    return "invalid-entity";
}

struct ProblemBuilder {
    std::vector<Statement> implicit, explicit_, auxiliary;
    std::vector<Statement> conclusions;
    std::vector<int> conclusion_lines;
    std::set<Angle> useful;
    std::vector<std::pair<std::string, std::string>> dictionary;
    std::vector<Diagnostic> diags;

    void error(std::string code, std::string msg, int line) {
        diags.push_back({Diagnostic::Severity::Error, std::move(code), std::move(msg), line});
    }
    void warn(std::string code, std::string msg, int line) {
        diags.push_back({Diagnostic::Severity::Warning, std::move(code), std::move(msg), line});
    }
};

// Points are every atom in entity position except circle names.
void collect_points(const Term& t, std::set<std::string>& out) {
    if (t.is_compound("circle")) return;
    if (t.is_atom()) {
        out.insert(t.text);
        return;
    }
    for (const auto& a : t.args) collect_points(a, out);
}

void collect_circles(const Term& t, std::set<std::string>& out) {
    if (t.is_compound("circle") && t.args.size() == 1 && t.args[0].is_atom())
        out.insert(t.args[0].text);
    for (const auto& a : t.args) collect_circles(a, out);
}

bool is_declaration(const Statement& s) {
    return s.predicate() == "point" || s.predicate() == "line" || s.predicate() == "circle";
}

void skip_to_dot(parse::Lexer& lx) {
    while (!lx.at(parse::TokKind::End)) {
        if (lx.at_punct(".")) {
            lx.next();
            return;
        }
        lx.next();
    }
}

}  // namespace

ParsedProblem parse_problem(const std::string& text) {
    ProblemBuilder b;
    parse::Lexer lx(text);

    while (!lx.at(parse::TokKind::End)) {
        int fact_line = lx.peek().line;
        try {
            if (!lx.at(parse::TokKind::Ident)) lx.fail("expected a fact");
            std::string wrapper = lx.next().text;
            if (wrapper == "hypothese" || wrapper == "auxiliary" || wrapper == "conclusion") {
                lx.expect_punct("(");
                Term t = parse::parse_term(lx, /*allow_vars=*/false);
                lx.expect_punct(")");
                lx.expect_punct(".");
                Statement s = canonicalize_statement(t);
                if (wrapper == "conclusion") {
                    b.conclusions.push_back(s);
                    b.conclusion_lines.push_back(fact_line);
                } else if (wrapper == "auxiliary") {
                    b.auxiliary.push_back(s);
                } else if (is_declaration(s)) {
                    b.implicit.push_back(s);
                } else {
                    b.explicit_.push_back(s);
                }
            } else if (wrapper == "usefulAngle") {
                lx.expect_punct("(");
                Term left = parse::parse_term(lx, false);
                lx.expect_punct(",");
                Term vertex = parse::parse_term(lx, false);
                lx.expect_punct(",");
                Term right = parse::parse_term(lx, false);
                lx.expect_punct(")");
                lx.expect_punct(".");
                Term angle = Term::compound("angle", {left, vertex, right});
                b.useful.insert(angle_from_term(angle));
            } else if (wrapper == "dictionary") {
                lx.expect_punct("(");
                Term entity = parse::parse_term(lx, false);
                lx.expect_punct(",");
                if (!lx.at(parse::TokKind::String)) lx.fail("expected a quoted alias");
                std::string alias = lx.next().text;
                lx.expect_punct(")");
                lx.expect_punct(".");
                b.dictionary.emplace_back(to_text(entity), alias);
            } else {
                throw parse::ParseError("unknown fact wrapper '" + wrapper +
                                            "' (expected hypothese, auxiliary, conclusion, "
                                            "usefulAngle or dictionary)",
                                        fact_line, lx.peek().col);
            }
        } catch (const parse::ParseError& e) {
            b.error("syntax", e.what(), e.line);
            skip_to_dot(lx);
        } catch (const ModelError& e) {
            // Semantic checks only run once the fact's '.' is consumed, so
            // the lexer already sits at the next fact: no skipping.
            b.error(model_error_code(e.code()), e.what(), fact_line);
        }
    }

    // Structural checks on the whole file.
    if (b.conclusions.empty()) {
        b.error("no-conclusion", "a problem needs exactly one conclusion fact", 0);
    } else {
        for (size_t i = 1; i < b.conclusions.size(); ++i)
            b.error("duplicate-conclusion", "more than one conclusion fact",
                    b.conclusion_lines[i]);
    }
    if (b.implicit.empty() && b.explicit_.empty() && b.auxiliary.empty())
        b.error("no-hypotheses", "a problem needs at least one hypothesis", 0);

    std::set<std::string> declared_points, declared_circles;
    auto scan_declarations = [&](const std::vector<Statement>& ss) {
        for (const auto& s : ss) {
            if (s.predicate() == "point") declared_points.insert(s.args()[0].text);
            if (s.predicate() == "circle") declared_circles.insert(s.args()[0].text);
        }
    };
    scan_declarations(b.implicit);
    scan_declarations(b.auxiliary);

    std::set<std::string> used_points, used_circles;
    auto scan_uses = [&](const Statement& s) {
        if (s.predicate() == "point" || s.predicate() == "circle") return;
        collect_points(s.term(), used_points);
        collect_circles(s.term(), used_circles);
    };
    for (const auto& s : b.implicit) scan_uses(s);
    for (const auto& s : b.explicit_) scan_uses(s);
    for (const auto& s : b.auxiliary) scan_uses(s);
    for (const auto& s : b.conclusions) scan_uses(s);
    for (const auto& a : b.useful) {
        collect_points(to_term(a), used_points);
    }
    for (const auto& p : used_points)
        if (!declared_points.count(p))
            b.error("undeclared-point", "point '" + p + "' is used but never declared", 0);
    for (const auto& c : used_circles)
        if (!declared_circles.count(c))
            b.error("undeclared-circle", "circle '" + c + "' is used but never declared", 0);

    auto warn_duplicates = [&](std::vector<Statement>& ss, const char* which) {
        std::set<std::string> seen;
        for (const auto& s : ss)
            if (!seen.insert(s.text()).second)
                b.warn("duplicate-hypothesis",
                       std::string(which) + " hypothesis repeated: " + s.text(), 0);
    };
    warn_duplicates(b.implicit, "implicit");
    warn_duplicates(b.explicit_, "explicit");
    warn_duplicates(b.auxiliary, "auxiliary");

    ParsedProblem out;
    out.diagnostics = std::move(b.diags);
    if (has_errors(out.diagnostics)) return out;

    Problem p;
    p.implicit_hypotheses = std::move(b.implicit);
    p.explicit_hypotheses = std::move(b.explicit_);
    p.auxiliary_hypotheses = std::move(b.auxiliary);
    p.conclusion = b.conclusions.front();
    p.useful_angles.assign(b.useful.begin(), b.useful.end());
    p.dictionary = std::move(b.dictionary);

    // Normal form: sorted sections, deduplicated dictionary.
    auto by_text = [](const Statement& a, const Statement& c) { return a.text() < c.text(); };
    std::stable_sort(p.implicit_hypotheses.begin(), p.implicit_hypotheses.end(), by_text);
    std::stable_sort(p.explicit_hypotheses.begin(), p.explicit_hypotheses.end(), by_text);
    std::stable_sort(p.auxiliary_hypotheses.begin(), p.auxiliary_hypotheses.end(), by_text);
    std::sort(p.dictionary.begin(), p.dictionary.end());
    p.dictionary.erase(std::unique(p.dictionary.begin(), p.dictionary.end()),
                       p.dictionary.end());

    out.problem = std::move(p);
    return out;
}

std::string serialize_problem(const Problem& p) {
    std::string out;
    auto emit = [&](const char* wrapper, const Statement& s) {
        out += wrapper;
        out += '(';
        out += s.text();
        out += ").\n";
    };
    for (const auto& s : p.implicit_hypotheses) emit("hypothese", s);
    for (const auto& s : p.explicit_hypotheses) emit("hypothese", s);
    for (const auto& s : p.auxiliary_hypotheses) emit("auxiliary", s);
    emit("conclusion", p.conclusion);
    for (const auto& a : p.useful_angles) {
        Term t = to_term(a);
        out += "usefulAngle(" + to_text(t.args[0]) + "," + to_text(t.args[1]) + "," +
               to_text(t.args[2]) + ").\n";
    }
    for (const auto& [entity, alias] : p.dictionary)
        out += "dictionary(" + entity + ",\"" + alias + "\").\n";
    return out;
}

std::vector<Diagnostic> validate_problem(const Problem& p, const Referential& r) {
    std::vector<Diagnostic> diags;
    auto warn = [&](std::string code, std::string msg) {
        diags.push_back({Diagnostic::Severity::Warning, std::move(code), std::move(msg), 0});
    };

    // A conclusion no rule can produce is unreachable unless already given.
    std::set<std::string> result_predicates;
    for (const auto& rule : r.rules()) result_predicates.insert(rule.result.text);
    auto hyps = p.hypotheses();
    bool given = std::any_of(hyps.begin(), hyps.end(),
                             [&](const Statement& h) { return h == p.conclusion; });
    if (!given && !result_predicates.count(p.conclusion.predicate()))
        warn("conclusion-underivable", "no rule derives '" + p.conclusion.predicate() +
                                           "' statements; the conclusion cannot be reached");

    // Useful angles that were promoted rather than declared.
    std::set<Angle> declared(p.useful_angles.begin(), p.useful_angles.end());
    for (const auto& a : p.all_useful_angles())
        if (!declared.count(a))
            warn("useful-angle-promoted",
                 "angle " + to_text(to_term(a)) + " is treated as useful because a hypothesis "
                                                  "or the conclusion mentions it");

    // Each arm of a useful angle should lie on a declared line.
    std::vector<std::set<std::string>> line_sets;
    for (const auto& s : p.implicit_hypotheses)
        if (s.predicate() == "line") {
            std::set<std::string> pts;
            for (const auto& e : s.args()[0].args) pts.insert(e.text);
            line_sets.push_back(std::move(pts));
        }
    auto on_some_line = [&](const std::vector<PointId>& arm, const PointId& vertex) {
        for (const auto& pts : line_sets) {
            if (!pts.count(vertex)) continue;
            bool all = std::all_of(arm.begin(), arm.end(),
                                   [&](const PointId& q) { return pts.count(q) > 0; });
            if (all) return true;
        }
        return false;
    };
    for (const auto& a : p.all_useful_angles()) {
        if (!on_some_line(a.left, a.vertex) || !on_some_line(a.right, a.vertex))
            warn("useful-angle-lines", "angle " + to_text(to_term(a)) +
                                           " has an arm that lies on no declared line");
    }

    // Dictionary sanity.
    std::map<std::string, std::string> alias_of;
    std::map<std::string, std::string> entity_of;
    for (const auto& [entity, alias] : p.dictionary) {
        if (auto it = alias_of.find(entity); it != alias_of.end() && it->second != alias)
            warn("alias-collision", "entity " + entity + " has aliases \"" + it->second +
                                        "\" and \"" + alias + "\"");
        else
            alias_of[entity] = alias;
        if (auto it = entity_of.find(alias); it != entity_of.end() && it->second != entity)
            warn("alias-collision", "alias \"" + alias + "\" names both " + it->second +
                                        " and " + entity);
        else
            entity_of[alias] = entity;
    }

    // Two measurements of one entity: only the first registers.
    std::map<std::string, double> measured;
    for (const auto& h : hyps) {
        auto m = h.measurement();
        if (!m) continue;
        auto [it, fresh] = measured.emplace(to_text(m->first), m->second.magnitude);
        if (!fresh && it->second != m->second.magnitude)
            warn("duplicate-measurement",
                 "entity " + to_text(m->first) + " is measured more than once; the first "
                                                 "registered value wins");
    }

    return diags;
}

}  // namespace geoproof
