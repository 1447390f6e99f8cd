#include "geoproof/referential.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "geoproof/model.hpp"
#include "geoproof/parse.hpp"

namespace geoproof {

std::string granularity_name(Granularity g) {
    return g == Granularity::Low ? "low" : "high";
}

namespace {

void collect_vars(const Term& t, std::set<std::string>& out) {
    if (t.is_var()) out.insert(t.text);
    for (const auto& a : t.args) collect_vars(a, out);
}

void guard_vars(const Guard& g, std::set<std::string>& out) {
    for (const auto& a : g.args) collect_vars(a, out);
    if (g.kind == Guard::Kind::Compare) {
        collect_vars(g.lhs, out);
        collect_vars(g.rhs, out);
    }
}

const char* entity_functor(ArgKind k) {
    switch (k) {
        case ArgKind::LineEntity: return "line";
        case ArgKind::SegmentEntity: return "segment";
        case ArgKind::AngleEntity: return "angle";
        case ArgKind::TriangleEntity: return "triangle";
        case ArgKind::QuadEntity: return "quad";
        case ArgKind::CircleEntity: return "circle";
        case ArgKind::ValueEntity: return "value";
        default: return nullptr;
    }
}

// Patterns are checked loosely: a variable fits anywhere, a compound must at
// least use the right constructor for its slot.
void check_pattern(const Term& t, std::vector<std::string>& problems) {
    if (!t.is_compound()) {
        problems.push_back("pattern must be predicate(args): " + to_text(t));
        return;
    }
    const PredicateSig* sig = find_predicate(t.text);
    if (!sig) {
        problems.push_back("unknown predicate '" + t.text + "'");
        return;
    }
    if (t.args.size() != sig->args.size()) {
        problems.push_back("'" + t.text + "' takes " + std::to_string(sig->args.size()) +
                           " arguments, got " + std::to_string(t.args.size()));
        return;
    }
    for (size_t i = 0; i < t.args.size(); ++i) {
        const Term& a = t.args[i];
        if (a.is_var()) continue;
        ArgKind k = sig->args[i];
        if (k == ArgKind::Point) {
            if (!a.is_atom())
                problems.push_back("argument " + std::to_string(i + 1) + " of '" + t.text +
                                   "' must be a point or variable");
            continue;
        }
        if (k == ArgKind::PointList) {
            if (!a.is_list())
                problems.push_back("argument " + std::to_string(i + 1) + " of '" + t.text +
                                   "' must be a point list or variable");
            continue;
        }
        const char* functor = entity_functor(k);
        if (k == ArgKind::ValueEntity) {
            if (!a.is_compound("value") || a.args.size() != 1)
                problems.push_back("argument " + std::to_string(i + 1) + " of '" + t.text +
                                   "' must be value(...) or a variable");
            continue;
        }
        if (!functor || !a.is_compound(functor))
            problems.push_back("argument " + std::to_string(i + 1) + " of '" + t.text +
                               "' must be a " + (functor ? functor : "?") +
                               "(...) entity or a variable");
    }
}

}  // namespace

Referential::Referential(std::vector<PropertyRule> rules) : rules_(std::move(rules)) {
    std::set<std::string> ids;
    for (size_t i = 0; i < rules_.size(); ++i) {
        const PropertyRule& r = rules_[i];
        if (r.id.empty() || !ids.insert(r.id).second)
            throw std::invalid_argument("duplicate or empty rule id '" + r.id + "'");
        if (r.premises.empty())
            throw std::invalid_argument("rule '" + r.id + "' has no premises");
        if (r.justification.empty())
            throw std::invalid_argument("rule '" + r.id + "' has no justification");
        std::set<std::string> bound, used;
        for (const auto& p : r.premises) collect_vars(p, bound);
        collect_vars(r.result, used);
        for (const auto& g : r.guards) guard_vars(g, used);
        for (const auto& v : used)
            if (!bound.count(v))
                throw std::invalid_argument("rule '" + r.id + "': variable '" + v +
                                            "' is not bound by any premise");
        for (size_t pos = 0; pos < r.premises.size(); ++pos)
            index_[r.premises[pos].text].push_back({(int)i, (int)pos});
    }
}

const PropertyRule* Referential::find(const std::string& id) const {
    for (const auto& r : rules_)
        if (r.id == id) return &r;
    return nullptr;
}

const std::vector<PremiseRef>& Referential::rules_using(const std::string& predicate) const {
    static const std::vector<PremiseRef> empty;
    auto it = index_.find(predicate);
    return it == index_.end() ? empty : it->second;
}

namespace {

Guard parse_guard(parse::Lexer& lx) {
    Guard g;
    if (lx.at_ident("distinct")) {
        lx.next();
        lx.expect_punct("(");
        g.kind = Guard::Kind::Distinct;
        g.args.push_back(parse::parse_term(lx, true));
        while (lx.at_punct(",")) {
            lx.next();
            g.args.push_back(parse::parse_term(lx, true));
        }
        lx.expect_punct(")");
        if (g.args.size() < 2) lx.fail("distinct needs at least two arguments");
        return g;
    }
    if (lx.at_ident("on")) {
        lx.next();
        lx.expect_punct("(");
        g.kind = Guard::Kind::On;
        g.args.push_back(parse::parse_term(lx, true));
        lx.expect_punct(",");
        g.args.push_back(parse::parse_term(lx, true));
        lx.expect_punct(")");
        return g;
    }
    g.kind = Guard::Kind::Compare;
    g.lhs = parse::parse_term(lx, true);
    if (lx.at_punct("~")) g.cmp = Guard::Cmp::Approx;
    else if (lx.at_punct("<")) g.cmp = Guard::Cmp::Lt;
    else if (lx.at_punct(">")) g.cmp = Guard::Cmp::Gt;
    else if (lx.at_punct("<=")) g.cmp = Guard::Cmp::Le;
    else if (lx.at_punct(">=")) g.cmp = Guard::Cmp::Ge;
    else lx.fail("expected a comparison (~ < > <= >=)");
    lx.next();
    g.rhs = parse::parse_term(lx, true);
    return g;
}

}  // namespace

ParsedReferential parse_rules(const std::string& text) {
    ParsedReferential out;
    std::vector<PropertyRule> rules;
    std::set<std::string> seen_ids;
    parse::Lexer lx(text);

    auto error = [&](std::string code, std::string msg, int line) {
        out.diagnostics.push_back(
            {Diagnostic::Severity::Error, std::move(code), std::move(msg), line});
    };
    auto recover = [&] {
        int depth = 0;
        while (!lx.at(parse::TokKind::End)) {
            if (lx.at_punct("{")) ++depth;
            if (lx.at_punct("}")) --depth;
            if (depth <= 0 && lx.at_ident("rule")) return;
            lx.next();
        }
    };

    while (!lx.at(parse::TokKind::End)) {
        int rule_line = lx.peek().line;
        try {
            if (!lx.at_ident("rule")) lx.fail("expected 'rule'");
            lx.next();
            PropertyRule r;
            if (!lx.at(parse::TokKind::Ident)) lx.fail("expected a rule id");
            r.id = lx.next().text;
            if (!lx.at_ident("granularity")) lx.fail("expected 'granularity'");
            lx.next();
            if (lx.at_ident("low")) r.granularity = Granularity::Low;
            else if (lx.at_ident("high")) r.granularity = Granularity::High;
            else lx.fail("granularity is 'low' or 'high'");
            lx.next();
            if (!lx.at_ident("premises")) lx.fail("expected 'premises'");
            lx.next();
            lx.expect_punct("{");
            while (!lx.at_punct("}")) {
                r.premises.push_back(parse::parse_term(lx, true));
                lx.expect_punct(".");
            }
            lx.next();
            if (lx.at_ident("guards")) {
                lx.next();
                lx.expect_punct("{");
                while (!lx.at_punct("}")) {
                    r.guards.push_back(parse_guard(lx));
                    lx.expect_punct(".");
                }
                lx.next();
            }
            if (!lx.at_ident("result")) lx.fail("expected 'result'");
            lx.next();
            r.result = parse::parse_term(lx, true);
            if (!lx.at_ident("justification")) lx.fail("expected 'justification'");
            lx.next();
            if (!lx.at(parse::TokKind::String)) lx.fail("expected a quoted sentence");
            r.justification = lx.next().text;
            lx.expect_punct(".");

            // Rule-level checks, all reported rather than thrown.
            std::vector<std::string> problems;
            if (!seen_ids.insert(r.id).second)
                error("duplicate-rule", "rule id '" + r.id + "' is already defined", rule_line);
            if (r.premises.empty()) problems.push_back("a rule needs at least one premise");
            if (r.justification.empty()) problems.push_back("justification must be nonempty");
            for (const auto& p : r.premises) check_pattern(p, problems);
            check_pattern(r.result, problems);
            std::set<std::string> bound, used;
            for (const auto& p : r.premises) collect_vars(p, bound);
            collect_vars(r.result, used);
            for (const auto& g : r.guards) guard_vars(g, used);
            for (const auto& v : used)
                if (!bound.count(v))
                    problems.push_back("variable '" + v + "' is not bound by any premise");
            for (const auto& msg : problems)
                error("bad-rule", "rule '" + r.id + "': " + msg, rule_line);
            if (problems.empty()) rules.push_back(std::move(r));
        } catch (const parse::ParseError& e) {
            error("syntax", e.what(), e.line);
            recover();
        }
    }

    if (has_errors(out.diagnostics)) return out;
    out.referential = Referential(std::move(rules));
    return out;
}

}  // namespace geoproof
