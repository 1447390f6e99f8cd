#include "geoproof/match.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geoproof {

namespace {

// Argument orders under which a compound equals itself. Everything not
// listed matches in declared order only.
std::vector<std::vector<int>> symmetry_orders(const std::string& functor, size_t arity) {
    static const char* unordered_pairs[] = {"perp",           "parallel",
                                            "equalAngles",    "adjacentAngles",
                                            "supplementaryAngles", "segment"};
    for (const char* f : unordered_pairs)
        if (functor == f && arity == 2) return {{0, 1}, {1, 0}};
    if (functor == "angle" && arity == 3) return {{0, 1, 2}, {2, 1, 0}};
    if (functor == "triangle" && arity == 3)
        return {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    if (functor == "quad" && arity == 4) {
        std::vector<std::vector<int>> orders;
        for (int s = 0; s < 4; ++s) {
            std::vector<int> fwd(4), rev(4);
            for (int i = 0; i < 4; ++i) {
                fwd[i] = (s + i) % 4;
                rev[i] = (s + 4 - i) % 4;
            }
            orders.push_back(fwd);
            orders.push_back(rev);
        }
        return orders;
    }
    std::vector<int> id(arity);
    for (size_t i = 0; i < arity; ++i) id[i] = (int)i;
    return {id};
}

void match_rec(const Term& p, const Term& g, Bindings& b,
               const std::function<void(const Bindings&)>& yield);

// Matches pattern args elementwise against ground args viewed through an
// argument order, threading the binding environment.
void match_seq(const std::vector<Term>& ps, const std::vector<Term>& gs,
               const std::vector<int>& order, size_t i, Bindings& b,
               const std::function<void(const Bindings&)>& yield) {
    if (i == ps.size()) {
        yield(b);
        return;
    }
    match_rec(ps[i], gs[order[i]], b,
              [&](const Bindings&) { match_seq(ps, gs, order, i + 1, b, yield); });
}

// Injective assignment of pattern list elements to ground list elements.
void match_list(const std::vector<Term>& ps, const std::vector<Term>& gs, size_t i,
                std::vector<bool>& used, Bindings& b,
                const std::function<void(const Bindings&)>& yield) {
    if (i == ps.size()) {
        yield(b);
        return;
    }
    for (size_t j = 0; j < gs.size(); ++j) {
        if (used[j]) continue;
        used[j] = true;
        match_rec(ps[i], gs[j], b,
                  [&](const Bindings&) { match_list(ps, gs, i + 1, used, b, yield); });
        used[j] = false;
    }
}

void match_rec(const Term& p, const Term& g, Bindings& b,
               const std::function<void(const Bindings&)>& yield) {
    switch (p.kind) {
        case TermKind::Var: {
            auto it = b.find(p.text);
            if (it != b.end()) {
                if (it->second == g) yield(b);
                return;
            }
            b.emplace(p.text, g);
            yield(b);
            b.erase(p.text);
            return;
        }
        case TermKind::Atom:
            if (g.is_atom() && g.text == p.text) yield(b);
            return;
        case TermKind::Number:
            if (g.is_number() && g.num == p.num) yield(b);
            return;
        case TermKind::List: {
            if (!g.is_list() || p.args.size() > g.args.size()) return;
            std::vector<bool> used(g.args.size(), false);
            match_list(p.args, g.args, 0, used, b, yield);
            return;
        }
        case TermKind::Compound: {
            if (!g.is_compound(p.text) || g.args.size() != p.args.size()) return;
            for (const auto& order : symmetry_orders(p.text, p.args.size()))
                match_seq(p.args, g.args, order, 0, b, yield);
            return;
        }
    }
}

}  // namespace

void match_term(const Term& pattern, const Term& ground, const Bindings& base,
                const std::function<void(const Bindings&)>& yield) {
    Bindings b = base;
    match_rec(pattern, ground, b, yield);
}

Term substitute(const Term& pattern, const Bindings& b) {
    switch (pattern.kind) {
        case TermKind::Var: {
            auto it = b.find(pattern.text);
            if (it == b.end())
                throw std::logic_error("unbound variable '" + pattern.text + "'");
            return it->second;
        }
        case TermKind::Atom:
        case TermKind::Number:
            return pattern;
        case TermKind::List:
        case TermKind::Compound: {
            Term out = pattern;
            for (auto& a : out.args) a = substitute(a, b);
            return out;
        }
    }
    return pattern;
}

Term fold_arithmetic(Term t) {
    for (auto& a : t.args) a = fold_arithmetic(std::move(a));
    if (!t.is_compound()) return t;
    auto num = [](const Term& x) { return x.is_number(); };
    if (t.args.size() == 2 && num(t.args[0]) && num(t.args[1])) {
        double l = t.args[0].num, r = t.args[1].num;
        if (t.text == "+") return Term::number(l + r);
        if (t.text == "-") return Term::number(l - r);
        if (t.text == "*") return Term::number(l * r);
        if (t.text == "/") return Term::number(l / r);
    }
    if (t.args.size() == 1 && num(t.args[0]) && t.text == "sqrt")
        return Term::number(std::sqrt(t.args[0].num));
    return t;
}

double eval_number(const Term& expr) {
    Term folded = fold_arithmetic(expr);
    if (!folded.is_number())
        throw std::invalid_argument("expression does not evaluate to a number: " +
                                    to_text(expr));
    return folded.num;
}

bool nearly_equal(double a, double b, double tol) {
    if (a == b) return true;
    double mag = std::max(std::fabs(a), std::fabs(b));
    return std::fabs(a - b) / mag <= tol;
}

bool eval_guard(const Guard& g, const Bindings& b, double tolerance) {
    switch (g.kind) {
        case Guard::Kind::Distinct: {
            std::vector<Term> vals;
            vals.reserve(g.args.size());
            for (const auto& a : g.args) vals.push_back(substitute(a, b));
            for (size_t i = 0; i < vals.size(); ++i)
                for (size_t j = i + 1; j < vals.size(); ++j)
                    if (vals[i] == vals[j]) return false;
            return true;
        }
        case Guard::Kind::On: {
            Term point = substitute(g.args[0], b);
            Term container = substitute(g.args[1], b);
            const Term* list = &container;
            if (container.is_compound("line") && container.args.size() == 1)
                list = &container.args[0];
            if (!list->is_list()) return false;
            return std::any_of(list->args.begin(), list->args.end(),
                               [&](const Term& e) { return e == point; });
        }
        case Guard::Kind::Compare: {
            double l = eval_number(substitute(g.lhs, b));
            double r = eval_number(substitute(g.rhs, b));
            if (!std::isfinite(l) || !std::isfinite(r)) return false;
            switch (g.cmp) {
                case Guard::Cmp::Approx: return nearly_equal(l, r, tolerance);
                case Guard::Cmp::Lt: return l < r;
                case Guard::Cmp::Gt: return l > r;
                case Guard::Cmp::Le: return l <= r;
                case Guard::Cmp::Ge: return l >= r;
            }
            return false;
        }
    }
    return false;
}

}  // namespace geoproof
