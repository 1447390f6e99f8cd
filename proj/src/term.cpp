#include "geoproof/term.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace geoproof {

Term Term::atom(std::string name) {
    Term t;
    t.kind = TermKind::Atom;
    t.text = std::move(name);
    return t;
}

Term Term::number(double value) {
    Term t;
    t.kind = TermKind::Number;
    t.num = value;
    return t;
}

Term Term::var(std::string name) {
    Term t;
    t.kind = TermKind::Var;
    t.text = std::move(name);
    return t;
}

Term Term::list(std::vector<Term> elems) {
    Term t;
    t.kind = TermKind::List;
    t.args = std::move(elems);
    return t;
}

Term Term::compound(std::string functor, std::vector<Term> args) {
    Term t;
    t.kind = TermKind::Compound;
    t.text = std::move(functor);
    t.args = std::move(args);
    return t;
}

bool Term::operator==(const Term& other) const {
    return compare(*this, other) == 0;
}

std::string render_number(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    double ipart;
    if (std::modf(v, &ipart) == 0.0 && std::fabs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

static void render(const Term& t, std::string& out) {
    switch (t.kind) {
        case TermKind::Atom:
        case TermKind::Var:
            out += t.text;
            break;
        case TermKind::Number:
            out += render_number(t.num);
            break;
        case TermKind::List:
            out += '[';
            for (size_t i = 0; i < t.args.size(); ++i) {
                if (i) out += ',';
                render(t.args[i], out);
            }
            out += ']';
            break;
        case TermKind::Compound:
            out += t.text;
            out += '(';
            for (size_t i = 0; i < t.args.size(); ++i) {
                if (i) out += ',';
                render(t.args[i], out);
            }
            out += ')';
            break;
    }
}

std::string to_text(const Term& t) {
    std::string out;
    render(t, out);
    return out;
}

int compare(const Term& a, const Term& b) {
    return to_text(a).compare(to_text(b));
}

bool term_less(const Term& a, const Term& b) { return compare(a, b) < 0; }

bool is_ground(const Term& t) {
    if (t.is_var()) return false;
    for (const auto& a : t.args)
        if (!is_ground(a)) return false;
    return true;
}

}  // namespace geoproof
