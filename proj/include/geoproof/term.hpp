#pragma once

#include <string>
#include <vector>

namespace geoproof {

// First-order terms in the Prolog-like surface syntax. Ground terms make up
// statements and problem files; variables only ever appear in rule patterns.
enum class TermKind { Atom, Number, Var, List, Compound };

struct Term {
    TermKind kind = TermKind::Atom;
    std::string text;        // atom name, variable name, or compound functor
    double num = 0.0;        // valid when kind == Number
    std::vector<Term> args;  // list elements or compound arguments

    static Term atom(std::string name);
    static Term number(double value);
    static Term var(std::string name);
    static Term list(std::vector<Term> elems);
    static Term compound(std::string functor, std::vector<Term> args);

    bool is_atom() const { return kind == TermKind::Atom; }
    bool is_number() const { return kind == TermKind::Number; }
    bool is_var() const { return kind == TermKind::Var; }
    bool is_list() const { return kind == TermKind::List; }
    bool is_compound() const { return kind == TermKind::Compound; }
    bool is_compound(const std::string& functor) const {
        return kind == TermKind::Compound && text == functor;
    }

    bool operator==(const Term& other) const;
    bool operator!=(const Term& other) const { return !(*this == other); }
};

/// Renders numbers in shortest round-trip form; integral values print without
/// a decimal point so value(90) survives a parse/serialize cycle unchanged.
std::string render_number(double v);

/// Deterministic textual form, e.g. perp(line([a,b]),line([a,c])). Equal terms
/// render equally; canonical statements use this as their identity key.
std::string to_text(const Term& t);

/// Total order consistent with to_text, without building the strings.
int compare(const Term& a, const Term& b);

bool term_less(const Term& a, const Term& b);

/// True if the term contains no variables anywhere.
bool is_ground(const Term& t);

}  // namespace geoproof
