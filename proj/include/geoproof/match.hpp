#pragma once

#include <functional>
#include <map>
#include <string>

#include "geoproof/referential.hpp"
#include "geoproof/term.hpp"

namespace geoproof {

// One-way pattern matching: patterns may hold variables, the subject is
// always a ground canonical term. Constructors with symmetries match modulo
// their symmetry group (unordered pairs, angle arm swap, triangle
// permutations, quad rotations/reflections), and a pattern point list matches
// any injective assignment into the subject's list, which is how a rule names
// "two points of this line".

using Bindings = std::map<std::string, Term>;

/// Calls yield once per distinct way of matching pattern against ground,
/// each time with base extended by the new variable bindings.
void match_term(const Term& pattern, const Term& ground, const Bindings& base,
                const std::function<void(const Bindings&)>& yield);

/// Replaces variables by their bindings. Throws std::logic_error on an
/// unbound variable (rule validation rules that out for rule patterns).
Term substitute(const Term& pattern, const Bindings& b);

/// Folds +, -, *, /, sqrt over numbers, bottom-up. Non-arithmetic structure
/// is left untouched; a non-finite result (division by zero, sqrt of a
/// negative) stays in place as a non-finite number for the caller to reject.
Term fold_arithmetic(Term t);

/// Evaluates a ground arithmetic expression to a number; throws
/// std::invalid_argument if the term does not fold to one.
double eval_number(const Term& expr);

/// Relative comparison used everywhere tolerance matters:
/// |a-b| / max(|a|,|b|) <= tol, and two exact zeros are equal.
bool nearly_equal(double a, double b, double tol);

/// Checks one guard under a complete binding set.
bool eval_guard(const Guard& g, const Bindings& b, double tolerance);

}  // namespace geoproof
