#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geoproof/diagnostics.hpp"
#include "geoproof/model.hpp"

namespace geoproof {

class Referential;

// An encoded problem. Implicit hypotheses declare the figure (points, lines,
// circles); explicit hypotheses are given statements; auxiliary hypotheses
// are construction elements added on top of the original figure. Every list
// is kept sorted by canonical text, which parse_problem establishes.
struct Problem {
    std::vector<Statement> implicit_hypotheses;
    std::vector<Statement> explicit_hypotheses;
    std::vector<Statement> auxiliary_hypotheses;
    Statement conclusion;
    std::vector<Angle> useful_angles;  // declared via usefulAngle facts, sorted, unique
    std::vector<std::pair<std::string, std::string>> dictionary;  // entity text -> alias

    /// All hypotheses in seeding order: implicit, explicit, auxiliary.
    std::vector<Statement> hypotheses() const;

    /// Declared useful angles plus every angle mentioned in an explicit or
    /// auxiliary hypothesis or in the conclusion. This is the set the engine
    /// gates angle creation against.
    std::vector<Angle> all_useful_angles() const;
};

struct ParsedProblem {
    std::optional<Problem> problem;  // absent when any diagnostic is an error
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return problem.has_value(); }
};

/// Parses the fact syntax: hypothese(...)., auxiliary(...)., conclusion(...).,
/// usefulAngle([..],v,[..])., dictionary(entity,"alias").  Collects every
/// diagnostic it can instead of stopping at the first.
ParsedProblem parse_problem(const std::string& text);

/// Canonical file form; parse_problem(serialize_problem(p)) reproduces p.
std::string serialize_problem(const Problem& p);

/// Referential-aware lint: warnings for promoted useful angles, useful angles
/// that do not sit on declared lines, alias collisions, duplicate
/// measurements, and a conclusion no rule can ever produce.
std::vector<Diagnostic> validate_problem(const Problem& p, const Referential& r);

}  // namespace geoproof
