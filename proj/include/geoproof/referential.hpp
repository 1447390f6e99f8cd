#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geoproof/diagnostics.hpp"
#include "geoproof/term.hpp"

namespace geoproof {

enum class Granularity { Low, High };

std::string granularity_name(Granularity g);

// Side conditions of a rule, checked once a full premise binding exists.
struct Guard {
    enum class Kind {
        Distinct,  // all arguments pairwise different after substitution
        On,        // point membership in a point list (or line entity)
        Compare,   // arithmetic comparison between two expressions
    };
    enum class Cmp { Approx, Lt, Gt, Le, Ge };

    Kind kind = Kind::Distinct;
    std::vector<Term> args;  // Distinct / On arguments
    Term lhs, rhs;           // Compare operands
    Cmp cmp = Cmp::Approx;
};

// One inference rule. A geometric property often needs several rules, one per
// structurally distinct premise shape; those share the justification sentence
// that proofs display.
struct PropertyRule {
    std::string id;
    std::string justification;
    Granularity granularity = Granularity::Low;
    std::vector<Term> premises;  // patterns, matched in declared order
    std::vector<Guard> guards;
    Term result;  // pattern; value(...) positions may hold arithmetic
};

struct PremiseRef {
    int rule = 0;      // index into rules()
    int position = 0;  // premise slot with the given predicate
    auto operator<=>(const PremiseRef&) const = default;
};

// An immutable rule set plus the premise index that drives triggering: for
// every predicate, each (rule, position) where a statement of that predicate
// can appear as a premise.
class Referential {
public:
    Referential() = default;
    explicit Referential(std::vector<PropertyRule> rules);

    const std::vector<PropertyRule>& rules() const { return rules_; }
    const PropertyRule* find(const std::string& id) const;

    /// Every premise slot a statement with this predicate can fill.
    const std::vector<PremiseRef>& rules_using(const std::string& predicate) const;

private:
    std::vector<PropertyRule> rules_;
    std::map<std::string, std::vector<PremiseRef>> index_;
};

struct ParsedReferential {
    std::optional<Referential> referential;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return referential.has_value(); }
};

/// Parses the rule text format:
///   rule <id> granularity <low|high>
///   premises { <pattern>. ... }
///   [guards { <guard>. ... }]
///   result <pattern>
///   justification "<sentence>".
/// Uppercase-initial identifiers are variables. Every variable in guards or
/// the result must be bound by some premise. Empty text yields an empty,
/// valid referential.
ParsedReferential parse_rules(const std::string& text);

/// The built-in rule set (authored in the same rule text format).
const Referential& builtin_referential();

}  // namespace geoproof
