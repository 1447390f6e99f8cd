#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "geoproof/model.hpp"
#include "geoproof/problem.hpp"
#include "geoproof/referential.hpp"

namespace geoproof {

enum class Origin { Implicit, Explicit, Auxiliary, Derived };

std::string origin_name(Origin o);

// One rule application: ground premises (in rule order) to ground result.
// Justification and granularity are copied from the rule so a knowledge base
// or graph stands alone.
struct Inference {
    Statement result;
    std::string rule_id;
    std::string justification;
    Granularity granularity = Granularity::Low;
    std::vector<Statement> premises;

    /// Identity key: rule, premise multiset, result.
    std::string key() const;
};

enum class ExplorationOrder { Fifo, Lifo, Random };

struct EngineConfig {
    double tolerance = 0.01;       // relative duplication tolerance, valid in (0, 0.1]
    size_t max_statements = 100000;
    bool allow_reversal = false;   // display option: accept reversed angle names
    ExplorationOrder order = ExplorationOrder::Fifo;
    unsigned random_seed = 0;      // used by ExplorationOrder::Random
    bool useful_angle_gating = true;
    std::ostream* trace = nullptr;
};

struct SaturationStats {
    size_t statements = 0;
    size_t hypotheses = 0;
    size_t inferences = 0;
    size_t matcher_invocations = 0;  // (explored statement, rule, premise position) triples
    size_t gated_results = 0;        // results dropped for naming a non-useful angle
    size_t value_reuses = 0;         // results rewritten to an already registered value
    size_t skipped_degenerate = 0;   // results dropped as geometrically invalid
};

class SaturationLimitError : public std::runtime_error {
public:
    explicit SaturationLimitError(size_t cap)
        : std::runtime_error("statement cap exceeded (max_statements = " + std::to_string(cap) +
                             ")"),
          cap(cap) {}
    size_t cap;
};

struct StatementEntry {
    Statement stmt;
    Origin origin = Origin::Derived;
};

// Ground facts plus every recorded rule application. Duplicate statements are
// impossible by construction; a statement that acquires further derivations
// keeps one entry and gains inferences.
class KnowledgeBase {
public:
    int add_statement(const Statement& s, Origin origin);  // returns index, dedups
    bool contains(const Statement& s) const { return index_.count(s.text()) > 0; }
    int find(const std::string& canonical_text) const;  // -1 when absent

    const std::vector<StatementEntry>& statements() const { return entries_; }
    const std::vector<int>& with_predicate(const std::string& pred) const;

    bool add_inference(const Inference& inf);  // false if already recorded
    bool has_inference(const std::string& key) const { return inference_keys_.count(key) > 0; }
    const std::vector<Inference>& inferences() const { return inferences_; }

    void set_useful_angles(std::vector<Angle> angles);
    const std::vector<Angle>& useful_angles() const { return useful_angles_; }

    const std::map<std::string, Value>& value_registry() const { return values_; }

    friend Value register_value(KnowledgeBase& kb, const Term& entity, Value v);

private:
    std::vector<StatementEntry> entries_;
    std::unordered_map<std::string, int> index_;
    std::unordered_map<std::string, std::vector<int>> by_predicate_;
    std::vector<Inference> inferences_;
    std::unordered_set<std::string> inference_keys_;
    std::map<std::string, Value> values_;  // canonical entity text -> first registered value
    std::vector<Angle> useful_angles_;     // sorted
};

/// True when the two measurements agree within the relative tolerance
/// (|a-b| / max(|a|,|b|) <= tol; two zeros are equal). Throws ModelError with
/// code UnitMismatch when the units differ.
bool values_equal(const Value& a, const Value& b, double tolerance);

/// First result wins: if the entity already has a value, v is discarded and
/// the registered value returned; otherwise v is stored and returned.
Value register_value(KnowledgeBase& kb, const Term& entity, Value v);

/// Every inference, not already recorded, that uses new_premise in at least
/// one premise slot and whose other premises are present in kb. Applies
/// guards, the useful-angle gate and the value policy; may register values.
std::vector<Inference> infer_using(const Statement& new_premise, KnowledgeBase& kb,
                                   const Referential& r, const EngineConfig& cfg);

struct SaturationResult {
    KnowledgeBase kb;
    bool conclusion_reached = false;
    SaturationStats stats;
};

/// Runs forward chaining to the least fixed point: every derivable statement
/// and every distinct inference is present when it returns. Exploration order
/// never changes the outcome, only the discovery sequence. Throws
/// SaturationLimitError past cfg.max_statements and std::invalid_argument for
/// a tolerance outside (0, 0.1].
SaturationResult saturate(const Problem& p, const Referential& r, const EngineConfig& cfg = {});

}  // namespace geoproof
