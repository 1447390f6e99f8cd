#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "geoproof/engine.hpp"

namespace geoproof {

// The proof hypergraph: hypotheses, properties (as inference nodes carrying
// their justification), definitions, intermediate results and the conclusion.
// Statements and inferences form a bipartite graph; an inference points from
// its premises to its result. Everything valid that saturation found is kept;
// nodes that cannot contribute to any proof of the conclusion are retained
// and marked useless rather than dropped.

enum class NodeKind {
    ImplicitHypothesis,
    ExplicitHypothesis,
    AuxiliaryHypothesis,
    Intermediate,
    Conclusion,
};

std::string node_kind_name(NodeKind k);

struct StatementNode {
    Statement stmt;
    NodeKind kind = NodeKind::Intermediate;
    bool useful = false;
};

struct InferenceNode {
    std::string rule_id;
    std::string justification;
    Granularity granularity = Granularity::Low;
    std::vector<int> premises;  // statement indices, ascending
    int result = -1;            // statement index
    bool useful = false;
};

struct HpdicGraph {
    std::vector<StatementNode> statements;  // sorted by canonical text
    std::vector<InferenceNode> inferences;  // sorted by (result, rule, premises)
    int conclusion = -1;
    std::vector<std::pair<std::string, std::string>> dictionary;
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Builds the graph from a finished saturation. Node order is deterministic
/// regardless of exploration order. Throws GraphError when the conclusion was
/// not reached. Usefulness marks are computed before returning.
HpdicGraph construct_graph(const SaturationResult& res, const Statement& conclusion,
                           std::vector<std::pair<std::string, std::string>> dictionary = {});

/// Recomputes usefulness in place: the conclusion is useful, an inference is
/// useful iff its result is, premises of useful inferences are useful.
/// Idempotent.
void mark_useful(HpdicGraph& g);

/// Elementary cycles over the statement-to-statement derivation edges, each
/// reported once, rotated to start at its smallest statement index. Cycles
/// longer than max_len are not enumerated.
std::vector<std::vector<int>> detect_cycles(const HpdicGraph& g, size_t max_len = 8);

// A proof: one chosen inference per non-hypothesis statement, premise-closed
// and acyclic, deriving the conclusion.
struct Proof {
    std::map<int, int> choice;    // statement index -> inference index
    std::vector<int> statements;  // every included statement, ascending
};

/// Distinct proofs of the conclusion, at most limit of them, in a stable
/// order. Throws std::invalid_argument when limit is zero.
std::vector<Proof> enumerate_proofs(const HpdicGraph& g, size_t limit);

/// Versioned JSON form (schema_version 1). Deterministic: equal graphs
/// export byte-identically.
std::string export_json(const HpdicGraph& g);

/// Inverse of export_json; throws GraphError on malformed input.
HpdicGraph import_json(const std::string& text);

struct DotOptions {
    bool allow_reversal = false;  // include reversed display names on angle labels
};

/// Graphviz form: statements as boxes, inferences as ellipses labelled by
/// their justification, useless nodes dashed and gray.
std::string export_dot(const HpdicGraph& g, const DotOptions& opts = {});

}  // namespace geoproof
