#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "geoproof/term.hpp"

namespace geoproof {

enum class Unit { Degrees, Length, Ratio };

struct Value {
    double magnitude = 0.0;
    Unit unit = Unit::Degrees;
};

// Raised by canonicalization and value handling. The code tells callers (the
// problem codec mostly) which diagnostic to emit.
enum class ModelErrorCode {
    InvalidEntity,
    UnknownPredicate,
    ArityMismatch,
    InvalidValue,
    UnitMismatch,
};

class ModelError : public std::runtime_error {
public:
    ModelError(ModelErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ModelErrorCode code() const { return code_; }

private:
    ModelErrorCode code_;
};

/// Point names are lowercase-initial identifiers; the constants of the term
/// language. Lines, angles etc. are built from them.
using PointId = std::string;

bool is_valid_point_name(const std::string& s);

// A line is identified by every named point on it, kept sorted and distinct.
// Segments and lines are the same drawn object; a segment names the two
// endpoints of a measurable span.
struct Line {
    std::vector<PointId> points;  // sorted, unique, size >= 2
    auto operator<=>(const Line&) const = default;
};

struct Segment {
    std::array<PointId, 2> endpoints;  // sorted, distinct
    auto operator<=>(const Segment&) const = default;
};

// A ray is half of an angle: the vertex plus every named point on its side.
struct Ray {
    PointId vertex;
    std::vector<PointId> side;  // sorted, unique, nonempty, excludes vertex
    auto operator<=>(const Ray&) const = default;
};

// Unoriented angle: two rays out of a shared vertex. The lexicographically
// smaller side list is stored on the left, which makes the identity unique.
struct Angle {
    std::vector<PointId> left;
    PointId vertex;
    std::vector<PointId> right;
    auto operator<=>(const Angle&) const = default;
};

struct Triangle {
    std::array<PointId, 3> vertices;  // sorted, distinct
    auto operator<=>(const Triangle&) const = default;
};

// Vertices in cycle order; canonical form is the least rotation/reflection,
// so quad(b,c,d,a) and quad(a,d,c,b) both denote quad(a,b,c,d).
struct Quad {
    std::array<PointId, 4> vertices;
    auto operator<=>(const Quad&) const = default;
};

/// Entity constructors and conversions. All throw ModelError on malformed
/// input (too few points, duplicate vertices, vertex inside an arm, ...).
Line canonicalize_line(std::vector<PointId> points);
Segment make_segment(PointId a, PointId b);
Angle canonicalize_angle(std::vector<PointId> left, PointId vertex, std::vector<PointId> right);
Triangle canonicalize_triangle(std::array<PointId, 3> vertices);
Quad canonicalize_quad(std::array<PointId, 4> vertices);

Term to_term(const Line&);
Term to_term(const Segment&);
Term to_term(const Angle&);
Term to_term(const Triangle&);
Term to_term(const Quad&);

Line line_from_term(const Term&);
Angle angle_from_term(const Term&);

/// Every display name of an angle: one point per arm around the vertex, e.g.
/// angle([a,d],b,[c,e]) yields {abc, abe, dbc, dbe}; with reversal also the
/// mirror images. Size is |left|*|right|*(reversal ? 2 : 1).
std::vector<std::string> angle_names(const Angle&, bool allow_reversal);

/// Ordered two-point names of a line: n*(n-1) of them.
std::vector<std::string> line_names(const Line&);

// Argument kinds a statement position can take, used to canonicalize and to
// validate arity against the predicate vocabulary.
enum class ArgKind {
    Point,
    PointList,  // bare list of points (the line declaration argument)
    LineEntity,
    SegmentEntity,
    AngleEntity,
    TriangleEntity,
    QuadEntity,
    CircleEntity,
    ValueEntity,
};

struct PredicateSig {
    std::string name;
    std::vector<ArgKind> args;
    bool symmetric = false;     // first two arguments form an unordered pair
    Unit value_unit = Unit::Degrees;  // meaningful when has_value
    bool has_value = false;     // measurement predicate (angleValue, segmentLength)
};

/// Vocabulary lookup; nullptr when the predicate is unknown.
const PredicateSig* find_predicate(const std::string& name);

/// All predicate signatures, in a stable order.
const std::vector<PredicateSig>& predicate_vocabulary();

// A ground statement in canonical form. Identity, hashing and file output all
// go through text(), which equal statements share.
class Statement {
public:
    Statement() = default;

    const Term& term() const { return term_; }
    const std::string& text() const { return text_; }
    const std::string& predicate() const { return term_.text; }
    const std::vector<Term>& args() const { return term_.args; }

    /// The measured entity and value for angleValue/segmentLength statements.
    std::optional<std::pair<Term, Value>> measurement() const;

    bool operator==(const Statement& o) const { return text_ == o.text_; }
    bool operator!=(const Statement& o) const { return text_ != o.text_; }
    bool operator<(const Statement& o) const { return text_ < o.text_; }

private:
    friend Statement canonicalize_statement(const Term&);
    Term term_;
    std::string text_;
};

/// Validates a ground term against the vocabulary and rewrites every entity
/// inside it to canonical form (lines sorted, symmetric arguments ordered,
/// quads rotated/reflected minimal, ...). Throws ModelError.
Statement canonicalize_statement(const Term& t);

/// Canonicalizes an entity term in isolation (the ArgKind names the expected
/// shape). Used for statement arguments, useful-angle declarations and the
/// value registry keys.
Term canonicalize_entity(const Term& t, ArgKind kind);

}  // namespace geoproof
