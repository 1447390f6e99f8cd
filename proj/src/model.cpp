#include "geoproof/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace geoproof {

bool is_valid_point_name(const std::string& s) {
    if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

static ModelError invalid(const std::string& what) {
    return ModelError(ModelErrorCode::InvalidEntity, what);
}

static std::vector<PointId> sorted_unique_points(std::vector<PointId> pts, const char* what) {
    for (const auto& p : pts)
        if (!is_valid_point_name(p)) throw invalid(std::string(what) + ": bad point name '" + p + "'");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

Line canonicalize_line(std::vector<PointId> points) {
    auto pts = sorted_unique_points(std::move(points), "line");
    if (pts.size() < 2) throw invalid("line needs at least two distinct points");
    return Line{std::move(pts)};
}

Segment make_segment(PointId a, PointId b) {
    if (!is_valid_point_name(a) || !is_valid_point_name(b))
        throw invalid("segment: bad point name");
    if (a == b) throw invalid("segment endpoints must differ");
    if (b < a) std::swap(a, b);
    return Segment{{std::move(a), std::move(b)}};
}

Angle canonicalize_angle(std::vector<PointId> left, PointId vertex, std::vector<PointId> right) {
    if (!is_valid_point_name(vertex)) throw invalid("angle: bad vertex name");
    auto l = sorted_unique_points(std::move(left), "angle");
    auto r = sorted_unique_points(std::move(right), "angle");
    if (l.empty() || r.empty()) throw invalid("angle arms must be nonempty");
    for (const auto& p : l)
        if (p == vertex) throw invalid("angle arm contains the vertex");
    for (const auto& p : r)
        if (p == vertex) throw invalid("angle arm contains the vertex");
    std::vector<PointId> both;
    std::set_intersection(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(both));
    if (!both.empty()) throw invalid("angle arms share point '" + both.front() + "'");
    if (r < l) std::swap(l, r);
    return Angle{std::move(l), std::move(vertex), std::move(r)};
}

Triangle canonicalize_triangle(std::array<PointId, 3> v) {
    for (const auto& p : v)
        if (!is_valid_point_name(p)) throw invalid("triangle: bad point name");
    std::sort(v.begin(), v.end());
    if (v[0] == v[1] || v[1] == v[2]) throw invalid("triangle vertices must be distinct");
    return Triangle{std::move(v)};
}

Quad canonicalize_quad(std::array<PointId, 4> v) {
    std::set<PointId> uniq;
    for (const auto& p : v) {
        if (!is_valid_point_name(p)) throw invalid("quad: bad point name");
        uniq.insert(p);
    }
    if (uniq.size() != 4) throw invalid("quad vertices must be distinct");
    // Least of the eight traversals of the 4-cycle.
    std::array<PointId, 4> best = v;
    auto consider = [&](const std::array<PointId, 4>& cand) {
        if (cand < best) best = cand;
    };
    std::array<PointId, 4> rev{v[3], v[2], v[1], v[0]};
    for (int s = 0; s < 4; ++s) {
        std::array<PointId, 4> a, b;
        for (int i = 0; i < 4; ++i) {
            a[i] = v[(s + i) % 4];
            b[i] = rev[(s + i) % 4];
        }
        consider(a);
        consider(b);
    }
    return Quad{std::move(best)};
}

static Term points_list(const std::vector<PointId>& pts) {
    std::vector<Term> elems;
    elems.reserve(pts.size());
    for (const auto& p : pts) elems.push_back(Term::atom(p));
    return Term::list(std::move(elems));
}

Term to_term(const Line& l) { return Term::compound("line", {points_list(l.points)}); }

Term to_term(const Segment& s) {
    return Term::compound("segment", {Term::atom(s.endpoints[0]), Term::atom(s.endpoints[1])});
}

Term to_term(const Angle& a) {
    return Term::compound("angle", {points_list(a.left), Term::atom(a.vertex), points_list(a.right)});
}

Term to_term(const Triangle& t) {
    return Term::compound("triangle", {Term::atom(t.vertices[0]), Term::atom(t.vertices[1]),
                                       Term::atom(t.vertices[2])});
}

Term to_term(const Quad& q) {
    return Term::compound("quad", {Term::atom(q.vertices[0]), Term::atom(q.vertices[1]),
                                   Term::atom(q.vertices[2]), Term::atom(q.vertices[3])});
}

static std::vector<PointId> atoms_of_list(const Term& t, const char* what) {
    if (!t.is_list()) throw invalid(std::string(what) + ": expected a point list");
    std::vector<PointId> pts;
    for (const auto& e : t.args) {
        if (!e.is_atom()) throw invalid(std::string(what) + ": list elements must be points");
        pts.push_back(e.text);
    }
    return pts;
}

Line line_from_term(const Term& t) {
    if (!t.is_compound("line") || t.args.size() != 1)
        throw invalid("expected line([...])");
    return canonicalize_line(atoms_of_list(t.args[0], "line"));
}

Angle angle_from_term(const Term& t) {
    if (!t.is_compound("angle") || t.args.size() != 3)
        throw invalid("expected angle([...],v,[...])");
    if (!t.args[1].is_atom()) throw invalid("angle vertex must be a point");
    return canonicalize_angle(atoms_of_list(t.args[0], "angle"), t.args[1].text,
                              atoms_of_list(t.args[2], "angle"));
}

std::vector<std::string> angle_names(const Angle& a, bool allow_reversal) {
    std::vector<std::string> names;
    names.reserve(a.left.size() * a.right.size() * (allow_reversal ? 2 : 1));
    for (const auto& l : a.left)
        for (const auto& r : a.right) names.push_back(l + a.vertex + r);
    if (allow_reversal)
        for (const auto& l : a.left)
            for (const auto& r : a.right) names.push_back(r + a.vertex + l);
    return names;
}

std::vector<std::string> line_names(const Line& l) {
    std::vector<std::string> names;
    names.reserve(l.points.size() * (l.points.size() - 1));
    for (const auto& p : l.points)
        for (const auto& q : l.points)
            if (p != q) names.push_back(p + q);
    return names;
}

const std::vector<PredicateSig>& predicate_vocabulary() {
    using K = ArgKind;
    static const std::vector<PredicateSig> vocab = [] {
        std::vector<PredicateSig> v;
        auto add = [&](std::string name, std::vector<K> args, bool sym = false) {
            v.push_back({std::move(name), std::move(args), sym, Unit::Degrees, false});
        };
        add("point", {K::Point});
        add("line", {K::PointList});
        add("circle", {K::Point});  // declares the circle's name, not a circle term
        add("triangle", {K::Point, K::Point, K::Point});
        add("isAQuad", {K::QuadEntity});
        add("perp", {K::LineEntity, K::LineEntity}, true);
        add("parallel", {K::LineEntity, K::LineEntity}, true);
        v.push_back({"angleValue", {K::AngleEntity, K::ValueEntity}, false, Unit::Degrees, true});
        v.push_back({"segmentLength", {K::SegmentEntity, K::ValueEntity}, false, Unit::Length, true});
        add("parallelogram", {K::QuadEntity});
        add("rectangle", {K::QuadEntity});
        add("rightTriangle", {K::TriangleEntity, K::Point});
        add("isosceles", {K::TriangleEntity, K::Point});
        add("adjacentAngles", {K::AngleEntity, K::AngleEntity}, true);
        add("supplementaryAngles", {K::AngleEntity, K::AngleEntity}, true);
        add("equalAngles", {K::AngleEntity, K::AngleEntity}, true);
        add("midpoint", {K::Point, K::SegmentEntity});
        add("perpBisector", {K::LineEntity, K::SegmentEntity});
        add("median", {K::LineEntity, K::TriangleEntity, K::Point});
        add("altitude", {K::LineEntity, K::TriangleEntity, K::Point});
        add("bisector", {K::LineEntity, K::TriangleEntity, K::Point});
        add("circumcenter", {K::Point, K::TriangleEntity});
        add("circleCenter", {K::CircleEntity, K::Point});
        add("onCircle", {K::CircleEntity, K::Point});
        return v;
    }();
    return vocab;
}

const PredicateSig* find_predicate(const std::string& name) {
    for (const auto& sig : predicate_vocabulary())
        if (sig.name == name) return &sig;
    return nullptr;
}

Term canonicalize_entity(const Term& t, ArgKind kind) {
    switch (kind) {
        case ArgKind::Point:
            if (!t.is_atom() || !is_valid_point_name(t.text))
                throw invalid("expected a point, got " + to_text(t));
            return t;
        case ArgKind::PointList: {
            auto pts = sorted_unique_points(atoms_of_list(t, "line"), "line");
            if (pts.size() < 2) throw invalid("line needs at least two distinct points");
            return points_list(pts);
        }
        case ArgKind::LineEntity:
            return to_term(line_from_term(t));
        case ArgKind::SegmentEntity: {
            if (!t.is_compound("segment") || t.args.size() != 2 || !t.args[0].is_atom() ||
                !t.args[1].is_atom())
                throw invalid("expected segment(p,q)");
            return to_term(make_segment(t.args[0].text, t.args[1].text));
        }
        case ArgKind::AngleEntity:
            return to_term(angle_from_term(t));
        case ArgKind::TriangleEntity: {
            if (!t.is_compound("triangle") || t.args.size() != 3)
                throw invalid("expected triangle(p,q,r)");
            std::array<PointId, 3> v;
            for (int i = 0; i < 3; ++i) {
                if (!t.args[i].is_atom()) throw invalid("triangle vertices must be points");
                v[i] = t.args[i].text;
            }
            return to_term(canonicalize_triangle(std::move(v)));
        }
        case ArgKind::QuadEntity: {
            if (!t.is_compound("quad") || t.args.size() != 4)
                throw invalid("expected quad(p,q,r,s)");
            std::array<PointId, 4> v;
            for (int i = 0; i < 4; ++i) {
                if (!t.args[i].is_atom()) throw invalid("quad vertices must be points");
                v[i] = t.args[i].text;
            }
            return to_term(canonicalize_quad(std::move(v)));
        }
        case ArgKind::CircleEntity: {
            if (!t.is_compound("circle") || t.args.size() != 1 || !t.args[0].is_atom() ||
                !is_valid_point_name(t.args[0].text))
                throw invalid("expected circle(name)");
            return t;
        }
        case ArgKind::ValueEntity: {
            if (!t.is_compound("value") || t.args.size() != 1 || !t.args[0].is_number())
                throw invalid("expected value(number)");
            if (!std::isfinite(t.args[0].num))
                throw ModelError(ModelErrorCode::InvalidValue, "value must be finite");
            return t;
        }
    }
    throw invalid("unreachable");
}

static const std::vector<PointId>& triangle_vertices_of(const Term& triangle, std::vector<PointId>& buf) {
    buf.clear();
    for (const auto& a : triangle.args) buf.push_back(a.text);
    return buf;
}

Statement canonicalize_statement(const Term& t) {
    if (!t.is_compound())
        throw ModelError(ModelErrorCode::UnknownPredicate,
                         "statement must be predicate(args): " + to_text(t));
    const PredicateSig* sig = find_predicate(t.text);
    if (!sig)
        throw ModelError(ModelErrorCode::UnknownPredicate, "unknown predicate '" + t.text + "'");
    if (t.args.size() != sig->args.size())
        throw ModelError(ModelErrorCode::ArityMismatch,
                         "'" + t.text + "' takes " + std::to_string(sig->args.size()) +
                             " arguments, got " + std::to_string(t.args.size()));

    Term canon = Term::compound(t.text, {});
    canon.args.reserve(t.args.size());
    for (size_t i = 0; i < t.args.size(); ++i)
        canon.args.push_back(canonicalize_entity(t.args[i], sig->args[i]));

    if (sig->has_value) {
        double v = canon.args[1].args[0].num;
        if (sig->value_unit == Unit::Degrees && (v <= 0.0 || v >= 360.0))
            throw ModelError(ModelErrorCode::InvalidValue,
                             "angle value must lie strictly between 0 and 360");
        if (sig->value_unit == Unit::Length && v <= 0.0)
            throw ModelError(ModelErrorCode::InvalidValue, "length must be positive");
    }

    if (sig->symmetric && compare(canon.args[1], canon.args[0]) < 0)
        std::swap(canon.args[0], canon.args[1]);

    if (t.text == "triangle")
        std::sort(canon.args.begin(), canon.args.end(), term_less);

    std::vector<PointId> buf;
    auto require_vertex_of = [&](const Term& tri, const Term& vertex) {
        triangle_vertices_of(tri, buf);
        if (std::find(buf.begin(), buf.end(), vertex.text) == buf.end())
            throw invalid("'" + vertex.text + "' is not a vertex of " + to_text(tri));
    };
    if (t.text == "rightTriangle" || t.text == "isosceles")
        require_vertex_of(canon.args[0], canon.args[1]);
    if (t.text == "median" || t.text == "altitude" || t.text == "bisector") {
        require_vertex_of(canon.args[1], canon.args[2]);
        const auto& linepts = canon.args[0].args[0].args;
        bool on = std::any_of(linepts.begin(), linepts.end(),
                              [&](const Term& p) { return p.text == canon.args[2].text; });
        if (!on) throw invalid("the line of a " + t.text + " must pass through its vertex");
    }
    if (t.text == "midpoint") {
        if (canon.args[0].text == canon.args[1].args[0].text ||
            canon.args[0].text == canon.args[1].args[1].text)
            throw invalid("a midpoint must differ from the segment endpoints");
    }
    if (t.text == "triangle") {
        if (canon.args[0] == canon.args[1] || canon.args[1] == canon.args[2])
            throw invalid("triangle vertices must be distinct");
    }

    Statement s;
    s.term_ = std::move(canon);
    s.text_ = to_text(s.term_);
    return s;
}

std::optional<std::pair<Term, Value>> Statement::measurement() const {
    const PredicateSig* sig = find_predicate(predicate());
    if (!sig || !sig->has_value) return std::nullopt;
    return std::make_pair(term_.args[0], Value{term_.args[1].args[0].num, sig->value_unit});
}

}  // namespace geoproof
