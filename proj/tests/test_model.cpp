#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geoproof/model.hpp"
#include "geoproof/parse.hpp"
#include "support/generators.hpp"

using namespace geoproof;

static Statement stmt(const std::string& text) {
    return canonicalize_statement(parse::parse_term_text(text));
}

TEST_CASE("line canonical form sorts and dedups") {
    Line l = canonicalize_line({"c", "a", "b", "a"});
    CHECK(l.points == std::vector<std::string>{"a", "b", "c"});
    CHECK(to_text(to_term(l)) == "line([a,b,c])");
    CHECK_THROWS_AS(canonicalize_line({"a"}), ModelError);
}

TEST_CASE("segment endpoints are ordered") {
    CHECK(make_segment("b", "a").endpoints == std::array<std::string, 2>{"a", "b"});
    CHECK_THROWS_AS(make_segment("a", "a"), ModelError);
}

TEST_CASE("angle stores the smaller arm on the left") {
    Angle a = canonicalize_angle({"d"}, "a", {"b"});
    CHECK(to_text(to_term(a)) == "angle([b],a,[d])");
    CHECK(a == canonicalize_angle({"b"}, "a", {"d"}));
    CHECK_THROWS_AS(canonicalize_angle({"a"}, "a", {"b"}), ModelError);   // vertex in arm
    CHECK_THROWS_AS(canonicalize_angle({"b"}, "a", {"b"}), ModelError);  // arms overlap
}

TEST_CASE("quad canonical form is the least of its eight traversals") {
    Quad q = canonicalize_quad({"c", "d", "a", "b"});
    CHECK(to_text(to_term(q)) == "quad(a,b,c,d)");
    CHECK(canonicalize_quad({"a", "d", "c", "b"}) == q);  // reflection
    CHECK(canonicalize_quad({"b", "c", "d", "a"}) == q);  // rotation
    // A different cycle is a different quad.
    CHECK(canonicalize_quad({"a", "c", "b", "d"}) != q);
    CHECK_THROWS_AS(canonicalize_quad({"a", "b", "c", "a"}), ModelError);
}

TEST_CASE("statement canonicalization orders symmetric arguments") {
    CHECK(stmt("perp(line([e,f]),line([a,b]))").text() == "perp(line([a,b]),line([e,f]))");
    CHECK(stmt("parallel(line([c,d]),line([a,b]))").text() ==
          stmt("parallel(line([a,b]),line([c,d]))").text());
    CHECK(stmt("equalAngles(angle([c],a,[d]),angle([b],a,[c]))").text() ==
          "equalAngles(angle([b],a,[c]),angle([c],a,[d]))");
    CHECK(stmt("segmentLength(segment(b,a),value(3))").text() ==
          "segmentLength(segment(a,b),value(3))");
}

TEST_CASE("statement canonicalization rejects bad input") {
    CHECK_THROWS_AS(stmt("congruent(segment(a,b),segment(c,d))"), ModelError);  // unknown
    CHECK_THROWS_AS(stmt("perp(line([a,b]))"), ModelError);                     // arity
    CHECK_THROWS_AS(stmt("angleValue(angle([b],a,[c]),value(0))"), ModelError);
    CHECK_THROWS_AS(stmt("angleValue(angle([b],a,[c]),value(360))"), ModelError);
    CHECK_THROWS_AS(stmt("segmentLength(segment(a,b),value(-1))"), ModelError);
    CHECK_THROWS_AS(stmt("rightTriangle(triangle(a,b,c),d)"), ModelError);  // vertex outside
    CHECK_THROWS_AS(stmt("midpoint(a,segment(a,b))"), ModelError);
    CHECK_THROWS_AS(stmt("median(line([a,m]),triangle(a,b,c),b)"), ModelError);  // b off line
}

TEST_CASE("measurement extraction") {
    auto m = stmt("angleValue(angle([b],a,[c]),value(45.5))").measurement();
    REQUIRE(m.has_value());
    CHECK(m->second.magnitude == doctest::Approx(45.5));
    CHECK(m->second.unit == Unit::Degrees);
    CHECK(!stmt("point(a)").measurement().has_value());
}

TEST_CASE("angle and line display names") {
    Angle a = canonicalize_angle({"a", "d"}, "b", {"c", "e"});
    auto names = angle_names(a, false);
    CHECK(names.size() == 4);
    auto with_rev = angle_names(a, true);
    CHECK(with_rev.size() == 8);
    Line l = canonicalize_line({"a", "b", "c"});
    CHECK(line_names(l).size() == 6);
}

TEST_CASE("vocabulary lookups") {
    REQUIRE(find_predicate("angleValue") != nullptr);
    CHECK(find_predicate("angleValue")->has_value);
    CHECK(find_predicate("angleValue")->value_unit == Unit::Degrees);
    CHECK(find_predicate("perp")->symmetric);
    CHECK(find_predicate("nonsense") == nullptr);
    CHECK(!predicate_vocabulary().empty());
}

TEST_CASE("canonicalization properties hold on random entities") {
    testsupport::Rng rng(20260814);
    for (int i = 0; i < 300; ++i) {
        Line l = testsupport::random_line(rng);
        CHECK(canonicalize_line(testsupport::shuffled(rng, l.points)) == l);
        CHECK(line_names(l).size() == l.points.size() * (l.points.size() - 1));

        Angle a = testsupport::random_angle(rng);
        CHECK(canonicalize_angle(a.right, a.vertex, a.left) == a);  // arm swap
        CHECK(canonicalize_angle(a.left, a.vertex, a.right) == a);  // idempotent
        CHECK(angle_names(a, false).size() == a.left.size() * a.right.size());
        CHECK(angle_names(a, true).size() == 2 * a.left.size() * a.right.size());

        Quad q = testsupport::random_quad(rng);
        for (int s = 0; s < 4; ++s) {
            auto v = q.vertices;
            std::array<std::string, 4> rot{v[(s + 0) % 4], v[(s + 1) % 4], v[(s + 2) % 4],
                                           v[(s + 3) % 4]};
            std::array<std::string, 4> rev{rot[0], rot[3], rot[2], rot[1]};
            CHECK(canonicalize_quad(rot) == q);
            CHECK(canonicalize_quad(rev) == q);
        }

        Triangle t = testsupport::random_triangle(rng);
        auto tv = testsupport::shuffled(
            rng, std::vector<std::string>(t.vertices.begin(), t.vertices.end()));
        CHECK(canonicalize_triangle({tv[0], tv[1], tv[2]}) == t);
    }
}

TEST_CASE("number rendering is stable and minimal") {
    CHECK(to_text(Term::number(90)) == "90");
    CHECK(to_text(Term::number(50.3)) == "50.3");
    CHECK(to_text(Term::number(-0.0)) == "0");
    CHECK(to_text(Term::number(1.0 / 3.0)) ==
          to_text(Term::number(std::stod(to_text(Term::number(1.0 / 3.0))))));
}
