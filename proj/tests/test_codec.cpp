#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geoproof/problem.hpp"
#include "geoproof/referential.hpp"

using namespace geoproof;

static const char* kSmall = R"(
% two perpendiculars
hypothese(point(a)).
hypothese(point(b)).
hypothese(point(c)).
hypothese(point(d)).
hypothese(point(e)).
hypothese(point(f)).
hypothese(line([a, b])).
hypothese(line([c, d])).
hypothese(line([e, f])).
hypothese(perp(line([a, b]), line([e, f]))).
hypothese(perp(line([c, d]), line([e, f]))).
conclusion(parallel(line([a, b]), line([c, d]))).
)";

TEST_CASE("a well-formed file parses and classifies hypotheses") {
    ParsedProblem p = parse_problem(kSmall);
    REQUIRE(p.ok());
    CHECK(p.diagnostics.empty());
    CHECK(p.problem->implicit_hypotheses.size() == 9);  // 6 points + 3 lines
    CHECK(p.problem->explicit_hypotheses.size() == 2);
    CHECK(p.problem->auxiliary_hypotheses.empty());
    CHECK(p.problem->conclusion.text() == "parallel(line([a,b]),line([c,d]))");
    CHECK(p.problem->hypotheses().size() == 11);
}

TEST_CASE("canonical entity spelling inside facts") {
    ParsedProblem p = parse_problem(
        "hypothese(point(a)).hypothese(point(b)).hypothese(point(c)).\n"
        "hypothese(line([c, a, b])).\n"
        "hypothese(angleValue(angle([c], b, [a]), value(30))).\n"
        "conclusion(angleValue(angle([a], b, [c]), value(30))).\n");
    REQUIRE(p.ok());
    bool found = false;
    for (const auto& h : p.problem->implicit_hypotheses)
        found |= h.text() == "line([a,b,c])";
    CHECK(found);
    CHECK(p.problem->explicit_hypotheses[0].text() ==
          "angleValue(angle([a],b,[c]),value(30))");
}

TEST_CASE("parse then serialize is the identity on the normal form") {
    ParsedProblem p1 = parse_problem(kSmall);
    REQUIRE(p1.ok());
    std::string text = serialize_problem(*p1.problem);
    ParsedProblem p2 = parse_problem(text);
    REQUIRE(p2.ok());
    CHECK(serialize_problem(*p2.problem) == text);
}

TEST_CASE("diagnostics carry codes and do not stop at the first problem") {
    ParsedProblem p = parse_problem(
        "hypothese(point(a)).\n"
        "hypothese(nonsense(a)).\n"
        "hypothese(perp(line([a,b]))).\n"
        "oops(point(b)).\n"
        "hypothese(angleValue(angle([b],a,[c]), value(400))).\n");
    CHECK(!p.ok());
    auto has = [&](const std::string& code) {
        for (const auto& d : p.diagnostics)
            if (d.code == code) return true;
        return false;
    };
    CHECK(has("unknown-predicate"));
    CHECK(has("arity-mismatch"));
    CHECK(has("syntax"));
    CHECK(has("invalid-value"));
    CHECK(has("no-conclusion"));
}

TEST_CASE("a fact that fails semantics does not swallow its neighbour") {
    ParsedProblem p = parse_problem(
        "hypothese(point(a)).hypothese(point(b)).hypothese(line([a,b])).\n"
        "hypothese(nonsense(a)).\n"
        "conclusion(parallel(line([a,b]),line([a,b]))).\n");
    CHECK(!p.ok());
    bool no_conclusion = false;
    for (const auto& d : p.diagnostics) no_conclusion |= d.code == "no-conclusion";
    CHECK(!no_conclusion);  // the conclusion right after the bad fact still counts
}

TEST_CASE("undeclared points and circles are reported") {
    ParsedProblem p = parse_problem(
        "hypothese(point(a)).hypothese(point(b)).\n"
        "hypothese(line([a, b, e])).\n"
        "hypothese(onCircle(circle(k), a)).\n"
        "conclusion(parallel(line([a,b]),line([a,b]))).\n");
    CHECK(!p.ok());
    int undeclared = 0;
    for (const auto& d : p.diagnostics)
        undeclared += d.code == "undeclared-point" || d.code == "undeclared-circle";
    CHECK(undeclared == 2);
}

TEST_CASE("duplicate conclusion and missing hypotheses are errors") {
    ParsedProblem p = parse_problem(
        "conclusion(point(a)).\n"
        "conclusion(point(b)).\n");
    CHECK(!p.ok());
    bool dup = false, nohyp = false;
    for (const auto& d : p.diagnostics) {
        dup |= d.code == "duplicate-conclusion";
        nohyp |= d.code == "no-hypotheses";
    }
    CHECK(dup);
    CHECK(nohyp);
}

TEST_CASE("useful angles: declared plus promoted") {
    ParsedProblem p = parse_problem(
        "hypothese(point(a)).hypothese(point(b)).hypothese(point(c)).hypothese(point(d)).\n"
        "hypothese(line([a,b])).hypothese(line([a,c])).hypothese(line([a,d])).\n"
        "hypothese(angleValue(angle([b],a,[c]), value(60))).\n"
        "usefulAngle([c], a, [d]).\n"
        "conclusion(angleValue(angle([b],a,[d]), value(120))).\n");
    REQUIRE(p.ok());
    CHECK(p.problem->useful_angles.size() == 1);  // declared only
    auto all = p.problem->all_useful_angles();
    CHECK(all.size() == 3);  // declared + hypothesis angle + conclusion angle
}

TEST_CASE("dictionary entries survive the round trip") {
    ParsedProblem p = parse_problem(
        "hypothese(point(a)).hypothese(point(b)).hypothese(line([a,b])).\n"
        "dictionary(line([a,b]), \"the base\").\n"
        "conclusion(point(a)).\n");
    REQUIRE(p.ok());
    REQUIRE(p.problem->dictionary.size() == 1);
    CHECK(p.problem->dictionary[0].second == "the base");
    ParsedProblem p2 = parse_problem(serialize_problem(*p.problem));
    REQUIRE(p2.ok());
    CHECK(p2.problem->dictionary == p.problem->dictionary);
}

TEST_CASE("validation warnings against the builtin referential") {
    ParsedProblem p = parse_problem(
        "hypothese(point(a)).hypothese(point(b)).hypothese(point(c)).\n"
        "hypothese(line([a,b])).\n"
        "hypothese(angleValue(angle([b],a,[c]), value(30))).\n"
        "hypothese(angleValue(angle([b],a,[c]), value(30.1))).\n"
        "conclusion(onCircle(circle(k), a)).\n"
        "hypothese(circle(k)).\n");
    REQUIRE(p.ok());
    auto diags = validate_problem(*p.problem, builtin_referential());
    auto has = [&](const std::string& code) {
        for (const auto& d : diags)
            if (d.code == code) return true;
        return false;
    };
    CHECK(has("duplicate-measurement"));
    CHECK(has("useful-angle-promoted"));
    CHECK(has("useful-angle-lines"));  // arm ac lies on no declared line
}
