#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "geoproof/engine.hpp"
#include "geoproof/parse.hpp"
#include "support/fixtures.hpp"
#include "support/naive_engine.hpp"

using namespace geoproof;
using testsupport::load_problem;

static Statement stmt(const std::string& text) {
    return canonicalize_statement(parse::parse_term_text(text));
}

TEST_CASE("knowledge base dedups statements and indexes by predicate") {
    KnowledgeBase kb;
    int i = kb.add_statement(stmt("point(a)"), Origin::Implicit);
    int j = kb.add_statement(stmt("point(a)"), Origin::Derived);
    CHECK(i == j);
    CHECK(kb.statements().size() == 1);
    CHECK(kb.statements()[0].origin == Origin::Implicit);  // first entry wins
    kb.add_statement(stmt("point(b)"), Origin::Implicit);
    CHECK(kb.with_predicate("point").size() == 2);
    CHECK(kb.with_predicate("line").empty());
    CHECK(kb.find("point(a)") == 0);
    CHECK(kb.find("point(z)") == -1);
}

TEST_CASE("inference keys ignore premise order") {
    Inference a{stmt("point(c)"), "r", "j", Granularity::Low,
                {stmt("point(a)"), stmt("point(b)")}};
    Inference b{stmt("point(c)"), "r", "j", Granularity::Low,
                {stmt("point(b)"), stmt("point(a)")}};
    CHECK(a.key() == b.key());
    KnowledgeBase kb;
    CHECK(kb.add_inference(a));
    CHECK(!kb.add_inference(b));
    CHECK(kb.inferences().size() == 1);
}

TEST_CASE("values_equal applies the relative tolerance and checks units") {
    CHECK(values_equal({90, Unit::Degrees}, {90.5, Unit::Degrees}, 0.01));
    CHECK(!values_equal({90, Unit::Degrees}, {92, Unit::Degrees}, 0.01));
    CHECK(values_equal({0, Unit::Length}, {0, Unit::Length}, 0.01));
    CHECK_THROWS_AS(values_equal({1, Unit::Degrees}, {1, Unit::Length}, 0.01), ModelError);
}

TEST_CASE("register_value keeps the first registration") {
    KnowledgeBase kb;
    Term entity = parse::parse_term_text("segment(a,b)");
    Value first = register_value(kb, entity, {5.0, Unit::Length});
    CHECK(first.magnitude == 5.0);
    Value again = register_value(kb, entity, {5.003, Unit::Length});
    CHECK(again.magnitude == 5.0);
    CHECK(kb.value_registry().size() == 1);
}

TEST_CASE("infer_using applies a rule when the new premise completes it") {
    KnowledgeBase kb;
    Statement perp = stmt("perp(line([a,b]),line([a,c]))");
    kb.add_statement(perp, Origin::Explicit);
    kb.add_statement(stmt("triangle(a,b,c)"), Origin::Implicit);

    auto infs = infer_using(perp, kb, builtin_referential(), {});
    REQUIRE(infs.size() == 1);  // the right-angle result is gated, nothing is useful yet
    CHECK(infs[0].rule_id == "rightTrPerp");
    CHECK(infs[0].result.text() == "rightTriangle(triangle(a,b,c),a)");
    REQUIRE(infs[0].premises.size() == 2);
    CHECK(infs[0].premises[0] == perp);  // premises keep rule order
    CHECK(infs[0].premises[1].text() == "triangle(a,b,c)");
}

TEST_CASE("gating off lets constructed angles through") {
    KnowledgeBase kb;
    Statement perp = stmt("perp(line([a,b]),line([a,c]))");
    kb.add_statement(perp, Origin::Explicit);
    EngineConfig cfg;
    cfg.useful_angle_gating = false;
    auto infs = infer_using(perp, kb, builtin_referential(), cfg);
    REQUIRE(infs.size() == 1);
    CHECK(infs[0].rule_id == "perpAngle");
    CHECK(infs[0].result.text() == "angleValue(angle([b],a,[c]),value(90))");
}

TEST_CASE("infer_using requires the premise to be in the base") {
    KnowledgeBase kb;
    CHECK_THROWS_AS(infer_using(stmt("point(a)"), kb, builtin_referential(), {}),
                    std::invalid_argument);
}

TEST_CASE("recorded inferences are not produced again") {
    KnowledgeBase kb;
    Statement perp = stmt("perp(line([a,b]),line([a,c]))");
    kb.add_statement(perp, Origin::Explicit);
    kb.add_statement(stmt("triangle(a,b,c)"), Origin::Implicit);
    auto first = infer_using(perp, kb, builtin_referential(), {});
    REQUIRE(first.size() == 1);
    kb.add_inference(first[0]);
    kb.add_statement(first[0].result, Origin::Derived);
    CHECK(infer_using(perp, kb, builtin_referential(), {}).empty());
}

TEST_CASE("saturation reaches the conclusion and a true fixed point") {
    Problem p = load_problem("micro_parallel.problem");
    SaturationResult res = saturate(p, builtin_referential());
    CHECK(res.conclusion_reached);
    CHECK(res.stats.statements == res.stats.hypotheses + 1);
    CHECK(res.stats.inferences == 1);
    // Fixed point: no statement can produce anything new.
    for (const auto& e : res.kb.statements())
        CHECK(infer_using(e.stmt, res.kb, builtin_referential(), {}).empty());
}

TEST_CASE("each (statement, rule, position) triple triggers exactly once") {
    for (const char* name : {"micro_parallel.problem", "rectangle.problem",
                             "micro_pythagoras345.problem"}) {
        Problem p = load_problem(name);
        SaturationResult res = saturate(p, builtin_referential());
        size_t expected = 0;
        for (const auto& e : res.kb.statements())
            expected += builtin_referential().rules_using(e.stmt.predicate()).size();
        CHECK(res.stats.matcher_invocations == expected);
    }
}

TEST_CASE("exploration order does not change the result sets") {
    Problem p = load_problem("rectangle.problem");
    SaturationResult fifo = saturate(p, builtin_referential());
    EngineConfig lifo_cfg;
    lifo_cfg.order = ExplorationOrder::Lifo;
    SaturationResult lifo = saturate(p, builtin_referential(), lifo_cfg);
    EngineConfig rnd_cfg;
    rnd_cfg.order = ExplorationOrder::Random;
    rnd_cfg.random_seed = 7;
    SaturationResult rnd = saturate(p, builtin_referential(), rnd_cfg);
    CHECK(testsupport::statement_texts(fifo.kb) == testsupport::statement_texts(lifo.kb));
    CHECK(testsupport::statement_texts(fifo.kb) == testsupport::statement_texts(rnd.kb));
    CHECK(testsupport::inference_keys(fifo.kb) == testsupport::inference_keys(lifo.kb));
    CHECK(testsupport::inference_keys(fifo.kb) == testsupport::inference_keys(rnd.kb));
}

TEST_CASE("the naive oracle agrees with the engine") {
    for (const char* name :
         {"micro_parallel.problem", "micro_right_triangle.problem",
          "micro_supplementary.problem", "micro_isosceles.problem", "rectangle.problem"}) {
        Problem p = load_problem(name);
        SaturationResult engine = saturate(p, builtin_referential());
        testsupport::NaiveResult naive = testsupport::naive_saturate(p, builtin_referential());
        CHECK(testsupport::statement_texts(engine.kb) == testsupport::statement_texts(naive.kb));
        CHECK(testsupport::inference_keys(engine.kb) == testsupport::inference_keys(naive.kb));
    }
}

TEST_CASE("value policy rewrites rederivations to the registered value") {
    // Same 3-4-5 triangle, but the hypotenuse is measured as 5.003 up front.
    Problem p = load_problem("micro_pythagoras345.problem");
    Problem q = p;
    q.explicit_hypotheses.push_back(stmt("segmentLength(segment(b,c),value(5.003))"));
    std::sort(q.explicit_hypotheses.begin(), q.explicit_hypotheses.end());
    SaturationResult res = saturate(q, builtin_referential());
    CHECK(res.kb.find("segmentLength(segment(b,c),value(5.003))") >= 0);
    CHECK(res.kb.find("segmentLength(segment(b,c),value(5))") == -1);
    CHECK(res.stats.value_reuses >= 1);
    int bc_measurements = 0;
    for (const auto& e : res.kb.statements()) {
        auto m = e.stmt.measurement();
        if (m && to_text(m->first) == "segment(b,c)") ++bc_measurements;
    }
    CHECK(bc_measurements == 1);
}

TEST_CASE("degenerate results are skipped, not fatal") {
    // 180-degree angle pair: the quad angle-sum result would be value(0),
    // outside the open (0, 360) range, so it is dropped and counted.
    ParsedProblem pp = parse_problem(
        "hypothese(point(a)).hypothese(point(b)).hypothese(point(c)).hypothese(point(d)).\n"
        "hypothese(line([a,b])).hypothese(line([b,c])).hypothese(line([c,d])).\n"
        "hypothese(line([a,d])).\n"
        "hypothese(isAQuad(quad(a,b,c,d))).\n"
        "hypothese(angleValue(angle([d],a,[b]), value(150))).\n"
        "hypothese(angleValue(angle([a],b,[c]), value(150))).\n"
        "hypothese(angleValue(angle([b],c,[d]), value(60))).\n"
        "usefulAngle([c], d, [a]).\n"
        "conclusion(parallelogram(quad(a,b,c,d))).\n");
    REQUIRE(pp.ok());
    SaturationResult res = saturate(*pp.problem, builtin_referential());
    CHECK(!res.conclusion_reached);
    CHECK(res.stats.skipped_degenerate >= 1);
    CHECK(res.kb.find("angleValue(angle([a],d,[c]),value(0))") == -1);
}

TEST_CASE("statement cap raises a resource error") {
    Problem p = load_problem("rectangle.problem");
    EngineConfig cfg;
    cfg.max_statements = 15;
    CHECK_THROWS_AS(saturate(p, builtin_referential(), cfg), SaturationLimitError);
}

TEST_CASE("tolerance outside (0, 0.1] is rejected") {
    Problem p = load_problem("micro_parallel.problem");
    EngineConfig zero;
    zero.tolerance = 0.0;
    CHECK_THROWS_AS(saturate(p, builtin_referential(), zero), std::invalid_argument);
    EngineConfig wide;
    wide.tolerance = 0.3;
    CHECK_THROWS_AS(saturate(p, builtin_referential(), wide), std::invalid_argument);
}

TEST_CASE("angle gating keeps undeclared angles out of the base") {
    Problem p = load_problem("fan.problem");
    SaturationResult gated = saturate(p, builtin_referential());
    CHECK(gated.stats.gated_results > 0);
    std::set<std::string> useful_texts;
    for (const Angle& a : gated.kb.useful_angles()) useful_texts.insert(to_text(to_term(a)));
    std::function<void(const Term&)> walk = [&](const Term& t) {
        if (t.is_compound("angle")) CHECK(useful_texts.count(to_text(t)) == 1);
        for (const auto& arg : t.args) walk(arg);
    };
    for (const auto& e : gated.kb.statements()) walk(e.stmt.term());

    EngineConfig open;
    open.useful_angle_gating = false;
    SaturationResult ungated = saturate(p, builtin_referential(), open);
    CHECK(ungated.stats.statements > gated.stats.statements);
    CHECK(ungated.stats.gated_results == 0);
}

TEST_CASE("trace logs one line per inference") {
    Problem p = load_problem("micro_parallel.problem");
    std::ostringstream trace;
    EngineConfig cfg;
    cfg.trace = &trace;
    SaturationResult res = saturate(p, builtin_referential(), cfg);
    std::string log = trace.str();
    CHECK(std::count(log.begin(), log.end(), '\n') == (long)res.stats.inferences);
    CHECK(log.find("perpPerpParallel") != std::string::npos);
    CHECK(log.find("=> parallel(line([a,b]),line([c,d]))") != std::string::npos);
}
