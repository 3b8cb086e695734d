#include "oracle.hpp"
#include "random_bed.hpp"

#include "qacause/bound_query.hpp"
#include "qacause/datalog.hpp"
#include "qacause/error.hpp"
#include "qacause/golden.hpp"
#include "qacause/hitting_sets.hpp"

#include <gtest/gtest.h>

using namespace qacause;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::InvalidArgument;
}

FactSet bits(std::size_t n, std::initializer_list<std::size_t> on) {
    FactSet s(n);
    for (auto i : on)
        s.set(i);
    return s;
}

} // namespace

TEST(ParseProgram, ClassifiesPredicates) {
    const auto p = parse_program(golden::path_program());
    EXPECT_EQ(p.answer_predicate(), "Ans");
    EXPECT_EQ(p.answer_arity(), 2u);
    EXPECT_FALSE(p.is_boolean());
    EXPECT_TRUE(p.intensional().contains("P"));
    EXPECT_TRUE(p.extensional().contains("E"));
    EXPECT_FALSE(p.is_conjunctive());
    EXPECT_EQ(p.rules().size(), 3u);
}

TEST(ParseProgram, BooleanQueries) {
    const auto p = parse_program("ans <- R(x,y), S(y).");
    EXPECT_TRUE(p.is_boolean());
    EXPECT_TRUE(p.is_conjunctive());
    EXPECT_EQ(p.answer_predicate(), "ans");
    EXPECT_FALSE(parse_program("ans <- S(x).\nans <- R(x,x).").is_conjunctive());
}

TEST(ParseProgram, ExplicitAnswerPredicateAndConstants) {
    const auto p = parse_program("Q(x) <- R(x,\"a\"), S(3), x != y, T(y).", "Q");
    EXPECT_EQ(p.answer_predicate(), "Q");
    const auto& body = p.rules()[0].body;
    EXPECT_FALSE(body[0].terms[1].is_variable());
    EXPECT_EQ(body[0].terms[1].text, "a");
    EXPECT_FALSE(body[1].terms[0].is_variable());
    EXPECT_TRUE(body[2].is_builtin());
}

TEST(ParseProgram, RejectsBadPrograms) {
    EXPECT_EQ(code_of([] { parse_program("Ans(x) <- S(y)."); }), ErrorCode::UnsafeRule);
    EXPECT_EQ(code_of([] { parse_program("Ans(x) <- S(x), x != z."); }), ErrorCode::UnsafeRule);
    EXPECT_EQ(code_of([] { parse_program("Ans(x) <- S(x), S(x,y)."); }), ErrorCode::ArityConflict);
    EXPECT_EQ(code_of([] { parse_program("Ans(x) <- S(x"); }), ErrorCode::SyntaxError);
    EXPECT_EQ(code_of([] { parse_program("P(x) <- S(x)."); }), ErrorCode::SyntaxError);
    EXPECT_EQ(code_of([] { parse_program("Ans(x) <- S(x).", "Q"); }), ErrorCode::SyntaxError);
}

TEST(ParseProgram, RoundTripsThroughText) {
    const auto p = parse_program(golden::path_program());
    const auto again = parse_program(p.to_string());
    EXPECT_EQ(again.to_string(), p.to_string());
}

TEST(ParseGroundAtoms, ReadsConjunctions) {
    const auto g = parse_ground_atoms("ans");
    ASSERT_EQ(g.size(), 1u);
    EXPECT_EQ(g[0].predicate, "ans");
    EXPECT_TRUE(g[0].args.empty());
    const auto h = parse_ground_atoms("P(c,e), S(a1)");
    ASSERT_EQ(h.size(), 2u);
    EXPECT_EQ(h[0].args, (Tuple{"c", "e"}));
    EXPECT_EQ(h[1].to_string(), "S(a1)");
}

TEST(Evaluate, TransitiveClosureMatchesFloydWarshall) {
    const auto d = parse_instance(golden::graph_instance());
    const auto answers = evaluate(parse_program(golden::path_program()), d);
    EXPECT_EQ(answers.size(), 16u);
    EXPECT_EQ(answers, oracle::reachability(d.facts()));
    EXPECT_TRUE(answers.contains(Tuple{"c", "e"}));
    EXPECT_FALSE(answers.contains(Tuple{"e", "c"}));
}

TEST(Evaluate, BooleanQueriesYieldTheEmptyTuple) {
    const auto d = parse_instance(golden::rs_instance());
    EXPECT_EQ(evaluate(parse_program(golden::rs_program()), d), (AnswerSet{Tuple{}}));
    EXPECT_TRUE(evaluate(parse_program("ans <- R(x,y), S(y), T(x)."), d).empty());
    EXPECT_TRUE(holds(parse_program(golden::rs_program()), d, {}));
    EXPECT_EQ(code_of([&] { holds(parse_program(golden::rs_program()), d, {"a"}); }), ErrorCode::ArityMismatch);
}

TEST(Evaluate, MissingRelationsAreEmptyAndClashesAreReported) {
    const auto d = parse_instance("R(a,b).");
    EXPECT_TRUE(evaluate(parse_program("Ans(x) <- R(x,y), S(y)."), d).empty());
    EXPECT_EQ(code_of([&] { evaluate(parse_program("Ans(x) <- R(x)."), d); }), ErrorCode::SchemaMismatch);
    EXPECT_EQ(code_of([&] { evaluate(parse_program("Ans(x) <- S(x).\nR(x,y) <- S(x), S(y)."), d); }),
              ErrorCode::SchemaMismatch);
}

TEST(Evaluate, AgreesWithTheNaiveEvaluator) {
    for (const auto& c : bed::cases(150, 11, {bed::Kind::Any}))
        EXPECT_EQ(evaluate(c.program, c.instance), oracle::answers(c.program, c.instance.facts())) << c.label;
}

TEST(BooleanSpecialization, IsTrueExactlyForTheAnswer) {
    const auto q = parse_program(golden::path_program());
    const auto d = parse_instance(golden::graph_instance());
    const auto b = boolean_specialization(q, {"c", "e"});
    EXPECT_TRUE(b.is_boolean());
    EXPECT_TRUE(holds(b, d, {}));
    EXPECT_FALSE(holds(boolean_specialization(q, {"e", "c"}), d, {}));
}

TEST(MinimalSupports, ListsWhyProvenance) {
    const auto d = parse_instance(golden::rs_instance());
    const auto s = minimal_supports(parse_program(golden::rs_program()), d, {});
    const std::vector<TupleIdSet> want{{TupleId("t2"), TupleId("t4")}, {TupleId("t3"), TupleId("t6")}};
    EXPECT_EQ(s, want);
    EXPECT_EQ(code_of([&] { minimal_supports(parse_program("ans <- R(x,y), S(y), T(x)."), d, {}); }),
              ErrorCode::NotAnAnswer);
}

TEST(BoundQuery, EvaluatesSubInstances) {
    const auto d = parse_instance(golden::graph_instance());
    const BoundQuery q(parse_program(golden::path_program()), d);
    EXPECT_EQ(q.fact_count(), 7u);
    auto present = q.all_facts();
    EXPECT_TRUE(q.holds(present, {"c", "e"}));
    present.reset(1);
    present.reset(5);
    present.reset(6);
    EXPECT_FALSE(q.holds(present, {"c", "e"}));
    EXPECT_EQ(q.to_ids(q.to_fact_set({TupleId("t3")})), (TupleIdSet{TupleId("t3")}));
    EXPECT_EQ(code_of([&] { q.to_fact_set({TupleId("t99")}); }), ErrorCode::UnknownTupleId);
    const GroundAtom goal{"Ans", {"c", "e"}};
    const auto relevant = q.relevant_facts(q.all_facts(), std::span(&goal, 1));
    // every minimal support lies inside the relevant facts
    for (std::size_t i : {0, 1, 3, 4, 5, 6})
        EXPECT_TRUE(relevant.test(i)) << i;
}

TEST(HittingSets, BergeOnSmallFamilies) {
    const std::vector<FactSet> family{bits(4, {0, 1}), bits(4, {1, 2}), bits(4, {3})};
    const auto h = minimal_hitting_sets(family, 4);
    const std::vector<FactSet> want{bits(4, {1, 3}), bits(4, {0, 2, 3})};
    EXPECT_EQ(h, want);
    EXPECT_EQ(minimal_hitting_sets({}, 3), std::vector<FactSet>{FactSet(3)});
    const std::vector<FactSet> with_empty{FactSet(3)};
    EXPECT_TRUE(minimal_hitting_sets(with_empty, 3).empty());
}

TEST(HittingSets, MinimizeDropsSupersetsAndDuplicates) {
    const auto m = minimize({bits(3, {0, 1}), bits(3, {0}), bits(3, {2}), bits(3, {0}), bits(3, {1, 2})});
    EXPECT_EQ(m, (std::vector<FactSet>{bits(3, {0}), bits(3, {2})}));
}
