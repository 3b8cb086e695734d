#include "oracle.hpp"

#include "qacause/delete_propagation.hpp"
#include "qacause/error.hpp"
#include "qacause/golden.hpp"
#include "qacause/vc_causality.hpp"

#include <gtest/gtest.h>

using namespace qacause;

namespace {

TupleIdSet ids(std::initializer_list<const char*> list) {
    TupleIdSet out;
    for (const char* s : list)
        out.insert(TupleId(s));
    return out;
}

class University : public ::testing::Test {
protected:
    Program q = parse_program(golden::staff_program());
    Instance d = parse_instance(golden::university_instance());
    Tuple john{"John"};
};

} // namespace

TEST_F(University, MinimalSourceDeletions) {
    const auto got = min_source_side_effect(q, d, john);
    EXPECT_EQ(got, (std::vector<TupleIdSet>{ids({"t1"}), ids({"t4", "t8"})}));
    EXPECT_EQ(got, oracle::Brute(q, d, john, false).minimal_answer_deletions());
}

TEST_F(University, SideEffectFreeDeletionOfJohn) {
    const auto s = view_side_effect_free(q, d, john);
    ASSERT_TRUE(s);
    EXPECT_EQ(s->deleted, ids({"t1"}));
    EXPECT_EQ(s->cardinality, 1u);
    EXPECT_TRUE(decide_vsefp(q, d, john));
    EXPECT_EQ(all_view_side_effect_free(q, d, john), (std::vector<TupleIdSet>{ids({"t1"}), ids({"t4", "t8"})}));
}

TEST_F(University, ScopeRestrictsDeletionsToEndogenousFacts) {
    const auto x = with_partition(d, ids({"t1"}), false);
    EXPECT_EQ(min_source_side_effect(q, x, john, DeletionScope::EndogenousOnly),
              std::vector<TupleIdSet>{ids({"t4", "t8"})});
    EXPECT_EQ(min_source_side_effect(q, x, john).size(), 2u);
    EXPECT_EQ(view_side_effect_free(q, x, john, DeletionScope::EndogenousOnly)->deleted, ids({"t4", "t8"}));
}

TEST(DeletePropagation, SingleSupportIsTheOnlySolution) {
    const auto q = parse_program("Ans(x) <- R(x,y), S(y).");
    const auto d = parse_instance("R(a,b).\nS(b).");
    EXPECT_EQ(min_source_side_effect(q, d, {"a"}), (std::vector<TupleIdSet>{ids({"t1"}), ids({"t2"})}));
    EXPECT_EQ(view_side_effect_free(q, d, {"a"})->deleted, ids({"t1"}));
    EXPECT_TRUE(decide_vsefp(q, d, {"a"}));
}

TEST(DeletePropagation, EntangledAnswersHaveNoSideEffectFreeDeletion) {
    const auto q = parse_program("Ans(x) <- T(x).\nAns(x) <- T(y), U(y,x).");
    const auto d = parse_instance("T(a).\nU(a,c).");
    EXPECT_FALSE(view_side_effect_free(q, d, {"a"}));
    EXPECT_FALSE(decide_vsefp(q, d, {"a"}));
    EXPECT_TRUE(all_view_side_effect_free(q, d, {"a"}).empty());
    EXPECT_FALSE(oracle::Brute(q, d, {"a"}, false).side_effect_free());
    EXPECT_FALSE(vc_cause_exists(q, d, {"a"}));
    EXPECT_EQ(min_source_side_effect(q, d, {"a"}), std::vector<TupleIdSet>{ids({"t1"})});
}

TEST(DeletePropagation, MinimumCardinalityThenLeastIds) {
    const auto q = parse_program("Ans(x) <- R(x,y), S(y).");
    const auto d = parse_instance("R(a,b).\nR(a,c).\nS(b).\nS(c).\nR(d,c).");
    const auto s = view_side_effect_free(q, d, {"a"});
    ASSERT_TRUE(s);
    EXPECT_EQ(s->deleted, ids({"t1", "t2"}));
    EXPECT_EQ(s->deleted, *oracle::Brute(q, d, {"a"}, false).side_effect_free());
}

TEST(DeletePropagation, NotAnAnswer) {
    const auto q = parse_program("Ans(x) <- R(x,y).");
    const auto d = parse_instance("R(a,b).");
    for (auto f : {+[](const Program& q, const Instance& d) { min_source_side_effect(q, d, {"z"}); },
                   +[](const Program& q, const Instance& d) { view_side_effect_free(q, d, {"z"}); },
                   +[](const Program& q, const Instance& d) { decide_vsefp(q, d, {"z"}); }}) {
        try {
            f(q, d);
            ADD_FAILURE();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::NotAnAnswer);
        }
    }
}
