#include <gtest/gtest.h>

#include <sstream>

#include "equisurf/les_cases.hpp"

using namespace equisurf;

namespace {

CofiberCase fixture(const std::string& name) {
    auto c = fixture_case(name);
    EXPECT_TRUE(c.has_value()) << name;
    return *c;
}

// Summands whose bottom cone survives inverting z; their number is the count of fixed points.
int localized_rank(const ModuleExpr& e) {
    int n = 0;
    for (auto& [s, m] : e.summands())
        if (s.kind == StdKind::M3 || s.kind == StdKind::EB) n += m;
    return n;
}

}  // namespace

TEST(CaseFormat, ParseFormatRoundTrip) {
    for (auto& c : fixture_cases()) {
        std::istringstream in(format_case(c));
        auto back = parse_cases(in);
        ASSERT_EQ(back.size(), 1u);
        EXPECT_EQ(back[0].name, c.name);
        EXPECT_EQ(back[0].third_term, c.third_term);
        EXPECT_EQ(back[0].target_term, c.target_term);
        EXPECT_EQ(back[0].row0_of_middle, c.row0_of_middle);
        EXPECT_EQ(back[0].claimed_middle, c.claimed_middle);
        EXPECT_EQ(back[0].expected, c.expected);
    }
}

TEST(CaseFormat, Errors) {
    std::istringstream a("domain HC3\n");
    EXPECT_THROW(parse_cases(a), std::runtime_error);
    std::istringstream b("case X\nfoo 1\nend\n");
    EXPECT_THROW(parse_cases(b), std::runtime_error);
    std::istringstream c("case X\ndomain HC3\n");
    EXPECT_THROW(parse_cases(c), std::runtime_error);
    std::istringstream d("case X\nrank 1 2\nend\n");
    EXPECT_THROW(parse_cases(d), std::runtime_error);
}

TEST(Fixtures, EightCasesEachUniqueAndExact) {
    auto cases = fixture_cases();
    ASSERT_EQ(cases.size(), 8u);
    for (auto& c : cases) {
        EXPECT_EQ(c.window, Window(-8, 8, -8, 8));
        auto r = verify_case(c);
        EXPECT_EQ(r.survivors, 1u) << c.name;
        EXPECT_TRUE(r.pattern_matched) << c.name;
        EXPECT_TRUE(r.failing_cells.empty()) << c.name;
        EXPECT_TRUE(r.row0_ok) << c.name;
        EXPECT_TRUE(r.pass()) << c.name;
    }
}

TEST(Solve, FreeCircleDifferentialIsZero) {
    auto sols = solve_differential(fixture("S1free"));
    ASSERT_EQ(sols.size(), 1u);
    for (int v : sols[0].ranks.cells) EXPECT_EQ(v, 0);
}

TEST(Solve, SuspensionDifferentialIsIsoOnTheBottomColumn) {
    auto sols = solve_differential(fixture("EB"));
    ASSERT_EQ(sols.size(), 1u);
    for (int q = -8; q <= 8; ++q) EXPECT_EQ(sols[0].ranks.at({1, q}), q <= 0 ? 1 : 0) << q;
}

TEST(Solve, RealProjectivePlanePattern) {
    auto sols = solve_differential(fixture("N1_1"));
    ASSERT_EQ(sols.size(), 1u);
    EXPECT_EQ(sols[0].ranks.at({1, 0}), 1);
    EXPECT_EQ(sols[0].ranks.at({0, -1}), 1);
    EXPECT_EQ(sols[0].ranks.at({0, 0}), 0);
    EXPECT_EQ(sols[0].ranks.at({1, 1}), 0);
}

TEST(Solve, InconsistentRowZeroThrows) {
    auto c = fixture("S1free");
    c.row0_of_middle = {5, 5, 5};
    EXPECT_THROW(solve_differential(c), InconsistentCaseError);
    auto r = verify_case(c);
    EXPECT_FALSE(r.pass());
    EXPECT_FALSE(r.messages.empty());
}

TEST(Solve, GeneratorImagesHaveTheRightDegree) {
    for (auto& c : fixture_cases())
        for (auto& s : solve_differential(c)) {
            ExpandedModule t(c.target_term);
            for (auto& g : s.generator_images) EXPECT_EQ(g.image.size(), t.dim(g.source + Bidegree{1, 0})) << c.name;
        }
}

TEST(KerCoker, ZeroDifferential) {
    auto c = fixture("S1free");
    auto kc = ker_coker(solve_differential(c).front(), c);
    c.window.for_each([&](Bidegree d) {
        EXPECT_EQ(kc.ker(d), c.third_term.dim(d));
        EXPECT_EQ(kc.coker(d), c.target_term.dim(d));
    });
}

TEST(KerCoker, SuspensionCaseRebuildsEB) {
    auto c = fixture("EB");
    auto kc = ker_coker(solve_differential(c).front(), c);
    c.window.for_each([&](Bidegree d) {
        EXPECT_EQ(kc.ker(d) + kc.coker(d), dim_at(StdKind::EB, d)) << to_string(d);
        if (d.p != 1) EXPECT_EQ(kc.coker(d), dim_at(StdKind::EB, d)) << to_string(d);
    });
}

TEST(KerCoker, TorusHatCokernelVanishes) {
    auto c = fixture("M1hat");
    auto kc = ker_coker(solve_differential(c).front(), c);
    c.window.for_each([&](Bidegree d) { EXPECT_EQ(kc.coker(d), 0) << to_string(d); });
}

TEST(KerCoker, RankNullityForEveryAdmissibleSpec) {
    for (auto& c : fixture_cases())
        for (auto& s : solve_differential(c)) {
            auto kc = ker_coker(s, c);
            c.window.for_each([&](Bidegree d) {
                int r = s.ranks.at(d);
                EXPECT_GE(r, 0);
                EXPECT_LE(r, c.third_term.dim(d));
                EXPECT_LE(r, c.target_term.dim(d + Bidegree{1, 0}));
                EXPECT_EQ(kc.ker(d) + r, c.third_term.dim(d));
                EXPECT_EQ(kc.coker(d) + s.ranks.at(d - Bidegree{1, 0}), c.target_term.dim(d));
            });
        }
}

TEST(VerifyCase, DroppingAnEBIsCaughtInColumnOne) {
    auto c = family_case(SurfaceClass::sph(1, 1));
    ASSERT_TRUE(verify_case(c).pass());
    c.claimed_middle->remove(StdKind::EB);
    auto r = verify_case(c);
    EXPECT_FALSE(r.failing_cells.empty());
    bool col1 = false;
    for (auto d : r.failing_cells) col1 = col1 || d.p == 1;
    EXPECT_TRUE(col1);
}

TEST(VerifyCase, FreeNonorientableWithPrintedExponentFailsRowZero) {
    for (int r = 1; r <= 3; ++r) {
        auto c = family_case(SurfaceClass::free_nonor(r));
        ASSERT_TRUE(verify_case(c).pass());
        c.claimed_middle = ModuleExpr::of(StdKind::HS1FREE).add(StdKind::HC3, {1, 0}, r - 1);
        auto rep = verify_case(c);
        EXPECT_FALSE(rep.row0_ok);
        EXPECT_NE(quotient_row(*c.claimed_middle)[1], c.row0_of_middle[1]);
        EXPECT_EQ(quotient_row(*c.claimed_middle)[0], c.row0_of_middle[0]);
        bool p1 = false;
        for (auto d : rep.failing_cells) p1 = p1 || (d.p == 1 && d.q == 0);
        EXPECT_TRUE(p1);
    }
}

TEST(Extension, Examples) {
    auto a = resolve_extension(parse_module_expr("M3@2,1 + 4*EB"), parse_module_expr("M3 + EB"), {true});
    ASSERT_TRUE(a);
    EXPECT_EQ(*a, parse_module_expr("M3 + M3@2,1 + 5*EB"));

    auto b = resolve_extension(parse_module_expr("M3@2,1"), parse_module_expr("HS1FREE"), {true});
    ASSERT_TRUE(b);
    EXPECT_EQ(*b, ModuleExpr::of(StdKind::M3));

    auto c = resolve_extension(parse_module_expr("EB"), parse_module_expr("EB"), {false});
    ASSERT_TRUE(c);
    EXPECT_EQ(*c, ModuleExpr::of(StdKind::EB, {}, 2));
}

TEST(Extension, UnresolvedWhenNoRuleApplies) {
    EXPECT_FALSE(resolve_extension(parse_module_expr("EB"), parse_module_expr("HC3"), {false}));
    EXPECT_FALSE(resolve_extension(parse_module_expr("M3@2,1"), parse_module_expr("HC3"), {false}));
    // without a fixed point the circle column is not absorbed
    EXPECT_FALSE(resolve_extension(parse_module_expr("M3@2,1"), parse_module_expr("HS1FREE"), {false}));
}

TEST(Extension, ColumnsOverColumnsSplit) {
    auto r = resolve_extension(parse_module_expr("HC3@1,0"), parse_module_expr("HS1FREE"), {false});
    ASSERT_TRUE(r);
    EXPECT_EQ(*r, parse_module_expr("HC3@1,0 + HS1FREE"));
}

TEST(FamilyReplay, AllFamiliesButEvenNonorientable) {
    for (auto& c : class_grid(3)) {
        if (c.family == Family::NONOR_EVEN) continue;
        auto k = family_case(c);
        auto r = verify_case(k);
        EXPECT_TRUE(r.pass()) << class_name(c) << " " << r.failing_cells.size();
    }
}

// The printed count for NEven(k,r) has one EB fewer than the number of fixed points requires.
// The replay accepts M3 + EB^(2k+1) + (r-1) HC3@1,0 and rejects the printed answer.
TEST(FamilyReplay, EvenNonorientableNeedsOneMoreEB) {
    for (int k = 0; k <= 2; ++k)
        for (int r = 1; r <= 3; ++r) {
            auto c = SurfaceClass::nonor_even(k, r);
            auto kase = family_case(c);
            EXPECT_FALSE(verify_case(kase).failing_cells.empty()) << class_name(c);
            kase.claimed_middle = ModuleExpr::of(StdKind::M3).add(StdKind::EB, {}, 2 * k + 1).add(StdKind::HC3, {1, 0}, r - 1);
            auto rep = verify_case(kase);
            EXPECT_TRUE(rep.pass()) << class_name(c);
        }
}

TEST(Localization, BottomConesCountFixedPoints) {
    for (auto& c : class_grid(4)) {
        auto e = cohomology(c).expr;
        int f = invariants(c).fixed_points;
        if (c.family == Family::NONOR_EVEN)
            EXPECT_EQ(localized_rank(e), f - 1) << class_name(c);
        else
            EXPECT_EQ(localized_rank(e), f) << class_name(c);
    }
}

TEST(Localization, DeepBottomColumnMatchesSummandCount) {
    // far down the lattice only bottom cones survive, one class each
    for (auto& c : class_grid(2)) {
        auto e = cohomology(c).expr;
        int deep = e.dim({-20, -40});
        EXPECT_EQ(deep, localized_rank(e)) << class_name(c);
    }
}
