#include <gtest/gtest.h>

#include "equisurf/singular.hpp"

using namespace equisurf;

TEST(SingZ3, Examples) {
    EXPECT_EQ(sing_z3(NonEqSurface::M(0)).as_list(), (std::vector<int>{1, 0, 1}));
    EXPECT_EQ(sing_z3(NonEqSurface::N(1)).as_list(), (std::vector<int>{1, 0, 0}));
    EXPECT_EQ(sing_z3(NonEqSurface::M(2)).as_list(), (std::vector<int>{1, 4, 1}));
    EXPECT_EQ(sing_z3(NonEqSurface::M(2)).euler(), -2);
    EXPECT_THROW(sing_z3(NonEqSurface::N(0)), std::invalid_argument);
}

TEST(SingZ3, AlternatingSumIsEuler) {
    for (int g = 0; g <= 10; ++g) EXPECT_EQ(sing_z3(NonEqSurface::M(g)).euler(), NonEqSurface::M(g).euler());
    for (int r = 1; r <= 10; ++r) EXPECT_EQ(sing_z3(NonEqSurface::N(r)).euler(), NonEqSurface::N(r).euler());
}

TEST(Punctured, Examples) {
    EXPECT_EQ(punctured(NonEqSurface::M(1)), (std::vector<int>{1, 2}));
    EXPECT_EQ(punctured(NonEqSurface::N(1)), (std::vector<int>{1, 1}));
    EXPECT_EQ(punctured(NonEqSurface::M(0)), (std::vector<int>{1, 0}));
}

TEST(Punctured, EulerDropsByOne) {
    for (int g = 0; g <= 6; ++g) {
        auto p = punctured(NonEqSurface::M(g));
        EXPECT_EQ(p[0] - p[1], NonEqSurface::M(g).euler() - 1);
    }
    for (int r = 1; r <= 6; ++r) {
        auto p = punctured(NonEqSurface::N(r));
        EXPECT_EQ(p[0] - p[1], NonEqSurface::N(r).euler() - 1);
    }
}

TEST(TimesC3, Examples) {
    EXPECT_EQ(times_c3(std::vector<int>{1}), ModuleExpr::of(StdKind::HC3));
    EXPECT_EQ(times_c3(punctured(NonEqSurface::M(2))), ModuleExpr::of(StdKind::HC3).add(StdKind::HC3, {1, 0}, 4));
    EXPECT_EQ(times_c3(punctured(NonEqSurface::N(3))), ModuleExpr::of(StdKind::HC3).add(StdKind::HC3, {1, 0}, 3));
}

TEST(TimesC3, RowZeroRecoversTheInput) {
    std::vector<std::vector<int>> inputs{{1}, {1, 2}, {1, 0, 1}, {1, 4, 1}, {1, 3, 0}, {2, 0, 5}};
    for (auto& v : inputs) {
        auto e = times_c3(v);
        for (int p = 0; p < static_cast<int>(v.size()); ++p) EXPECT_EQ(e.dim({p, 0}), v[p]);
        EXPECT_EQ(e.dim({static_cast<int>(v.size()), 0}), 0);
        // x acts invertibly: every row is a copy of row 0
        for (int q = -5; q <= 5; ++q)
            for (int p = 0; p < static_cast<int>(v.size()); ++p) EXPECT_EQ(e.dim({p, q}), v[p]);
    }
}
