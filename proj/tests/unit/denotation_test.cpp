#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"

using namespace gpcf;
using gpcf::tu::den;
using gpcf::tu::mv;

namespace {

const Bounds kB{3, 2, 10, 100000};

Outcome game_run(const std::string& text, std::uint64_t y_depth = 32) { return run_game(parse(text), y_depth, Bounds{}); }

}  // namespace

TEST(Denote, Examples) {
    EXPECT_TRUE(strat_equiv(as_point(den("2")), numeral(2), kB));
    EXPECT_EQ(run_game(term::App(parse("\\x:N.x"), term::Num(5)), 32, Bounds{}).str(), "5");
    for (std::uint64_t k : {1, 2, 8, 32}) EXPECT_FALSE(run_game(parse("Y[N] (\\x:N.x)"), k, Bounds{}).answered) << k;
}

TEST(Denote, RejectsIllTypedAndOpenTerms) {
    EXPECT_THROW(den("succ (\\x:N. x)"), TypeError);
    EXPECT_THROW(den("y"), TypeError);
    EXPECT_NO_THROW(denote({{"y", ground()}}, parse("succ y"), 4));
}

TEST(RunGame, Examples) {
    EXPECT_EQ(game_run("succ 2").str(), "3");
    EXPECT_FALSE(game_run("Omega[N]").answered);
    EXPECT_EQ(game_run("case2 0 4 9").str(), "4");
    EXPECT_EQ(game_run("case3 2 4 9 6").str(), "6");
    EXPECT_FALSE(game_run("case2 2 4 9").answered);
}

TEST(RunGame, AgreesWithOperationalOnSmallPrograms) {
    for (const char* t : {"pred (pred 5)", "if0 (pred 1) 7 8", "(\\f:N -> N. f (f 1)) (\\x:N. succ (succ x))",
                          "(\\x:N. \\y:N. if0 x y (succ y)) 0 4", "(\\g:(N -> N) -> N. g (\\z:N. z)) (\\h:N -> N. h 6)",
                          "Y[N -> N] (\\f:N -> N. \\n:N. if0 n 9 (f (pred n))) 3", "case1 0 (case2 1 3 4)"}) {
        const Term m = parse(t);
        EXPECT_EQ(run_game(m, 32, Bounds{}).str(), eval_op(m, 100000).str()) << t;
    }
}

TEST(RunGame, FixpointDepthIsMonotone) {
    const Term m = parse("Y[N -> N] (\\f:N -> N. \\n:N. if0 n 0 (f (pred n))) 4");
    bool seen = false;
    for (std::uint64_t k = 1; k <= 16; ++k) {
        Outcome o = run_game(m, k, Bounds{});
        if (seen) {
            EXPECT_TRUE(o.answered) << k;
        }
        if (o.answered) {
            EXPECT_EQ(o.value, 0u);
            seen = true;
        }
    }
    EXPECT_TRUE(seen);
    EXPECT_FALSE(run_game(m, 3, Bounds{}).answered);
}

TEST(DenoteFet, Clauses) {
    const Context none;
    EXPECT_EQ(traces(denote_fet(none, fet::omega(), ground()), kB).size(), 1u);
    EXPECT_TRUE(strat_equiv(denote_fet(none, fet::num(4), ground()), konst(Tic{{}, ground()}, 4), kB));
    // the tree case(x, n -> n for n <= 2) against case3 x 0 1 2
    const Context x{{"x", ground()}};
    const Fet tree = fet::lam(x, fet::cases("x", {}, {{0, fet::num(0)}, {1, fet::num(1)}, {2, fet::num(2)}}));
    EXPECT_TRUE(strat_equiv(denote_fet(none, tree, parse_type("N -> N")), den("\\x:N. case3 x 0 1 2"), kB));
}

TEST(DenoteFet, AgreesWithTermDenotation) {
    FetShape shape{2, 2, 2, 20000};
    for (const char* t : {"N -> N", "N -> N -> N", "(N -> N) -> N"}) {
        const Type ty = parse_type(t);
        const auto trees = enumerate_fets({}, ty, shape);
        ASSERT_FALSE(trees.empty());
        std::size_t step = std::max<std::size_t>(1, trees.size() / 40);
        for (std::size_t i = 0; i < trees.size(); i += step) {
            const Term m = fet_to_term(trees[i]);
            EXPECT_TRUE(strat_equiv(denote_fet({}, trees[i], ty), denote({}, m, 4), Bounds{2, 2, 10, 100000})) << term_str(m);
        }
    }
}

TEST(Denote, Substitutivity) {
    const std::vector<std::pair<std::string, std::string>> cases{
        {"(\\x:N. succ x) 3", "succ 3"},
        {"(\\x:N. if0 x 1 x) (pred 2)", "if0 (pred 2) 1 (pred 2)"},
        {"(\\f:N -> N. \\y:N. f (f y)) (\\z:N. pred z)", "\\y:N. (\\z:N. pred z) ((\\z:N. pred z) y)"},
        {"\\y:N. (\\x:N. case2 x y 5) y", "\\y:N. case2 y y 5"},
    };
    for (const auto& [redex, contractum] : cases) EXPECT_TRUE(strat_equiv(den(redex), den(contractum), kB)) << redex;
}

TEST(Denote, CurryingIsInvertible) {
    auto s = den("\\f:N -> N. \\x:N. f (f x)");
    EXPECT_TRUE(strat_equiv(kcurry(kuncurry(s)), s, Bounds{2, 2, 10, 100000}));
}

TEST(Denote, OmegaIsLeast) {
    const auto b = Bounds{2, 2, 10, 100000};
    for (const char* t : {"\\x:N. x", "\\x:N. succ x", "\\f:N -> N. f 0"}) {
        const Term m = parse(t);
        const Strategy bot = bottom(denote({}, m, 4)->game());
        EXPECT_TRUE(strat_subeq(bot, denote({}, m, 4), b));
        EXPECT_FALSE(strat_subeq(denote({}, m, 4), bot, b));
    }
}
