#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"

using namespace gpcf;

namespace {

const Game N = game::Nat();

// Bump the final answer of one maximal play; nullptr when no such mutation
// keeps the table history-free.
Strategy mutate(std::mt19937_64& rng, const Strategy& s) {
    auto ps = *s->finite_positions();
    std::vector<std::size_t> leaves;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (ps[i].empty() || ps[i].back().base.question) continue;
        bool prefix = false;
        for (const auto& q : ps)
            if (q.size() > ps[i].size() && std::equal(ps[i].begin(), ps[i].end(), q.begin())) prefix = true;
        if (!prefix) leaves.push_back(i);
    }
    if (leaves.empty()) return nullptr;
    auto& p = ps[leaves[rng() % leaves.size()]];
    p.back().base.n += 1;
    try {
        return explicit_strategy(s->game(), ps);
    } catch (const std::exception&) {
        return nullptr;
    }
}

}  // namespace

TEST(Laws, WiringIsomorphisms) {
    const Bounds b{2, 2, 8, 100000};
    const Game a = game_of_type(parse_type("N -> N"));
    EXPECT_TRUE(strat_equiv(compose(symm(a, N), symm(N, a)), identity(game::Tensor(a, N)), b));
    const Strategy re = reindex(N, 2, 1);
    EXPECT_EQ(*re->next(tu::mv("R.3!.Q")), tu::mv("L.7!.Q"));
    EXPECT_TRUE(game_equal(assoc(N, N, N)->game(), game::Lolli(game::Tensor(game::Tensor(N, N), N), game::Tensor(N, game::Tensor(N, N)))));
}

TEST(Laws, RandomTablesAreLegalAndHistoryFree) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 50; ++i) {
        const Game g = game_of_type(random_type(rng, 2));
        auto s = random_explicit(rng, g);
        for (const auto& p : *s->finite_positions()) {
            EXPECT_TRUE(legal_position(g, p));
            EXPECT_TRUE(switching_ok(g, p));
        }
    }
}

TEST(Laws, SmallCategorySuite) {
    auto r = category_suite(101, 12);
    EXPECT_TRUE(r.ok()) << (r.notes.empty() ? "" : r.notes[0]);
    EXPECT_EQ(r.cases, 36u);
    EXPECT_EQ(r.checks, 36u);
}

TEST(Laws, SmallComonadSuite) {
    auto r = comonad_suite(102, 10);
    EXPECT_TRUE(r.ok()) << (r.notes.empty() ? "" : r.notes[0]);
    EXPECT_EQ(r.checks, 30u);
}

TEST(Laws, ComonoidOnGround) {
    for (const auto& r : comonoid_laws(N, Bounds{2, 3, 8, 100000})) EXPECT_TRUE(r.ok) << r.law << ": " << r.reason;
}

TEST(Laws, SmallBangSuite) {
    auto r = bang_suite(103, 12);
    EXPECT_TRUE(r.ok()) << (r.notes.empty() ? "" : r.notes[0]);
}

TEST(Laws, ParityAndMonotonicity) {
    auto p = parity_suite(104, 8);
    EXPECT_TRUE(p.ok()) << (p.notes.empty() ? "" : p.notes[0]);
    auto m = monotonicity_suite(105, 8);
    EXPECT_TRUE(m.ok()) << (m.notes.empty() ? "" : m.notes[0]);
}

// The checkers must notice broken strategies, not just pass good ones.
TEST(NegativeControl, MutatedTablesAreSeparated) {
    std::mt19937_64 rng(7);
    int tried = 0;
    for (int i = 0; i < 200 && tried < 40; ++i) {
        const Game g = game::Lolli(game_of_type(random_type(rng, 1)), game_of_type(random_type(rng, 1)));
        auto s = random_explicit(rng, g);
        auto bad = mutate(rng, s);
        if (!bad) continue;
        ++tried;
        auto r = check_equiv("mutation", game_str(g), s, bad, bounds_for({s, bad}));
        EXPECT_FALSE(r.ok) << game_str(g);
    }
    EXPECT_GE(tried, 20);
}

TEST(NegativeControl, BrokenIdentityIsCaught) {
    std::mt19937_64 rng(9);
    const Strategy off_by_one = arith([](std::uint64_t n) { return n + 1; }, "succ");
    int caught = 0, total = 0;
    for (int i = 0; i < 20; ++i) {
        auto s = random_explicit(rng, game::Lolli(N, N));
        if (s->finite_positions()->size() < 3) continue;
        ++total;
        caught += !check_equiv("left identity", "N -o N", compose(off_by_one, s), s, bounds_for({s})).ok;
    }
    EXPECT_GT(total, 5);
    EXPECT_EQ(caught, total);
}

TEST(NegativeControl, RawTablesOnBangGamesMostlyFailTheBangLemma) {
    std::mt19937_64 rng(11);
    int failed = 0;
    const int n = 20;
    for (int i = 0; i < n; ++i) {
        auto s = random_explicit(rng, game::Lolli(game::Bang(N), game::Bang(N)));
        failed += !bang_lemma(s, Bounds{2, 3, 8, 100000}, "raw").ok;
    }
    EXPECT_GT(failed, n / 2);
}

TEST(NegativeControl, SubstrategyIsNotAboveItsParent) {
    std::mt19937_64 rng(13);
    int strict = 0;
    for (int i = 0; i < 30; ++i) {
        auto big = random_explicit(rng, game_of_type(parse_type("N -> N")));
        auto small = random_substrategy(rng, big);
        const Bounds b = bounds_for({big});
        EXPECT_TRUE(strat_subeq(small, big, b));
        if (small->finite_positions()->size() < big->finite_positions()->size()) {
            ++strict;
            EXPECT_FALSE(strat_subeq(big, small, b));
        }
    }
    EXPECT_GT(strict, 10);
}
