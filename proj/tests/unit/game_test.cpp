#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "helpers.hpp"

using namespace gpcf;
using gpcf::tu::mv;
using gpcf::tu::pos;

namespace {

const Game N = game::Nat();

// Apply an index renaming to every top-level Bang tag.
Position rename(const Position& s, const std::map<std::uint64_t, std::uint64_t>& pi) {
    Position out = s;
    for (auto& m : out) m.path[0] = Tag::index(pi.at(m.path[0].idx.value()));
    return out;
}

// Equivalence at !N by trying every permutation of the occurring indices.
bool brute_bang_equiv(const Position& s, const Position& t) {
    if (s.size() != t.size()) return false;
    std::vector<std::uint64_t> from, to;
    for (const auto& m : s) from.push_back(m.path[0].idx.value());
    for (const auto& m : t) to.push_back(m.path[0].idx.value());
    std::sort(from.begin(), from.end());
    from.erase(std::unique(from.begin(), from.end()), from.end());
    std::sort(to.begin(), to.end());
    to.erase(std::unique(to.begin(), to.end()), to.end());
    if (from.size() != to.size()) return false;
    do {
        std::map<std::uint64_t, std::uint64_t> pi;
        for (std::size_t i = 0; i < from.size(); ++i) pi[from[i]] = to[i];
        if (rename(s, pi) == t) return true;
    } while (std::next_permutation(to.begin(), to.end()));
    return false;
}

// Random legal play of g, alternating O and P moves drawn from the bounded candidates.
Position random_play(std::mt19937_64& rng, const Game& g, const Bounds& b, std::size_t len) {
    Position s;
    while (s.size() < len) {
        auto ms = s.size() % 2 == 0 ? opponent_moves(g, s, b) : player_moves(g, s, b);
        if (ms.empty()) break;
        s.push_back(ms[rng() % ms.size()]);
    }
    return s;
}

}  // namespace

TEST(Label, Examples) {
    EXPECT_EQ(label(N, mv("Q")), (Label{Player::O, true}));
    EXPECT_EQ(label(game::Lolli(N, N), mv("L.Q")), (Label{Player::P, true}));
    EXPECT_EQ(label(game::Bang(N), mv("4!.Ans(2)")), (Label{Player::P, false}));
    // two flips cancel
    EXPECT_EQ(label(game::Lolli(game::Lolli(N, N), N), mv("L.L.Ans(1)")), (Label{Player::P, false}));
    EXPECT_EQ(label(game::Lolli(game::Lolli(N, N), N), mv("L.L.Q")), (Label{Player::O, true}));
    EXPECT_THROW(label(N, mv("L.Q")), std::invalid_argument);
}

TEST(Legal, Examples) {
    EXPECT_TRUE(legal_position(N, pos("Q Ans(5)")));
    EXPECT_FALSE(legal_position(game::Tensor(N, N), pos("L.Q R.Ans(0)")));
    EXPECT_FALSE(legal_position(game::Lolli(N, N), pos("L.Q")));
}

TEST(Legal, Conditions) {
    const Game nn = game::Lolli(N, N);
    EXPECT_TRUE(legal_position(nn, pos("R.Q L.Q L.Ans(3) R.Ans(3)")));
    EXPECT_FALSE(legal_position(N, pos("Ans(5)")));                 // opens with P
    EXPECT_FALSE(legal_position(N, pos("Q Ans(5) Q")));             // Nat is one question deep
    EXPECT_FALSE(legal_position(nn, pos("R.Q R.Q")));               // alternation
    EXPECT_FALSE(legal_position(nn, pos("R.Q L.Q R.Ans(3)")));      // answers the wrong question
    EXPECT_FALSE(legal_position(game::Sigma(), pos("Q Ans(1)")));   // Sigma has a single answer
    EXPECT_TRUE(legal_position(game::Sigma(), pos("Q Ans(0)")));
    EXPECT_TRUE(legal_position(game::I(), {}));
    const Game bang = game::Lolli(game::Bang(N), N);
    EXPECT_TRUE(legal_position(bang, pos("R.Q L.0!.Q L.0!.Ans(1) L.3!.Q L.3!.Ans(2) R.Ans(3)")));
    EXPECT_FALSE(legal_position(bang, pos("R.Q L.0!.Q L.3!.Ans(1)")));  // answer in a different copy
    EXPECT_FALSE(legal_position(game::With(N, N), pos("L.Q L.Ans(0) R.Q")));
}

TEST(Legal, Switching) {
    const Game t = game::Tensor(N, N);
    EXPECT_TRUE(legal_position(t, pos("L.Q L.Ans(1) R.Q R.Ans(2)")));
    EXPECT_TRUE(switching_ok(t, pos("L.Q L.Ans(1) R.Q R.Ans(2)")));
    const Game l = game::Lolli(N, N);
    EXPECT_TRUE(switching_ok(l, pos("R.Q L.Q L.Ans(1) R.Ans(1)")));
}

TEST(PosEquiv, Examples) {
    const Game b = game::Bang(N);
    EXPECT_TRUE(pos_equiv(b, pos("0!.Q 0!.Ans(1)"), pos("7!.Q 7!.Ans(1)")));
    EXPECT_FALSE(pos_equiv(b, pos("0!.Q"), pos("0!.Ans(0)")));
    const auto s = pos("R.Q L.Q L.Ans(3) R.Ans(3)");
    EXPECT_TRUE(pos_equiv(game::Lolli(N, N), s, s));
}

TEST(PosEquiv, BangNeedsAConsistentBijection) {
    const Game b = game::Bang(N);
    EXPECT_TRUE(pos_equiv(b, pos("0!.Q 0!.Ans(1) 1!.Q 1!.Ans(2)"), pos("5!.Q 5!.Ans(1) 2!.Q 2!.Ans(2)")));
    EXPECT_FALSE(pos_equiv(b, pos("0!.Q 0!.Ans(1) 1!.Q 1!.Ans(2)"), pos("5!.Q 5!.Ans(1) 5!.Q 5!.Ans(2)")));
    EXPECT_FALSE(pos_equiv(b, pos("0!.Q 0!.Ans(1)"), pos("0!.Q 0!.Ans(2)")));
}

TEST(PosEquiv, NestedBangsPermuteIndependently) {
    const Game g = game::Lolli(game::Bang(game::Lolli(game::Bang(N), N)), N);
    const auto s = pos("R.Q L.0!.R.Q L.0!.L.0!.Q L.0!.L.0!.Ans(2) L.0!.R.Ans(2) R.Ans(2)");
    const auto t = pos("R.Q L.4!.R.Q L.4!.L.1!.Q L.4!.L.1!.Ans(2) L.4!.R.Ans(2) R.Ans(2)");
    EXPECT_TRUE(legal_position(g, s));
    EXPECT_TRUE(pos_equiv(g, s, t));
    auto u = t;
    u[3] = mv("L.4!.L.1!.Ans(3)");
    EXPECT_FALSE(pos_equiv(g, s, u));
}

TEST(PosEquiv, AgreesWithPermutationSearchAtBangNat) {
    const Game b = game::Bang(N);
    const Bounds bd{2, 3, 8, 1000};
    std::mt19937_64 rng(17);
    int equal_cases = 0;
    for (int i = 0; i < 400; ++i) {
        const auto s = random_play(rng, b, bd, 2 + rng() % 5);
        auto t = random_play(rng, b, bd, s.size());
        if (i % 2 == 0) {
            // force an equivalent partner half the time
            std::vector<std::uint64_t> perm{0, 1, 2, 3};
            std::shuffle(perm.begin(), perm.end(), rng);
            t = rename(s, {{0, perm[0]}, {1, perm[1]}, {2, perm[2]}, {3, perm[3]}});
        }
        const bool want = brute_bang_equiv(s, t);
        equal_cases += want;
        EXPECT_EQ(pos_equiv(b, s, t), want) << position_str(s) << " vs " << position_str(t);
    }
    EXPECT_GT(equal_cases, 150);
}

TEST(PosEquiv, IsAnEquivalenceOnRandomPlays) {
    const Game g = game::Lolli(game::Bang(N), game::Tensor(N, N));
    const Bounds bd{1, 2, 8, 1000};
    std::mt19937_64 rng(23);
    std::vector<Position> plays;
    for (int i = 0; i < 60; ++i) plays.push_back(random_play(rng, g, bd, 6));
    for (const auto& s : plays) {
        ASSERT_TRUE(legal_position(g, s));
        EXPECT_TRUE(pos_equiv(g, s, s));
        for (const auto& t : plays) EXPECT_EQ(pos_equiv(g, s, t), pos_equiv(g, t, s));
    }
}

TEST(Transport, MovesFollowTheBijection) {
    const Game b = game::Bang(N);
    auto m = transport(b, pos("0!.Q"), pos("7!.Q"), mv("0!.Ans(4)"));
    ASSERT_TRUE(m);
    EXPECT_EQ(*m, mv("7!.Ans(4)"));
}

TEST(GameOfType, Examples) {
    EXPECT_EQ(game_str(game_of_type(parse_type("N"))), "N");
    EXPECT_TRUE(game_equal(game_of_type(parse_type("N -> N")), game::Lolli(game::Bang(N), N)));
    EXPECT_TRUE(game_equal(game_of_type(parse_type("(N -> N) -> N")), game::Lolli(game::Bang(game::Lolli(game::Bang(N), N)), N)));
    auto back = type_of_game(game_of_type(parse_type("(N -> N) -> N -> N")));
    ASSERT_TRUE(back);
    EXPECT_EQ(type_str(*back), "(N -> N) -> N -> N");
}

TEST(GameText, RoundTrip) {
    for (const char* g : {"N", "(!N -o N)", "((N * N) -o (N & N))", "!(!N -o N)", "&w N", "(I -o S)"}) {
        EXPECT_EQ(game_str(parse_game(g)), g);
    }
    for (const char* m : {"R.Q", "L.3!.Ans(2)", "2#.L.Q"}) EXPECT_EQ(move_str(mv(m)), m);
}

TEST(WellOpened, Examples) {
    EXPECT_TRUE(well_opened(N));
    EXPECT_TRUE(well_opened(game_of_type(parse_type("N -> N"))));
    EXPECT_FALSE(well_opened(game::Bang(N)));
    EXPECT_FALSE(well_opened(game::Tensor(N, N)));
}
