#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"

using namespace gpcf;
using gpcf::tu::den;

namespace {

const Bounds kB{3, 2, 12, 100000};
const Context kX{{"x", ground()}};

Strategy k_const(std::uint64_t n, const std::string& type = "N") { return konst(Tic{{}, parse_type(type)}, n); }

// every Omega replaced by an arbitrary tree of the same position; here by numerals
Fet fill_some_omegas(std::mt19937_64& rng, const Fet& p) {
    switch (p->kind) {
    case FetNode::Omega: return rng() % 2 ? fet::num(rng() % 4) : p;
    case FetNode::Num: return p;
    case FetNode::Lam: return fet::lam(p->binders, fill_some_omegas(rng, p->body));
    case FetNode::Case: {
        std::vector<Fet> args;
        for (const auto& a : p->args) {
            // argument subtrees keep their binders; only their bodies change
            if (a->kind == FetNode::Lam) args.push_back(fet::lam(a->binders, fill_some_omegas(rng, a->body)));
            else args.push_back(fill_some_omegas(rng, a));
        }
        auto ans = p->answers;
        for (auto& [n, q] : ans) q = fill_some_omegas(rng, q);
        if (rng() % 3 == 0) ans.emplace(ans.empty() ? 0 : ans.rbegin()->first + 1, fet::num(rng() % 3));
        return fet::cases(p->head, args, ans);
    }
    }
    return p;
}

}  // namespace

TEST(Fet, LeqExamples) {
    const Fet c0 = fet::cases("x", {}, {{0, fet::omega()}});
    const Fet c5 = fet::cases("x", {}, {{0, fet::num(5)}});
    EXPECT_TRUE(fet_leq(fet::omega(), fet::num(3)));
    EXPECT_TRUE(fet_leq(fet::omega(), c5));
    EXPECT_FALSE(fet_leq(fet::num(3), fet::num(4)));
    EXPECT_TRUE(fet_leq(c0, c5));
    EXPECT_FALSE(fet_leq(c5, c0));
}

TEST(Fet, FillingOmegasMovesUp) {
    std::mt19937_64 rng(13);
    FetShape shape{3, 3, 3, 20000};
    for (int i = 0; i < 200; ++i) {
        const Type t = random_type(rng, 2);
        const Fet p = random_fet(rng, {}, t, shape);
        const Fet q = fill_some_omegas(rng, p);
        EXPECT_TRUE(fet_leq(p, q)) << fet_str(p) << " vs " << fet_str(q);
        EXPECT_TRUE(fet_alpha_equal(fet_meet(p, q), p)) << fet_str(p) << " vs " << fet_str(q);
        if (!fet_alpha_equal(p, q)) {
            EXPECT_FALSE(fet_leq(q, p));
        }
    }
}

TEST(Fet, TruncationExamples) {
    EXPECT_EQ(fet_str(q_k(0, fet::num(7))), "Omega[N]");
    EXPECT_TRUE(fet_equal(q_k(5, fet::num(7)), fet::num(7)));
    const Fet c = fet::lam(kX, fet::cases("x", {}, {{0, fet::num(0)}, {1, fet::num(1)}, {2, fet::num(2)}}));
    // level k keeps the answers below k
    // the kept answer is itself cut to Omega at level 0
    EXPECT_EQ(fet_str(q_k(1, c)), "\\x:N. case0 x");
    EXPECT_EQ(fet_str(q_k(2, c)), "\\x:N. case2 x 0 1");
    EXPECT_EQ(fet_str(q_k(3, c)), "\\x:N. case3 x 0 1 2");
    EXPECT_EQ(fet_str(q_k(0, c)), "\\x:N. Omega[N]");
}

TEST(Fet, TruncationProperties) {
    std::mt19937_64 rng(19);
    FetShape shape{3, 3, 3, 20000};
    for (int i = 0; i < 200; ++i) {
        const Type t = random_type(rng, 2);
        const Fet p = random_fet(rng, {}, t, shape);
        for (std::uint64_t k = 0; k <= 4; ++k) {
            const Fet qk = q_k(k, p);
            EXPECT_TRUE(fet_leq(qk, p));
            EXPECT_TRUE(fet_leq(qk, q_k(k + 1, p)));
            EXPECT_TRUE(fet_equal(q_k(k, qk), qk));
            EXPECT_LE(fet_depth(qk), k);
            EXPECT_NO_THROW(fet_check({}, qk, t));
        }
    }
}

TEST(Fet, ToTermExamples) {
    EXPECT_EQ(term_str(fet_to_term(fet::num(3))), "3");
    EXPECT_EQ(term_str(fet_to_term(fet::lam(kX, fet::cases("x", {}, {{0, fet::num(1)}})))), "\\x:N. case1 x 1");
    EXPECT_EQ(term_str(fet_to_term(fet::lam(kX, fet::omega()))), "\\x:N. Omega[N]");
    // least l: the answer at 2 forces case3 with an Omega hole at 1
    EXPECT_EQ(term_str(fet_to_term(fet::lam(kX, fet::cases("x", {}, {{0, fet::num(1)}, {2, fet::num(5)}})))), "\\x:N. case3 x 1 Omega[N] 5");
}

TEST(Fet, TermRoundTrip) {
    std::mt19937_64 rng(29);
    FetShape shape{3, 3, 3, 20000};
    for (int i = 0; i < 200; ++i) {
        const Type t = random_type(rng, 2);
        const Fet p = random_fet(rng, {}, t, shape);
        const Term m = fet_to_term(p);
        EXPECT_TRUE(type_equal(typecheck({}, m), t)) << term_str(m);
        auto back = term_to_fet(m);
        ASSERT_TRUE(back) << term_str(m);
        EXPECT_TRUE(fet_alpha_equal(*back, p)) << term_str(m);
    }
}

TEST(Fet, EnumerationRespectsShape) {
    FetShape shape{2, 1, 2, 20000};
    const auto trees = enumerate_fets({}, parse_type("N -> N"), shape);
    std::set<std::string> seen;
    for (const auto& p : trees) {
        EXPECT_LE(fet_depth(p), 2u);
        EXPECT_TRUE(seen.insert(fet_str(alpha_normalize(p))).second) << "duplicate " << fet_str(p);
    }
    const Fet want = fet::lam(kX, fet::cases("x", {}, {{0, fet::num(0)}, {1, fet::num(1)}}));
    EXPECT_TRUE(std::any_of(trees.begin(), trees.end(), [&](const Fet& p) { return fet_alpha_equal(p, want); }));
    const Fet too_big = fet::lam(kX, fet::cases("x", {}, {{2, fet::num(0)}}));
    EXPECT_TRUE(std::none_of(trees.begin(), trees.end(), [&](const Fet& p) { return fet_alpha_equal(p, too_big); }));
}

TEST(Phi, Kinds) {
    EXPECT_EQ(phi(bottom(Tic{{}, parse_type("N -> N")}.game())).kind, Decomp::Kind::Bottom);
    auto k5 = phi(k_const(5));
    EXPECT_EQ(k5.kind, Decomp::Kind::Const);
    EXPECT_EQ(k5.value, 5u);
    auto id = phi(den("\\x:N. x"));
    ASSERT_EQ(id.kind, Decomp::Kind::Case);
    EXPECT_EQ(id.var, 0u);
    EXPECT_TRUE(id.args.empty());
    for (std::uint64_t n = 0; n < 4; ++n) {
        auto tau = phi(id.answer(n));
        EXPECT_EQ(tau.kind, Decomp::Kind::Const);
        EXPECT_EQ(tau.value, n);
    }
    auto second = phi(den("\\x:N. \\y:N. y"));
    ASSERT_EQ(second.kind, Decomp::Kind::Case);
    EXPECT_EQ(second.var, 1u);
    auto app = phi(den("\\f:N -> N. f 3"));
    ASSERT_EQ(app.kind, Decomp::Kind::Case);
    ASSERT_EQ(app.args.size(), 1u);
    EXPECT_EQ(phi(app.args[0]).kind, Decomp::Kind::Const);
}

TEST(Phi, RebuildFidelity) {
    for (const char* t : {"\\x:N. x", "\\x:N. succ x", "\\f:N -> N. f (f 2)", "\\x:N. \\y:N. if0 x y 4", "\\f:N -> N -> N. f 1 (f 2 0)"}) {
        const Strategy s = den(t);
        const Decomp d = phi(s);
        auto same = [](const Strategy& x) { return x; };
        EXPECT_TRUE(strat_equiv(rebuild(d, s->game(), same, same, 8), s, Bounds{2, 2, 12, 100000})) << t;
    }
}

TEST(Approximants, Examples) {
    const Bounds b{3, 2, 10, 100000};
    const Strategy id = den("\\x:N. x");
    EXPECT_EQ(traces(p_k(0, id), b).size(), 1u);
    for (std::uint64_t k : {1, 2, 5}) EXPECT_TRUE(strat_equiv(p_k(k, k_const(4)), k_const(4), b)) << k;
    EXPECT_TRUE(strat_equiv(p_k(1, id), den("\\x:N. case1 x Omega[N]"), b));
    EXPECT_TRUE(strat_equiv(p_k(2, id), den("\\x:N. case2 x 0 1"), b));
    EXPECT_TRUE(strat_equiv(p_k(3, id), den("\\x:N. case3 x 0 1 2"), b));
}

TEST(Readback, Examples) {
    const Strategy id = den("\\x:N. x");
    EXPECT_EQ(fet_str(eta_k(0, id)), "\\y1:N. Omega[N]");
    EXPECT_EQ(fet_str(eta_k(1, k_const(7))), "7");
    EXPECT_EQ(fet_str(eta_k(3, k_const(7, "N -> N"))), "\\y1:N. 7");
    EXPECT_TRUE(fet_alpha_equal(eta_k(2, id), fet::lam(kX, fet::cases("x", {}, {{0, fet::num(0)}, {1, fet::num(1)}}))));
    EXPECT_EQ(fet_str(eta_k(2, den("\\f:N -> N. f 3"))), "\\y1:N -> N. case2 (y1 3) 0 1");
}

TEST(Readback, BoundedIsomorphism) {
    const Bounds b{3, 2, 10, 100000};
    std::mt19937_64 rng(41);
    FetShape shape{3, 3, 3, 20000};
    for (int i = 0; i < 40; ++i) {
        const Type t = random_type(rng, 2);
        const Fet p = random_fet(rng, {}, t, shape);
        for (std::uint64_t k = 0; k <= 3; ++k) {
            EXPECT_TRUE(fet_alpha_equal(E_k(k, S_k(k, p, {}, t)), q_k(k, p))) << fet_str(p) << " k=" << k;
            EXPECT_TRUE(strat_equiv(S_k(k, E_k(k, S_k(4, p, {}, t)), {}, t), p_k(k, S_k(4, p, {}, t)), b)) << fet_str(p) << " k=" << k;
        }
    }
    EXPECT_EQ(traces(S_k(0, fet::num(3), {}, ground()), b).size(), 1u);
}

TEST(Dhb, Examples) {
    const std::uint64_t fuel = 8;
    auto d5 = dhb(code::denotation("5", fuel));
    ASSERT_TRUE(d5.D);
    EXPECT_EQ(*d5.D, std::make_pair(2, std::uint64_t{5}));
    EXPECT_FALSE(dhb(code::denotation("Omega[N -> N]", fuel)).D);
    auto did = dhb(code::denotation("\\x:N. x", fuel));
    ASSERT_TRUE(did.D);
    EXPECT_EQ(*did.D, std::make_pair(3, std::uint64_t{0}));
    ASSERT_TRUE(did.H);
    EXPECT_TRUE(did.H->empty());
    auto b3 = did.B(3);
    ASSERT_TRUE(b3);
    auto k3 = phi(decode(*b3));
    EXPECT_EQ(k3.kind, Decomp::Kind::Const);
    EXPECT_EQ(k3.value, 3u);
}

TEST(Simulation, Examples) {
    EXPECT_TRUE(preceq_k(0, k_const(2), k_const(3)));
    EXPECT_FALSE(preceq_k(1, k_const(2), k_const(3)));
    EXPECT_TRUE(preceq_k(4, bottom(k_const(2)->game()), k_const(3)));
    const Strategy id = den("\\x:N. x");
    for (std::uint64_t k = 0; k <= 3; ++k) EXPECT_TRUE(preceq_k(k, p_k(k, id), id)) << k;
    EXPECT_FALSE(preceq_k(2, den("\\x:N. x"), den("\\x:N. succ x")));
    EXPECT_TRUE(preceq_k(1, den("\\x:N. x"), den("\\x:N. succ x")));
}

TEST(Apply, Examples) {
    EXPECT_EQ(apply_via_decomposition(den("\\x:N. succ x"), {den("2")}, 100).str(), "3");
    EXPECT_EQ(apply_via_decomposition(k_const(9), {}, 100).str(), "9");
    EXPECT_FALSE(apply_via_decomposition(bottom(Tic{{}, parse_type("N -> N")}.game()), {den("1")}, 100).answered);
    EXPECT_EQ(apply_via_decomposition(den("\\f:N -> N. f (f 1)"), {den("\\x:N. succ (succ x)")}, 100).str(), "5");
    auto c = apply_via_decomposition(code::denotation("\\x:N. succ x", 8), {code::denotation("2", 8)}, 100);
    EXPECT_EQ(c.str(), "3");
}

TEST(Apply, DepthCapIsReported) {
    auto o = apply_via_decomposition(den("\\f:N -> N. f (f (f 1))"), {den("\\x:N. succ x")}, 2);
    EXPECT_FALSE(o.answered);
    EXPECT_FALSE(o.stuck);
}
