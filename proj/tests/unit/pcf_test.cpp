#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"

using namespace gpcf;

namespace {

// Reference evaluator: iterate the one-step relation.
Outcome iterate_steps(const Term& t, std::uint64_t fuel) {
    Term cur = t;
    for (std::uint64_t n = 0;; ++n) {
        if (cur->kind == TermKind::Num) return Outcome::answer(cur->n, n);
        if (n >= fuel) return Outcome::unresolved(n, fuel, false);
        auto next = detail::step(cur);
        if (!next) return Outcome::unresolved(n, fuel, true);
        cur = *next;
    }
}

// Random closed term of type N over a pool of N-typed variables in scope.
Term random_ground(std::mt19937_64& rng, int depth, std::vector<std::string>& scope) {
    const int choice = depth <= 0 ? static_cast<int>(rng() % 2) : static_cast<int>(rng() % 9);
    switch (choice) {
    case 0: return term::Num(rng() % 4);
    case 1:
        if (!scope.empty()) return term::Var(scope[rng() % scope.size()]);
        return term::Num(rng() % 3);
    case 2: return term::App(term::Succ(), random_ground(rng, depth - 1, scope));
    case 3: return term::App(term::Pred(), random_ground(rng, depth - 1, scope));
    case 4:
        return term::App(term::If0(), {random_ground(rng, depth - 1, scope), random_ground(rng, depth - 1, scope),
                                       random_ground(rng, depth - 1, scope)});
    case 5: {
        const std::uint64_t k = 1 + rng() % 3;
        Term t = term::App(term::Case(k), random_ground(rng, depth - 1, scope));
        for (std::uint64_t i = 0; i < k; ++i) t = term::App(t, random_ground(rng, depth - 1, scope));
        return t;
    }
    case 6: return term::Omega(ground());
    default: {
        // beta redex; reuse names so substitution has shadowing to get right
        const std::string x = std::string(1, static_cast<char>('x' + rng() % 3));
        Term arg = random_ground(rng, depth - 1, scope);
        scope.push_back(x);
        Term body = random_ground(rng, depth - 1, scope);
        scope.pop_back();
        return term::App(term::Lam(x, ground(), body), arg);
    }
    }
}

}  // namespace

TEST(Parse, Examples) {
    EXPECT_TRUE(term_equal(parse("\\x:N. succ x"), term::Lam("x", ground(), term::App(term::Succ(), term::Var("x")))));
    EXPECT_TRUE(term_equal(parse("Y[N] (\\x:N. x)"), term::App(term::Y(ground()), term::Lam("x", ground(), term::Var("x")))));
    EXPECT_TRUE(term_equal(parse("case2 x y0 y1"), term::App(term::Case(2), {term::Var("x"), term::Var("y0"), term::Var("y1")})));
}

TEST(Parse, PrintRoundTrip) {
    for (const char* text : {"\\x:N. succ x", "Y[N -> N] (\\f:N -> N. \\n:N. if0 n 0 (f (pred n)))", "case3 (pred 4) 1 2 3",
                             "\\f:(N -> N) -> N. f (\\x:N. x)", "Omega[N -> N] 3", "(\\x:N. x) ((\\y:N. y) 2)"}) {
        const Term t = parse(text);
        EXPECT_EQ(term_str(t), text);
        EXPECT_TRUE(term_equal(parse(term_str(t)), t)) << text;
    }
}

TEST(Parse, RandomRoundTrip) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        std::vector<std::string> scope;
        const Term t = random_ground(rng, 4, scope);
        EXPECT_TRUE(term_equal(parse(term_str(t)), t)) << term_str(t);
    }
}

TEST(Parse, ErrorsCarryLocation) {
    try {
        parse("\\x:N.\n  succ )");
        FAIL() << "expected a syntax error";
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.line, 2u);
        EXPECT_GT(e.column, 1u);
    }
    EXPECT_THROW(parse("case"), SyntaxError);
    EXPECT_THROW(parse("Y[N"), SyntaxError);
}

TEST(Parse, FreeVariablesAllowed) { EXPECT_NO_THROW(parse("f x")); }

TEST(Typecheck, Examples) {
    EXPECT_TRUE(type_equal(typecheck({}, parse("\\x:N.x")), arrow(ground(), ground())));
    EXPECT_EQ(type_str(typecheck({}, term::Case(2))), "N -> N -> N -> N");
    EXPECT_THROW(typecheck({}, term::App(term::Num(0), term::Num(0))), TypeError);
}

TEST(Typecheck, Errors) {
    EXPECT_THROW(typecheck({}, parse("x")), TypeError);
    EXPECT_THROW(typecheck({}, parse("succ (\\x:N. x)")), TypeError);
    EXPECT_THROW(typecheck({}, parse("Y[N] 3")), TypeError);
    EXPECT_EQ(type_str(typecheck({{"f", parse_type("N -> N")}}, parse("f 2"))), "N");
    EXPECT_EQ(type_str(typecheck({}, parse("Y[N -> N]"))), "((N -> N) -> N -> N) -> N -> N");
    EXPECT_EQ(type_str(typecheck({}, parse("Y[N]"))), "(N -> N) -> N");
}

TEST(EvalOp, Examples) {
    EXPECT_EQ(eval_op(parse("succ (succ 0)"), 10).str(), "2");
    EXPECT_EQ(eval_op(parse("case2 1 5 7"), 10).str(), "7");
    EXPECT_EQ(eval_op(parse("Y[N -> N] (\\f:N -> N. \\n:N. if0 n 0 (f (pred n))) 3"), 500).str(), "0");
}

TEST(EvalOp, DivergenceKinds) {
    auto omega = eval_op(parse("Omega[N]"), 100);
    EXPECT_FALSE(omega.answered);
    EXPECT_TRUE(omega.stuck);
    auto loop = eval_op(parse("Y[N] (\\x:N. x)"), 1000);
    EXPECT_FALSE(loop.answered);
    EXPECT_FALSE(loop.stuck);
    EXPECT_EQ(loop.steps, 1000u);
    // case_k on an out-of-range selector has no rule
    EXPECT_TRUE(eval_op(parse("case2 2 5 7"), 100).stuck);
    EXPECT_EQ(eval_op(parse("pred 0"), 10).str(), "0");
}

TEST(EvalOp, MachineAgreesWithStepIteration) {
    std::mt19937_64 rng(3);
    int answered = 0;
    for (int i = 0; i < 2000; ++i) {
        std::vector<std::string> scope;
        const Term t = random_ground(rng, 5, scope);
        ASSERT_TRUE(type_equal(typecheck({}, t), ground()));
        const Outcome want = iterate_steps(t, 100000);
        const Outcome got = eval_op(t, 100000);
        ASSERT_TRUE(want.same_result(got)) << term_str(t);
        EXPECT_EQ(want.steps, got.steps) << term_str(t);
        EXPECT_EQ(want.stuck, got.stuck) << term_str(t);
        answered += got.answered;
    }
    EXPECT_GT(answered, 500);
}

TEST(EvalOp, SubjectReduction) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        std::vector<std::string> scope;
        Term t = random_ground(rng, 4, scope);
        for (int s = 0; s < 50; ++s) {
            auto next = detail::step(t);
            if (!next) break;
            t = *next;
            ASSERT_TRUE(type_equal(typecheck({}, t), ground())) << term_str(t);
        }
    }
}

TEST(EvalOp, CorpusFactorial) {
    for (const auto& e : read_adequacy_corpus(tu::data_file("adequacy.txt")))
        if (e.name == "fact_5") {
            EXPECT_EQ(eval_op(parse(e.text), 10000000).str(), "120");
            return;
        }
    FAIL() << "fact_5 missing from corpus";
}

TEST(EvalOp, LongRunsDoNotExhaustTheStack) {
    // counts upward forever, building a deep numeral-free spine
    auto o = eval_op(parse("Y[N -> N] (\\f:N -> N. \\n:N. f (succ n)) 0"), 200000);
    EXPECT_FALSE(o.answered);
    EXPECT_EQ(o.steps, 200000u);
}

TEST(Subst, AvoidsCapture) {
    const Term body = parse("\\y:N. x");
    const Term r = subst(body, "x", term::Var("y"));
    ASSERT_EQ(r->kind, TermKind::Lam);
    EXPECT_NE(r->name, "y");
    EXPECT_EQ(free_vars(r), std::set<std::string>{"y"});
    // the renamed binder still binds its own occurrences
    const Term r2 = subst(parse("\\y:N. succ y"), "z", term::Var("y"));
    EXPECT_EQ(eval_op(term::App(r2, term::Num(4)), 10).str(), "5");
}

TEST(Subst, RespectsShadowing) {
    const Term r = subst(parse("(\\x:N. x) x"), "x", term::Num(3));
    EXPECT_EQ(term_str(r), "(\\x:N. x) 3");
}

TEST(FreeVars, Cached) {
    EXPECT_EQ(free_vars(parse("\\x:N. f x y")), (std::set<std::string>{"f", "y"}));
    EXPECT_TRUE(free_vars(parse("\\x:N. x")).empty());
    EXPECT_TRUE(occurs_free("g", parse("g (\\g:N. g)")));
    EXPECT_FALSE(occurs_free("g", parse("\\g:N. g")));
}

TEST(Fixpoint, ApproximantsUnfold) {
    const Term y2 = y_approximant(parse_type("N"), 2);
    EXPECT_EQ(type_str(typecheck({}, y2)), "(N -> N) -> N");
    EXPECT_EQ(eval_op(term::App(y2, parse("\\x:N. 4")), 100).str(), "4");
    EXPECT_FALSE(eval_op(term::App(y_approximant(parse_type("N"), 0), parse("\\x:N. 4")), 100).answered);
    EXPECT_FALSE(contains_y(unfold_y(parse("Y[N] (\\x:N. x)"), 3)));
}
