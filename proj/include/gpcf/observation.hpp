#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpcf/combinators.hpp"
#include "gpcf/decomposition.hpp"
#include "gpcf/denotation.hpp"
#include "gpcf/fet.hpp"

namespace gpcf {

// ---------------------------------------------------------------- Sierpinski tests

struct RunResult {
    bool converges = false;
    bool exhausted = false;
    std::uint64_t exchanges = 0;
};

// x on A, alpha on A -o S: does x;alpha answer the Sierpinski question?
inline RunResult sierpinski_run(const Strategy& alpha, const Strategy& x, const Bounds& b) {
    detail::expect_kind(alpha->game(), GameKind::Lolli, "sierpinski_run");
    detail::expect_same(alpha->game()->right, game::Sigma(), "sierpinski_run target");
    detail::expect_same(alpha->game()->left, x->game(), "sierpinski_run argument");
    Strategy run = compose(as_map(x), alpha);
    ExchangeBudget budget(b.max_steps);
    auto r = run->next(Q().under(Tag::right()));
    RunResult out;
    out.converges = r && !r->base.question && r->path.size() == 1;
    out.exhausted = budget.exhausted();
    out.exchanges = budget.used();
    return out;
}

// closed strategy on !I -o A seen as a point of A
inline Strategy as_point(const Strategy& s) {
    detail::expect_kind(s->game(), GameKind::Lolli, "as_point");
    detail::expect_same(s->game()->left, game::Bang(game::I()), "as_point context");
    return retag(
        s->game()->right, s, [](const Move& m) -> std::optional<Move> { return m.under(Tag::right()); },
        [](const Move& m) -> std::optional<Move> {
            if (m.path.empty() || m.path[0].kind != Tag::R) return std::nullopt;
            return m.drop(1);
        },
        s->describe());
}

// Nat -o S: converge exactly when the answer is n
inline Strategy observe_answer(std::uint64_t n) {
    return make_strategy(
        game::Lolli(game::Nat(), game::Sigma()),
        [n](const Move& m) -> std::optional<Move> {
            if (m.path[0].kind == Tag::R) return m.base.question ? std::optional<Move>(Q().under(Tag::left())) : std::nullopt;
            if (m.base.question || m.base.n != n) return std::nullopt;
            return Ans(0).under(Tag::right());
        },
        "answer=" + std::to_string(n));
}

// A -o A * I
inline Strategy unit_right(const Game& a) {
    return make_strategy(
        game::Lolli(a, game::Tensor(a, game::I())),
        [](const Move& m) -> std::optional<Move> {
            if (m.path[0].kind == Tag::L) return m.drop(1).under({Tag::right(), Tag::left()});
            if (m.path.size() < 2 || m.path[1].kind != Tag::L) return std::nullopt;
            return m.drop(2).under(Tag::left());
        },
        "unit");
}

// !I -o X  as  I -o X
inline Strategy drop_bang_unit(const Strategy& s) {
    return retag(
        game::Lolli(game::I(), s->game()->right), s,
        [](const Move& m) -> std::optional<Move> { return m.path[0].kind == Tag::R ? std::optional<Move>(m) : std::nullopt; },
        [](const Move& m) -> std::optional<Move> { return m.path[0].kind == Tag::R ? std::optional<Move>(m) : std::nullopt; }, s->describe());
}

// Test on game(T): apply to closed arguments (each !I -o B), then observe answer n.
inline Strategy application_test(const Type& t, const std::vector<Strategy>& args, std::uint64_t n) {
    Game cur = game_of_type(t);
    Strategy chain = identity(cur);
    for (const auto& a : args) {
        detail::expect_kind(cur, GameKind::Lolli, "application_test");
        const Game dom = cur->left;  // !B
        const Game cod = cur->right;
        Strategy arg = drop_bang_unit(promote(a));  // I -o !B
        Strategy step = compose(unit_right(cur), compose(tensor(identity(cur), arg), linear_app(dom, cod)));
        chain = compose(chain, step);
        cur = cod;
    }
    detail::expect_same(cur, game::Nat(), "application_test result");
    return compose(chain, observe_answer(n));
}

struct Test {
    std::string description;
    Strategy alpha;
};

struct Verdict {
    enum class Kind { Leq, NotLeq, Inconclusive };
    Kind kind = Kind::Leq;
    std::string witness;            // separating test or context
    std::vector<Term> witness_args;  // applicative context, when one separates
    std::string left, right;        // the two outcomes
    std::uint64_t checked = 0;
    std::uint64_t inconclusive = 0;
    bool leq() const { return kind == Kind::Leq; }
    std::string str() const {
        switch (kind) {
        case Kind::Leq: return "leq";
        case Kind::NotLeq: return "not-leq";
        case Kind::Inconclusive: return "inconclusive";
        }
        return "?";
    }
};

inline Verdict intrinsic_leq_approx(const Strategy& x, const Strategy& y, const std::vector<Test>& suite, const Bounds& b) {
    Verdict v;
    for (const auto& t : suite) {
        ++v.checked;
        auto rx = sierpinski_run(t.alpha, x, b);
        if (!rx.converges) {
            if (rx.exhausted) ++v.inconclusive;
            continue;
        }
        auto ry = sierpinski_run(t.alpha, y, b);
        if (ry.converges) continue;
        if (ry.exhausted) {
            ++v.inconclusive;
            continue;
        }
        v.kind = Verdict::Kind::NotLeq;
        v.witness = t.description;
        v.left = "converges";
        v.right = "no answer";
        return v;
    }
    if (v.inconclusive) v.kind = Verdict::Kind::Inconclusive;
    return v;
}

// Tests on game(T) built from enumerated trees for the arguments and every
// observed answer n <= max_nat.
inline std::vector<Test> default_suite(const Type& t, const FetShape& shape, std::uint64_t max_nat, std::size_t max_tuples = 200) {
    const auto argt = arg_types(t);
    std::vector<std::vector<Fet>> choices;
    for (const auto& a : argt) choices.push_back(enumerate_fets({}, a, shape));
    std::vector<Test> out;
    std::vector<std::size_t> idx(argt.size(), 0);
    std::size_t tuples = 0;
    for (;;) {
        std::vector<Strategy> args;
        std::string desc;
        for (std::size_t j = 0; j < idx.size(); ++j) {
            const Fet& f = choices[j][idx[j]];
            args.push_back(denote_fet({}, f, argt[j]));
            desc += (j ? " " : "") + std::string("(") + fet_str(f) + ")";
        }
        for (std::uint64_t n = 0; n <= max_nat; ++n)
            out.push_back(Test{(desc.empty() ? std::string("") : "[.] " + desc + ", ") + "answer=" + std::to_string(n), application_test(t, args, n)});
        if (++tuples >= max_tuples) break;
        std::size_t j = 0;
        while (j < idx.size() && ++idx[j] == choices[j].size()) idx[j++] = 0;
        if (j == idx.size()) break;
    }
    return out;
}

// ---------------------------------------------------------------- applicative contexts

struct CompareOptions {
    std::size_t depth = 2;
    std::uint64_t max_num = 2;
    std::uint64_t max_support = 2;
    std::size_t max_tuples = 5000;
    std::uint64_t fuel = 1000000;
    bool cross_check_game = false;
    std::uint64_t y_depth = 32;
    Bounds bounds;
};

inline Term apply_all(Term f, const std::vector<Term>& args) {
    for (const auto& a : args) f = term::App(f, a);
    return f;
}

// One direction of the comparison for a given argument tuple.
// Returns NotLeq when M answers and N answers differently or is stuck.
inline Verdict::Kind compare_outcomes(const Outcome& om, const Outcome& on) {
    if (!om.answered) return Verdict::Kind::Leq;
    if (on.answered) return on.value == om.value ? Verdict::Kind::Leq : Verdict::Kind::NotLeq;
    return on.stuck ? Verdict::Kind::NotLeq : Verdict::Kind::Inconclusive;
}

// M below N in every applicative context built from enumerated argument trees.
inline Verdict obs_compare(const Term& m, const Term& n, const CompareOptions& opt) {
    const Type tm = typecheck({}, m);
    const Type tn = typecheck({}, n);
    if (!type_equal(tm, tn)) throw TypeError("compared terms have different types: " + type_str(tm) + " vs " + type_str(tn));
    const auto argt = arg_types(tm);
    FetShape shape;
    shape.depth = opt.depth;
    shape.max_num = opt.max_num;
    shape.max_support = opt.max_support;
    std::vector<std::vector<Term>> choices;
    for (const auto& a : argt) {
        std::vector<Term> c;
        for (const auto& f : enumerate_fets({}, a, shape)) c.push_back(fet_to_term(f));
        choices.push_back(std::move(c));
    }
    Verdict v;
    std::vector<std::size_t> idx(argt.size(), 0);
    for (;;) {
        std::vector<Term> args;
        for (std::size_t j = 0; j < idx.size(); ++j) args.push_back(choices[j][idx[j]]);
        ++v.checked;
        Outcome om = eval_op(apply_all(m, args), opt.fuel);
        Outcome on = eval_op(apply_all(n, args), opt.fuel);
        if (opt.cross_check_game) {
            Outcome gm = run_game(apply_all(m, args), opt.y_depth, opt.bounds);
            Outcome gn = run_game(apply_all(n, args), opt.y_depth, opt.bounds);
            if ((om.answered && gm.answered && om.value != gm.value) || (on.answered && gn.answered && on.value != gn.value))
                throw std::logic_error("operational and game evaluation disagree");
        }
        auto k = compare_outcomes(om, on);
        if (k == Verdict::Kind::NotLeq) {
            v.kind = k;
            v.witness_args = args;
            for (std::size_t j = 0; j < args.size(); ++j) v.witness += (j ? " " : "") + term_str(args[j]);
            v.left = om.str();
            v.right = on.stuck ? "stuck" : on.str();
            return v;
        }
        if (k == Verdict::Kind::Inconclusive) ++v.inconclusive;
        if (v.checked >= opt.max_tuples) break;
        std::size_t j = 0;
        while (j < idx.size() && ++idx[j] == choices[j].size()) idx[j++] = 0;
        if (j == idx.size()) break;
    }
    if (v.inconclusive) v.kind = Verdict::Kind::Inconclusive;
    return v;
}

// Re-runs a NotLeq witness; true when the separation is reproduced.
inline bool replay(const Term& m, const Term& n, const Verdict& v, std::uint64_t fuel) {
    if (v.kind != Verdict::Kind::NotLeq) return false;
    Outcome om = eval_op(apply_all(m, v.witness_args), fuel);
    Outcome on = eval_op(apply_all(n, v.witness_args), fuel);
    return compare_outcomes(om, on) == Verdict::Kind::NotLeq && om.str() == v.left && (on.stuck ? "stuck" : on.str()) == v.right;
}

// ---------------------------------------------------------------- adequacy

struct CorpusEntry {
    std::string name;
    std::string text;
    std::optional<std::uint64_t> expect;  // nullopt: diverges
};

struct AdequacyCase {
    CorpusEntry entry;
    Outcome op, game;
    bool pass = false;
};

struct AdequacyReport {
    std::vector<AdequacyCase> cases;
    std::size_t passed = 0;
    bool ok() const { return passed == cases.size(); }
};

inline AdequacyReport adequacy_check(const std::vector<CorpusEntry>& corpus, std::uint64_t fuel, std::uint64_t y_depth, const Bounds& b) {
    AdequacyReport rep;
    for (const auto& e : corpus) {
        AdequacyCase c;
        c.entry = e;
        Term t = parse(e.text);
        c.op = eval_op(t, fuel);
        c.game = run_game(t, y_depth, b);
        if (e.expect) c.pass = c.op.answered && c.game.answered && c.op.value == *e.expect && c.game.value == *e.expect;
        else c.pass = !c.op.answered && !c.game.answered;
        rep.passed += c.pass;
        rep.cases.push_back(std::move(c));
    }
    return rep;
}

}  // namespace gpcf
