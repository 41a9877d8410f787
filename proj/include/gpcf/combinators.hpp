#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gpcf/strategy.hpp"
#include "gpcf/tic.hpp"

namespace gpcf {

struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {
inline const Game& expect_kind(const Game& g, GameKind k, const char* what) {
    if (g->kind != k) throw ShapeError(std::string(what) + ": unexpected game " + game_str(g));
    return g;
}
inline void expect_same(const Game& a, const Game& b, const char* what) {
    if (!game_equal(a, b)) throw ShapeError(std::string(what) + ": " + game_str(a) + " vs " + game_str(b));
}
inline Tag L() { return Tag::left(); }
inline Tag R() { return Tag::right(); }
}  // namespace detail

// ---------------------------------------------------------------- linear structure

inline Strategy identity(const Game& a) {
    return make_strategy(
        game::Lolli(a, a),
        [](const Move& m) -> std::optional<Move> {
            if (m.path.empty()) return std::nullopt;
            Move r = m;
            r.path[0] = m.path[0].kind == Tag::L ? Tag::right() : Tag::left();
            return r;
        },
        "id");
}

struct InteractionStep {
    char component;  // 'A', 'B' or 'C'
    bool from_left;  // produced by the left strategy
    Move move;
};

// Composition by the execution formula: an incoming move is fed to one side,
// and moves in the shared middle game bounce between the two until something
// leaves through A or C.
class ComposeStrategy final : public StrategyImpl {
public:
    ComposeStrategy(Strategy f, Strategy g, std::uint64_t max_steps)
        : StrategyImpl(game::Lolli(f->game()->left, g->game()->right)), f_(std::move(f)), g_(std::move(g)), max_steps_(max_steps) {}

    std::optional<Move> respond(const Move& m) const override { return run(m, nullptr); }
    std::string describe() const override { return "compose(" + f_->describe() + ", " + g_->describe() + ")"; }

    std::vector<InteractionStep> interaction(const Move& m) const {
        std::vector<InteractionStep> log;
        run(m, &log);
        return log;
    }
    const Strategy& left() const { return f_; }
    const Strategy& right() const { return g_; }

private:
    std::optional<Move> run(const Move& m, std::vector<InteractionStep>* log) const {
        if (m.path.empty()) return std::nullopt;
        bool in_f = m.path[0].kind == Tag::L;
        Move cur = m;
        auto& meter = ExchangeMeter::local();
        for (std::uint64_t step = 0;; ++step) {
            if (step >= max_steps_ || meter.spent()) {
                note_exhausted();
                ++meter.exhausted;
                return std::nullopt;
            }
            ++meter.exchanges;
            auto r = (in_f ? f_ : g_)->next(cur);
            if (!r) return std::nullopt;
            const bool head_left = r->path[0].kind == Tag::L;
            if (in_f) {
                if (log) log->push_back({head_left ? 'A' : 'B', true, *r});
                if (head_left) return r;
                cur = *r;
                cur.path[0] = Tag::left();
                in_f = false;
            } else {
                if (log) log->push_back({head_left ? 'B' : 'C', false, *r});
                if (!head_left) return r;
                cur = *r;
                cur.path[0] = Tag::right();
                in_f = true;
            }
        }
    }

    Strategy f_, g_;
    std::uint64_t max_steps_;
};

// per-composite loop cap; the run-wide cap is the thread's ExchangeMeter limit
inline std::uint64_t& default_max_steps() {
    static std::uint64_t v = ~std::uint64_t{0};
    return v;
}

// Sets the loop cap of composites built while in scope.
class LoopCap {
public:
    explicit LoopCap(std::uint64_t cap) : saved_(default_max_steps()) { default_max_steps() = cap; }
    ~LoopCap() { default_max_steps() = saved_; }
    LoopCap(const LoopCap&) = delete;
    LoopCap& operator=(const LoopCap&) = delete;

private:
    std::uint64_t saved_;
};

inline Strategy compose(const Strategy& f, const Strategy& g, std::uint64_t max_steps = 0) {
    detail::expect_kind(f->game(), GameKind::Lolli, "compose");
    detail::expect_kind(g->game(), GameKind::Lolli, "compose");
    detail::expect_same(f->game()->right, g->game()->left, "compose middle game");
    return std::make_shared<ComposeStrategy>(f, g, max_steps ? max_steps : default_max_steps());
}

inline Strategy tensor(const Strategy& s, const Strategy& t) {
    using namespace detail;
    expect_kind(s->game(), GameKind::Lolli, "tensor");
    expect_kind(t->game(), GameKind::Lolli, "tensor");
    Game g = game::Lolli(game::Tensor(s->game()->left, t->game()->left), game::Tensor(s->game()->right, t->game()->right));
    return make_strategy(
        g,
        [s, t](const Move& m) -> std::optional<Move> {
            if (m.path.size() < 2) return std::nullopt;
            const Tag outer = m.path[0];
            const bool first = m.path[1].kind == Tag::L;
            Move inner = m.drop(2).under(outer);
            auto r = (first ? s : t)->next(inner);
            if (!r) return std::nullopt;
            return r->drop(1).under({r->path[0], first ? L() : R()});
        },
        "tensor(" + s->describe() + ", " + t->describe() + ")");
}

// (A*B) -o C  to  A -o (B -o C)
inline Strategy curry(const Strategy& s) {
    using namespace detail;
    const Game& g = s->game();
    expect_kind(g, GameKind::Lolli, "curry");
    expect_kind(g->left, GameKind::Tensor, "curry");
    Game out = game::Lolli(g->left->left, game::Lolli(g->left->right, g->right));
    return retag(
        out, s,
        [](const Move& m) -> std::optional<Move> {
            if (m.path[0].kind == Tag::L) return m.drop(1).under({L(), L()});
            if (m.path.size() < 2) return std::nullopt;
            if (m.path[1].kind == Tag::L) return m.drop(2).under({L(), R()});
            return m.drop(2).under(R());
        },
        [](const Move& m) -> std::optional<Move> {
            if (m.path[0].kind == Tag::R) return m.drop(1).under({R(), R()});
            if (m.path[1].kind == Tag::L) return m.drop(2).under(L());
            return m.drop(2).under({R(), L()});
        },
        "curry(" + s->describe() + ")");
}

// A -o (B -o C)  to  (A*B) -o C
inline Strategy uncurry(const Strategy& s) {
    using namespace detail;
    const Game& g = s->game();
    expect_kind(g, GameKind::Lolli, "uncurry");
    expect_kind(g->right, GameKind::Lolli, "uncurry");
    Game out = game::Lolli(game::Tensor(g->left, g->right->left), g->right->right);
    return retag(
        out, s,
        [](const Move& m) -> std::optional<Move> {
            if (m.path[0].kind == Tag::R) return m.drop(1).under({R(), R()});
            if (m.path.size() < 2) return std::nullopt;
            if (m.path[1].kind == Tag::L) return m.drop(2).under(L());
            return m.drop(2).under({R(), L()});
        },
        [](const Move& m) -> std::optional<Move> {
            if (m.path[0].kind == Tag::L) return m.drop(1).under({L(), L()});
            if (m.path[1].kind == Tag::L) return m.drop(2).under({L(), R()});
            return m.drop(2).under(R());
        },
        "uncurry(" + s->describe() + ")");
}

// ((A -o B) * A) -o B
inline Strategy linear_app(const Game& a, const Game& b) {
    using namespace detail;
    Game g = game::Lolli(game::Tensor(game::Lolli(a, b), a), b);
    return make_strategy(
        g,
        [](const Move& m) -> std::optional<Move> {
            if (m.path[0].kind == Tag::R) return m.drop(1).under({L(), L(), R()});
            if (m.path.size() < 2) return std::nullopt;
            if (m.path[1].kind == Tag::R) return m.drop(2).under({L(), L(), L()});
            if (m.path.size() < 3) return std::nullopt;
            if (m.path[2].kind == Tag::R) return m.drop(3).under(R());
            return m.drop(3).under({L(), R()});
        },
        "app");
}

// (A & B) -o A   and   (A & B) -o B
inline Strategy fst(const Game& a, const Game& b) {
    using namespace detail;
    return make_strategy(
        game::Lolli(game::With(a, b), a),
        [](const Move& m) -> std::optional<Move> {
            if (m.path[0].kind == Tag::R) return m.drop(1).under({L(), L()});
            if (m.path.size() < 2 || m.path[1].kind != Tag::L) return std::nullopt;
            return m.drop(2).under(R());
        },
        "fst");
}

inline Strategy snd(const Game& a, const Game& b) {
    using namespace detail;
    return make_strategy(
        game::Lolli(game::With(a, b), b),
        [](const Move& m) -> std::optional<Move> {
            if (m.path[0].kind == Tag::R) return m.drop(1).under({L(), R()});
            if (m.path.size() < 2 || m.path[1].kind != Tag::R) return std::nullopt;
            return m.drop(2).under(R());
        },
        "snd");
}

// ---------------------------------------------------------------- exponentials

// !A -o A through copy i
inline Strategy der(const Game& a, std::uint64_t i = 0) {
    using namespace detail;
    const Index idx(i);
    return make_strategy(
        game::Lolli(game::Bang(a), a),
        [idx](const Move& m) -> std::optional<Move> {
            if (m.path[0].kind == Tag::R) return m.drop(1).under({L(), Tag::index(idx)});
            if (m.path.size() < 2 || m.path[1].kind != Tag::Idx || m.path[1].idx != idx) return std::nullopt;
            return m.drop(2).under(R());
        },
        "der" + std::to_string(i));
}

inline Strategy weak(const Game& a) { return bottom(game::Lolli(game::Bang(a), game::I())); }

// !A -o !A * !A with the even/odd tagging
inline Strategy con(const Game& a) {
    using namespace detail;
    Game g = game::Lolli(game::Bang(a), game::Tensor(game::Bang(a), game::Bang(a)));
    return make_strategy(
        g,
        [](const Move& m) -> std::optional<Move> {
            if (m.path[0].kind == Tag::R) {
                if (m.path.size() < 3 || m.path[2].kind != Tag::Idx) return std::nullopt;
                const bool right = m.path[1].kind == Tag::R;
                return m.drop(3).under({L(), Tag::index(Index::tag(right, m.path[2].idx))});
            }
            if (m.path.size() < 2 || m.path[1].kind != Tag::Idx) return std::nullopt;
            auto d = m.path[1].idx.untag();
            if (!d) return std::nullopt;
            return m.drop(2).under({R(), d->first ? R() : L(), Tag::index(d->second)});
        },
        "con");
}

// promotion: !A -o B  to  !A -o !B, copy i of the target runs its own copy of
// the argument strategy with source copies relocated through pair(i, .)
inline Strategy promote(const Strategy& s) {
    using namespace detail;
    const Game& g = s->game();
    expect_kind(g, GameKind::Lolli, "promote");
    expect_kind(g->left, GameKind::Bang, "promote");
    Game out = game::Lolli(g->left, game::Bang(g->right));
    return make_strategy(
        out,
        [s](const Move& m) -> std::optional<Move> {
            if (m.path.size() < 2 || m.path[1].kind != Tag::Idx) return std::nullopt;
            Index i;
            Move inner;
            if (m.path[0].kind == Tag::R) {
                i = m.path[1].idx;
                inner = m.drop(2).under(R());
            } else {
                auto ij = m.path[1].idx.unpair();
                if (!ij) return std::nullopt;
                i = ij->first;
                inner = m.drop(2).under({L(), Tag::index(ij->second)});
            }
            auto r = s->next(inner);
            if (!r) return std::nullopt;
            if (r->path[0].kind == Tag::R) return r->drop(1).under({R(), Tag::index(i)});
            if (r->path.size() < 2 || r->path[1].kind != Tag::Idx) return std::nullopt;
            return r->drop(2).under({L(), Tag::index(Index::pair(i, r->path[1].idx))});
        },
        "promote(" + s->describe() + ")");
}

enum class ExpDir { fwd, bwd };

// fwd : !(A&B) -o !A * !B   (copy i of !A or !B is copy 2i / 2i+1 of !(A&B))
// bwd : !A * !B -o !(A&B)   (index preserving)
inline Strategy exp_iso(const Game& a, const Game& b, ExpDir dir) {
    using namespace detail;
    Game bw = game::Bang(game::With(a, b));
    Game tb = game::Tensor(game::Bang(a), game::Bang(b));
    if (dir == ExpDir::fwd) {
        return make_strategy(
            game::Lolli(bw, tb),
            [](const Move& m) -> std::optional<Move> {
                if (m.path[0].kind == Tag::R) {
                    if (m.path.size() < 3 || m.path[2].kind != Tag::Idx) return std::nullopt;
                    const bool right = m.path[1].kind == Tag::R;
                    return m.drop(3).under({L(), Tag::index(Index::tag(right, m.path[2].idx)), right ? R() : L()});
                }
                if (m.path.size() < 3 || m.path[1].kind != Tag::Idx) return std::nullopt;
                auto d = m.path[1].idx.untag();
                if (!d) return std::nullopt;
                const bool right = m.path[2].kind == Tag::R;
                if (d->first != right) return std::nullopt;
                return m.drop(3).under({R(), right ? R() : L(), Tag::index(d->second)});
            },
            "efwd");
    }
    return make_strategy(
        game::Lolli(tb, bw),
        [](const Move& m) -> std::optional<Move> {
            if (m.path.size() < 3) return std::nullopt;
            if (m.path[0].kind == Tag::R) return m.drop(3).under({L(), m.path[2], m.path[1]});
            return m.drop(3).under({R(), m.path[2], m.path[1]});
        },
        "ebwd");
}

// co-Kleisli pairing: con ; (s† * t†) ; e ; der
inline Strategy pair(const Strategy& s, const Strategy& t) {
    using namespace detail;
    expect_kind(s->game()->left, GameKind::Bang, "pair");
    expect_same(s->game()->left, t->game()->left, "pair context");
    const Game c = s->game()->left->left;
    const Game a = s->game()->right;
    const Game b = t->game()->right;
    return compose(con(c), compose(tensor(promote(s), promote(t)), compose(exp_iso(a, b, ExpDir::bwd), der(game::With(a, b)))));
}

// countable pairing into the family of copies of `a`; copy c of the context
// used by component n is relocated to pair(n, c)
inline Strategy family_pair(const Game& ctx, const Game& a, std::function<Strategy(std::uint64_t)> comp) {
    using namespace detail;
    struct Cache {
        std::mutex mu;
        std::map<std::uint64_t, Strategy> made;
    };
    auto cache = std::make_shared<Cache>();
    auto get = [cache, comp](std::uint64_t n) {
        std::lock_guard<std::mutex> lk(cache->mu);
        auto it = cache->made.find(n);
        if (it != cache->made.end()) return it->second;
        Strategy s = comp(n);
        cache->made.emplace(n, s);
        return s;
    };
    Game g = game::Lolli(game::Bang(ctx), game::Family(a));
    return make_strategy(
        g,
        [get](const Move& m) -> std::optional<Move> {
            if (m.path.size() < 2) return std::nullopt;
            std::uint64_t n;
            Move inner;
            if (m.path[0].kind == Tag::R) {
                if (m.path[1].kind != Tag::Comp) return std::nullopt;
                n = m.path[1].comp;
                inner = m.drop(2).under(R());
            } else {
                if (m.path[1].kind != Tag::Idx) return std::nullopt;
                auto nc = m.path[1].idx.unpair();
                if (!nc || !nc->first.is_nat()) return std::nullopt;
                n = nc->first.value();
                inner = m.drop(2).under({L(), Tag::index(nc->second)});
            }
            auto r = get(n)->next(inner);
            if (!r) return std::nullopt;
            if (r->path[0].kind == Tag::R) return r->drop(1).under({R(), Tag::component(n)});
            if (r->path.size() < 2 || r->path[1].kind != Tag::Idx) return std::nullopt;
            return r->drop(2).under({L(), Tag::index(Index::pair(Index(n), r->path[1].idx))});
        },
        "family");
}

// ---------------------------------------------------------------- case strategies

// Nat * Nat^w -o Nat: ask the first input, then the component it names
inline Strategy chi_a() {
    using namespace detail;
    Game g = game::Lolli(game::Tensor(game::Nat(), game::Family(game::Nat())), game::Nat());
    return make_strategy(
        g,
        [](const Move& m) -> std::optional<Move> {
            if (m.path[0].kind == Tag::R) {
                if (!m.base.question) return std::nullopt;
                return Q().under({L(), L()});
            }
            if (m.base.question || m.path.size() < 2) return std::nullopt;
            if (m.path[1].kind == Tag::L) return Q().under({L(), R(), Tag::component(m.base.n)});
            return Ans(m.base.n).under(R());
        },
        "chi_a");
}

// !(Nat & Nat^w) -o Nat
inline Strategy chi() {
    const Game n = game::Nat();
    const Game w = game::Family(game::Nat());
    return compose(exp_iso(n, w, ExpDir::fwd), compose(tensor(der(n), der(w)), chi_a()));
}

// ---------------------------------------------------------------- points of PCF types

inline Strategy numeral(std::uint64_t n) {
    return make_strategy(
        game::Nat(), [n](const Move& m) -> std::optional<Move> { return m.base.question ? std::optional<Move>(Ans(n)) : std::nullopt; },
        "num(" + std::to_string(n) + ")");
}

// x on A viewed as a map I -o A
inline Strategy as_map(const Strategy& x) {
    return retag(
        game::Lolli(game::I(), x->game()), x,
        [](const Move& m) -> std::optional<Move> {
            if (m.path[0].kind != Tag::R) return std::nullopt;
            return m.drop(1);
        },
        [](const Move& m) -> std::optional<Move> { return m.under(Tag::right()); }, x->describe());
}

// Nat -o Nat: ask the input, answer f(n)
inline Strategy arith(std::function<std::uint64_t(std::uint64_t)> f, std::string name) {
    using namespace detail;
    return make_strategy(
        game::Lolli(game::Nat(), game::Nat()),
        [f](const Move& m) -> std::optional<Move> {
            if (m.path[0].kind == Tag::R) {
                if (!m.base.question) return std::nullopt;
                return Q().under(L());
            }
            if (m.base.question) return std::nullopt;
            return Ans(f(m.base.n)).under(R());
        },
        std::move(name));
}

inline Strategy succ_linear() { return arith([](std::uint64_t n) { return n + 1; }, "succ"); }
inline Strategy pred_linear() { return arith([](std::uint64_t n) { return n == 0 ? 0 : n - 1; }, "pred"); }

// N => N constants
inline Strategy succ_point() { return compose(der(game::Nat()), succ_linear()); }
inline Strategy pred_point() { return compose(der(game::Nat()), pred_linear()); }

// case_k on N => N^k => N (k = 2 plays the conditional): ask the selector,
// then the chosen branch, then copy its answer
inline Strategy case_point(std::uint64_t k) {
    using namespace detail;
    Game g = game_of_type(case_type(k));
    auto arg = [](std::uint64_t j) {  // argument j (0 = selector), copy 0
        std::vector<Tag> p(j, Tag::right());
        p.push_back(Tag::left());
        p.push_back(Tag::index(0));
        return p;
    };
    return make_strategy(
        g,
        [k, arg](const Move& m) -> std::optional<Move> {
            std::size_t j = 0;
            while (j < m.path.size() && m.path[j].kind == Tag::R) ++j;
            if (j == k + 1) {
                if (!m.base.question) return std::nullopt;
                return Q().under(arg(0));
            }
            if (m.base.question || m.path.size() != j + 2 || m.path[j + 1] != Tag::index(0)) return std::nullopt;
            if (j == 0) {
                if (m.base.n >= k) return std::nullopt;
                return Q().under(arg(m.base.n + 1));
            }
            return Ans(m.base.n).under(rights(k + 1));
        },
        "case" + std::to_string(k));
}

// conditional: 0 selects the first branch, anything else the second
inline Strategy if0_point() {
    using namespace detail;
    Game g = game_of_type(case_type(2));
    auto arg = [](std::uint64_t j) {
        std::vector<Tag> p(j, Tag::right());
        p.push_back(Tag::left());
        p.push_back(Tag::index(0));
        return p;
    };
    return make_strategy(
        g,
        [arg](const Move& m) -> std::optional<Move> {
            std::size_t j = 0;
            while (j < m.path.size() && m.path[j].kind == Tag::R) ++j;
            if (j == 3) {
                if (!m.base.question) return std::nullopt;
                return Q().under(arg(0));
            }
            if (m.base.question || m.path.size() != j + 2 || m.path[j + 1] != Tag::index(0)) return std::nullopt;
            if (j == 0) return Q().under(arg(m.base.n == 0 ? 1 : 2));
            return Ans(m.base.n).under(rights(3));
        },
        "if0");
}

// ---------------------------------------------------------------- types in context

// point x of game(T) as a strategy in context ctx that ignores the context
inline Strategy lift(const std::vector<Type>& ctx, const Strategy& x) {
    Game g = game::Lolli(game::Bang(ctx_game(ctx)), x->game());
    return retag(
        g, x,
        [](const Move& m) -> std::optional<Move> {
            if (m.path[0].kind != Tag::R) return std::nullopt;
            return m.drop(1);
        },
        [](const Move& m) -> std::optional<Move> { return m.under(Tag::right()); }, x->describe());
}

inline Strategy bottom_tic(const Tic& t) { return bottom(t.game()); }

// answers n to the opening question, whatever the arguments
inline Strategy konst(const Tic& t, std::uint64_t n) {
    const Move open = opening(t.type).under(Tag::right());
    const Move ans = Ans(n).under(rights(t.arity() + 1));
    return make_strategy(
        t.game(), [open, ans](const Move& m) -> std::optional<Move> { return m == open ? std::optional<Move>(ans) : std::nullopt; },
        "K" + std::to_string(n));
}

// projection onto variable i (copy 0)
inline Strategy proj(const std::vector<Type>& ctx, std::size_t i) {
    if (i >= ctx.size()) throw ShapeError("projection out of range");
    const std::size_t p = ctx.size();
    Tic t{ctx, ctx[i]};
    return make_strategy(
        t.game(),
        [p, i](const Move& m) -> std::optional<Move> {
            if (m.path[0].kind == Tag::R) return var_move(p, i, Index(0), m.drop(1));
            auto hit = locate_var(p, m);
            if (!hit || hit->var != i || hit->copy != Index(0)) return std::nullopt;
            return hit->inner.under(Tag::right());
        },
        "pi" + std::to_string(i));
}

// co-Kleisli currying, Tic(ctx+[A], U) to Tic(ctx, A => U). Copies keep
// their index: the argument never shares a copy with another variable.
inline Strategy kcurry(const Strategy& s) {
    auto tic = tic_of_game(s->game());
    if (!tic || tic->ctx.empty()) throw ShapeError("kcurry: not a nonempty type in context: " + game_str(s->game()));
    const std::size_t p = tic->ctx.size();  // variables of the inner strategy
    std::vector<Type> outer_ctx(tic->ctx.begin(), tic->ctx.end() - 1);
    Tic out{outer_ctx, arrow(tic->ctx.back(), tic->type)};
    return retag(
        out.game(), s,
        [p](const Move& m) -> std::optional<Move> {
            if (m.path[0].kind == Tag::R) {
                if (m.path.size() < 2) return std::nullopt;
                if (m.path[1].kind == Tag::R) return m.drop(2).under(Tag::right());
                if (m.path.size() < 3 || m.path[2].kind != Tag::Idx) return std::nullopt;
                return var_move(p, p - 1, m.path[2].idx, m.drop(3));
            }
            auto hit = locate_var(p - 1, m);
            if (!hit) return std::nullopt;
            return var_move(p, hit->var, hit->copy, hit->inner);
        },
        [p](const Move& m) -> std::optional<Move> {
            if (m.path[0].kind == Tag::R) return m.drop(1).under({Tag::right(), Tag::right()});
            auto hit = locate_var(p, m);
            if (!hit) return std::nullopt;
            if (hit->var == p - 1) return hit->inner.under({Tag::right(), Tag::left(), Tag::index(hit->copy)});
            return var_move(p - 1, hit->var, hit->copy, hit->inner);
        },
        "lambda(" + s->describe() + ")");
}

// inverse of kcurry; context copies are re-tagged so the argument's copies
// and the old context's copies cannot collide
inline Strategy kuncurry(const Strategy& s) {
    auto tic = tic_of_game(s->game());
    if (!tic || !tic->type->arrow) throw ShapeError("kuncurry: not a function type in context: " + game_str(s->game()));
    const std::size_t p = tic->ctx.size();
    std::vector<Type> ctx2 = tic->ctx;
    ctx2.push_back(tic->type->dom);
    Tic out{ctx2, tic->type->cod};
    return retag(
        out.game(), s,
        [p](const Move& m) -> std::optional<Move> {
            if (m.path[0].kind == Tag::R) return m.drop(1).under({Tag::right(), Tag::right()});
            auto hit = locate_var(p + 1, m);
            if (!hit) return std::nullopt;
            auto d = hit->copy.untag();
            if (!d) return std::nullopt;
            if (hit->var == p) {
                if (!d->first) return std::nullopt;
                return hit->inner.under({Tag::right(), Tag::left(), Tag::index(d->second)});
            }
            if (d->first) return std::nullopt;
            return var_move(p, hit->var, d->second, hit->inner);
        },
        [p](const Move& m) -> std::optional<Move> {
            if (m.path[0].kind == Tag::R) {
                if (m.path.size() < 2) return std::nullopt;
                if (m.path[1].kind == Tag::R) return m.drop(2).under(Tag::right());
                if (m.path.size() < 3 || m.path[2].kind != Tag::Idx) return std::nullopt;
                return var_move(p + 1, p, Index::tag(true, m.path[2].idx), m.drop(3));
            }
            auto hit = locate_var(p, m);
            if (!hit) return std::nullopt;
            return var_move(p + 1, hit->var, Index::tag(false, hit->copy), hit->inner);
        },
        "unlambda(" + s->describe() + ")");
}

// Ap o <g, d>  as  con ; (g * d†) ; app
inline Strategy kapply(const Strategy& g, const Strategy& d) {
    using namespace detail;
    const Game& gg = g->game();
    expect_kind(gg, GameKind::Lolli, "kapply");
    expect_kind(gg->right, GameKind::Lolli, "kapply");
    expect_same(gg->left, d->game()->left, "kapply context");
    expect_same(gg->right->left, game::Bang(d->game()->right), "kapply argument");
    const Game c = gg->left->left;
    return compose(con(c), compose(tensor(g, promote(d)), linear_app(gg->right->left, gg->right->right)));
}

// co-Kleisli composition s ; t  for s : !A -o B, t : !B -o C
inline Strategy kcompose(const Strategy& s, const Strategy& t) { return compose(promote(s), t); }

// C_i(args, answers) in a context whose target is N: feed the head variable
// its arguments, then continue with the answer's branch.
inline Strategy case_combinator(const std::vector<Type>& ctx, std::size_t i, const std::vector<Strategy>& args,
                                std::function<Strategy(std::uint64_t)> answers) {
    Strategy head = proj(ctx, i);
    for (const auto& a : args) head = kapply(head, a);
    if (!game_equal(head->game()->right, game::Nat())) throw ShapeError("C_i: head not saturated");
    Strategy fam = family_pair(ctx_game(ctx), game::Nat(), std::move(answers));
    return compose(promote(pair(head, fam)), chi());
}

// curries away the last `k` context variables
inline Strategy kcurry_n(Strategy s, std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) s = kcurry(s);
    return s;
}

inline Strategy kuncurry_all(Strategy s) {
    for (;;) {
        auto t = tic_of_game(s->game());
        if (!t || !t->type->arrow) return s;
        s = kuncurry(s);
    }
}

}  // namespace gpcf
