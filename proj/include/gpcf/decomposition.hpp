#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gpcf/audit.hpp"
#include "gpcf/combinators.hpp"
#include "gpcf/denotation.hpp"
#include "gpcf/fet.hpp"

namespace gpcf {

// Outcome of case analysis on a strategy at a type in context. Component
// strategies live at the uncurried type in context `full` (context followed
// by the `curried` arguments of the original type).
struct Decomp {
    enum class Kind { Bottom, Const, Case };
    Kind kind = Kind::Bottom;
    std::uint64_t value = 0;  // Const
    Tic full;
    std::size_t curried = 0;
    std::size_t var = 0;  // Case: head variable, position in full.ctx
    Index copy;           // copy of the head variable opened by the strategy
    std::vector<Strategy> args;
    std::function<Strategy(std::uint64_t)> answer;
};

namespace detail {

inline void unmappable(const Strategy& parent, const Move& m) {
    PositionAudit::instance().record("decomposition: response " + move_str(m) + " of " + parent->describe() + " leaves the component");
}

// argument j (0-based) of the head copy, copy 0 of that argument
inline std::vector<Tag> head_arg_prefix(std::size_t p, std::size_t var, const Index& copy, std::size_t j) {
    std::vector<Tag> pre{Tag::left(), Tag::index(copy)};
    auto vp = var_path(p, var);
    pre.insert(pre.end(), vp.begin(), vp.end());
    for (std::size_t r = 0; r < j; ++r) pre.push_back(Tag::right());
    pre.push_back(Tag::left());
    pre.push_back(Tag::index(0));
    return pre;
}

}  // namespace detail

inline Decomp phi(const Strategy& sigma) {
    auto tic = tic_of_game(sigma->game());
    if (!tic) throw ShapeError("decomposition needs a type in context, got " + game_str(sigma->game()));
    Decomp d;
    d.curried = tic->arity();
    const Strategy su = kuncurry_all(sigma);
    d.full = *tic_of_game(su->game());
    const std::size_t p = d.full.ctx.size();
    const Move open = Q().under(Tag::right());
    auto r = su->next(open);
    if (!r) return d;
    if (r->path.size() == 1 && r->path[0].kind == Tag::R && !r->base.question) {
        d.kind = Decomp::Kind::Const;
        d.value = r->base.n;
        return d;
    }
    auto hit = locate_var(p, *r);
    const Type head_t = hit ? d.full.ctx[hit->var] : ground();
    if (!hit || hit->inner != opening(head_t)) {
        detail::unmappable(sigma, *r);
        return d;
    }
    d.kind = Decomp::Kind::Case;
    d.var = hit->var;
    d.copy = hit->copy;
    const auto head_args = arg_types(head_t);
    const std::size_t var = d.var;
    const Index copy = d.copy;

    for (std::size_t j = 0; j < head_args.size(); ++j) {
        const auto pre = detail::head_arg_prefix(p, var, copy, j);
        const Tic tj{d.full.ctx, head_args[j]};
        d.args.push_back(retag(
            tj.game(), su,
            [pre](const Move& m) -> std::optional<Move> {
                if (m.path[0].kind == Tag::R) return m.drop(1).under(pre);
                return m;
            },
            [pre, su](const Move& m) -> std::optional<Move> {
                if (m.starts_with(pre)) return m.drop(pre.size()).under(Tag::right());
                if (m.path[0].kind == Tag::L) return m;
                detail::unmappable(su, m);
                return std::nullopt;
            },
            "arg" + std::to_string(j + 1)));
    }

    struct Cache {
        std::mutex mu;
        std::map<std::uint64_t, Strategy> made;
    };
    auto cache = std::make_shared<Cache>();
    const Tic tn{d.full.ctx, ground()};
    const Move head_q = *r;
    const std::size_t arity = head_args.size();
    d.answer = [cache, su, tn, head_q, open, arity, p, var, copy](std::uint64_t n) -> Strategy {
        std::lock_guard<std::mutex> lk(cache->mu);
        auto it = cache->made.find(n);
        if (it != cache->made.end()) return it->second;
        const Move head_a = var_move(p, var, copy, Ans(n).under(rights(arity)));
        Strategy t = retag(
            tn.game(), su,
            [open, head_a](const Move& m) -> std::optional<Move> { return m == open ? head_a : m; },
            [](const Move& m) -> std::optional<Move> { return m; }, "answer" + std::to_string(n));
        cache->made.emplace(n, t);
        return t;
    };
    return d;
}

// Rebuilds the strategy described by a decomposition, with components
// transformed by `arg_fn` / `answer_fn`; answers above `max_answer` become bottom.
inline Strategy rebuild(const Decomp& d, const Game& target, const std::function<Strategy(const Strategy&)>& arg_fn,
                        const std::function<Strategy(const Strategy&)>& answer_fn, std::optional<std::uint64_t> max_answer) {
    switch (d.kind) {
    case Decomp::Kind::Bottom: return bottom(target);
    case Decomp::Kind::Const: return kcurry_n(konst(d.full, d.value), d.curried);
    case Decomp::Kind::Case: {
        std::vector<Strategy> args;
        for (const auto& a : d.args) args.push_back(arg_fn(a));
        const Tic tn{d.full.ctx, ground()};
        auto answer = d.answer;
        auto fn = answer_fn;
        auto c = case_combinator(d.full.ctx, d.var, args, [answer, fn, max_answer, tn](std::uint64_t n) -> Strategy {
            if (max_answer && n > *max_answer) return bottom(tn.game());
            return fn(answer(n));
        });
        return kcurry_n(c, d.curried);
    }
    }
    return bottom(target);
}

// strategy approximant p_k
inline Strategy p_k(std::uint64_t k, const Strategy& sigma) {
    if (k == 0) return bottom(sigma->game());
    Decomp d = phi(sigma);
    auto sub = [k](const Strategy& s) { return p_k(k - 1, s); };
    return rebuild(d, sigma->game(), sub, sub, k - 1);
}

// ---------------------------------------------------------------- readback

struct Namer {
    std::size_t counter = 0;
    std::string fresh(const Context& scope) { return fresh_name(scope, counter); }
};

inline Fet eta_k(std::uint64_t k, const Strategy& sigma, const Context& env, Namer& names, const std::vector<std::string>& top = {}) {
    auto tic = tic_of_game(sigma->game());
    if (!tic || tic->ctx.size() != env.size()) throw ShapeError("readback: context does not match " + game_str(sigma->game()));
    Context full = env;
    Context binders;
    const auto args = arg_types(tic->type);
    for (std::size_t j = 0; j < args.size(); ++j) {
        std::string x = j < top.size() ? top[j] : names.fresh(full);
        full.emplace_back(x, args[j]);
        binders.emplace_back(x, args[j]);
    }
    if (k == 0) return fet::lam(binders, fet::omega());
    Decomp d = phi(sigma);
    switch (d.kind) {
    case Decomp::Kind::Bottom: return fet::lam(binders, fet::omega());
    case Decomp::Kind::Const: return fet::lam(binders, fet::num(d.value));
    case Decomp::Kind::Case: {
        std::vector<Fet> fa;
        for (const auto& a : d.args) fa.push_back(eta_k(k - 1, a, full, names));
        std::map<std::uint64_t, Fet> ans;
        for (std::uint64_t n = 0; n + 1 <= k; ++n) ans.emplace(n, eta_k(k - 1, d.answer(n), full, names));
        return fet::lam(binders, fet::cases(full[d.var].first, fa, ans));
    }
    }
    return fet::omega();
}

inline Fet eta_k(std::uint64_t k, const Strategy& sigma, const Context& env = {}) {
    Namer names;
    return eta_k(k, sigma, env, names);
}

// bounded forms of the two halves of the isomorphism
inline Strategy S_k(std::uint64_t k, const Fet& p, const Context& env, const Type& t) { return denote_fet(env, q_k(k, p), t); }
inline Fet E_k(std::uint64_t k, const Strategy& sigma, const Context& env = {}) { return eta_k(k, sigma, env); }

// ---------------------------------------------------------------- simulation preorder

// a simulated by b for behaviours of size <= k
inline bool preceq_k(std::uint64_t k, const Strategy& a, const Strategy& b) {
    if (k == 0) return true;
    Decomp da = phi(a);
    if (da.kind == Decomp::Kind::Bottom) return true;
    Decomp db = phi(b);
    if (da.kind != db.kind) return false;
    if (da.kind == Decomp::Kind::Const) return da.value == db.value;
    if (da.var != db.var || da.args.size() != db.args.size()) return false;
    for (std::size_t j = 0; j < da.args.size(); ++j)
        if (!preceq_k(k - 1, da.args[j], db.args[j])) return false;
    for (std::uint64_t n = 0; n + 1 <= k; ++n)
        if (!preceq_k(k - 1, da.answer(n), db.answer(n))) return false;
    return true;
}

// ---------------------------------------------------------------- decomposition-driven evaluation

// A strategy together with values for its context variables.
struct Closure {
    Strategy strategy;
    std::vector<Closure> env;
};

namespace detail {

struct ApplyState {
    std::uint64_t calls = 0;
    std::uint64_t max_calls = 0;
    bool exhausted = false;
};

// Ground value of `sigma` (at a type in context) fully applied to `env`,
// whose length is the uncurried context size.
inline std::optional<std::uint64_t> eval_closure(const Strategy& sigma, const std::vector<Closure>& env, std::uint64_t depth, ApplyState& st) {
    if (depth == 0 || ++st.calls > st.max_calls) {
        st.exhausted = true;
        return std::nullopt;
    }
    Decomp d = phi(sigma);
    switch (d.kind) {
    case Decomp::Kind::Bottom: return std::nullopt;
    case Decomp::Kind::Const: return d.value;
    case Decomp::Kind::Case: {
        if (d.var >= env.size()) throw ShapeError("evaluation context too short");
        const Closure& head = env[d.var];
        std::vector<Closure> inner = head.env;
        for (const auto& a : d.args) inner.push_back(Closure{a, env});
        auto n = eval_closure(head.strategy, inner, depth - 1, st);
        if (!n) return std::nullopt;
        return eval_closure(d.answer(*n), env, depth - 1, st);
    }
    }
    return std::nullopt;
}

}  // namespace detail

// sigma applied to closed arguments, evaluated by repeated decomposition
inline Outcome apply_via_decomposition(const Strategy& sigma, const std::vector<Strategy>& args, std::uint64_t depth, std::uint64_t max_calls = 1000000) {
    auto tic = tic_of_game(sigma->game());
    if (!tic || !tic->ctx.empty()) throw ShapeError("apply: expected a closed strategy");
    if (args.size() != tic->arity()) throw ShapeError("apply: expected " + std::to_string(tic->arity()) + " arguments");
    std::vector<Closure> env;
    for (const auto& a : args) env.push_back(Closure{a, {}});
    detail::ApplyState st;
    st.max_calls = max_calls;
    auto n = detail::eval_closure(sigma, env, depth, st);
    if (n) return Outcome::answer(*n, st.calls);
    return Outcome::unresolved(st.calls, max_calls, !st.exhausted);
}

}  // namespace gpcf
