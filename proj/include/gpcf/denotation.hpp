#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpcf/audit.hpp"
#include "gpcf/combinators.hpp"
#include "gpcf/fet.hpp"
#include "gpcf/pcf.hpp"

namespace gpcf {

inline std::vector<Type> ctx_types(const Context& env) {
    std::vector<Type> out;
    out.reserve(env.size());
    for (const auto& [name, t] : env) out.push_back(t);
    return out;
}

namespace detail {

inline Strategy denote_rec(Context& env, const Term& t) {
    const auto types = ctx_types(env);
    switch (t->kind) {
    case TermKind::Var:
        for (std::size_t i = env.size(); i-- > 0;)
            if (env[i].first == t->name) return proj(types, i);
        throw TypeError("unbound variable " + t->name);
    case TermKind::Lam: {
        env.emplace_back(t->name, t->type);
        Strategy body;
        try {
            body = denote_rec(env, t->a);
        } catch (...) {
            env.pop_back();
            throw;
        }
        env.pop_back();
        return kcurry(body);
    }
    case TermKind::App: return kapply(denote_rec(env, t->a), denote_rec(env, t->b));
    case TermKind::Num: return lift(types, numeral(t->n));
    case TermKind::Succ: return lift(types, succ_point());
    case TermKind::Pred: return lift(types, pred_point());
    case TermKind::If0: return lift(types, if0_point());
    case TermKind::Case: return lift(types, case_point(t->n));
    case TermKind::Omega: return bottom(Tic{types, t->type}.game());
    case TermKind::Y: throw std::logic_error("fixpoint must be unfolded before denotation");
    }
    throw std::logic_error("unknown term");
}

}  // namespace detail

// Strategy for env |- t, with every Y[T] replaced by its y_depth-th approximant.
inline Strategy denote(const Context& env, const Term& t, std::uint64_t y_depth) {
    typecheck(env, t);
    Context e = env;
    return detail::denote_rec(e, unfold_y(t, y_depth));
}

inline std::optional<std::uint64_t> ground_answer(const Strategy& s, const Move& open) {
    auto r = s->next(open);
    if (r) PositionAudit::instance().check(s->game(), Position{open, *r});
    if (!r || r->base.question || r->path != rights(open.path.size())) return std::nullopt;
    return r->base.n;
}

// Each composite loop is capped at max_steps exchanges; a whole run at
// kRunFactor times that.
constexpr std::uint64_t kRunFactor = 1000;
inline std::uint64_t run_budget(const Bounds& b) {
    return b.max_steps > ~std::uint64_t{0} / kRunFactor ? ~std::uint64_t{0} : b.max_steps * kRunFactor;
}

// Probe the denotation of a closed ground term with its opening question.
// Fixpoints are unfolded with iterative deepening 1, 2, 4, ... up to y_depth.
inline Outcome run_game(const Term& t, std::uint64_t y_depth, const Bounds& b) {
    const Move open = Q().under(Tag::right());
    std::uint64_t total = 0;
    std::uint64_t k = contains_y(t) ? 1 : y_depth;
    for (;;) {
        k = std::min(k, y_depth);
        Strategy s;
        {
            LoopCap cap(b.max_steps);
            s = denote({}, t, k);
        }
        ExchangeBudget budget(run_budget(b));
        auto n = ground_answer(s, open);
        total += budget.used();
        if (n) {
            Outcome o = Outcome::answer(*n, total);
            o.y_depth = k;
            return o;
        }
        if (k >= y_depth || k == 0) {
            Outcome o = Outcome::unresolved(total, run_budget(b), !budget.exhausted());
            o.y_depth = k;
            return o;
        }
        k *= 2;
    }
}

// The map from evaluation trees to strategies.
inline Strategy denote_fet(const Context& env, const Fet& p, const Type& t);

namespace detail {

// body of a tree in the full context (env ++ binders), at ground type
inline Strategy denote_fet_body(const Context& full, const Fet& body) {
    const auto types = ctx_types(full);
    const Tic tic{types, ground()};
    switch (body->kind) {
    case FetNode::Omega: return bottom(tic.game());
    case FetNode::Num: return konst(tic, body->n);
    case FetNode::Case: {
        std::size_t i = full.size();
        for (std::size_t j = full.size(); j-- > 0;)
            if (full[j].first == body->head) {
                i = j;
                break;
            }
        if (i == full.size()) throw TypeError("unbound head variable " + body->head);
        auto argt = arg_types(full[i].second);
        std::vector<Strategy> args;
        for (std::size_t j = 0; j < body->args.size(); ++j) args.push_back(denote_fet(full, body->args[j], argt.at(j)));
        auto answers = body->answers;
        Context ctx = full;
        return case_combinator(types, i, args, [answers, ctx, tic](std::uint64_t n) -> Strategy {
            auto it = answers.find(n);
            if (it == answers.end()) return bottom(tic.game());
            return denote_fet_body(ctx, it->second);
        });
    }
    case FetNode::Lam: throw std::logic_error("nested binder block");
    }
    throw std::logic_error("unknown tree");
}

}  // namespace detail

inline Strategy denote_fet(const Context& env, const Fet& p, const Type& t) {
    Context full = env;
    const auto& bs = fet_binders(p);
    const auto args = arg_types(t);
    if (bs.size() > args.size()) throw TypeError("too many binders for " + type_str(t));
    // trees in short form (no binders at function type) are omega-only
    if (bs.size() < args.size() && fet_body(p)->kind != FetNode::Omega) throw TypeError("tree not eta-long at " + type_str(t));
    if (bs.size() < args.size()) return bottom(Tic{ctx_types(env), t}.game());
    full.insert(full.end(), bs.begin(), bs.end());
    return kcurry_n(detail::denote_fet_body(full, fet_body(p)), bs.size());
}

}  // namespace gpcf
