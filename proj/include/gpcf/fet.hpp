#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpcf/pcf.hpp"

namespace gpcf {

// Finite evaluation trees: \x~. body with body one of Omega, a numeral, or a
// case split on a head variable applied to argument trees.
struct FetNode;
using Fet = std::shared_ptr<const FetNode>;

struct FetNode {
    enum Kind : std::uint8_t { Lam, Omega, Num, Case };
    Kind kind = Omega;
    Context binders;                    // Lam
    Fet body;                           // Lam
    std::uint64_t n = 0;                // Num
    std::string head;                   // Case
    std::vector<Fet> args;              // Case
    std::map<std::uint64_t, Fet> answers;  // Case, Omega entries omitted
};

namespace fet {
inline Fet omega() {
    static const Fet o = std::make_shared<FetNode>();
    return o;
}
inline Fet num(std::uint64_t n) {
    auto p = std::make_shared<FetNode>();
    p->kind = FetNode::Num;
    p->n = n;
    return p;
}
inline Fet lam(Context binders, Fet body) {
    if (binders.empty()) return body;
    if (body->kind == FetNode::Lam) {
        binders.insert(binders.end(), body->binders.begin(), body->binders.end());
        body = body->body;
    }
    auto p = std::make_shared<FetNode>();
    p->kind = FetNode::Lam;
    p->binders = std::move(binders);
    p->body = std::move(body);
    return p;
}
inline Fet cases(std::string head, std::vector<Fet> args, std::map<std::uint64_t, Fet> answers) {
    auto p = std::make_shared<FetNode>();
    p->kind = FetNode::Case;
    p->head = std::move(head);
    p->args = std::move(args);
    for (auto& [k, v] : answers)
        if (v->kind != FetNode::Omega) p->answers.emplace(k, v);
    return p;
}
}  // namespace fet

inline const Context& fet_binders(const Fet& p) {
    static const Context none;
    return p->kind == FetNode::Lam ? p->binders : none;
}
inline const Fet& fet_body(const Fet& p) { return p->kind == FetNode::Lam ? p->body : p; }

inline Fet fet_answer(const Fet& c, std::uint64_t n) {
    auto it = c->answers.find(n);
    return it == c->answers.end() ? fet::omega() : it->second;
}

inline bool fet_equal(const Fet& p, const Fet& q) {
    if (p == q) return true;
    if (p->kind != q->kind) return false;
    switch (p->kind) {
    case FetNode::Omega: return true;
    case FetNode::Num: return p->n == q->n;
    case FetNode::Lam:
        if (p->binders.size() != q->binders.size()) return false;
        for (std::size_t i = 0; i < p->binders.size(); ++i)
            if (p->binders[i].first != q->binders[i].first || !type_equal(p->binders[i].second, q->binders[i].second)) return false;
        return fet_equal(p->body, q->body);
    case FetNode::Case:
        if (p->head != q->head || p->args.size() != q->args.size() || p->answers.size() != q->answers.size()) return false;
        for (std::size_t i = 0; i < p->args.size(); ++i)
            if (!fet_equal(p->args[i], q->args[i])) return false;
        for (const auto& [k, v] : p->answers) {
            auto it = q->answers.find(k);
            if (it == q->answers.end() || !fet_equal(v, it->second)) return false;
        }
        return true;
    }
    return false;
}

// Renames every binder to a positional name (_1, _2, ... by binding depth).
inline Fet alpha_normalize(const Fet& p, std::vector<std::pair<std::string, std::string>>& scope) {
    switch (p->kind) {
    case FetNode::Omega:
    case FetNode::Num: return p;
    case FetNode::Lam: {
        Context bs;
        const std::size_t mark = scope.size();
        for (const auto& [x, t] : p->binders) {
            std::string fresh = "_" + std::to_string(scope.size() + 1);
            scope.emplace_back(x, fresh);
            bs.emplace_back(fresh, t);
        }
        Fet body = alpha_normalize(p->body, scope);
        scope.resize(mark);
        return fet::lam(bs, body);
    }
    case FetNode::Case: {
        std::string h = p->head;
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
            if (it->first == p->head) {
                h = it->second;
                break;
            }
        std::vector<Fet> args;
        for (const auto& a : p->args) args.push_back(alpha_normalize(a, scope));
        std::map<std::uint64_t, Fet> ans;
        for (const auto& [k, v] : p->answers) ans.emplace(k, alpha_normalize(v, scope));
        return fet::cases(h, args, ans);
    }
    }
    return p;
}

inline Fet alpha_normalize(const Fet& p) {
    std::vector<std::pair<std::string, std::string>> scope;
    return alpha_normalize(p, scope);
}

inline bool fet_alpha_equal(const Fet& p, const Fet& q) { return fet_equal(alpha_normalize(p), alpha_normalize(q)); }

namespace detail {
inline bool fet_leq_rec(const Fet& p, const Fet& q) {
    if (p->kind == FetNode::Omega) return true;
    if (p->kind != q->kind) return false;
    switch (p->kind) {
    case FetNode::Num: return p->n == q->n;
    case FetNode::Lam:
        if (p->binders.size() != q->binders.size()) return false;
        for (std::size_t i = 0; i < p->binders.size(); ++i)
            if (p->binders[i].first != q->binders[i].first) return false;
        return fet_leq_rec(p->body, q->body);
    case FetNode::Case:
        if (p->head != q->head || p->args.size() != q->args.size()) return false;
        for (std::size_t i = 0; i < p->args.size(); ++i)
            if (!fet_leq_rec(p->args[i], q->args[i])) return false;
        for (const auto& [k, v] : p->answers)
            if (!fet_leq_rec(v, fet_answer(q, k))) return false;
        return true;
    default: return true;
    }
}
inline Fet fet_meet_rec(const Fet& p, const Fet& q) {
    if (p->kind == FetNode::Omega || q->kind == FetNode::Omega || p->kind != q->kind) {
        if (p->kind == FetNode::Lam && q->kind == FetNode::Lam) return fet::omega();
        return fet::omega();
    }
    switch (p->kind) {
    case FetNode::Num: return p->n == q->n ? p : fet::omega();
    case FetNode::Lam: return fet::lam(p->binders, fet_meet_rec(p->body, q->body));
    case FetNode::Case: {
        if (p->head != q->head || p->args.size() != q->args.size()) return fet::omega();
        std::vector<Fet> args;
        for (std::size_t i = 0; i < p->args.size(); ++i) args.push_back(fet_meet_rec(p->args[i], q->args[i]));
        std::map<std::uint64_t, Fet> ans;
        for (const auto& [k, v] : p->answers) ans.emplace(k, fet_meet_rec(v, fet_answer(q, k)));
        return fet::cases(p->head, args, ans);
    }
    default: return fet::omega();
    }
}
}  // namespace detail

// Omega-match order
inline bool fet_leq(const Fet& p, const Fet& q) { return detail::fet_leq_rec(alpha_normalize(p), alpha_normalize(q)); }

// node-wise greatest lower bound; binder names of p are kept. Lambda prefixes
// are preserved when they agree so the meet stays at the common type.
inline Fet fet_meet(const Fet& p, const Fet& q) {
    Fet a = alpha_normalize(p), b = alpha_normalize(q);
    if (a->kind == FetNode::Lam && b->kind == FetNode::Lam) return fet::lam(a->binders, detail::fet_meet_rec(a->body, b->body));
    if (a->kind == FetNode::Lam) return fet::lam(a->binders, fet::omega());
    if (b->kind == FetNode::Lam) return fet::lam(b->binders, fet::omega());
    return detail::fet_meet_rec(a, b);
}

// truncation q_k
inline Fet q_k(std::uint64_t k, const Fet& p) {
    const Context& xs = fet_binders(p);
    const Fet& body = fet_body(p);
    if (k == 0) return fet::lam(xs, fet::omega());
    if (body->kind != FetNode::Case) return p;
    std::vector<Fet> args;
    for (const auto& a : body->args) args.push_back(q_k(k - 1, a));
    std::map<std::uint64_t, Fet> ans;
    for (const auto& [n, q] : body->answers)
        if (n <= k - 1) ans.emplace(n, q_k(k - 1, q));
    return fet::lam(xs, fet::cases(body->head, args, ans));
}

inline std::size_t fet_depth(const Fet& p) {
    const Fet& b = fet_body(p);
    if (b->kind != FetNode::Case) return 0;
    std::size_t d = 0;
    for (const auto& a : b->args) d = std::max(d, fet_depth(a));
    for (const auto& [k, v] : b->answers) d = std::max(d, fet_depth(v));
    return d + 1;
}

inline std::size_t fet_size(const Fet& p) {
    const Fet& b = fet_body(p);
    if (b->kind != FetNode::Case) return 1;
    std::size_t s = 1;
    for (const auto& a : b->args) s += fet_size(a);
    for (const auto& [k, v] : b->answers) s += fet_size(v);
    return s;
}

inline Term fet_to_term(const Fet& p) {
    switch (p->kind) {
    case FetNode::Lam: {
        Term t = fet_to_term(p->body);
        for (auto it = p->binders.rbegin(); it != p->binders.rend(); ++it) t = term::Lam(it->first, it->second, t);
        return t;
    }
    case FetNode::Omega: return term::Omega(ground());
    case FetNode::Num: return term::Num(p->n);
    case FetNode::Case: {
        std::uint64_t l = p->answers.empty() ? 0 : p->answers.rbegin()->first + 1;
        Term scrutinee = term::Var(p->head);
        for (const auto& a : p->args) scrutinee = term::App(scrutinee, fet_to_term(a));
        Term t = term::App(term::Case(l), scrutinee);
        for (std::uint64_t n = 0; n < l; ++n) t = term::App(t, fet_to_term(fet_answer(p, n)));
        return t;
    }
    }
    return term::Omega(ground());
}

inline std::string fet_str(const Fet& p) { return term_str(fet_to_term(p)); }

// Checks that p is a tree of type t in ctx.
inline void fet_check(const Context& ctx, const Fet& p, const Type& t) {
    Context ext = ctx;
    Type cur = t;
    for (const auto& [x, bt] : fet_binders(p)) {
        if (!cur->arrow) throw TypeError("tree binds '" + x + "' at ground type");
        if (!type_equal(cur->dom, bt)) throw TypeError("binder '" + x + "' has the wrong type");
        ext.emplace_back(x, bt);
        cur = cur->cod;
    }
    if (cur->arrow) throw TypeError("tree body is not at ground type");
    const Fet& b = fet_body(p);
    if (b->kind != FetNode::Case) return;
    const Type* ht = nullptr;
    for (auto it = ext.rbegin(); it != ext.rend(); ++it)
        if (it->first == b->head) {
            ht = &it->second;
            break;
        }
    if (!ht) throw TypeError("unbound head variable '" + b->head + "'");
    auto as = arg_types(*ht);
    if (as.size() != b->args.size()) throw TypeError("head '" + b->head + "' applied to the wrong number of trees");
    for (std::size_t i = 0; i < as.size(); ++i) fet_check(ext, b->args[i], as[i]);
    for (const auto& [k, v] : b->answers) fet_check(ext, v, ground());
}

// Reads a PCFc term in tree shape back into a tree (inverse of fet_to_term).
inline std::optional<Fet> term_to_fet(const Term& t) {
    if (t->kind == TermKind::Lam) {
        Context bs;
        Term cur = t;
        while (cur->kind == TermKind::Lam) {
            bs.emplace_back(cur->name, cur->type);
            cur = cur->a;
        }
        auto b = term_to_fet(cur);
        if (!b || (*b)->kind == FetNode::Lam) return std::nullopt;
        return fet::lam(bs, *b);
    }
    if (t->kind == TermKind::Omega) return fet::omega();
    if (t->kind == TermKind::Num) return fet::num(t->n);
    Term head;
    std::vector<Term> args;
    detail::spine(t, head, args);
    if (head->kind != TermKind::Case || args.size() != head->n + 1) return std::nullopt;
    Term scr_head;
    std::vector<Term> scr_args;
    detail::spine(args[0], scr_head, scr_args);
    if (scr_head->kind != TermKind::Var) return std::nullopt;
    std::vector<Fet> fa;
    for (const auto& a : scr_args) {
        auto f = term_to_fet(a);
        if (!f) return std::nullopt;
        fa.push_back(*f);
    }
    std::map<std::uint64_t, Fet> ans;
    for (std::uint64_t n = 0; n < head->n; ++n) {
        auto f = term_to_fet(args[1 + n]);
        if (!f || (*f)->kind == FetNode::Lam) return std::nullopt;
        ans.emplace(n, *f);
    }
    return fet::cases(scr_head->name, fa, ans);
}

// ---------------------------------------------------------------- generation

inline std::string fresh_name(const Context& ctx, std::size_t& counter) {
    for (;;) {
        std::string x = "y" + std::to_string(++counter);
        bool clash = false;
        for (const auto& [n, t] : ctx) clash = clash || n == x;
        if (!clash) return x;
    }
}

struct FetShape {
    std::size_t depth = 2;
    std::uint64_t max_num = 2;
    std::uint64_t max_support = 2;  // answers keyed by 0..max_support-1
    std::size_t limit = 20000;      // enumeration cap
};

namespace detail {

inline void enum_bodies(const Context& ctx, std::size_t depth, const FetShape& sh, std::vector<Fet>& out, std::size_t& counter);

inline void enum_trees(const Context& ctx, const Type& t, std::size_t depth, const FetShape& sh, std::vector<Fet>& out, std::size_t& counter) {
    Context ext = ctx;
    Context bs;
    for (const auto& a : arg_types(t)) {
        std::string x = fresh_name(ext, counter);
        ext.emplace_back(x, a);
        bs.emplace_back(x, a);
    }
    std::vector<Fet> bodies;
    enum_bodies(ext, depth, sh, bodies, counter);
    for (auto& b : bodies) {
        if (out.size() >= sh.limit) return;
        out.push_back(fet::lam(bs, b));
    }
}

inline void enum_bodies(const Context& ctx, std::size_t depth, const FetShape& sh, std::vector<Fet>& out, std::size_t& counter) {
    out.push_back(fet::omega());
    for (std::uint64_t n = 0; n <= sh.max_num; ++n) out.push_back(fet::num(n));
    if (depth == 0) return;
    std::vector<Fet> sub;
    enum_bodies(ctx, depth - 1, sh, sub, counter);
    for (const auto& [x, xt] : ctx) {
        // argument choices per position
        std::vector<std::vector<Fet>> arg_choices;
        for (const auto& a : arg_types(xt)) {
            std::vector<Fet> c;
            std::size_t local = counter;
            enum_trees(ctx, a, depth - 1, sh, c, local);
            arg_choices.push_back(std::move(c));
        }
        std::vector<std::size_t> ai(arg_choices.size(), 0);
        std::vector<std::size_t> bi(sh.max_support, 0);
        for (;;) {
            for (;;) {
                if (out.size() >= sh.limit) return;
                std::vector<Fet> args;
                for (std::size_t j = 0; j < ai.size(); ++j) args.push_back(arg_choices[j][ai[j]]);
                std::map<std::uint64_t, Fet> ans;
                for (std::size_t n = 0; n < bi.size(); ++n) ans.emplace(n, sub[bi[n]]);
                out.push_back(fet::cases(x, args, ans));
                std::size_t j = 0;
                while (j < bi.size() && ++bi[j] == sub.size()) bi[j++] = 0;
                if (j == bi.size()) break;
            }
            std::size_t j = 0;
            while (j < ai.size() && ++ai[j] == arg_choices[j].size()) ai[j++] = 0;
            if (j == ai.size()) break;
        }
    }
}

}  // namespace detail

// All trees of type t in ctx up to the given shape (capped at shape.limit).
inline std::vector<Fet> enumerate_fets(const Context& ctx, const Type& t, const FetShape& shape) {
    std::vector<Fet> out;
    std::size_t counter = 0;
    detail::enum_trees(ctx, t, shape.depth, shape, out, counter);
    return out;
}

template <class Rng>
Fet random_fet(Rng& rng, const Context& ctx, const Type& t, const FetShape& sh, std::size_t& counter);

namespace detail {
template <class Rng>
Fet random_body(Rng& rng, const Context& ctx, std::size_t depth, const FetShape& sh, std::size_t& counter) {
    std::uniform_int_distribution<int> pct(0, 99);
    const int roll = pct(rng);
    if (depth == 0 || ctx.empty() || roll < 25) {
        if (pct(rng) < 30) return fet::omega();
        return fet::num(std::uniform_int_distribution<std::uint64_t>(0, sh.max_num)(rng));
    }
    const auto& [x, xt] = ctx[std::uniform_int_distribution<std::size_t>(0, ctx.size() - 1)(rng)];
    FetShape sub = sh;
    sub.depth = depth - 1;
    std::vector<Fet> args;
    for (const auto& a : arg_types(xt)) args.push_back(random_fet(rng, ctx, a, sub, counter));
    std::map<std::uint64_t, Fet> ans;
    for (std::uint64_t n = 0; n < sh.max_support; ++n)
        if (pct(rng) < 70) ans.emplace(n, random_body(rng, ctx, depth - 1, sh, counter));
    return fet::cases(x, args, ans);
}
}  // namespace detail

template <class Rng>
Fet random_fet(Rng& rng, const Context& ctx, const Type& t, const FetShape& sh, std::size_t& counter) {
    Context ext = ctx;
    Context bs;
    for (const auto& a : arg_types(t)) {
        std::string x = fresh_name(ext, counter);
        ext.emplace_back(x, a);
        bs.emplace_back(x, a);
    }
    return fet::lam(bs, detail::random_body(rng, ext, sh.depth, sh, counter));
}

template <class Rng>
Fet random_fet(Rng& rng, const Context& ctx, const Type& t, const FetShape& sh) {
    std::size_t counter = ctx.size();
    return random_fet(rng, ctx, t, sh, counter);
}

}  // namespace gpcf
