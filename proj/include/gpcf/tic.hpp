#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gpcf/game.hpp"
#include "gpcf/pcf.hpp"

namespace gpcf {

inline Game game_of_type(const Type& t) {
    if (!t->arrow) return game::Nat();
    return game::Lolli(game::Bang(game_of_type(t->dom)), game_of_type(t->cod));
}

inline std::optional<Type> type_of_game(const Game& g) {
    if (g->kind == GameKind::Nat) return ground();
    if (g->kind == GameKind::Lolli && g->left->kind == GameKind::Bang) {
        auto a = type_of_game(g->left->left);
        auto b = type_of_game(g->right);
        if (a && b) return arrow(*a, *b);
    }
    return std::nullopt;
}

// Context games: [] is I, [T] is the game of T, longer contexts are
// left-nested With chains.
inline Game ctx_game(const std::vector<Type>& ctx) {
    if (ctx.empty()) return game::I();
    Game g = game_of_type(ctx[0]);
    for (std::size_t i = 1; i < ctx.size(); ++i) g = game::With(g, game_of_type(ctx[i]));
    return g;
}

inline std::optional<std::vector<Type>> ctx_of_game(const Game& g) {
    if (g->kind == GameKind::I) return std::vector<Type>{};
    if (auto t = type_of_game(g)) return std::vector<Type>{*t};
    if (g->kind == GameKind::With) {
        auto init = ctx_of_game(g->left);
        auto last = type_of_game(g->right);
        if (init && last && !init->empty()) {
            init->push_back(*last);
            return init;
        }
    }
    return std::nullopt;
}

// path of variable i inside the context game of p variables
inline std::vector<Tag> var_path(std::size_t p, std::size_t i) {
    std::vector<Tag> out;
    if (p <= 1) return out;
    const std::size_t lefts = (i == 0) ? p - 1 : p - 1 - i;
    for (std::size_t k = 0; k < lefts; ++k) out.push_back(Tag::left());
    if (i != 0) out.push_back(Tag::right());
    return out;
}

// Type in context: strategies on !(ctx) -o game(type).
struct Tic {
    std::vector<Type> ctx;
    Type type;

    Game game() const { return game::Lolli(game::Bang(ctx_game(ctx)), game_of_type(type)); }
    std::size_t arity() const { return arg_types(type).size(); }
    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < ctx.size(); ++i) s += (i ? ", " : "") + type_str(ctx[i]);
        return s + "] |- " + type_str(type);
    }
};

inline std::optional<Tic> tic_of_game(const Game& g) {
    if (g->kind != GameKind::Lolli || g->left->kind != GameKind::Bang) return std::nullopt;
    auto ctx = ctx_of_game(g->left->left);
    auto t = type_of_game(g->right);
    if (!ctx || !t) return std::nullopt;
    return Tic{*ctx, *t};
}

// Locates a move of a Tic game inside a context variable.
struct VarHit {
    std::size_t var;
    Index copy;
    Move inner;  // move of the variable's own game
};

inline std::optional<VarHit> locate_var(std::size_t p, const Move& m) {
    if (m.path.size() < 2 || m.path[0].kind != Tag::L || m.path[1].kind != Tag::Idx) return std::nullopt;
    for (std::size_t i = 0; i < p; ++i) {
        auto vp = var_path(p, i);
        bool match = m.path.size() >= 2 + vp.size();
        for (std::size_t k = 0; match && k < vp.size(); ++k) match = m.path[2 + k] == vp[k];
        if (match) return VarHit{i, m.path[1].idx, m.drop(2 + vp.size())};
    }
    return std::nullopt;
}

inline Move var_move(std::size_t p, std::size_t i, const Index& copy, const Move& inner) {
    std::vector<Tag> pre{Tag::left(), Tag::index(copy)};
    auto vp = var_path(p, i);
    pre.insert(pre.end(), vp.begin(), vp.end());
    return inner.under(pre);
}

inline std::vector<Tag> rights(std::size_t k) { return std::vector<Tag>(k, Tag::right()); }

// opening question of the game of a type
inline Move opening(const Type& t) { return Q().under(rights(arg_types(t).size())); }

}  // namespace gpcf
