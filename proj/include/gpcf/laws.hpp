#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gpcf/combinators.hpp"

namespace gpcf {

// ---------------------------------------------------------------- structural isos

namespace detail {

// copycat between the two sides of s -o t along a bijection of moves
inline Strategy wiring(const Game& s, const Game& t, std::function<std::optional<Move>(const Move&)> fwd,
                       std::function<std::optional<Move>(const Move&)> bwd, std::string name) {
    return make_strategy(
        game::Lolli(s, t),
        [fwd, bwd](const Move& m) -> std::optional<Move> {
            if (m.path[0].kind == Tag::L) {
                auto r = fwd(m.drop(1));
                if (!r) return std::nullopt;
                return r->under(Tag::right());
            }
            auto r = bwd(m.drop(1));
            if (!r) return std::nullopt;
            return r->under(Tag::left());
        },
        std::move(name));
}

}  // namespace detail

// (X*Y)*Z -o X*(Y*Z)
inline Strategy assoc(const Game& x, const Game& y, const Game& z) {
    using detail::L;
    using detail::R;
    return detail::wiring(
        game::Tensor(game::Tensor(x, y), z), game::Tensor(x, game::Tensor(y, z)),
        [](const Move& m) -> std::optional<Move> {
            if (m.path.empty()) return std::nullopt;
            if (m.path[0].kind == Tag::R) return m.drop(1).under({R(), R()});
            if (m.path.size() < 2) return std::nullopt;
            if (m.path[1].kind == Tag::L) return m.drop(2).under(L());
            return m.drop(2).under({R(), L()});
        },
        [](const Move& m) -> std::optional<Move> {
            if (m.path.empty()) return std::nullopt;
            if (m.path[0].kind == Tag::L) return m.drop(1).under({L(), L()});
            if (m.path.size() < 2) return std::nullopt;
            if (m.path[1].kind == Tag::L) return m.drop(2).under({L(), R()});
            return m.drop(2).under(R());
        },
        "assoc");
}

// X*Y -o Y*X
inline Strategy symm(const Game& x, const Game& y) {
    auto swap = [](const Move& m) -> std::optional<Move> {
        if (m.path.empty()) return std::nullopt;
        Move r = m;
        r.path[0] = m.path[0].kind == Tag::L ? Tag::right() : Tag::left();
        return r;
    };
    return detail::wiring(game::Tensor(x, y), game::Tensor(y, x), swap, swap, "symm");
}

// X*I -o X
inline Strategy unit_left_iso(const Game& x) {
    return detail::wiring(
        game::Tensor(x, game::I()), x,
        [](const Move& m) -> std::optional<Move> {
            if (m.path.empty() || m.path[0].kind != Tag::L) return std::nullopt;
            return m.drop(1);
        },
        [](const Move& m) -> std::optional<Move> { return m.under(Tag::left()); }, "unit");
}

// !B -o !B moving copy i to copy a*i+c
inline Strategy reindex(const Game& b, std::uint64_t a, std::uint64_t c) {
    return make_strategy(
        game::Lolli(game::Bang(b), game::Bang(b)),
        [a, c](const Move& m) -> std::optional<Move> {
            if (m.path.size() < 2 || m.path[1].kind != Tag::Idx || !m.path[1].idx.is_nat()) return std::nullopt;
            const std::uint64_t i = m.path[1].idx.value();
            if (m.path[0].kind == Tag::R) return m.drop(2).under({Tag::left(), Tag::index(a * i + c)});
            if (i < c || (i - c) % a != 0) return std::nullopt;
            return m.drop(2).under({Tag::right(), Tag::index((i - c) / a)});
        },
        "reindex(" + std::to_string(a) + "i+" + std::to_string(c) + ")");
}

// ---------------------------------------------------------------- random finite strategies

struct GenOptions {
    Bounds bounds{1, 1, 8, 100000};  // alphabet explored while generating
    double respond = 0.8;            // probability of answering a fresh O-move
    std::size_t max_positions = 40;
};

template <class Rng>
Type random_type(Rng& rng, std::size_t max_depth) {
    std::uniform_int_distribution<int> pick(0, 99);
    if (max_depth == 0 || pick(rng) < 30) return ground();
    const int nargs = 1 + (pick(rng) < 30 ? 1 : 0);
    std::vector<Type> args;
    for (int i = 0; i < nargs; ++i) args.push_back(random_type(rng, max_depth - 1));
    return curried(args);
}

namespace detail {

struct GenTable {
    std::map<Move, std::optional<Move>> table;
};

// plays of the table function; returns a move to delete when a play turns illegal
inline std::optional<Move> table_plays(const Game& g, const GenTable& t, const Bounds& b, std::vector<Position>& out) {
    out.assign(1, Position{});
    std::vector<Position> work{Position{}};
    while (!work.empty()) {
        Position s = std::move(work.back());
        work.pop_back();
        for (const auto& a : opponent_moves(g, s, b)) {
            auto it = t.table.find(a);
            if (it == t.table.end() || !it->second) continue;
            Position ext = s;
            ext.push_back(a);
            ext.push_back(*it->second);
            if (!legal_position(g, ext) || !switching_ok(g, ext)) return a;
            out.push_back(ext);
            work.push_back(std::move(ext));
        }
    }
    return std::nullopt;
}

}  // namespace detail

// A random history-free strategy on g, given as an explicit position set.
template <class Rng>
Strategy random_explicit(Rng& rng, const Game& g, const GenOptions& opt = {}) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    detail::GenTable t;
    std::vector<Position> frontier{Position{}};
    std::size_t made = 1;
    while (!frontier.empty() && made < opt.max_positions) {
        std::uniform_int_distribution<std::size_t> pickf(0, frontier.size() - 1);
        const std::size_t fi = pickf(rng);
        Position s = frontier[fi];
        frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(fi));
        if (s.size() + 2 > opt.bounds.max_len) continue;
        for (const auto& a : opponent_moves(g, s, opt.bounds)) {
            auto it = t.table.find(a);
            if (it == t.table.end()) {
                std::optional<Move> r;
                Position sa = s;
                sa.push_back(a);
                auto ps = player_moves(g, sa, opt.bounds);
                if (!ps.empty() && coin(rng) < opt.respond) r = ps[std::uniform_int_distribution<std::size_t>(0, ps.size() - 1)(rng)];
                it = t.table.emplace(a, r).first;
            }
            if (!it->second) continue;
            Position ext = s;
            ext.push_back(a);
            ext.push_back(*it->second);
            if (!legal_position(g, ext)) continue;
            frontier.push_back(std::move(ext));
            if (++made >= opt.max_positions) break;
        }
    }
    // drop table entries that would make some reachable play illegal
    std::vector<Position> plays;
    Bounds verify = opt.bounds;
    verify.max_len = ~std::size_t{0};
    while (auto bad = detail::table_plays(g, t, verify, plays)) t.table[*bad] = std::nullopt;
    return explicit_strategy(g, plays);
}

// ---------------------------------------------------------------- law checks

struct LawResult {
    std::string law;
    std::string subject;
    bool ok = true;
    std::size_t explored = 0;
    std::string reason;
};

inline std::vector<Position> positions_of(const Strategy& s) {
    if (const auto* ps = s->finite_positions()) return *ps;
    return {};
}

inline Bounds bounds_for(const std::vector<Strategy>& ss, std::size_t extra_len = 2) {
    std::vector<Position> all;
    for (const auto& s : ss) {
        auto ps = positions_of(s);
        all.insert(all.end(), ps.begin(), ps.end());
    }
    Bounds b = sufficient_bounds(all);
    b.max_len += extra_len;
    return b;
}

inline LawResult check_equiv(const std::string& law, const std::string& subject, const Strategy& a, const Strategy& b, const Bounds& bd,
                             std::size_t max_explore = 200000) {
    LawResult r;
    r.law = law;
    r.subject = subject;
    ExploreLimits lim;
    lim.max_positions = max_explore;
    auto res = strat_equiv_detail(a, b, bd, lim);
    r.ok = res.ok;
    r.explored = res.explored;
    if (!res.ok) r.reason = res.reason + " at " + position_str(res.witness);
    return r;
}

inline std::vector<LawResult> category_laws(const Strategy& s, const Strategy& t, const Strategy& u) {
    std::vector<LawResult> out;
    const Bounds b = bounds_for({s, t, u});
    const std::string subj = game_str(s->game());
    out.push_back(check_equiv("left identity", subj, compose(identity(s->game()->left), s), s, b));
    out.push_back(check_equiv("right identity", subj, compose(s, identity(s->game()->right)), s, b));
    out.push_back(check_equiv("associativity", subj, compose(compose(s, t), u), compose(s, compose(t, u)), b));
    return out;
}

// s : !A -o B, t : !B -o C
inline std::vector<LawResult> comonad_laws(const Strategy& s, const Strategy& t) {
    std::vector<LawResult> out;
    const Bounds b = bounds_for({s, t});
    const std::string subj = game_str(s->game());
    const Game a = s->game()->left->left;
    const Game bb = s->game()->right;
    out.push_back(check_equiv("m1", subj, compose(promote(s), promote(t)), promote(compose(promote(s), t)), b));
    out.push_back(check_equiv("m2", subj, compose(promote(der(a)), s), s, b));
    out.push_back(check_equiv("m3", subj, compose(promote(s), der(bb)), s, b));
    return out;
}

inline std::vector<LawResult> comonoid_laws(const Game& a, const Bounds& b) {
    std::vector<LawResult> out;
    const Game ba = game::Bang(a);
    const std::string subj = game_str(ba);
    Strategy c = con(a);
    out.push_back(check_equiv("comonoid associativity", subj, compose(c, tensor(identity(ba), c)),
                              compose(c, compose(tensor(c, identity(ba)), assoc(ba, ba, ba))), b));
    out.push_back(check_equiv("comonoid unit", subj, compose(c, compose(tensor(identity(ba), weak(a)), unit_left_iso(ba))), identity(ba), b));
    out.push_back(check_equiv("comonoid commutativity", subj, compose(c, symm(ba, ba)), c, b));
    return out;
}

// s : !A -o !B with A well-opened
inline LawResult bang_lemma(const Strategy& s, const Bounds& b, const std::string& subject) {
    const Game bb = s->game()->right->left;
    return check_equiv("bang lemma", subject, s, promote(compose(s, der(bb))), b);
}

struct Sample {
    std::string description;
    Strategy strategy;
};

// Random maps !A -o !B (or !(B&B)) built from promotions, which is the
// population the lemma speaks about up to equivalence.
template <class Rng>
Sample random_bang_map(Rng& rng, const Game& a, const Game& b, const GenOptions& opt = {}) {
    const Game ba = game::Bang(a);
    auto rho = [&](const Game& from) { return random_explicit(rng, game::Lolli(from, b), opt); };
    std::uniform_int_distribution<int> form(0, 3);
    switch (form(rng)) {
    case 0: return {"promote(rho)", promote(rho(ba))};
    case 1: {
        std::uniform_int_distribution<std::uint64_t> coef(1, 3), off(0, 2);
        const std::uint64_t m = coef(rng), c = off(rng);
        return {"promote(rho);reindex(" + std::to_string(m) + "i+" + std::to_string(c) + ")", compose(promote(rho(ba)), reindex(b, m, c))};
    }
    case 2: {
        auto r1 = rho(ba);
        auto r2 = random_explicit(rng, game::Lolli(game::Bang(b), b), opt);
        return {"promote(rho1);promote(rho2)", compose(promote(r1), promote(r2))};
    }
    default: {
        auto s = tensor(promote(rho(ba)), promote(rho(ba)));
        return {"con;(promote(rho1)*promote(rho2));ebwd", compose(con(a), compose(s, exp_iso(b, b, ExpDir::bwd)))};
    }
    }
}

// ---------------------------------------------------------------- interaction parity

// For a composite answering m with n: the number of middle-game moves between
// them is even iff m and n sit in the same visible component.
// nullopt when there is no response.
inline std::optional<bool> parity_holds(const Strategy& composite, const Move& m) {
    const auto* c = dynamic_cast<const ComposeStrategy*>(composite.get());
    if (!c) throw ShapeError("parity check needs a composite");
    const auto log = c->interaction(m);
    if (log.empty() || log.back().component == 'B') return std::nullopt;
    const char first = m.path[0].kind == Tag::L ? 'A' : 'C';
    std::size_t middle = 0;
    for (const auto& st : log) middle += st.component == 'B';
    const bool same = first == log.back().component;
    return same == (middle % 2 == 0);
}

// Parity over every O-move of every bounded play of the composite.
inline LawResult parity_spot_check(const Strategy& composite, const Bounds& b, const std::string& subject) {
    LawResult r;
    r.law = "parity";
    r.subject = subject;
    for (const auto& s : traces(composite, b)) {
        for (const auto& m : opponent_moves(composite->game(), s, b)) {
            ++r.explored;
            auto ok = parity_holds(composite, m);
            if (ok && !*ok) {
                r.ok = false;
                r.reason = "after " + position_str(s) + " on " + move_str(m);
                return r;
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------- monotonicity

// The restriction of an explicit strategy to plays avoiding one of its O-moves;
// again history-free and contained in the original.
template <class Rng>
Strategy random_substrategy(Rng& rng, const Strategy& s) {
    const auto* ps = s->finite_positions();
    if (!ps) throw ShapeError("substrategy needs an explicit strategy");
    std::vector<Move> o_moves;
    for (const auto& p : *ps)
        if (!p.empty()) o_moves.push_back(p[p.size() - 2]);
    if (o_moves.empty()) return s;
    const Move cut = o_moves[std::uniform_int_distribution<std::size_t>(0, o_moves.size() - 1)(rng)];
    std::vector<Position> keep;
    for (const auto& p : *ps)
        if (std::find(p.begin(), p.end(), cut) == p.end()) keep.push_back(p);
    return explicit_strategy(s->game(), keep);
}

// small included in big implies the same for their composites with t
inline LawResult monotonicity(const Strategy& small, const Strategy& big, const Strategy& t, const Bounds& b) {
    LawResult r;
    r.law = "monotonicity";
    r.subject = game_str(small->game());
    auto ts = traces(compose(small, t), b);
    auto tb = traces(compose(big, t), b);
    std::sort(tb.begin(), tb.end());
    r.explored = ts.size();
    for (const auto& p : ts)
        if (!std::binary_search(tb.begin(), tb.end(), p)) {
            r.ok = false;
            r.reason = "missing " + position_str(p);
            break;
        }
    return r;
}

}  // namespace gpcf
