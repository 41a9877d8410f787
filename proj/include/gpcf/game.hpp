#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gpcf/index.hpp"

namespace gpcf {

// ---------------------------------------------------------------- games

enum class GameKind : std::uint8_t { I, Nat, Sigma, Tensor, Lolli, With, Bang, Family };

class GameNode;
using Game = std::shared_ptr<const GameNode>;

class GameNode {
public:
    GameKind kind;
    Game left, right;  // Bang/Family use `left` as the inner game
    std::size_t h;

    GameNode(GameKind k, Game l, Game r) : kind(k), left(std::move(l)), right(std::move(r)) {
        std::size_t v = static_cast<std::size_t>(k) + 0x51ed27;
        if (left) v = v * 1000003u ^ left->h;
        if (right) v = v * 998244353u ^ right->h;
        h = v;
    }
    const Game& inner() const { return left; }
};

namespace game {
inline Game I() { static const Game g = std::make_shared<GameNode>(GameKind::I, nullptr, nullptr); return g; }
inline Game Nat() { static const Game g = std::make_shared<GameNode>(GameKind::Nat, nullptr, nullptr); return g; }
inline Game Sigma() { static const Game g = std::make_shared<GameNode>(GameKind::Sigma, nullptr, nullptr); return g; }
inline Game Tensor(Game a, Game b) { return std::make_shared<GameNode>(GameKind::Tensor, std::move(a), std::move(b)); }
inline Game Lolli(Game a, Game b) { return std::make_shared<GameNode>(GameKind::Lolli, std::move(a), std::move(b)); }
inline Game With(Game a, Game b) { return std::make_shared<GameNode>(GameKind::With, std::move(a), std::move(b)); }
inline Game Bang(Game a) { return std::make_shared<GameNode>(GameKind::Bang, std::move(a), nullptr); }
// countable With of copies of the inner game, components addressed by Comp(n)
inline Game Family(Game a) { return std::make_shared<GameNode>(GameKind::Family, std::move(a), nullptr); }
}  // namespace game

inline bool game_equal(const Game& a, const Game& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->h != b->h || a->kind != b->kind) return false;
    return game_equal(a->left, b->left) && game_equal(a->right, b->right);
}

inline std::string game_str(const Game& g) {
    switch (g->kind) {
    case GameKind::I: return "I";
    case GameKind::Nat: return "N";
    case GameKind::Sigma: return "S";
    case GameKind::Tensor: return "(" + game_str(g->left) + " * " + game_str(g->right) + ")";
    case GameKind::Lolli: return "(" + game_str(g->left) + " -o " + game_str(g->right) + ")";
    case GameKind::With: return "(" + game_str(g->left) + " & " + game_str(g->right) + ")";
    case GameKind::Bang: return "!" + game_str(g->left);
    case GameKind::Family: return "&w " + game_str(g->left);
    }
    return "?";
}

inline bool well_opened(const Game& g) {
    switch (g->kind) {
    case GameKind::I:
    case GameKind::Nat:
    case GameKind::Sigma: return true;
    case GameKind::With: return well_opened(g->left) && well_opened(g->right);
    case GameKind::Family: return well_opened(g->left);
    case GameKind::Lolli: return well_opened(g->right);
    default: return false;
    }
}

// ---------------------------------------------------------------- moves

struct Tag {
    enum Kind : std::uint8_t { L, R, Idx, Comp };
    Kind kind = L;
    Index idx;              // Idx
    std::uint64_t comp = 0;  // Comp

    static Tag left() { return Tag{L, Index(), 0}; }
    static Tag right() { return Tag{R, Index(), 0}; }
    static Tag index(Index i) { return Tag{Idx, std::move(i), 0}; }
    static Tag index(std::uint64_t i) { return Tag{Idx, Index(i), 0}; }
    static Tag component(std::uint64_t n) { return Tag{Comp, Index(), n}; }

    friend bool operator==(const Tag& a, const Tag& b) {
        if (a.kind != b.kind) return false;
        if (a.kind == Idx) return a.idx == b.idx;
        if (a.kind == Comp) return a.comp == b.comp;
        return true;
    }
    friend bool operator!=(const Tag& a, const Tag& b) { return !(a == b); }
    friend bool operator<(const Tag& a, const Tag& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.kind == Idx) return a.idx < b.idx;
        if (a.kind == Comp) return a.comp < b.comp;
        return false;
    }
    std::size_t hash() const {
        switch (kind) {
        case Idx: return idx.hash() * 31 + 7;
        case Comp: return std::hash<std::uint64_t>{}(comp) * 37 + 11;
        default: return kind;
        }
    }
};

struct Base {
    bool question = true;
    std::uint64_t n = 0;  // answer value
    static Base Q() { return Base{true, 0}; }
    static Base Ans(std::uint64_t v) { return Base{false, v}; }
    friend bool operator==(const Base& a, const Base& b) { return a.question == b.question && (a.question || a.n == b.n); }
    friend bool operator!=(const Base& a, const Base& b) { return !(a == b); }
    friend bool operator<(const Base& a, const Base& b) {
        if (a.question != b.question) return a.question;
        return !a.question && a.n < b.n;
    }
};

struct Move {
    std::vector<Tag> path;
    Base base;

    Move() = default;
    Move(std::vector<Tag> p, Base b) : path(std::move(p)), base(b) {}
    explicit Move(Base b) : base(b) {}

    Move under(const Tag& t) const {
        Move m;
        m.path.reserve(path.size() + 1);
        m.path.push_back(t);
        m.path.insert(m.path.end(), path.begin(), path.end());
        m.base = base;
        return m;
    }
    Move under(std::initializer_list<Tag> ts) const {
        Move m;
        m.path.reserve(path.size() + ts.size());
        m.path.insert(m.path.end(), ts.begin(), ts.end());
        m.path.insert(m.path.end(), path.begin(), path.end());
        m.base = base;
        return m;
    }
    Move under(const std::vector<Tag>& ts) const {
        Move m;
        m.path.reserve(path.size() + ts.size());
        m.path.insert(m.path.end(), ts.begin(), ts.end());
        m.path.insert(m.path.end(), path.begin(), path.end());
        m.base = base;
        return m;
    }
    Move drop(std::size_t k = 1) const {
        Move m;
        m.path.assign(path.begin() + static_cast<std::ptrdiff_t>(std::min(k, path.size())), path.end());
        m.base = base;
        return m;
    }
    bool starts_with(std::initializer_list<Tag> ts) const {
        if (path.size() < ts.size()) return false;
        std::size_t i = 0;
        for (const auto& t : ts)
            if (path[i++] != t) return false;
        return true;
    }
    bool starts_with(const std::vector<Tag>& ts) const {
        if (path.size() < ts.size()) return false;
        for (std::size_t i = 0; i < ts.size(); ++i)
            if (path[i] != ts[i]) return false;
        return true;
    }
    bool head_is(Tag::Kind k) const { return !path.empty() && path[0].kind == k; }

    friend bool operator==(const Move& a, const Move& b) { return a.base == b.base && a.path == b.path; }
    friend bool operator!=(const Move& a, const Move& b) { return !(a == b); }
    friend bool operator<(const Move& a, const Move& b) {
        if (a.path != b.path) return std::lexicographical_compare(a.path.begin(), a.path.end(), b.path.begin(), b.path.end());
        return a.base < b.base;
    }
    std::size_t hash() const {
        std::size_t v = base.question ? 0x1234567 : (base.n * 0x9e3779b97f4a7c15ULL + 3);
        for (const auto& t : path) v = (v ^ t.hash()) * 0x100000001b3ULL;
        return v;
    }
};

using Position = std::vector<Move>;

struct MoveHash {
    std::size_t operator()(const Move& m) const noexcept { return m.hash(); }
};
struct PositionHash {
    std::size_t operator()(const Position& s) const noexcept {
        std::size_t v = s.size();
        for (const auto& m : s) v = (v ^ m.hash()) * 0x100000001b3ULL;
        return v;
    }
};

inline Move Q() { return Move(Base::Q()); }
inline Move Ans(std::uint64_t n) { return Move(Base::Ans(n)); }

struct Bounds {
    std::uint64_t max_nat = 8;
    std::uint64_t max_index = 8;
    std::size_t max_len = 64;
    std::uint64_t max_steps = 100000;
};

// ---------------------------------------------------------------- text format

inline std::string tag_str(const Tag& t) {
    switch (t.kind) {
    case Tag::L: return "L";
    case Tag::R: return "R";
    case Tag::Idx: return t.idx.str() + "!";
    case Tag::Comp: return std::to_string(t.comp) + "#";
    }
    return "?";
}

inline std::string move_str(const Move& m) {
    std::string out;
    for (const auto& t : m.path) {
        out += tag_str(t);
        out += '.';
    }
    out += m.base.question ? std::string("Q") : "Ans(" + std::to_string(m.base.n) + ")";
    return out;
}

inline std::string position_str(const Position& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ", ";
        out += move_str(s[i]);
    }
    return out + "]";
}

namespace detail {
inline Index parse_index(const std::string& s, std::size_t& pos) {
    auto expect = [&](char c) {
        if (pos >= s.size() || s[pos] != c) throw std::invalid_argument("bad index syntax: " + s);
        ++pos;
    };
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        std::uint64_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) v = v * 10 + static_cast<std::uint64_t>(s[pos++] - '0');
        return Index(v);
    }
    if (pos + 1 < s.size() && (s[pos] == 'p' || s[pos] == 'l' || s[pos] == 'r') && s[pos + 1] == '(') {
        const char k = s[pos];
        pos += 2;
        Index a = parse_index(s, pos);
        if (k == 'p') {
            expect(',');
            Index b = parse_index(s, pos);
            expect(')');
            return Index::pair(a, b);
        }
        expect(')');
        return Index::tag(k == 'r', a);
    }
    throw std::invalid_argument("bad index syntax: " + s);
}
}  // namespace detail

inline Move parse_move(const std::string& text) {
    Move m;
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    std::size_t pos = 0;
    while (pos < s.size()) {
        if (s.compare(pos, 1, "Q") == 0 && pos + 1 == s.size()) {
            m.base = Base::Q();
            return m;
        }
        if (s.compare(pos, 4, "Ans(") == 0) {
            pos += 4;
            std::uint64_t v = 0;
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) v = v * 10 + static_cast<std::uint64_t>(s[pos++] - '0');
            if (start == pos || pos + 1 != s.size() || s[pos] != ')') throw std::invalid_argument("bad move: " + text);
            m.base = Base::Ans(v);
            return m;
        }
        if (s[pos] == 'L' || s[pos] == 'R') {
            m.path.push_back(s[pos] == 'L' ? Tag::left() : Tag::right());
            ++pos;
        } else {
            std::size_t save = pos;
            bool comp = false;
            std::uint64_t v = 0;
            if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
                std::size_t p2 = pos;
                while (p2 < s.size() && std::isdigit(static_cast<unsigned char>(s[p2]))) v = v * 10 + static_cast<std::uint64_t>(s[p2++] - '0');
                if (p2 < s.size() && s[p2] == '#') {
                    comp = true;
                    pos = p2 + 1;
                    m.path.push_back(Tag::component(v));
                }
            }
            if (!comp) {
                pos = save;
                Index idx = detail::parse_index(s, pos);
                if (pos >= s.size() || s[pos] != '!') throw std::invalid_argument("bad move: " + text);
                ++pos;
                m.path.push_back(Tag::index(idx));
            }
        }
        if (pos >= s.size() || s[pos] != '.') throw std::invalid_argument("bad move: " + text);
        ++pos;
    }
    throw std::invalid_argument("bad move: " + text);
}

// ---------------------------------------------------------------- labels

enum class Player : std::uint8_t { P, O };
struct Label {
    Player who;
    bool question;
    friend bool operator==(const Label& a, const Label& b) { return a.who == b.who && a.question == b.question; }
};

// Resolves a move against a game; nullopt if the path does not address it.
inline std::optional<Label> try_label(const Game& g, const Move& m) {
    const GameNode* cur = g.get();
    bool flipped = false;
    for (const auto& t : m.path) {
        switch (cur->kind) {
        case GameKind::Tensor:
        case GameKind::With:
            if (t.kind != Tag::L && t.kind != Tag::R) return std::nullopt;
            cur = (t.kind == Tag::L ? cur->left : cur->right).get();
            break;
        case GameKind::Lolli:
            if (t.kind == Tag::L) {
                flipped = !flipped;
                cur = cur->left.get();
            } else if (t.kind == Tag::R) {
                cur = cur->right.get();
            } else {
                return std::nullopt;
            }
            break;
        case GameKind::Bang:
            if (t.kind != Tag::Idx) return std::nullopt;
            cur = cur->left.get();
            break;
        case GameKind::Family:
            if (t.kind != Tag::Comp) return std::nullopt;
            cur = cur->left.get();
            break;
        default: return std::nullopt;
        }
    }
    if (cur->kind == GameKind::Nat) {
        // fine
    } else if (cur->kind == GameKind::Sigma) {
        if (!m.base.question && m.base.n != 0) return std::nullopt;
    } else {
        return std::nullopt;
    }
    Player who = m.base.question ? Player::O : Player::P;
    if (flipped) who = who == Player::O ? Player::P : Player::O;
    return Label{who, m.base.question};
}

inline Label label(const Game& g, const Move& m) {
    auto l = try_label(g, m);
    if (!l) throw std::invalid_argument("move " + move_str(m) + " does not address game " + game_str(g));
    return *l;
}

inline bool is_o_move(const Game& g, const Move& m) {
    auto l = try_label(g, m);
    return l && l->who == Player::O;
}

// ---------------------------------------------------------------- legality

namespace detail {

inline bool same_prefix_tag(const Move& m, const Tag& t) { return !m.path.empty() && m.path[0] == t; }

inline Position restrict(const Position& s, const Tag& t) {
    Position out;
    for (const auto& m : s)
        if (same_prefix_tag(m, t)) out.push_back(m.drop(1));
    return out;
}

inline Position restrict_side(const Position& s, Tag::Kind k) {
    Position out;
    for (const auto& m : s)
        if (!m.path.empty() && m.path[0].kind == k) out.push_back(m.drop(1));
    return out;
}

// (p1), (p2), (p3) and same-path matching of answers with their questions
inline bool basic_ok(const Game& g, const Position& s) {
    std::vector<std::size_t> pending;
    for (std::size_t k = 0; k < s.size(); ++k) {
        auto l = try_label(g, s[k]);
        if (!l) return false;
        const Player expected = (k % 2 == 0) ? Player::O : Player::P;
        if (l->who != expected) return false;
        if (l->question) {
            pending.push_back(k);
        } else {
            if (pending.empty()) return false;
            if (s[pending.back()].path != s[k].path) return false;
            pending.pop_back();
        }
    }
    return true;
}

inline bool legal_rec(const Game& g, const Position& s);

inline bool structural_ok(const Game& g, const Position& s) {
    switch (g->kind) {
    case GameKind::I: return s.empty();
    case GameKind::Nat:
    case GameKind::Sigma:
        for (const auto& m : s)
            if (!m.path.empty()) return false;
        if (s.size() > 2) return false;
        return true;
    case GameKind::Tensor:
    case GameKind::Lolli: {
        for (const auto& m : s)
            if (m.path.empty() || (m.path[0].kind != Tag::L && m.path[0].kind != Tag::R)) return false;
        return legal_rec(g->left, restrict_side(s, Tag::L)) && legal_rec(g->right, restrict_side(s, Tag::R));
    }
    case GameKind::With: {
        if (s.empty()) return true;
        const auto side = s[0].path.empty() ? Tag::L : s[0].path[0].kind;
        for (const auto& m : s)
            if (m.path.empty() || m.path[0].kind != side) return false;
        return legal_rec(side == Tag::L ? g->left : g->right, restrict_side(s, side));
    }
    case GameKind::Family: {
        if (s.empty()) return true;
        if (s[0].path.empty() || s[0].path[0].kind != Tag::Comp) return false;
        const Tag t = s[0].path[0];
        for (const auto& m : s)
            if (!same_prefix_tag(m, t)) return false;
        return legal_rec(g->left, restrict(s, t));
    }
    case GameKind::Bang: {
        std::vector<Index> seen;
        for (const auto& m : s) {
            if (m.path.empty() || m.path[0].kind != Tag::Idx) return false;
            if (std::find(seen.begin(), seen.end(), m.path[0].idx) == seen.end()) seen.push_back(m.path[0].idx);
        }
        for (const auto& i : seen)
            if (!legal_rec(g->left, restrict(s, Tag::index(i)))) return false;
        return true;
    }
    }
    return false;
}

inline bool legal_rec(const Game& g, const Position& s) { return basic_ok(g, s) && structural_ok(g, s); }

}  // namespace detail

inline bool legal_position(const Game& g, const Position& s) { return detail::legal_rec(g, s); }

// Switching condition: in a tensor-like node (Tensor, Bang) only Opponent
// changes component between successive moves; in a Lolli only Player does.
inline bool switching_ok(const Game& g, const Position& s) {
    switch (g->kind) {
    case GameKind::I:
    case GameKind::Nat:
    case GameKind::Sigma: return true;
    case GameKind::Tensor:
    case GameKind::Lolli:
    case GameKind::Bang: {
        for (std::size_t k = 1; k < s.size(); ++k) {
            if (s[k].path.empty() || s[k - 1].path.empty()) return false;
            if (s[k].path[0] != s[k - 1].path[0]) {
                auto l = try_label(g, s[k]);
                if (!l) return false;
                const Player switcher = g->kind == GameKind::Lolli ? Player::P : Player::O;
                if (l->who != switcher) return false;
            }
        }
        if (g->kind == GameKind::Bang) {
            std::vector<Index> seen;
            for (const auto& m : s)
                if (std::find(seen.begin(), seen.end(), m.path[0].idx) == seen.end()) seen.push_back(m.path[0].idx);
            for (const auto& i : seen)
                if (!switching_ok(g->left, detail::restrict(s, Tag::index(i)))) return false;
            return true;
        }
        return switching_ok(g->left, detail::restrict_side(s, Tag::L)) && switching_ok(g->right, detail::restrict_side(s, Tag::R));
    }
    case GameKind::With:
        if (s.empty()) return true;
        return switching_ok(s[0].path[0].kind == Tag::L ? g->left : g->right, detail::restrict_side(s, s[0].path[0].kind));
    case GameKind::Family:
        if (s.empty()) return true;
        return switching_ok(g->left, detail::restrict(s, s[0].path[0]));
    }
    return false;
}

// ---------------------------------------------------------------- equivalence

namespace detail {

// Bijection between the indices of s and t forced by the index traces.
inline std::optional<std::vector<std::pair<Index, Index>>> forced_bijection(const Position& s, const Position& t) {
    std::vector<std::pair<Index, Index>> pi;
    for (std::size_t k = 0; k < s.size(); ++k) {
        const Index& a = s[k].path[0].idx;
        const Index& b = t[k].path[0].idx;
        bool found = false;
        for (const auto& [x, y] : pi) {
            if (x == a) {
                if (y != b) return std::nullopt;
                found = true;
                break;
            }
            if (y == b) return std::nullopt;
        }
        if (!found) pi.emplace_back(a, b);
    }
    return pi;
}

}  // namespace detail

inline bool pos_equiv(const Game& g, const Position& s, const Position& t) {
    if (s.size() != t.size()) return false;
    switch (g->kind) {
    case GameKind::I:
    case GameKind::Nat:
    case GameKind::Sigma: return s == t;
    case GameKind::Tensor:
    case GameKind::Lolli:
    case GameKind::With:
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (s[k].path.empty() || t[k].path.empty() || s[k].path[0].kind != t[k].path[0].kind) return false;
        }
        return pos_equiv(g->left, detail::restrict_side(s, Tag::L), detail::restrict_side(t, Tag::L)) &&
               pos_equiv(g->right, detail::restrict_side(s, Tag::R), detail::restrict_side(t, Tag::R));
    case GameKind::Family: {
        for (std::size_t k = 0; k < s.size(); ++k)
            if (s[k].path.empty() || t[k].path.empty() || s[k].path[0] != t[k].path[0]) return false;
        if (s.empty()) return true;
        return pos_equiv(g->left, detail::restrict(s, s[0].path[0]), detail::restrict(t, t[0].path[0]));
    }
    case GameKind::Bang: {
        for (std::size_t k = 0; k < s.size(); ++k)
            if (s[k].path.empty() || t[k].path.empty() || s[k].path[0].kind != Tag::Idx || t[k].path[0].kind != Tag::Idx) return false;
        auto pi = detail::forced_bijection(s, t);
        if (!pi) return false;
        for (const auto& [a, b] : *pi)
            if (!pos_equiv(g->left, detail::restrict(s, Tag::index(a)), detail::restrict(t, Tag::index(b)))) return false;
        return true;
    }
    }
    return false;
}

// Given s ≈ t and a move a extending s, the move a' with sa ≈ ta' obtained by
// pushing a through the index bijections (fresh indices stay put when free).
inline std::optional<Move> transport(const Game& g, const Position& s, const Position& t, const Move& a) {
    switch (g->kind) {
    case GameKind::I:
    case GameKind::Nat:
    case GameKind::Sigma: return a;
    case GameKind::Tensor:
    case GameKind::Lolli:
    case GameKind::With: {
        if (a.path.empty()) return std::nullopt;
        const auto side = a.path[0].kind;
        if (side != Tag::L && side != Tag::R) return std::nullopt;
        auto inner = transport(side == Tag::L ? g->left : g->right, detail::restrict_side(s, side), detail::restrict_side(t, side), a.drop(1));
        if (!inner) return std::nullopt;
        return inner->under(a.path[0]);
    }
    case GameKind::Family: {
        if (a.path.empty() || a.path[0].kind != Tag::Comp) return std::nullopt;
        auto inner = transport(g->left, detail::restrict(s, a.path[0]), detail::restrict(t, a.path[0]), a.drop(1));
        if (!inner) return std::nullopt;
        return inner->under(a.path[0]);
    }
    case GameKind::Bang: {
        if (a.path.empty() || a.path[0].kind != Tag::Idx) return std::nullopt;
        auto pi = detail::forced_bijection(s, t);
        if (!pi) return std::nullopt;
        const Index& i = a.path[0].idx;
        std::optional<Index> j;
        for (const auto& [x, y] : *pi)
            if (x == i) j = y;
        if (!j) {
            auto used = [&](const Index& c) {
                for (const auto& [x, y] : *pi)
                    if (y == c) return true;
                return false;
            };
            if (!used(i)) {
                j = i;
            } else {
                std::uint64_t c = 0;
                while (used(Index(c))) ++c;
                j = Index(c);
            }
        }
        auto inner = transport(g->left, detail::restrict(s, Tag::index(i)), detail::restrict(t, Tag::index(*j)), a.drop(1));
        if (!inner) return std::nullopt;
        return inner->under(Tag::index(*j));
    }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- move enumeration

namespace detail {

inline void candidates(const Game& g, const Position& s, const Bounds& b, std::vector<Move>& out) {
    switch (g->kind) {
    case GameKind::I: return;
    case GameKind::Nat:
        if (s.empty()) {
            out.push_back(Q());
        } else if (s.size() == 1) {
            for (std::uint64_t n = 0; n <= b.max_nat; ++n) out.push_back(Ans(n));
        }
        return;
    case GameKind::Sigma:
        if (s.empty()) out.push_back(Q());
        else if (s.size() == 1) out.push_back(Ans(0));
        return;
    case GameKind::Tensor:
    case GameKind::Lolli:
    case GameKind::With: {
        for (auto side : {Tag::L, Tag::R}) {
            if (g->kind == GameKind::With && !s.empty() && s[0].path[0].kind != side) continue;
            std::vector<Move> sub;
            candidates(side == Tag::L ? g->left : g->right, restrict_side(s, side), b, sub);
            const Tag t = side == Tag::L ? Tag::left() : Tag::right();
            for (auto& m : sub) out.push_back(m.under(t));
        }
        return;
    }
    case GameKind::Family: {
        std::vector<std::uint64_t> comps;
        if (!s.empty()) comps.push_back(s[0].path[0].comp);
        else
            for (std::uint64_t n = 0; n <= b.max_nat; ++n) comps.push_back(n);
        for (auto n : comps) {
            std::vector<Move> sub;
            candidates(g->left, restrict(s, Tag::component(n)), b, sub);
            for (auto& m : sub) out.push_back(m.under(Tag::component(n)));
        }
        return;
    }
    case GameKind::Bang: {
        std::vector<Index> idx;
        for (const auto& m : s)
            if (std::find(idx.begin(), idx.end(), m.path[0].idx) == idx.end()) idx.push_back(m.path[0].idx);
        for (std::uint64_t n = 0; n <= b.max_index; ++n)
            if (std::find(idx.begin(), idx.end(), Index(n)) == idx.end()) idx.push_back(Index(n));
        for (const auto& i : idx) {
            std::vector<Move> sub;
            candidates(g->left, restrict(s, Tag::index(i)), b, sub);
            for (auto& m : sub) out.push_back(m.under(Tag::index(i)));
        }
        return;
    }
    }
}

}  // namespace detail

// All Opponent moves a with s·a legal, within the numeral/index bounds.
inline std::vector<Move> opponent_moves(const Game& g, const Position& s, const Bounds& b) {
    std::vector<Move> cand, out;
    detail::candidates(g, s, b, cand);
    Position ext = s;
    for (auto& m : cand) {
        if (!is_o_move(g, m)) continue;
        ext.push_back(m);
        if (legal_position(g, ext)) out.push_back(std::move(m));
        ext.pop_back();
    }
    return out;
}

// All Player moves b with s·b legal and respecting the switching condition.
inline std::vector<Move> player_moves(const Game& g, const Position& s, const Bounds& b) {
    std::vector<Move> cand, out;
    detail::candidates(g, s, b, cand);
    Position ext = s;
    for (auto& m : cand) {
        if (is_o_move(g, m)) continue;
        ext.push_back(m);
        if (legal_position(g, ext) && switching_ok(g, ext)) out.push_back(std::move(m));
        ext.pop_back();
    }
    return out;
}

}  // namespace gpcf

template <>
struct std::hash<gpcf::Move> {
    std::size_t operator()(const gpcf::Move& m) const noexcept { return m.hash(); }
};
