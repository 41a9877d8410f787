#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gpcf/combinators.hpp"
#include "gpcf/decomposition.hpp"
#include "gpcf/denotation.hpp"

namespace gpcf {

using json = nlohmann::json;

struct CodeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------- game text

namespace detail {

inline std::string trim_copy(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

class GameParser {
public:
    explicit GameParser(const std::string& s) {
        for (char c : s)
            if (!std::isspace(static_cast<unsigned char>(c))) s_ += c;
    }
    Game parse_all() {
        Game g = parse();
        if (pos_ != s_.size()) fail();
        return g;
    }

private:
    Game parse() {
        if (eat("&w")) return game::Family(parse());
        if (eat("!")) return game::Bang(parse());
        if (eat("I")) return game::I();
        if (eat("N")) return game::Nat();
        if (eat("S")) return game::Sigma();
        if (eat("(")) {
            Game a = parse();
            Game g;
            if (eat("*")) g = game::Tensor(a, parse());
            else if (eat("-o")) g = game::Lolli(a, parse());
            else if (eat("&")) g = game::With(a, parse());
            else fail();
            if (!eat(")")) fail();
            return g;
        }
        fail();
    }
    bool eat(const char* t) {
        const std::string w(t);
        if (s_.compare(pos_, w.size(), w) == 0) {
            pos_ += w.size();
            return true;
        }
        return false;
    }
    [[noreturn]] void fail() { throw CodeError("bad game syntax at offset " + std::to_string(pos_) + ": " + s_); }
    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Game parse_game(const std::string& text) { return detail::GameParser(text).parse_all(); }

// ---------------------------------------------------------------- move JSON

inline json move_to_json(const Move& m) {
    json path = json::array();
    for (const auto& t : m.path) path.push_back(tag_str(t));
    json base = m.base.question ? json("Q") : json(m.base.n);
    return json{{"path", path}, {"base", base}};
}

inline Move move_from_json(const json& j) {
    std::string text;
    for (const auto& t : j.at("path")) text += t.get<std::string>() + ".";
    const auto& b = j.at("base");
    if (b.is_string() && b.get<std::string>() == "Q") text += "Q";
    else if (b.is_number_unsigned()) text += "Ans(" + std::to_string(b.get<std::uint64_t>()) + ")";
    else throw CodeError("bad base move: " + b.dump());
    return parse_move(text);
}

inline json position_to_json(const Position& s) {
    json a = json::array();
    for (const auto& m : s) a.push_back(move_to_json(m));
    return a;
}

inline Position position_from_json(const json& j) {
    Position s;
    for (const auto& m : j) s.push_back(move_from_json(m));
    return s;
}

// ---------------------------------------------------------------- codes

// Closed, serialisable description of a strategy.
struct StrategyCode {
    enum class Kind { Finite, Denotation, Comb };
    Kind kind = Kind::Comb;
    // Finite
    Game game;
    std::vector<Position> positions;
    // Denotation
    std::string term;
    Context ctx;
    std::uint64_t fuel = 0;
    // Comb
    std::string tag;
    std::vector<std::string> params;
    std::vector<Code> children;

    mutable std::mutex mu;
    mutable std::weak_ptr<const StrategyImpl> decoded;
};

namespace code {

inline Code finite(Game g, std::vector<Position> ps) {
    auto c = std::make_shared<StrategyCode>();
    c->kind = StrategyCode::Kind::Finite;
    c->game = std::move(g);
    c->positions = sorted_positions(std::move(ps));
    return c;
}

inline Code denotation(std::string term, std::uint64_t fuel, Context ctx = {}) {
    auto c = std::make_shared<StrategyCode>();
    c->kind = StrategyCode::Kind::Denotation;
    c->term = std::move(term);
    c->fuel = fuel;
    c->ctx = std::move(ctx);
    return c;
}

inline Code comb(std::string tag, std::vector<std::string> params = {}, std::vector<Code> children = {}) {
    auto c = std::make_shared<StrategyCode>();
    c->kind = StrategyCode::Kind::Comb;
    c->tag = std::move(tag);
    c->params = std::move(params);
    c->children = std::move(children);
    return c;
}

}  // namespace code

inline json code_to_json(const Code& c) {
    switch (c->kind) {
    case StrategyCode::Kind::Finite: {
        json ps = json::array();
        for (const auto& s : c->positions) ps.push_back(position_to_json(s));
        return json{{"kind", "finite"}, {"game", game_str(c->game)}, {"positions", ps}};
    }
    case StrategyCode::Kind::Denotation: {
        json j{{"kind", "denotation"}, {"term", c->term}, {"fuel", c->fuel}};
        if (!c->ctx.empty()) {
            json ctx = json::array();
            for (const auto& [x, t] : c->ctx) ctx.push_back(json::array({x, type_str(t)}));
            j["context"] = ctx;
        }
        return j;
    }
    case StrategyCode::Kind::Comb: {
        json ch = json::array();
        for (const auto& k : c->children) ch.push_back(code_to_json(k));
        json j{{"kind", "comb"}, {"tag", c->tag}, {"children", ch}};
        if (!c->params.empty()) j["params"] = c->params;
        return j;
    }
    }
    return json();
}

inline Code code_from_json(const json& j) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "finite") {
            std::vector<Position> ps;
            for (const auto& s : j.at("positions")) ps.push_back(position_from_json(s));
            return code::finite(parse_game(j.at("game").get<std::string>()), std::move(ps));
        }
        if (kind == "denotation") {
            Context ctx;
            if (j.contains("context"))
                for (const auto& e : j.at("context")) ctx.emplace_back(e.at(0).get<std::string>(), parse_type(e.at(1).get<std::string>()));
            return code::denotation(j.at("term").get<std::string>(), j.at("fuel").get<std::uint64_t>(), std::move(ctx));
        }
        if (kind == "comb") {
            std::vector<Code> ch;
            for (const auto& k : j.at("children")) ch.push_back(code_from_json(k));
            std::vector<std::string> ps;
            if (j.contains("params")) ps = j.at("params").get<std::vector<std::string>>();
            return code::comb(j.at("tag").get<std::string>(), std::move(ps), std::move(ch));
        }
        throw CodeError("unknown code kind " + kind);
    } catch (const json::exception& e) {
        throw CodeError(std::string("malformed strategy code: ") + e.what());
    }
}

inline Strategy decode(const Code& c);

namespace detail {

inline std::uint64_t param_num(const StrategyCode& c, std::size_t i) {
    if (i >= c.params.size()) throw CodeError(c.tag + ": missing parameter " + std::to_string(i));
    const std::string& s = c.params[i];
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw CodeError(c.tag + ": expected a number, got '" + s + "'");
    return std::stoull(s);
}

inline Game param_game(const StrategyCode& c, std::size_t i) {
    if (i >= c.params.size()) throw CodeError(c.tag + ": missing parameter " + std::to_string(i));
    return parse_game(c.params[i]);
}

inline const Code& child(const StrategyCode& c, std::size_t i) {
    if (i >= c.children.size()) throw CodeError(c.tag + ": missing child " + std::to_string(i));
    return c.children[i];
}

inline Strategy decode_comb(const StrategyCode& c) {
    const std::string& t = c.tag;
    auto kid = [&](std::size_t i) { return decode(child(c, i)); };
    if (t == "id") return identity(param_game(c, 0));
    if (t == "compose") return compose(kid(0), kid(1));
    if (t == "tensor") return tensor(kid(0), kid(1));
    if (t == "curry") return curry(kid(0));
    if (t == "uncurry") return uncurry(kid(0));
    if (t == "app") return linear_app(param_game(c, 0), param_game(c, 1));
    if (t == "der") return der(param_game(c, 0), c.params.size() > 1 ? param_num(c, 1) : 0);
    if (t == "weak") return weak(param_game(c, 0));
    if (t == "con") return con(param_game(c, 0));
    if (t == "promote") return promote(kid(0));
    if (t == "efwd") return exp_iso(param_game(c, 0), param_game(c, 1), ExpDir::fwd);
    if (t == "ebwd") return exp_iso(param_game(c, 0), param_game(c, 1), ExpDir::bwd);
    if (t == "fst") return fst(param_game(c, 0), param_game(c, 1));
    if (t == "snd") return snd(param_game(c, 0), param_game(c, 1));
    if (t == "pair") return pair(kid(0), kid(1));
    if (t == "chi_a") return chi_a();
    if (t == "chi") return chi();
    if (t == "num") return numeral(param_num(c, 0));
    if (t == "succ") return succ_linear();
    if (t == "pred") return pred_linear();
    if (t == "bot") return bottom(param_game(c, 0));
    if (t == "as_map") return as_map(kid(0));
    if (t == "K" || t == "proj" || t == "lift") {
        auto tic = tic_of_game(param_game(c, 0));
        if (!tic) throw CodeError(t + ": not a type in context");
        if (t == "K") return konst(*tic, param_num(c, 1));
        if (t == "proj") return proj(tic->ctx, param_num(c, 1));
        return lift(tic->ctx, kid(0));
    }
    if (t == "lambda") return kcurry(kid(0));
    if (t == "unlambda") return kuncurry(kid(0));
    if (t == "kapply") return kapply(kid(0), kid(1));
    if (t == "approx") return p_k(param_num(c, 0), kid(0));
    if (t == "decomp_arg" || t == "decomp_answer") {
        Decomp d = phi(kid(0));
        if (d.kind != Decomp::Kind::Case) throw CodeError(t + ": parent does not decompose as a case");
        const std::uint64_t n = param_num(c, 0);
        if (t == "decomp_answer") return d.answer(n);
        if (n >= d.args.size()) throw CodeError("decomp_arg: argument out of range");
        return d.args[n];
    }
    throw CodeError("unknown combinator tag '" + t + "'");
}

}  // namespace detail

// Decoding is cached per code object while the decoded strategy is alive.
inline Strategy decode(const Code& c) {
    if (!c) throw CodeError("null code");
    {
        std::lock_guard<std::mutex> lk(c->mu);
        if (auto s = c->decoded.lock()) return s;
    }
    Strategy s;
    switch (c->kind) {
    case StrategyCode::Kind::Finite: s = explicit_strategy(c->game, c->positions); break;
    case StrategyCode::Kind::Denotation: s = denote(c->ctx, parse(c->term), c->fuel); break;
    case StrategyCode::Kind::Comb: s = detail::decode_comb(*c); break;
    }
    s->set_code(c);
    std::lock_guard<std::mutex> lk(c->mu);
    c->decoded = s;
    return s;
}

// Code of a strategy: the one it was decoded from, else its explicit set.
inline Code encode(const Strategy& s) {
    if (auto c = s->code()) return c;
    if (const auto* ps = s->finite_positions()) return code::finite(s->game(), *ps);
    throw CodeError("strategy has no code: " + s->describe());
}

// ---------------------------------------------------------------- D / H / B

struct DHB {
    std::optional<std::pair<int, std::uint64_t>> D;  // (2, n) or (3, i)
    std::optional<std::vector<Code>> H;
    std::function<std::optional<Code>(std::uint64_t)> B;
};

inline DHB dhb(const Code& c) {
    Strategy s = decode(c);
    Decomp d = phi(s);
    DHB out;
    out.B = [](std::uint64_t) { return std::optional<Code>(); };
    if (d.kind == Decomp::Kind::Const) out.D = std::make_pair(2, d.value);
    if (d.kind != Decomp::Kind::Case) return out;
    out.D = std::make_pair(3, static_cast<std::uint64_t>(d.var));
    std::vector<Code> h;
    for (std::size_t j = 0; j < d.args.size(); ++j) h.push_back(code::comb("decomp_arg", {std::to_string(j)}, {c}));
    out.H = std::move(h);
    out.B = [c](std::uint64_t n) { return std::optional<Code>(code::comb("decomp_answer", {std::to_string(n)}, {c})); };
    return out;
}

inline bool preceq_k(std::uint64_t k, const Code& a, const Code& b) { return preceq_k(k, decode(a), decode(b)); }

inline Outcome apply_via_decomposition(const Code& f, const std::vector<Code>& args, std::uint64_t depth) {
    std::vector<Strategy> as;
    for (const auto& a : args) as.push_back(decode(a));
    return apply_via_decomposition(decode(f), as, depth);
}

// ---------------------------------------------------------------- expression syntax

// Combinator expressions such as `compose(id(N->N), promote(der(N)))`.
// Arguments are sub-expressions, numbers, PCF types (standing for their
// games) or game text; `term(M)` is the denotation of a closed PCF term.
namespace detail {

inline bool is_comb_tag(const std::string& t) {
    static const std::set<std::string> tags{"id",   "compose", "tensor", "curry", "uncurry", "app",    "der",     "weak",   "con",    "promote",
                                            "efwd", "ebwd",    "fst",    "snd",   "pair",    "chi_a",  "chi",     "num",    "succ",   "pred",
                                            "bot",  "as_map",  "K",      "proj",  "lift",    "lambda", "unlambda", "kapply", "approx", "decomp_arg",
                                            "decomp_answer", "term"};
    return tags.count(t) > 0;
}

inline std::string game_param(const std::string& text) {
    try {
        return game_str(game_of_type(parse_type(text)));
    } catch (const std::exception&) {
        return game_str(parse_game(text));
    }
}

inline Code parse_comb_expr(const std::string& raw, std::uint64_t y_depth) {
    const std::string text = trim_copy(raw);
    const auto open = text.find('(');
    if (open == std::string::npos || text.back() != ')') {
        if (is_comb_tag(text)) return code::comb(text);
        throw CodeError("expected tag(...) in '" + text + "'");
    }
    const std::string tag = trim_copy(text.substr(0, open));
    if (!is_comb_tag(tag)) throw CodeError("unknown combinator tag '" + tag + "'");
    const std::string inner = text.substr(open + 1, text.size() - open - 2);
    if (tag == "term") return code::denotation(trim_copy(inner), y_depth);
    std::vector<std::string> args;
    int depth = 0;
    std::string cur;
    for (char c : inner) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth < 0) throw CodeError("unbalanced parentheses in '" + text + "'");
        if (c == ',' && depth == 0) {
            args.push_back(trim_copy(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (depth != 0) throw CodeError("unbalanced parentheses in '" + text + "'");
    if (!trim_copy(cur).empty() || !args.empty()) args.push_back(trim_copy(cur));
    std::vector<std::string> params;
    std::vector<Code> children;
    for (const auto& a : args) {
        const auto p = a.find('(');
        if (p != std::string::npos && is_comb_tag(trim_copy(a.substr(0, p)))) children.push_back(parse_comb_expr(a, y_depth));
        else if (!a.empty() && a.find_first_not_of("0123456789") == std::string::npos) params.push_back(a);
        else if (is_comb_tag(a)) children.push_back(code::comb(a));
        else params.push_back(game_param(a));
    }
    return code::comb(tag, std::move(params), std::move(children));
}

}  // namespace detail

inline Code parse_comb_expr(const std::string& text, std::uint64_t y_depth = 32) { return detail::parse_comb_expr(text, y_depth); }

}  // namespace gpcf
