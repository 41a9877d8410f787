#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gpcf {

// ---------------------------------------------------------------- types

struct TypeNode;
using Type = std::shared_ptr<const TypeNode>;

struct TypeNode {
    bool arrow = false;
    Type dom, cod;
};

inline Type ground() {
    static const Type n = std::make_shared<TypeNode>();
    return n;
}
inline Type arrow(Type a, Type b) { return std::make_shared<TypeNode>(TypeNode{true, std::move(a), std::move(b)}); }

inline bool type_equal(const Type& a, const Type& b) {
    if (a == b) return true;
    if (a->arrow != b->arrow) return false;
    return !a->arrow || (type_equal(a->dom, b->dom) && type_equal(a->cod, b->cod));
}

// T1 -> ... -> Tk -> N  gives [T1..Tk]
inline std::vector<Type> arg_types(Type t) {
    std::vector<Type> out;
    while (t->arrow) {
        out.push_back(t->dom);
        t = t->cod;
    }
    return out;
}

inline Type curried(const std::vector<Type>& args, Type result = ground()) {
    for (auto it = args.rbegin(); it != args.rend(); ++it) result = arrow(*it, result);
    return result;
}

inline std::size_t type_depth(const Type& t) {
    if (!t->arrow) return 0;
    return std::max(type_depth(t->dom) + 1, type_depth(t->cod));
}

inline std::string type_str(const Type& t) {
    if (!t->arrow) return "N";
    std::string d = type_str(t->dom);
    if (t->dom->arrow) d = "(" + d + ")";
    return d + " -> " + type_str(t->cod);
}

// ---------------------------------------------------------------- terms

enum class TermKind : std::uint8_t { Var, Lam, App, Num, Succ, Pred, If0, Y, Omega, Case };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
    TermKind kind;
    std::string name;      // Var, Lam binder
    Type type;             // Lam binder type, Y / Omega type
    Term a, b;             // Lam body in a; App fun a, arg b
    std::uint64_t n = 0;   // Num value, Case arity
    std::shared_ptr<const std::set<std::string>> fv;  // free variables; null when none

    // Unlinks uniquely owned subterms iteratively so that very deep terms
    // (long reduction chains) do not exhaust the stack when released.
    ~TermNode() {
        std::vector<Term> pending;
        auto take = [&pending](Term& p) {
            if (p && p.use_count() == 1) pending.push_back(std::move(p));
        };
        take(a);
        take(b);
        while (!pending.empty()) {
            Term t = std::move(pending.back());
            pending.pop_back();
            auto* node = const_cast<TermNode*>(t.get());
            take(node->a);
            take(node->b);
        }
    }
};

namespace detail {
inline std::shared_ptr<const std::set<std::string>> fv_union(const Term& x, const Term& y, const std::string* minus = nullptr) {
    const auto& fx = x ? x->fv : nullptr;
    const auto& fy = y ? y->fv : nullptr;
    if (!fx && !fy) return nullptr;
    if (!minus) {
        if (!fy) return fx;
        if (!fx) return fy;
    }
    auto out = std::make_shared<std::set<std::string>>();
    if (fx) out->insert(fx->begin(), fx->end());
    if (fy) out->insert(fy->begin(), fy->end());
    if (minus) out->erase(*minus);
    if (out->empty()) return nullptr;
    return out;
}
}  // namespace detail

namespace term {
inline Term Var(std::string x) {
    auto fv = std::make_shared<std::set<std::string>>(std::set<std::string>{x});
    return std::make_shared<TermNode>(TermNode{TermKind::Var, std::move(x), nullptr, nullptr, nullptr, 0, std::move(fv)});
}
inline Term Lam(std::string x, Type t, Term body) {
    auto fv = detail::fv_union(body, nullptr, &x);
    return std::make_shared<TermNode>(TermNode{TermKind::Lam, std::move(x), std::move(t), std::move(body), nullptr, 0, std::move(fv)});
}
inline Term App(Term f, Term x) {
    auto fv = detail::fv_union(f, x);
    return std::make_shared<TermNode>(TermNode{TermKind::App, "", nullptr, std::move(f), std::move(x), 0, std::move(fv)});
}
inline Term App(Term f, std::initializer_list<Term> xs) {
    for (const auto& x : xs) f = App(f, x);
    return f;
}
inline Term Num(std::uint64_t n) { return std::make_shared<TermNode>(TermNode{TermKind::Num, "", nullptr, nullptr, nullptr, n, nullptr}); }
inline Term Succ() { static const Term t = std::make_shared<TermNode>(TermNode{TermKind::Succ, "", nullptr, nullptr, nullptr, 0, nullptr}); return t; }
inline Term Pred() { static const Term t = std::make_shared<TermNode>(TermNode{TermKind::Pred, "", nullptr, nullptr, nullptr, 0, nullptr}); return t; }
inline Term If0() { static const Term t = std::make_shared<TermNode>(TermNode{TermKind::If0, "", nullptr, nullptr, nullptr, 0, nullptr}); return t; }
inline Term Y(Type t) { return std::make_shared<TermNode>(TermNode{TermKind::Y, "", std::move(t), nullptr, nullptr, 0, nullptr}); }
inline Term Omega(Type t) { return std::make_shared<TermNode>(TermNode{TermKind::Omega, "", std::move(t), nullptr, nullptr, 0, nullptr}); }
inline Term Case(std::uint64_t k) { return std::make_shared<TermNode>(TermNode{TermKind::Case, "", nullptr, nullptr, nullptr, k, nullptr}); }
}  // namespace term

inline bool term_equal(const Term& x, const Term& y) {
    if (x == y) return true;
    if (x->kind != y->kind) return false;
    switch (x->kind) {
    case TermKind::Var: return x->name == y->name;
    case TermKind::Lam: return x->name == y->name && type_equal(x->type, y->type) && term_equal(x->a, y->a);
    case TermKind::App: return term_equal(x->a, y->a) && term_equal(x->b, y->b);
    case TermKind::Num:
    case TermKind::Case: return x->n == y->n;
    case TermKind::Y:
    case TermKind::Omega: return type_equal(x->type, y->type);
    default: return true;
    }
}

// ---------------------------------------------------------------- errors

struct SyntaxError : std::runtime_error {
    std::size_t line, column;
    SyntaxError(const std::string& msg, std::size_t l, std::size_t c)
        : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), column(c) {}
};

struct TypeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- printer

inline std::string term_str(const Term& t);

namespace detail {
inline std::string atom_str(const Term& t) {
    switch (t->kind) {
    case TermKind::Var: return t->name;
    case TermKind::Num: return std::to_string(t->n);
    case TermKind::Succ: return "succ";
    case TermKind::Pred: return "pred";
    case TermKind::If0: return "if0";
    case TermKind::Y: return "Y[" + type_str(t->type) + "]";
    case TermKind::Omega: return "Omega[" + type_str(t->type) + "]";
    case TermKind::Case: return "case" + std::to_string(t->n);
    default: return "(" + term_str(t) + ")";
    }
}
}  // namespace detail

inline std::string term_str(const Term& t) {
    if (t->kind == TermKind::Lam) return "\\" + t->name + ":" + type_str(t->type) + ". " + term_str(t->a);
    if (t->kind == TermKind::App) {
        std::string f = t->a->kind == TermKind::App ? term_str(t->a) : detail::atom_str(t->a);
        return f + " " + detail::atom_str(t->b);
    }
    return detail::atom_str(t);
}

// ---------------------------------------------------------------- parser

namespace detail {

class Parser {
public:
    explicit Parser(std::string src) : s_(std::move(src)) {}

    Term parse_all() {
        Term t = parse_term();
        skip();
        if (pos_ < s_.size()) fail("unexpected trailing input");
        return t;
    }
    Type parse_type_all() {
        Type t = parse_type();
        skip();
        if (pos_ < s_.size()) fail("unexpected trailing input");
        return t;
    }

private:
    std::string s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
            if (s_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw SyntaxError(msg, line, col);
    }

    void skip() {
        for (;;) {
            while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '#' || s_.compare(pos_, 2, "--") == 0)) {
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
                continue;
            }
            return;
        }
    }
    bool peek(const char* tok) {
        skip();
        return s_.compare(pos_, std::char_traits<char>::length(tok), tok) == 0;
    }
    void expect(const char* tok) {
        if (!peek(tok)) fail(std::string("expected '") + tok + "'");
        pos_ += std::char_traits<char>::length(tok);
    }
    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

    std::string ident() {
        skip();
        if (pos_ >= s_.size() || !ident_start(s_[pos_])) fail("expected identifier");
        std::size_t start = pos_;
        while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
        return s_.substr(start, pos_ - start);
    }
    std::uint64_t numeral() {
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected numeral");
        std::uint64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) v = v * 10 + static_cast<std::uint64_t>(s_[pos_++] - '0');
        return v;
    }

    Type parse_type() {
        Type lhs;
        if (peek("(")) {
            expect("(");
            lhs = parse_type();
            expect(")");
        } else {
            std::string id = ident();
            if (id != "N") fail("unknown type '" + id + "'");
            lhs = ground();
        }
        if (peek("->")) {
            expect("->");
            return arrow(lhs, parse_type());
        }
        return lhs;
    }

    bool at_atom_start() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return c == '(' || c == '\\' || std::isdigit(static_cast<unsigned char>(c)) || ident_start(c);
    }

    Term parse_term() {
        if (peek("\\")) return parse_lambda();
        Term t = parse_atom();
        while (at_atom_start()) {
            if (peek("\\")) return term::App(t, parse_lambda());
            t = term::App(t, parse_atom());
        }
        return t;
    }

    Term parse_lambda() {
        expect("\\");
        std::string x = ident();
        expect(":");
        Type ty = parse_type();
        expect(".");
        return term::Lam(x, ty, parse_term());
    }

    Term parse_atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            expect("(");
            Term t = parse_term();
            expect(")");
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return term::Num(numeral());
        std::size_t save = pos_;
        std::string id = ident();
        if (id == "succ") return term::Succ();
        if (id == "pred") return term::Pred();
        if (id == "if0") return term::If0();
        if (id == "Y" || id == "Omega") {
            expect("[");
            Type ty = parse_type();
            expect("]");
            return id == "Y" ? term::Y(ty) : term::Omega(ty);
        }
        if (id == "case") return term::Case(numeral());
        if (id.size() > 4 && id.compare(0, 4, "case") == 0) {
            bool digits = true;
            for (std::size_t i = 4; i < id.size(); ++i) digits = digits && std::isdigit(static_cast<unsigned char>(id[i]));
            if (digits) return term::Case(std::stoull(id.substr(4)));
        }
        if (id == "N") {
            pos_ = save;
            fail("type name used as a term");
        }
        return term::Var(id);
    }
};

}  // namespace detail

inline Term parse(const std::string& text) { return detail::Parser(text).parse_all(); }
inline Type parse_type(const std::string& text) { return detail::Parser(text).parse_type_all(); }

// ---------------------------------------------------------------- typing

using Context = std::vector<std::pair<std::string, Type>>;

inline Type case_type(std::uint64_t k) { return curried(std::vector<Type>(k + 1, ground())); }

inline Type typecheck(const Context& ctx, const Term& t) {
    switch (t->kind) {
    case TermKind::Var:
        for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
            if (it->first == t->name) return it->second;
        throw TypeError("unbound variable '" + t->name + "'");
    case TermKind::Lam: {
        Context ext = ctx;
        ext.emplace_back(t->name, t->type);
        return arrow(t->type, typecheck(ext, t->a));
    }
    case TermKind::App: {
        Type f = typecheck(ctx, t->a);
        Type x = typecheck(ctx, t->b);
        if (!f->arrow) throw TypeError("'" + term_str(t->a) + "' has type N and is applied in '" + term_str(t) + "'");
        if (!type_equal(f->dom, x))
            throw TypeError("argument '" + term_str(t->b) + "' has type " + type_str(x) + " but '" + term_str(t->a) + "' expects " + type_str(f->dom));
        return f->cod;
    }
    case TermKind::Num: return ground();
    case TermKind::Succ:
    case TermKind::Pred: return arrow(ground(), ground());
    case TermKind::If0: return case_type(2);
    case TermKind::Y: return arrow(arrow(t->type, t->type), t->type);
    case TermKind::Omega: return t->type;
    case TermKind::Case: return case_type(t->n);
    }
    throw TypeError("unknown term");
}

// ---------------------------------------------------------------- substitution

inline std::set<std::string> free_vars(const Term& t) { return t->fv ? *t->fv : std::set<std::string>{}; }

inline bool occurs_free(const std::string& x, const Term& t) { return t->fv && t->fv->count(x) > 0; }

namespace detail {
inline Term subst_rec(const Term& t, const std::string& x, const Term& n) {
    if (!occurs_free(x, t)) return t;
    switch (t->kind) {
    case TermKind::Var: return n;
    case TermKind::App: return term::App(subst_rec(t->a, x, n), subst_rec(t->b, x, n));
    case TermKind::Lam: {
        if (occurs_free(t->name, n)) {
            std::string y = t->name;
            do y += "'";
            while (occurs_free(y, n) || occurs_free(y, t->a) || y == x);
            Term body = subst_rec(t->a, t->name, term::Var(y));
            return term::Lam(y, t->type, subst_rec(body, x, n));
        }
        return term::Lam(t->name, t->type, subst_rec(t->a, x, n));
    }
    default: return t;
    }
}
}  // namespace detail

// capture-avoiding t[n/x]
inline Term subst(const Term& t, const std::string& x, const Term& n) { return detail::subst_rec(t, x, n); }

// ---------------------------------------------------------------- evaluation

struct Outcome {
    bool answered = false;
    std::uint64_t value = 0;
    // budget counters
    std::uint64_t steps = 0;
    std::uint64_t budget = 0;
    bool stuck = false;       // no rule applied before the budget ran out
    std::uint64_t y_depth = 0;  // game backend: deepest unfolding tried

    static Outcome answer(std::uint64_t n, std::uint64_t steps = 0) {
        Outcome o;
        o.answered = true;
        o.value = n;
        o.steps = steps;
        return o;
    }
    static Outcome unresolved(std::uint64_t steps, std::uint64_t budget, bool stuck) {
        Outcome o;
        o.steps = steps;
        o.budget = budget;
        o.stuck = stuck;
        return o;
    }
    bool same_result(const Outcome& other) const { return answered == other.answered && (!answered || value == other.value); }
    std::string str() const { return answered ? std::to_string(value) : std::string("unresolved"); }
};

namespace detail {

inline void spine(const Term& t, Term& head, std::vector<Term>& args) {
    Term cur = t;
    args.clear();
    while (cur->kind == TermKind::App) {
        args.push_back(cur->b);
        cur = cur->a;
    }
    std::reverse(args.begin(), args.end());
    head = cur;
}

inline Term rebuild(Term head, const std::vector<Term>& args, std::size_t from) {
    for (std::size_t i = from; i < args.size(); ++i) head = term::App(head, args[i]);
    return head;
}

// one call-by-name step; nullopt when no rule applies
inline std::optional<Term> step(const Term& t) {
    Term head;
    std::vector<Term> args;
    spine(t, head, args);
    auto numeral_of = [](const Term& x) -> std::optional<std::uint64_t> {
        if (x->kind == TermKind::Num) return x->n;
        return std::nullopt;
    };
    auto reduce_arg0 = [&](const Term& h) -> std::optional<Term> {
        auto r = step(args[0]);
        if (!r) return std::nullopt;
        std::vector<Term> a2 = args;
        a2[0] = *r;
        return rebuild(h, a2, 0);
    };
    switch (head->kind) {
    case TermKind::Lam:
        if (args.empty()) return std::nullopt;
        return rebuild(subst(head->a, head->name, args[0]), args, 1);
    case TermKind::Succ:
    case TermKind::Pred: {
        if (args.empty()) return std::nullopt;
        if (auto n = numeral_of(args[0])) {
            std::uint64_t v = head->kind == TermKind::Succ ? *n + 1 : (*n == 0 ? 0 : *n - 1);
            return rebuild(term::Num(v), args, 1);
        }
        return reduce_arg0(head);
    }
    case TermKind::If0: {
        if (args.size() < 3) return std::nullopt;
        if (auto n = numeral_of(args[0])) return rebuild(*n == 0 ? args[1] : args[2], args, 3);
        return reduce_arg0(head);
    }
    case TermKind::Case: {
        const std::uint64_t k = head->n;
        if (args.size() < k + 1) return std::nullopt;
        if (auto n = numeral_of(args[0])) {
            if (*n >= k) return std::nullopt;
            return rebuild(args[1 + *n], args, k + 1);
        }
        return reduce_arg0(head);
    }
    case TermKind::Y: {
        if (args.empty()) return std::nullopt;
        Term unfolded = term::App(args[0], term::App(head, args[0]));
        return rebuild(unfolded, args, 1);
    }
    default: return std::nullopt;
    }
}

}  // namespace detail

// Same reduction as iterating step(), but the strict-argument context is kept
// on a stack so each step costs only the work at the redex.
inline Outcome eval_op(const Term& t, std::uint64_t fuel) {
    struct Frame {
        Term head;
        std::vector<Term> args;
    };
    std::vector<Frame> frames;
    Term cur = t;
    Term head;
    std::vector<Term> args;
    std::uint64_t steps = 0;
    auto stuck = [&] { return Outcome::unresolved(steps, fuel, true); };
    for (;;) {
        if (cur->kind == TermKind::Num) {
            if (frames.empty()) return Outcome::answer(cur->n, steps);
            Frame f = std::move(frames.back());
            frames.pop_back();
            f.args[0] = cur;
            cur = detail::rebuild(f.head, f.args, 0);
            continue;
        }
        if (steps >= fuel) return Outcome::unresolved(steps, fuel, false);
        detail::spine(cur, head, args);
        const bool has0 = !args.empty() && args[0]->kind == TermKind::Num;
        switch (head->kind) {
        case TermKind::Lam:
            if (args.empty()) return stuck();
            cur = detail::rebuild(subst(head->a, head->name, args[0]), args, 1);
            break;
        case TermKind::Succ:
        case TermKind::Pred:
            if (args.empty()) return stuck();
            if (!has0) {
                frames.push_back({head, args});
                cur = args[0];
                continue;
            }
            cur = detail::rebuild(term::Num(head->kind == TermKind::Succ ? args[0]->n + 1 : (args[0]->n == 0 ? 0 : args[0]->n - 1)), args, 1);
            break;
        case TermKind::If0:
            if (args.size() < 3) return stuck();
            if (!has0) {
                frames.push_back({head, args});
                cur = args[0];
                continue;
            }
            cur = detail::rebuild(args[0]->n == 0 ? args[1] : args[2], args, 3);
            break;
        case TermKind::Case: {
            const std::uint64_t k = head->n;
            if (args.size() < k + 1) return stuck();
            if (!has0) {
                frames.push_back({head, args});
                cur = args[0];
                continue;
            }
            if (args[0]->n >= k) return stuck();
            cur = detail::rebuild(args[1 + args[0]->n], args, k + 1);
            break;
        }
        case TermKind::Y:
            if (args.empty()) return stuck();
            cur = detail::rebuild(term::App(args[0], term::App(head, args[0])), args, 1);
            break;
        default: return stuck();
        }
        ++steps;
    }
}

// ---------------------------------------------------------------- fixpoint approximants

// Y^(k) at T: \f:T->T. f (f (... (f Omega[T])))
inline Term y_approximant(const Type& t, std::uint64_t k) {
    const std::string f = "f";
    Term body = term::Omega(t);
    for (std::uint64_t i = 0; i < k; ++i) body = term::App(term::Var(f), body);
    return term::Lam(f, arrow(t, t), body);
}

inline Term unfold_y(const Term& t, std::uint64_t k) {
    switch (t->kind) {
    case TermKind::Y: return y_approximant(t->type, k);
    case TermKind::Lam: {
        Term b = unfold_y(t->a, k);
        return b == t->a ? t : term::Lam(t->name, t->type, b);
    }
    case TermKind::App: {
        Term a = unfold_y(t->a, k), b = unfold_y(t->b, k);
        return (a == t->a && b == t->b) ? t : term::App(a, b);
    }
    default: return t;
    }
}

inline bool contains_y(const Term& t) {
    switch (t->kind) {
    case TermKind::Y: return true;
    case TermKind::Lam: return contains_y(t->a);
    case TermKind::App: return contains_y(t->a) || contains_y(t->b);
    default: return false;
    }
}

}  // namespace gpcf
