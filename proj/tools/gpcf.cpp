#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gpcf/suites.hpp"

using namespace gpcf;

namespace {

struct Config {
    std::uint64_t y_depth = 32;
    Bounds bounds{8, 8, 64, 100000};
    std::uint64_t op_fuel = 10000000;
    std::size_t depth = 3;
    bool json_out = false;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Term load(const std::string& path) { return parse(slurp(path)); }

void emit(const Config& cfg, const json& j, const std::string& text) {
    if (cfg.json_out) std::cout << j.dump(2) << "\n";
    else std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
}

json outcome_json(const Outcome& o) {
    json j{{"answered", o.answered}, {"steps", o.steps}};
    if (o.answered) j["value"] = o.value;
    else {
        j["budget"] = o.budget;
        j["stuck"] = o.stuck;
    }
    if (o.y_depth) j["y_depth"] = o.y_depth;
    return j;
}

std::vector<std::string> top_binders(const Term& t) {
    std::vector<std::string> out;
    for (Term cur = t; cur->kind == TermKind::Lam; cur = cur->a) out.push_back(cur->name);
    return out;
}

// closed ground term through the decomposition evaluator: split the
// application spine into a function and its arguments
Outcome run_decomp(const Term& t, const Config& cfg) {
    Term cur = t;
    std::vector<Term> args;
    while (cur->kind == TermKind::App) {
        args.push_back(cur->b);
        cur = cur->a;
    }
    std::reverse(args.begin(), args.end());
    std::vector<Strategy> as;
    for (const auto& a : args) as.push_back(denote({}, a, cfg.y_depth));
    LoopCap cap(cfg.bounds.max_steps);
    return apply_via_decomposition(denote({}, cur, cfg.y_depth), as, cfg.bounds.max_steps);
}

struct DecompPrinter {
    std::vector<std::string> names;  // context names, outermost first

    std::string name(std::size_t i) const { return i < names.size() ? names[i] : "x" + std::to_string(i + 1); }

    json to_json(const Strategy& s, std::size_t depth, const std::vector<std::string>& top) {
        if (depth == 0) return json{{"kind", "elided"}};
        Decomp d = phi(s);
        const std::size_t saved = names.size();
        for (std::size_t j = names.size(); j < d.full.ctx.size(); ++j) {
            const std::size_t local = j - (d.full.ctx.size() - d.curried);
            names.push_back(local < top.size() ? top[local] : "x" + std::to_string(j + 1));
        }
        json j;
        switch (d.kind) {
        case Decomp::Kind::Bottom: j = json{{"kind", "bottom"}}; break;
        case Decomp::Kind::Const: j = json{{"kind", "const"}, {"value", d.value}}; break;
        case Decomp::Kind::Case: {
            j = json{{"kind", "case"}, {"var", d.var}, {"name", name(d.var)}, {"copy", d.copy.str()}};
            json args = json::array();
            for (const auto& a : d.args) args.push_back(to_json(a, depth - 1, {}));
            j["args"] = args;
            json ans = json::object();
            for (std::uint64_t n = 0; n + 1 <= depth; ++n) ans[std::to_string(n)] = to_json(d.answer(n), depth - 1, {});
            j["answers"] = ans;
            break;
        }
        }
        names.resize(saved);
        return j;
    }

    static void text(const json& j, int indent, std::ostringstream& out) {
        const std::string pad(static_cast<std::size_t>(indent), ' ');
        const std::string k = j.at("kind");
        if (k == "elided") out << pad << "...\n";
        else if (k == "bottom") out << pad << "bottom\n";
        else if (k == "const") out << pad << "const " << j.at("value").get<std::uint64_t>() << "\n";
        else {
            out << pad << "case " << j.at("name").get<std::string>() << " (copy " << j.at("copy").get<std::string>() << ")\n";
            std::size_t i = 1;
            for (const auto& a : j.at("args")) {
                out << pad << "  arg " << i++ << ":\n";
                text(a, indent + 4, out);
            }
            for (const auto& [n, a] : j.at("answers").items()) {
                out << pad << "  answer " << n << ":\n";
                text(a, indent + 4, out);
            }
        }
    }
};

int cmd_parse(const Config& cfg, const std::string& file) {
    Term t = load(file);
    emit(cfg, json{{"term", term_str(t)}}, term_str(t));
    return 0;
}

int cmd_check(const Config& cfg, const std::string& file) {
    Term t = load(file);
    Type ty = typecheck({}, t);
    emit(cfg, json{{"term", term_str(t)}, {"type", type_str(ty)}}, type_str(ty));
    return 0;
}

int cmd_run(const Config& cfg, const std::string& file, const std::string& backend) {
    Term t = load(file);
    Type ty = typecheck({}, t);
    if (!type_equal(ty, ground())) throw TypeError("run needs a program of type N, got " + type_str(ty));
    Outcome o;
    if (backend == "op") o = eval_op(t, cfg.op_fuel);
    else if (backend == "game") o = run_game(t, cfg.y_depth, cfg.bounds);
    else o = run_decomp(t, cfg);
    json j = outcome_json(o);
    j["backend"] = backend;
    emit(cfg, j, o.str());
    return 0;
}

std::string play_text(const Position& s) {
    std::string out;
    for (const auto& m : s) out += move_str(m) + "\n";
    return out;
}

int cmd_trace(const Config& cfg, const std::string& file, const std::string& expr, bool internal) {
    if (!expr.empty()) {
        Strategy s = decode(parse_comb_expr(expr, cfg.y_depth));
        Bounds b = cfg.bounds;
        auto plays = traces(s, b);
        json arr = json::array();
        std::string text = "# " + game_str(s->game()) + "\n";
        for (const auto& p : plays) {
            if (p.empty()) continue;
            arr.push_back(position_to_json(p));
            text += play_text(p) + "\n";
        }
        emit(cfg, json{{"game", game_str(s->game())}, {"plays", arr}}, text);
        return 0;
    }
    Term t = load(file);
    Type ty = typecheck({}, t);
    if (!type_equal(ty, ground())) throw TypeError("trace needs a program of type N, got " + type_str(ty));
    // find the unfolding depth that answers, then replay it
    Outcome o = run_game(t, cfg.y_depth, cfg.bounds);
    const std::uint64_t k = o.y_depth ? o.y_depth : cfg.y_depth;
    Strategy s;
    {
        LoopCap cap(cfg.bounds.max_steps);
        s = denote({}, t, k);
    }
    const Move open = Q().under(Tag::right());
    Position play{open};
    json j{{"game", game_str(s->game())}};
    std::string text;
    ExchangeBudget budget(run_budget(cfg.bounds));
    if (internal) {
        if (const auto* c = dynamic_cast<const ComposeStrategy*>(s.get())) {
            json steps = json::array();
            text += "# " + move_str(open) + "\n";
            for (const auto& st : c->interaction(open)) {
                steps.push_back(json{{"component", std::string(1, st.component)}, {"by", st.from_left ? "left" : "right"}, {"move", move_to_json(st.move)}});
                text += std::string("# ") + st.component + (st.from_left ? " <- left  " : " <- right ") + move_str(st.move) + "\n";
            }
            j["interaction"] = steps;
        }
    }
    if (auto r = s->next(open)) play.push_back(*r);
    j["play"] = position_to_json(play);
    text += play_text(play);
    emit(cfg, j, text);
    return 0;
}

int cmd_decompose(const Config& cfg, const std::string& file) {
    Term t = load(file);
    typecheck({}, t);
    Strategy s = denote({}, t, cfg.y_depth);
    DecompPrinter pr;
    json j = pr.to_json(s, cfg.depth, top_binders(t));
    std::ostringstream out;
    DecompPrinter::text(j, 0, out);
    emit(cfg, j, out.str());
    return 0;
}

int cmd_readback(const Config& cfg, const std::string& file) {
    Term t = load(file);
    typecheck({}, t);
    Strategy s = denote({}, t, cfg.y_depth);
    Namer names;
    const Fet p = eta_k(cfg.depth, s, {}, names, top_binders(t));
    emit(cfg, json{{"depth", cfg.depth}, {"term", fet_str(p)}}, fet_str(p));
    return 0;
}

int cmd_compare(const Config& cfg, const std::string& f1, const std::string& f2) {
    Term m = load(f1), n = load(f2);
    CompareOptions opt;
    opt.depth = cfg.depth;
    opt.fuel = cfg.op_fuel / 10;
    opt.y_depth = cfg.y_depth;
    opt.bounds = cfg.bounds;
    Verdict mn = obs_compare(m, n, opt);
    Verdict nm = obs_compare(n, m, opt);
    auto vj = [](const Verdict& v) {
        json j{{"verdict", v.str()}, {"checked", v.checked}, {"inconclusive", v.inconclusive}};
        if (v.kind == Verdict::Kind::NotLeq) j["witness"] = v.witness, j["left"] = v.left, j["right"] = v.right;
        return j;
    };
    auto line = [](const char* dir, const Verdict& v) {
        std::string s = std::string(dir) + ": " + v.str();
        if (v.kind == Verdict::Kind::NotLeq) s += " witness [" + v.witness + "] (" + v.left + " vs " + v.right + ")";
        return s + "\n";
    };
    emit(cfg, json{{"first_below_second", vj(mn)}, {"second_below_first", vj(nm)}}, line("first <= second", mn) + line("second <= first", nm));
    if (mn.kind == Verdict::Kind::NotLeq || nm.kind == Verdict::Kind::NotLeq) return 1;
    return 0;
}

int cmd_laws(const Config& cfg, std::uint64_t seed, std::size_t cases) {
    std::vector<SuiteReport> reps{category_suite(seed, cases),     comonad_suite(seed + 1, cases),     comonoid_suite(),
                                  bang_suite(seed + 2, cases),      parity_suite(seed + 3, cases),       monotonicity_suite(seed + 4, cases),
                                  roundtrip_suite(seed + 5, cases)};
    json arr = json::array();
    std::string text;
    bool ok = true;
    for (const auto& r : reps) {
        arr.push_back(r.to_json());
        ok = ok && r.ok();
        text += (r.ok() ? "pass " : "FAIL ") + r.name + ": " + std::to_string(r.checks - r.failures) + "/" + std::to_string(r.checks) + "\n";
        for (const auto& n : r.notes) text += "    " + n + "\n";
    }
    json audit{{"checked", PositionAudit::instance().checked()}, {"violations", PositionAudit::instance().violations()}};
    text += "positions audited: " + std::to_string(PositionAudit::instance().checked()) + ", violations: " + std::to_string(PositionAudit::instance().violations()) + "\n";
    emit(cfg, json{{"seed", seed}, {"suites", arr}, {"audit", audit}}, text);
    return ok && PositionAudit::instance().violations() == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Game-semantics interpreter for PCF"};
    app.require_subcommand(1);
    Config cfg;
    app.add_flag("--json", cfg.json_out, "Machine-readable output");
    app.add_option("--y-depth", cfg.y_depth, "Deepest fixpoint unfolding")->capture_default_str();
    app.add_option("--max-nat", cfg.bounds.max_nat, "Largest numeral explored")->capture_default_str();
    app.add_option("--max-index", cfg.bounds.max_index, "Largest copy index explored")->capture_default_str();
    app.add_option("--max-len", cfg.bounds.max_len, "Longest play explored")->capture_default_str();
    app.add_option("--op-fuel", cfg.op_fuel, "Reduction steps for the operational backend")->capture_default_str();

    std::string file, file2, backend = "op", expr;
    bool internal = false;
    std::uint64_t seed = 1;
    std::size_t cases = 70;

    auto* parse_cmd = app.add_subcommand("parse", "Parse and print a program");
    parse_cmd->add_option("FILE", file)->required();
    auto* check_cmd = app.add_subcommand("check", "Type-check a closed program");
    check_cmd->add_option("FILE", file)->required();

    auto* run_cmd = app.add_subcommand("run", "Evaluate a closed program of type N");
    run_cmd->add_option("--backend", backend, "op, game or decomp")->check(CLI::IsMember({"op", "game", "decomp"}))->capture_default_str();
    run_cmd->add_option("--fuel", cfg.y_depth, "Deepest fixpoint unfolding")->capture_default_str();
    run_cmd->add_option("--steps", cfg.bounds.max_steps, "Exchange cap per composition loop")->capture_default_str();
    run_cmd->add_option("FILE", file)->required();

    auto* trace_cmd = app.add_subcommand("trace", "Print the play of a ground run, or the plays of a combinator expression");
    trace_cmd->add_option("FILE", file);
    trace_cmd->add_option("--expr", expr, "Combinator expression, e.g. compose(id(N->N), promote(der(N)))");
    trace_cmd->add_flag("--internal", internal, "Also show the interaction inside the outermost composite");
    trace_cmd->add_option("--steps", cfg.bounds.max_steps, "Exchange cap per composition loop")->capture_default_str();

    auto* dec_cmd = app.add_subcommand("decompose", "Case analysis of a program's strategy");
    dec_cmd->add_option("--depth", cfg.depth)->capture_default_str();
    dec_cmd->add_option("FILE", file)->required();

    auto* rb_cmd = app.add_subcommand("readback", "Read a strategy back as an evaluation tree");
    rb_cmd->add_option("--depth", cfg.depth)->capture_default_str();
    rb_cmd->add_option("FILE", file)->required();

    auto* cmp_cmd = app.add_subcommand("compare", "Compare two closed programs in applicative contexts");
    cmp_cmd->add_option("--depth", cfg.depth, "Depth of enumerated argument trees")->capture_default_str();
    cmp_cmd->add_option("FILE1", file)->required();
    cmp_cmd->add_option("FILE2", file2)->required();

    auto* laws_cmd = app.add_subcommand("laws", "Run the randomized law suites");
    laws_cmd->add_option("--seed", seed)->capture_default_str();
    laws_cmd->add_option("--cases", cases, "Generated cases per suite")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*parse_cmd) return cmd_parse(cfg, file);
        if (*check_cmd) return cmd_check(cfg, file);
        if (*run_cmd) return cmd_run(cfg, file, backend);
        if (*trace_cmd) {
            if (file.empty() == expr.empty()) {
                std::cerr << "trace: give exactly one of FILE or --expr\n";
                return 2;
            }
            return cmd_trace(cfg, file, expr, internal);
        }
        if (*dec_cmd) return cmd_decompose(cfg, file);
        if (*rb_cmd) return cmd_readback(cfg, file);
        if (*cmp_cmd) return cmd_compare(cfg, file, file2);
        if (*laws_cmd) return cmd_laws(cfg, seed, cases);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
