#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gpcf/code.hpp"
#include "gpcf/decomposition.hpp"
#include "gpcf/laws.hpp"
#include "gpcf/observation.hpp"

namespace gpcf {

struct SuiteReport {
    std::string name;
    std::size_t cases = 0;   // generated subjects
    std::size_t checks = 0;  // individual law instances
    std::size_t failures = 0;
    std::vector<std::string> notes;  // first few failures
    double seconds = 0;
    bool ok() const { return failures == 0; }

    void fail(const std::string& what) {
        ++failures;
        if (notes.size() < 8) notes.push_back(what);
    }
    void add(const LawResult& r) {
        ++checks;
        if (!r.ok) fail(r.law + " on " + r.subject + ": " + r.reason);
    }
    json to_json() const {
        return json{{"suite", name}, {"cases", cases}, {"checks", checks}, {"failures", failures}, {"notes", notes}, {"seconds", seconds}};
    }
};

namespace detail {

class Stopwatch {
public:
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

}  // namespace detail

// ---------------------------------------------------------------- random populations

// identity and associativity on triples s : X -o Y, t : Y -o Z, u : Z -o W
// with X..W the games of random types of depth <= 2
inline SuiteReport category_suite(std::uint64_t seed, std::size_t cases) {
    detail::Stopwatch sw;
    SuiteReport rep;
    rep.name = "category";
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < cases; ++i) {
        Game g[4];
        for (auto& x : g) x = game_of_type(random_type(rng, 2));
        auto s = random_explicit(rng, game::Lolli(g[0], g[1]));
        auto t = random_explicit(rng, game::Lolli(g[1], g[2]));
        auto u = random_explicit(rng, game::Lolli(g[2], g[3]));
        rep.cases += 3;
        for (const auto& r : category_laws(s, t, u)) rep.add(r);
    }
    rep.seconds = sw.seconds();
    return rep;
}

// m1-m3 on pairs s : !A -o B, t : !B -o C, i.e. strategies on game(A => B)
inline SuiteReport comonad_suite(std::uint64_t seed, std::size_t cases) {
    detail::Stopwatch sw;
    SuiteReport rep;
    rep.name = "comonad";
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < cases; ++i) {
        const Type a = random_type(rng, 1), b = random_type(rng, 1), c = random_type(rng, 1);
        auto s = random_explicit(rng, game_of_type(arrow(a, b)));
        auto t = random_explicit(rng, game_of_type(arrow(b, c)));
        rep.cases += 2;
        for (const auto& r : comonad_laws(s, t)) rep.add(r);
    }
    rep.seconds = sw.seconds();
    return rep;
}

// the three comonoid diagrams on !game(T) for every type of depth <= 1 with
// at most two arguments, plus a few of depth 2
inline SuiteReport comonoid_suite(const Bounds& b = Bounds{2, 2, 8, 100000}) {
    detail::Stopwatch sw;
    SuiteReport rep;
    rep.name = "comonoid";
    for (const char* t : {"N", "N->N", "N->N->N", "(N->N)->N", "(N->N)->N->N"}) {
        ++rep.cases;
        for (const auto& r : comonoid_laws(game_of_type(parse_type(t)), b)) rep.add(r);
    }
    rep.seconds = sw.seconds();
    return rep;
}

inline SuiteReport bang_suite(std::uint64_t seed, std::size_t cases) {
    detail::Stopwatch sw;
    SuiteReport rep;
    rep.name = "bang";
    std::mt19937_64 rng(seed);
    const Bounds b{2, 3, 8, 100000};
    for (std::size_t i = 0; i < cases; ++i) {
        const Type a = random_type(rng, 1), bt = random_type(rng, 1);
        auto smp = random_bang_map(rng, game_of_type(a), game_of_type(bt));
        ++rep.cases;
        rep.add(bang_lemma(smp.strategy, b, smp.description + " : " + game_str(smp.strategy->game())));
    }
    rep.seconds = sw.seconds();
    return rep;
}

inline SuiteReport parity_suite(std::uint64_t seed, std::size_t cases) {
    detail::Stopwatch sw;
    SuiteReport rep;
    rep.name = "parity";
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < cases; ++i) {
        const Type a = random_type(rng, 1), b = random_type(rng, 1);
        auto s = random_explicit(rng, game_of_type(arrow(a, b)));
        auto t = random_explicit(rng, game::Lolli(game_of_type(b), game_of_type(a)));
        rep.cases += 2;
        rep.add(parity_spot_check(compose(s, t), bounds_for({s, t}), game_str(s->game())));
        rep.add(parity_spot_check(compose(promote(s), promote(random_explicit(rng, game_of_type(arrow(b, a))))), Bounds{2, 2, 8, 100000},
                                  "promoted " + game_str(s->game())));
    }
    rep.seconds = sw.seconds();
    return rep;
}

inline SuiteReport monotonicity_suite(std::uint64_t seed, std::size_t cases) {
    detail::Stopwatch sw;
    SuiteReport rep;
    rep.name = "monotonicity";
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < cases; ++i) {
        const Type a = random_type(rng, 2), b = random_type(rng, 2), c = random_type(rng, 2);
        auto big = random_explicit(rng, game::Lolli(game_of_type(a), game_of_type(b)));
        auto small = random_substrategy(rng, big);
        auto t = random_explicit(rng, game::Lolli(game_of_type(b), game_of_type(c)));
        rep.cases += 2;
        rep.add(monotonicity(small, big, t, bounds_for({big, t})));
    }
    rep.seconds = sw.seconds();
    return rep;
}

// E_k(S_k(P)) = q_k(P) up to renaming, k = 0..3
inline SuiteReport roundtrip_suite(std::uint64_t seed, std::size_t cases, const FetShape& shape = FetShape{3, 3, 3, 20000}) {
    detail::Stopwatch sw;
    SuiteReport rep;
    rep.name = "fet round trip";
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < cases; ++i) {
        const Type t = random_type(rng, 2);
        const Fet p = random_fet(rng, {}, t, shape);
        ++rep.cases;
        for (std::uint64_t k = 0; k <= 3; ++k) {
            ++rep.checks;
            const Fet back = E_k(k, S_k(k, p, {}, t));
            if (!fet_alpha_equal(back, q_k(k, p))) rep.fail("k=" + std::to_string(k) + " " + fet_str(p) + " read back as " + fet_str(back));
        }
    }
    rep.seconds = sw.seconds();
    return rep;
}

// ---------------------------------------------------------------- corpus suites

// Bounds used when comparing denotations of corpus terms.
inline Bounds corpus_bounds() { return Bounds{3, 2, 12, 100000}; }

// S_k(E_k(s)) equivalent to p_k(s), k = 0..3
inline SuiteReport readback_suite(const std::vector<Term>& terms, std::uint64_t y_depth, const Bounds& b = corpus_bounds()) {
    detail::Stopwatch sw;
    SuiteReport rep;
    rep.name = "readback";
    for (const auto& m : terms) {
        const Type t = typecheck({}, m);
        const Strategy s = denote({}, m, y_depth);
        ++rep.cases;
        for (std::uint64_t k = 0; k <= 3; ++k) {
            ++rep.checks;
            auto res = strat_equiv_detail(S_k(k, E_k(k, s), {}, t), p_k(k, s), b);
            if (!res.ok) rep.fail("k=" + std::to_string(k) + " " + term_str(m) + ": " + res.reason + " at " + position_str(res.witness));
        }
    }
    rep.seconds = sw.seconds();
    return rep;
}

// Short plays of s (length <= 2k) each matched by an equivalent play of p_k(s).
inline LawResult short_plays_covered(const Strategy& s, std::uint64_t k, const Bounds& b, const std::string& subject) {
    LawResult r;
    r.law = "short plays covered";
    r.subject = subject;
    Bounds bk = b;
    bk.max_len = std::min<std::size_t>(b.max_len, 2 * k);
    const auto mine = traces(s, bk);
    const auto approx = traces(p_k(k, s), bk);
    for (const auto& p : mine) {
        ++r.explored;
        bool found = false;
        for (const auto& q : approx)
            if (q.size() == p.size() && pos_equiv(s->game(), p, q)) {
                found = true;
                break;
            }
        if (!found) {
            r.ok = false;
            r.reason = "k=" + std::to_string(k) + " no match for " + position_str(p);
            return r;
        }
    }
    return r;
}

// Approximant properties: p_k below s; short plays covered; increasing chain
// on explicit sets; idempotence.
inline SuiteReport approximation_suite(const std::vector<Term>& terms, std::uint64_t y_depth, const Bounds& b = corpus_bounds()) {
    detail::Stopwatch sw;
    SuiteReport rep;
    rep.name = "approximation";
    SuiteReport part[4];
    for (const auto& m : terms) {
        const Strategy s = denote({}, m, y_depth);
        const std::string subj = term_str(m);
        ++rep.cases;
        for (std::uint64_t k = 0; k <= 3; ++k) {
            const Strategy pk = p_k(k, s);
            {
                LawResult r;
                r.law = "below";
                r.subject = subj;
                auto res = strat_subeq_detail(pk, s, b);
                r.ok = res.ok;
                if (!res.ok) r.reason = "k=" + std::to_string(k) + " " + res.reason + " at " + position_str(res.witness);
                part[0].add(r);
            }
            part[1].add(short_plays_covered(s, k, b, subj));
            {
                LawResult r;
                r.law = "increasing";
                r.subject = subj;
                r.ok = traces_subset(pk, p_k(k + 1, s), b);
                if (!r.ok) r.reason = "k=" + std::to_string(k);
                part[2].add(r);
            }
            {
                LawResult r;
                r.law = "idempotent";
                r.subject = subj;
                auto res = strat_equiv_detail(p_k(k, pk), pk, b);
                r.ok = res.ok;
                if (!res.ok) r.reason = "k=" + std::to_string(k) + " " + res.reason;
                part[3].add(r);
            }
        }
    }
    const char* names[4] = {"below", "short plays covered", "increasing", "idempotent"};
    for (int i = 0; i < 4; ++i) {
        rep.checks += part[i].checks;
        rep.failures += part[i].failures;
        rep.notes.push_back(std::string(names[i]) + ": " + std::to_string(part[i].checks - part[i].failures) + "/" + std::to_string(part[i].checks));
        for (std::size_t j = 0; j < part[i].notes.size() && j < 2; ++j) rep.notes.push_back("  " + part[i].notes[j]);
    }
    rep.seconds = sw.seconds();
    return rep;
}

struct Application {
    std::string name;
    Term fn;
    std::vector<Term> args;
};

// decomposition-driven evaluation against run_game, and p_k simulated by s
inline SuiteReport application_suite(const std::vector<Application>& apps, std::uint64_t y_depth, const Bounds& b) {
    detail::Stopwatch sw;
    SuiteReport rep;
    rep.name = "application";
    for (const auto& a : apps) {
        ++rep.cases;
        const Strategy f = denote({}, a.fn, y_depth);
        std::vector<Strategy> args;
        Term whole = a.fn;
        for (const auto& x : a.args) {
            args.push_back(denote({}, x, y_depth));
            whole = term::App(whole, x);
        }
        const Outcome g = run_game(whole, y_depth, b);
        const Outcome d = apply_via_decomposition(f, args, 100000);
        ++rep.checks;
        if (!g.same_result(d)) rep.fail(a.name + ": game " + g.str() + " vs decomposition " + d.str());
        for (std::uint64_t k = 0; k <= 3; ++k) {
            ++rep.checks;
            if (!preceq_k(k, p_k(k, f), f)) rep.fail(a.name + ": p_" + std::to_string(k) + " not simulated");
        }
    }
    rep.seconds = sw.seconds();
    return rep;
}

// ---------------------------------------------------------------- corpus files

// Non-blank, non-comment lines split on ';'.
inline std::vector<std::vector<std::string>> read_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::vector<std::vector<std::string>> out;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = detail::trim_copy(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(t);
        std::string f;
        while (std::getline(ss, f, ';')) fields.push_back(detail::trim_copy(f));
        out.push_back(std::move(fields));
    }
    return out;
}

// name ; expected answer or "diverges" ; program
inline std::vector<CorpusEntry> read_adequacy_corpus(const std::string& path) {
    std::vector<CorpusEntry> out;
    for (const auto& r : read_records(path)) {
        if (r.size() != 3) throw std::runtime_error(path + ": expected 'name ; answer ; program'");
        CorpusEntry e{r[0], r[2], std::nullopt};
        if (r[1] != "diverges") e.expect = std::stoull(r[1]);
        out.push_back(std::move(e));
    }
    return out;
}

// name ; term
inline std::vector<std::pair<std::string, Term>> read_terms(const std::string& path) {
    std::vector<std::pair<std::string, Term>> out;
    for (const auto& r : read_records(path)) {
        if (r.size() != 2) throw std::runtime_error(path + ": expected 'name ; term'");
        out.emplace_back(r[0], parse(r[1]));
    }
    return out;
}

// name ; function ; argument ; ...
inline std::vector<Application> read_applications(const std::string& path) {
    std::vector<Application> out;
    for (const auto& r : read_records(path)) {
        if (r.size() < 2) throw std::runtime_error(path + ": expected 'name ; function ; arguments...'");
        Application a{r[0], parse(r[1]), {}};
        for (std::size_t i = 2; i < r.size(); ++i) a.args.push_back(parse(r[i]));
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace gpcf
