// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Population sizes, seeds, bounds and time limits are pinned below.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "gpcf/suites.hpp"

#ifndef GPCF_TEST_DATA
#error "GPCF_TEST_DATA must point at tests/data"
#endif

using namespace gpcf;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr std::uint64_t kYDepth = 32;
constexpr std::uint64_t kOpFuel = 10000000;
constexpr double kAdequacySeconds = 120.0;
constexpr std::size_t kCategoryCases = 70;  // three strategies per case
constexpr std::size_t kComonadCases = 100;  // two strategies per case
constexpr std::size_t kBangCases = 60;
constexpr std::size_t kRoundtripCases = 200;
constexpr std::size_t kMinCorpusTerms = 50;
constexpr std::size_t kMinReadbackTerms = 30;
constexpr std::size_t kMinApplications = 30;
constexpr std::size_t kMinAdequacy = 40;
constexpr std::size_t kCompareDepth = 2;

std::string data(const char* file) { return std::string(GPCF_TEST_DATA) + "/" + file; }

int failed = 0;

void report(int n, bool ok, const std::string& detail) {
    if (!ok) ++failed;
    std::printf("criterion %d: %s  %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

std::string summary(const SuiteReport& r) {
    std::string s = r.name + " " + std::to_string(r.cases) + " subjects, " + std::to_string(r.checks) + " checks, " +
                    std::to_string(r.failures) + " failures";
    char buf[32];
    std::snprintf(buf, sizeof buf, " (%.1fs)", r.seconds);
    return s + buf;
}

void notes(const SuiteReport& r) {
    for (const auto& n : r.notes) std::printf("    %s: %s\n", r.name.c_str(), n.c_str());
}

std::vector<Term> terms_only(const std::vector<std::pair<std::string, Term>>& named) {
    std::vector<Term> out;
    for (const auto& [n, t] : named) out.push_back(t);
    return out;
}

void criterion1() {
    detail::Stopwatch sw;
    auto corpus = read_adequacy_corpus(data("adequacy.txt"));
    auto rep = adequacy_check(corpus, kOpFuel, kYDepth, Bounds{});
    const double secs = sw.seconds();
    for (const auto& c : rep.cases)
        if (!c.pass) std::printf("    adequacy: %s op=%s game=%s\n", c.entry.name.c_str(), c.op.str().c_str(), c.game.str().c_str());
    char buf[160];
    std::snprintf(buf, sizeof buf, "adequacy %zu/%zu programs agree (need >= %zu), %.1fs (limit %.0fs)", rep.passed, rep.cases.size(),
                  kMinAdequacy, secs, kAdequacySeconds);
    report(1, rep.ok() && rep.cases.size() >= kMinAdequacy && secs < kAdequacySeconds, buf);
}

void criterion2() {
    auto r = category_suite(kSeed, kCategoryCases);
    notes(r);
    report(2, r.ok() && r.cases >= 200, summary(r));
}

void criterion3() {
    auto a = comonad_suite(kSeed + 1, kComonadCases);
    auto b = comonoid_suite();
    notes(a);
    notes(b);
    report(3, a.ok() && b.ok() && a.cases >= 200, summary(a) + "; " + summary(b));
}

void criterion4() {
    auto r = bang_suite(kSeed + 2, kBangCases);
    notes(r);
    report(4, r.ok() && r.cases >= 50, summary(r));
}

void criterion5() {
    auto a = roundtrip_suite(kSeed + 3, kRoundtripCases);
    auto terms = terms_only(read_terms(data("functions.txt")));
    auto b = readback_suite(terms, kYDepth);
    notes(a);
    notes(b);
    report(5, a.ok() && b.ok() && a.cases >= 200 && b.cases >= kMinReadbackTerms, summary(a) + "; " + summary(b));
}

void criterion6() {
    auto terms = terms_only(read_terms(data("functions.txt")));
    auto r = approximation_suite(terms, kYDepth);
    std::string parts;
    for (const auto& n : r.notes)
        if (!n.empty() && n[0] != ' ') parts += (parts.empty() ? "" : ", ") + n;
    for (const auto& n : r.notes)
        if (!n.empty() && n[0] == ' ') std::printf("    %s\n", n.c_str() + 2);
    report(6, r.ok() && r.cases >= kMinCorpusTerms, summary(r) + (parts.empty() ? "" : " [" + parts + "]"));
}

void criterion7() {
    auto apps = read_applications(data("applications.txt"));
    auto r = application_suite(apps, kYDepth, corpus_bounds());
    notes(r);
    report(7, r.ok() && r.cases >= kMinApplications, summary(r));
}

void criterion8() {
    auto& audit = PositionAudit::instance();
    for (const auto& s : audit.samples()) std::printf("    audit: %s\n", s.c_str());
    report(8, audit.violations() == 0 && audit.checked() > 0,
           std::to_string(audit.checked()) + " positions audited, " + std::to_string(audit.violations()) + " violations");
}

struct Pair {
    const char* left;
    const char* right;
};

void criterion9() {
    CompareOptions opt;
    opt.depth = kCompareDepth;
    opt.fuel = 1000000;
    int bad = 0;
    std::string detail;
    const Pair separated[] = {{"\\x:N. 0", "\\x:N. if0 x 0 0"}, {"2", "3"}, {"Omega[N]", "0"}};
    for (const auto& p : separated) {
        Term m = parse(p.left), n = parse(p.right);
        Verdict ab = obs_compare(m, n, opt), ba = obs_compare(n, m, opt);
        const Verdict& v = ab.kind == Verdict::Kind::NotLeq ? ab : ba;
        const bool ok = v.kind == Verdict::Kind::NotLeq && (&v == &ab ? replay(m, n, v, opt.fuel) : replay(n, m, v, opt.fuel));
        if (!ok) {
            ++bad;
            std::printf("    not separated: %s vs %s\n", p.left, p.right);
        }
    }
    detail += std::to_string(3 - bad) + "/3 pairs separated with replayed witnesses";
    const Pair encodings[] = {
        {"case1", "\\x:N.\\y0:N. if0 x y0 Omega[N]"},
        {"case2", "\\x:N.\\y0:N.\\y1:N. if0 x y0 (if0 (pred x) y1 Omega[N])"},
        {"case3", "\\x:N.\\y0:N.\\y1:N.\\y2:N. if0 x y0 (if0 (pred x) y1 (if0 (pred (pred x)) y2 Omega[N]))"},
        {"\\x:N. case1 x 5", "\\x:N. if0 x 5 Omega[N]"},
        {"\\x:N. case2 x 5 7", "\\x:N. if0 x 5 (if0 (pred x) 7 Omega[N])"},
    };
    int leq = 0;
    for (const auto& p : encodings) {
        Term m = parse(p.left), n = parse(p.right);
        Verdict ab = obs_compare(m, n, opt), ba = obs_compare(n, m, opt);
        if (ab.leq() && ba.leq()) {
            ++leq;
        } else {
            ++bad;
            std::printf("    encoding differs: %s vs %s (%s / %s, witness %s%s)\n", p.left, p.right, ab.str().c_str(), ba.str().c_str(),
                        ab.witness.c_str(), ba.witness.c_str());
        }
    }
    detail += "; " + std::to_string(leq) + "/" + std::to_string(std::size(encodings)) + " case encodings leq both ways (depth " + std::to_string(kCompareDepth) + ")";
    report(9, bad == 0, detail);
}

}  // namespace

int main() {
    std::printf("seed %llu, y_depth %llu, op fuel %llu, corpus bounds {nat %llu, index %llu, len %zu}\n", (unsigned long long)kSeed,
                (unsigned long long)kYDepth, (unsigned long long)kOpFuel, (unsigned long long)corpus_bounds().max_nat,
                (unsigned long long)corpus_bounds().max_index, corpus_bounds().max_len);
    PositionAudit::instance().reset();
    try {
        criterion1();
        criterion2();
        criterion3();
        criterion4();
        criterion5();
        criterion6();
        criterion7();
        criterion8();
        criterion9();
    } catch (const std::exception& e) {
        std::printf("aborted: %s\n", e.what());
        return 2;
    }
    std::printf("%d criteria failed\n", failed);
    return failed ? 1 : 0;
}
