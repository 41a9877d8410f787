#pragma once

#include <algorithm>
#include <atomic>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "gpcf/audit.hpp"
#include "gpcf/game.hpp"

namespace gpcf {

struct StrategyCode;
using Code = std::shared_ptr<const StrategyCode>;

// Counts execution-formula exchanges made on this thread. When `limit` is
// reached every composite on the thread stops answering until reset.
struct ExchangeMeter {
    std::uint64_t exchanges = 0;
    std::uint64_t exhausted = 0;
    std::uint64_t limit = ~std::uint64_t{0};
    static ExchangeMeter& local() {
        thread_local ExchangeMeter m;
        return m;
    }
    bool spent() const { return exchanges >= limit; }
};

// Scoped global exchange budget for one run.
class ExchangeBudget {
public:
    explicit ExchangeBudget(std::uint64_t limit) : saved_(ExchangeMeter::local()) {
        auto& m = ExchangeMeter::local();
        m.exchanges = 0;
        m.exhausted = 0;
        m.limit = limit;
    }
    ~ExchangeBudget() { ExchangeMeter::local() = saved_; }
    ExchangeBudget(const ExchangeBudget&) = delete;
    ExchangeBudget& operator=(const ExchangeBudget&) = delete;
    std::uint64_t used() const { return ExchangeMeter::local().exchanges; }
    bool exhausted() const { return ExchangeMeter::local().exhausted > 0; }

private:
    ExchangeMeter saved_;
};

class StrategyImpl {
public:
    explicit StrategyImpl(Game g) : game_(std::move(g)) {}
    virtual ~StrategyImpl() = default;
    StrategyImpl(const StrategyImpl&) = delete;
    StrategyImpl& operator=(const StrategyImpl&) = delete;

    const Game& game() const { return game_; }

    // memoised response to an Opponent move
    std::optional<Move> next(const Move& m) const {
        {
            std::lock_guard<std::mutex> lk(memo_mu_);
            auto it = memo_.find(m);
            if (it != memo_.end()) return it->second;
        }
        const std::uint64_t before = ExchangeMeter::local().exhausted;
        std::optional<Move> r = respond(m);
        // a response cut short by a budget is not the strategy's answer
        if (ExchangeMeter::local().exhausted != before) return r;
        std::lock_guard<std::mutex> lk(memo_mu_);
        if (memo_.size() >= kMemoCap) memo_.clear();
        memo_.emplace(m, r);
        return r;
    }

    virtual std::optional<Move> respond(const Move& m) const = 0;
    virtual std::string describe() const { return "strategy"; }
    virtual const std::vector<Position>* finite_positions() const { return nullptr; }

    Code code() const {
        std::lock_guard<std::mutex> lk(memo_mu_);
        return code_;
    }
    void set_code(Code c) const {
        std::lock_guard<std::mutex> lk(memo_mu_);
        code_ = std::move(c);
    }

    std::uint64_t budget_exhausted() const { return exhausted_.load(); }
    void note_exhausted() const { exhausted_.fetch_add(1, std::memory_order_relaxed); }

private:
    static constexpr std::size_t kMemoCap = 1u << 18;
    Game game_;
    mutable std::mutex memo_mu_;
    mutable std::unordered_map<Move, std::optional<Move>, MoveHash> memo_;
    mutable Code code_;
    mutable std::atomic<std::uint64_t> exhausted_{0};
};

using Strategy = std::shared_ptr<const StrategyImpl>;

inline std::optional<Move> next_move(const Strategy& s, const Move& m) { return s->next(m); }

// ---------------------------------------------------------------- generic strategies

class FnStrategy final : public StrategyImpl {
public:
    using Fn = std::function<std::optional<Move>(const Move&)>;
    FnStrategy(Game g, Fn f, std::string what) : StrategyImpl(std::move(g)), f_(std::move(f)), what_(std::move(what)) {}
    std::optional<Move> respond(const Move& m) const override { return f_(m); }
    std::string describe() const override { return what_; }

private:
    Fn f_;
    std::string what_;
};

inline Strategy make_strategy(Game g, FnStrategy::Fn f, std::string what) {
    return std::make_shared<FnStrategy>(std::move(g), std::move(f), std::move(what));
}

// Runs `inner` under a partial bijection of move alphabets.
class RetagStrategy final : public StrategyImpl {
public:
    using Map = std::function<std::optional<Move>(const Move&)>;
    RetagStrategy(Game outer, Strategy inner, Map to_inner, Map to_outer, std::string what)
        : StrategyImpl(std::move(outer)), inner_(std::move(inner)), to_inner_(std::move(to_inner)), to_outer_(std::move(to_outer)), what_(std::move(what)) {}
    std::optional<Move> respond(const Move& m) const override {
        auto a = to_inner_(m);
        if (!a) return std::nullopt;
        auto b = inner_->next(*a);
        if (!b) return std::nullopt;
        return to_outer_(*b);
    }
    std::string describe() const override { return what_; }
    const Strategy& inner() const { return inner_; }

private:
    Strategy inner_;
    Map to_inner_, to_outer_;
    std::string what_;
};

inline Strategy retag(Game outer, Strategy inner, RetagStrategy::Map to_inner, RetagStrategy::Map to_outer, std::string what) {
    return std::make_shared<RetagStrategy>(std::move(outer), std::move(inner), std::move(to_inner), std::move(to_outer), std::move(what));
}

inline Strategy bottom(Game g) {
    return make_strategy(std::move(g), [](const Move&) { return std::optional<Move>(); }, "bot");
}

// ---------------------------------------------------------------- explicit finite strategies

struct HistoryFreedomError : std::runtime_error {
    Position first, second;
    HistoryFreedomError(Position a, Position b)
        : std::runtime_error("not history-free: " + position_str(a) + " vs " + position_str(b)), first(std::move(a)), second(std::move(b)) {}
};

inline bool position_less(const Position& a, const Position& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline std::vector<Position> sorted_positions(std::vector<Position> ps) {
    std::sort(ps.begin(), ps.end(), position_less);
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return ps;
}

class ExplicitStrategy final : public StrategyImpl {
public:
    ExplicitStrategy(Game g, std::vector<Position> positions) : StrategyImpl(std::move(g)), positions_(sorted_positions(std::move(positions))) {
        std::unordered_map<Move, std::pair<Move, Position>, MoveHash> witness;
        for (const auto& s : positions_) {
            if (s.size() % 2 != 0) throw std::invalid_argument("explicit strategy contains odd-length position " + position_str(s));
            if (!legal_position(game(), s)) throw std::invalid_argument("explicit strategy contains illegal position " + position_str(s));
            for (std::size_t k = 0; k + 1 < s.size(); k += 2) {
                const Move& a = s[k];
                const Move& b = s[k + 1];
                auto it = witness.find(a);
                if (it == witness.end()) {
                    witness.emplace(a, std::make_pair(b, Position(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k + 2))));
                } else if (it->second.first != b) {
                    throw HistoryFreedomError(it->second.second, Position(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k + 2)));
                }
            }
        }
        for (auto& [a, bw] : witness) table_.emplace(a, bw.first);
    }
    std::optional<Move> respond(const Move& m) const override {
        auto it = table_.find(m);
        if (it == table_.end()) return std::nullopt;
        return it->second;
    }
    std::string describe() const override { return "finite(" + std::to_string(positions_.size()) + ")"; }
    const std::vector<Position>* finite_positions() const override { return &positions_; }

private:
    std::vector<Position> positions_;
    std::unordered_map<Move, Move, MoveHash> table_;
};

inline Strategy explicit_strategy(Game g, std::vector<Position> positions) {
    return std::make_shared<ExplicitStrategy>(std::move(g), std::move(positions));
}

// ---------------------------------------------------------------- traces

struct ExploreLimits {
    std::size_t max_positions = 200000;
};

// Even-length plays reachable by probing with every bounded legal O-move.
inline std::vector<Position> traces(const Strategy& s, const Bounds& b, const ExploreLimits& lim = {}) {
    std::vector<Position> out{Position{}};
    std::deque<Position> work{Position{}};
    const Game& g = s->game();
    auto& audit = PositionAudit::instance();
    while (!work.empty() && out.size() < lim.max_positions) {
        Position cur = std::move(work.front());
        work.pop_front();
        if (cur.size() + 2 > b.max_len) continue;
        for (const auto& a : opponent_moves(g, cur, b)) {
            auto r = s->next(a);
            if (!r) continue;
            Position ext = cur;
            ext.push_back(a);
            ext.push_back(*r);
            audit.check(g, ext);
            out.push_back(ext);
            work.push_back(std::move(ext));
            if (out.size() >= lim.max_positions) break;
        }
    }
    return out;
}

inline Strategy materialize(const Strategy& s, const Bounds& b) { return explicit_strategy(s->game(), traces(s, b)); }

inline Bounds sufficient_bounds(const std::vector<Position>& ps) {
    Bounds b;
    b.max_nat = 1;
    b.max_index = 1;
    b.max_len = 2;
    for (const auto& s : ps) {
        b.max_len = std::max(b.max_len, s.size() + 2);
        for (const auto& m : s) {
            if (!m.base.question) b.max_nat = std::max<std::uint64_t>(b.max_nat, m.base.n);
            for (const auto& t : m.path)
                if (t.kind == Tag::Idx && t.idx.is_nat()) b.max_index = std::max<std::uint64_t>(b.max_index, t.idx.value());
        }
    }
    return b;
}

inline Bounds join_bounds(const Bounds& x, const Bounds& y) {
    Bounds b;
    b.max_nat = std::max(x.max_nat, y.max_nat);
    b.max_index = std::max(x.max_index, y.max_index);
    b.max_len = std::max(x.max_len, y.max_len);
    b.max_steps = std::max(x.max_steps, y.max_steps);
    return b;
}

// ---------------------------------------------------------------- preorder

struct SubeqResult {
    bool ok = true;
    bool truncated = false;
    std::size_t explored = 0;
    Position witness;  // play of the left strategy with no matching answer on the right
    std::string reason;
    explicit operator bool() const { return ok; }
};

// Bounded check of sigma ⊂≈ tau: every play of sigma, replayed against tau by
// transporting Opponent moves through the forced index bijections, is
// answered equivalently.
inline SubeqResult strat_subeq_detail(const Strategy& sigma, const Strategy& tau, const Bounds& b, const ExploreLimits& lim = {}) {
    SubeqResult res;
    const Game& g = sigma->game();
    if (!game_equal(g, tau->game())) {
        res.ok = false;
        res.reason = "games differ";
        return res;
    }
    auto& audit = PositionAudit::instance();
    std::deque<std::pair<Position, Position>> work;
    work.emplace_back();
    while (!work.empty()) {
        auto [s, t] = std::move(work.front());
        work.pop_front();
        if (s.size() + 2 > b.max_len) continue;
        for (const auto& a : opponent_moves(g, s, b)) {
            auto bm = sigma->next(a);
            if (!bm) continue;
            Position sab = s;
            sab.push_back(a);
            sab.push_back(*bm);
            audit.check(g, sab);
            ++res.explored;
            auto a2 = transport(g, s, t, a);
            Position ta = t;
            if (a2) ta.push_back(*a2);
            if (!a2 || !legal_position(g, ta) || !pos_equiv(g, Position(sab.begin(), sab.end() - 1), ta)) {
                res.ok = false;
                res.witness = sab;
                res.reason = "opponent move could not be transported";
                return res;
            }
            auto b2 = tau->next(*a2);
            if (!b2) {
                res.ok = false;
                res.witness = sab;
                res.reason = "right strategy does not respond";
                return res;
            }
            ta.push_back(*b2);
            audit.check(g, ta);
            if (!pos_equiv(g, sab, ta)) {
                res.ok = false;
                res.witness = sab;
                res.reason = "responses not equivalent: " + position_str(ta);
                return res;
            }
            if (res.explored >= lim.max_positions) {
                res.truncated = true;
                return res;
            }
            work.emplace_back(std::move(sab), std::move(ta));
        }
    }
    return res;
}

inline bool strat_subeq(const Strategy& sigma, const Strategy& tau, const Bounds& b) { return strat_subeq_detail(sigma, tau, b).ok; }

inline bool strat_equiv(const Strategy& sigma, const Strategy& tau, const Bounds& b) {
    return strat_subeq(sigma, tau, b) && strat_subeq(tau, sigma, b);
}

inline SubeqResult strat_equiv_detail(const Strategy& sigma, const Strategy& tau, const Bounds& b, const ExploreLimits& lim = {}) {
    auto r = strat_subeq_detail(sigma, tau, b, lim);
    if (!r.ok) {
        r.reason = "left-to-right: " + r.reason;
        return r;
    }
    auto r2 = strat_subeq_detail(tau, sigma, b, lim);
    if (!r2.ok) r2.reason = "right-to-left: " + r2.reason;
    r2.explored += r.explored;
    r2.truncated = r2.truncated || r.truncated;
    return r2;
}

// explicit-set inclusion of bounded trace sets
inline bool traces_subset(const Strategy& sigma, const Strategy& tau, const Bounds& b) {
    auto ts = traces(tau, b);
    std::unordered_set<Position, PositionHash> tset(ts.begin(), ts.end());
    for (const auto& s : traces(sigma, b))
        if (!tset.count(s)) return false;
    return true;
}

}  // namespace gpcf
