#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

#include "gpcf/game.hpp"

namespace gpcf {

// Process-wide legality hook. Every position the engine materialises while
// exploring plays goes through check().
class PositionAudit {
public:
    static PositionAudit& instance() {
        static PositionAudit a;
        return a;
    }

    bool check(const Game& g, const Position& s) {
        if (!enabled_.load(std::memory_order_relaxed)) return true;
        checked_.fetch_add(1, std::memory_order_relaxed);
        const bool ok = legal_position(g, s) && switching_ok(g, s);
        if (!ok) record("illegal position in " + game_str(g) + ": " + position_str(s));
        return ok;
    }

    void record(const std::string& what) {
        violations_.fetch_add(1, std::memory_order_relaxed);
        std::lock_guard<std::mutex> lk(mu_);
        if (samples_.size() < 16) samples_.push_back(what);
    }

    std::uint64_t checked() const { return checked_.load(); }
    std::uint64_t violations() const { return violations_.load(); }
    std::vector<std::string> samples() const {
        std::lock_guard<std::mutex> lk(mu_);
        return samples_;
    }
    void reset() {
        checked_ = 0;
        violations_ = 0;
        std::lock_guard<std::mutex> lk(mu_);
        samples_.clear();
    }
    void set_enabled(bool on) { enabled_ = on; }
    bool enabled() const { return enabled_; }

private:
    std::atomic<bool> enabled_{true};
    std::atomic<std::uint64_t> checked_{0};
    std::atomic<std::uint64_t> violations_{0};
    mutable std::mutex mu_;
    std::vector<std::string> samples_;
};

}  // namespace gpcf
