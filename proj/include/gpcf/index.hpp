#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

namespace gpcf {

// Copy index of a ! game. Small values are plain naturals and the pairing /
// tagging functions are the Cantor and even/odd codes on them. Once a code
// would leave the small range it is kept symbolically instead, so nested
// promotions never overflow.
class Index {
public:
    enum class Kind : std::uint8_t { Nat, Pair, Left, Right };

    static constexpr std::uint64_t kSmallLimit = std::uint64_t{1} << 40;

    Index() = default;
    explicit Index(std::uint64_t n) : nat_(n) {}
    static Index nat(std::uint64_t n) { return Index(n); }

    static Index pair(const Index& i, const Index& j);
    // c(inl i) = 2i, c(inr i) = 2i+1
    static Index tag(bool right, const Index& i);
    std::optional<std::pair<Index, Index>> unpair() const;
    // returns (is_right, inner)
    std::optional<std::pair<bool, Index>> untag() const;

    bool is_nat() const { return node_ == nullptr; }
    std::uint64_t value() const { return nat_; }
    Kind kind() const;
    std::size_t hash() const;
    std::string str() const;

    friend bool operator==(const Index& x, const Index& y);
    friend bool operator!=(const Index& x, const Index& y) { return !(x == y); }
    // total order: naturals first, then structured codes
    friend bool operator<(const Index& x, const Index& y);

private:
    struct Node;
    explicit Index(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::uint64_t nat_ = 0;
    std::shared_ptr<const Node> node_;
};

struct Index::Node {
    Kind kind;
    Index a, b;
    std::size_t h;
    Node(Kind k, Index x, Index y) : kind(k), a(std::move(x)), b(std::move(y)) {
        std::size_t v = static_cast<std::size_t>(k) * 0x9e3779b97f4a7c15ULL;
        v ^= a.hash() + 0x9e3779b97f4a7c15ULL + (v << 6) + (v >> 2);
        v ^= b.hash() + 0x7f4a7c159e3779b9ULL + (v << 6) + (v >> 2);
        h = v;
    }
};

inline Index Index::pair(const Index& i, const Index& j) {
    if (i.is_nat() && j.is_nat() && i.nat_ < kSmallLimit && j.nat_ < kSmallLimit) {
        const std::uint64_t s = i.nat_ + j.nat_;
        if (s < (std::uint64_t{1} << 21)) {
            const std::uint64_t v = s * (s + 1) / 2 + j.nat_;
            if (v < kSmallLimit) return Index(v);
        }
    }
    return Index(std::make_shared<const Node>(Kind::Pair, i, j));
}

inline Index Index::tag(bool right, const Index& i) {
    if (i.is_nat() && i.nat_ < kSmallLimit / 2) return Index(2 * i.nat_ + (right ? 1 : 0));
    return Index(std::make_shared<const Node>(right ? Kind::Right : Kind::Left, i, Index()));
}

inline std::optional<std::pair<Index, Index>> Index::unpair() const {
    if (is_nat()) {
        // inverse Cantor pairing
        auto w = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(nat_) + 1.0) - 1.0) / 2.0);
        while (w > 0 && w * (w + 1) / 2 > nat_) --w;
        while ((w + 1) * (w + 2) / 2 <= nat_) ++w;
        const std::uint64_t t = w * (w + 1) / 2;
        const std::uint64_t j = nat_ - t;
        return std::make_pair(Index(w - j), Index(j));
    }
    if (node_->kind == Kind::Pair) return std::make_pair(node_->a, node_->b);
    return std::nullopt;
}

inline std::optional<std::pair<bool, Index>> Index::untag() const {
    if (is_nat()) return std::make_pair((nat_ & 1) != 0, Index(nat_ >> 1));
    if (node_->kind == Kind::Left) return std::make_pair(false, node_->a);
    if (node_->kind == Kind::Right) return std::make_pair(true, node_->a);
    return std::nullopt;
}

inline Index::Kind Index::kind() const { return node_ ? node_->kind : Kind::Nat; }

inline std::size_t Index::hash() const { return node_ ? node_->h : std::hash<std::uint64_t>{}(nat_); }

inline bool operator==(const Index& x, const Index& y) {
    if (x.node_ == y.node_) return x.node_ != nullptr || x.nat_ == y.nat_;
    if (!x.node_ || !y.node_) return false;
    if (x.node_->h != y.node_->h || x.node_->kind != y.node_->kind) return false;
    return x.node_->a == y.node_->a && x.node_->b == y.node_->b;
}

inline bool operator<(const Index& x, const Index& y) {
    if (x.is_nat() != y.is_nat()) return x.is_nat();
    if (x.is_nat()) return x.nat_ < y.nat_;
    if (x.node_ == y.node_) return false;
    if (x.node_->kind != y.node_->kind) return x.node_->kind < y.node_->kind;
    if (x.node_->a != y.node_->a) return x.node_->a < y.node_->a;
    return x.node_->b < y.node_->b;
}

inline std::string Index::str() const {
    if (is_nat()) return std::to_string(nat_);
    switch (node_->kind) {
    case Kind::Pair: return "p(" + node_->a.str() + "," + node_->b.str() + ")";
    case Kind::Left: return "l(" + node_->a.str() + ")";
    case Kind::Right: return "r(" + node_->a.str() + ")";
    default: return "?";
    }
}

}  // namespace gpcf

template <>
struct std::hash<gpcf::Index> {
    std::size_t operator()(const gpcf::Index& i) const noexcept { return i.hash(); }
};
