#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dtile {

/// Vertices are dense ids 0..n-1.
using Vertex = int;

/**
 * Fixed-width bitset over the vertex range of one hypergraph. Width is set at
 * construction and never changes; binary operations require equal widths.
 */
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int width) : width_(width), words_(word_count(width), 0) {}

    static VertexSet of(int width, std::span<const Vertex> members) {
        VertexSet s(width);
        for (Vertex v : members) s.set(v);
        return s;
    }

    static VertexSet full(int width) {
        VertexSet s(width);
        for (int v = 0; v < width; ++v) s.set(v);
        return s;
    }

    int width() const { return width_; }

    bool test(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }
    void set(Vertex v) { words_[v >> 6] |= bit(v); }
    void reset(Vertex v) { words_[v >> 6] &= ~bit(v); }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    /// |this ∩ other| without materialising the intersection.
    int count_and(const VertexSet& other) const {
        int c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & other.words_[i]);
        return c;
    }

    bool intersects(const VertexSet& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }

    bool is_subset_of(const VertexSet& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    /// Smallest member, or -1.
    Vertex first() const { return next(0); }

    /// Smallest member >= from, or -1.
    Vertex next(Vertex from) const {
        if (from >= width_) return -1;
        std::size_t i = static_cast<std::size_t>(from) >> 6;
        std::uint64_t w = words_[i] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (w) return static_cast<Vertex>(i * 64 + std::countr_zero(w));
            if (++i == words_.size()) return -1;
            w = words_[i];
        }
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                f(static_cast<Vertex>(i * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<Vertex> to_vector() const {
        std::vector<Vertex> out;
        out.reserve(static_cast<std::size_t>(count()));
        for_each([&](Vertex v) { out.push_back(v); });
        return out;
    }

    VertexSet& operator&=(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    VertexSet& operator|=(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    /// Set difference.
    VertexSet& operator-=(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    static std::size_t word_count(int width) { return (static_cast<std::size_t>(width) + 63) / 64; }
    static std::uint64_t bit(Vertex v) { return std::uint64_t{1} << (v & 63); }

    int width_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace dtile
