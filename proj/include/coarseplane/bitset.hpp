#pragma once

#include <cstdint>
#include <vector>

namespace coarseplane {

// Fixed-universe bitset used for face/vertex/edge regions.  Sized once at
// construction; subset tests are the hot operation in side classification.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int universe) : size_(universe), words_((universe + 63) / 64, 0) {}

    void set(int i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    int universe() const { return size_; }

    int count() const {
        int c = 0;
        for (std::uint64_t w : words_) c += __builtin_popcountll(w);
        return c;
    }
    bool any() const {
        for (std::uint64_t w : words_) if (w) return true;
        return false;
    }
    bool subset_of(const Bitset& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }
    bool intersects(const Bitset& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }
    friend bool operator==(const Bitset& a, const Bitset& b) {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

    Bitset& operator|=(const Bitset& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }
    Bitset& operator&=(const Bitset& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
        return *this;
    }
    Bitset& operator^=(const Bitset& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
        return *this;
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        for (int i = 0; i < size_; ++i) if (test(i)) out.push_back(i);
        return out;
    }

private:
    int size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace coarseplane
